//! Uniform grids on `T = R/Z` and the discrete transforms between sampled
//! values and Fourier coefficients.

use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if inverse {
            p.plan_fft_inverse(len)
        } else {
            p.plan_fft_forward(len)
        }
    })
}

/// Smallest power of two `≥ n` (and ≥ 1).
pub fn pow2_at_least(n: usize) -> usize {
    n.max(1).next_power_of_two()
}

/// Index of frequency `m` in a length-`size` transform.
pub fn freq_index(m: i64, size: usize) -> usize {
    m.rem_euclid(size as i64) as usize
}

/// Frequency represented by index `k` (centred: `[-size/2, size/2)`).
pub fn index_freq(k: usize, size: usize) -> i64 {
    if k < size / 2 {
        k as i64
    } else {
        k as i64 - size as i64
    }
}

/// Values `Σ c_m e(m j/size)` for `j = 0..size`. Frequencies are reduced
/// modulo `size`, so the caller ensures `size > 2·degree` to avoid aliasing.
pub fn synthesize(terms: impl IntoIterator<Item = (i64, Complex64)>, size: usize) -> Vec<Complex64> {
    let mut buf = vec![Complex64::new(0.0, 0.0); size];
    for (m, c) in terms {
        buf[freq_index(m, size)] += c;
    }
    plan(size, true).process(&mut buf);
    buf
}

/// Discrete Fourier coefficients `(1/size) Σ_j v_j e(-k j/size)`, indexed by
/// transform index (see [`index_freq`]).
pub fn analyze(values: &[Complex64]) -> Vec<Complex64> {
    let size = values.len();
    let mut buf = values.to_vec();
    plan(size, false).process(&mut buf);
    let scale = 1.0 / size as f64;
    buf.iter_mut().for_each(|v| *v *= scale);
    buf
}

/// Circular convolution `(1/size) Σ_j g_j h_{k-j}`.
pub fn circular_convolution(g: &[Complex64], h: &[Complex64]) -> Vec<Complex64> {
    let size = g.len();
    assert_eq!(size, h.len());
    let mut a = g.to_vec();
    let mut b = h.to_vec();
    let fwd = plan(size, false);
    fwd.process(&mut a);
    fwd.process(&mut b);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y;
    }
    plan(size, true).process(&mut a);
    // forward·forward·inverse carries a factor size; the convolution wants 1/size
    let scale = 1.0 / (size as f64 * size as f64);
    a.iter_mut().for_each(|v| *v *= scale);
    a
}
