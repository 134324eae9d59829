//! Functions sampled at `x_j = j/M` on the circle.
//!
//! Used for objects that are not trigonometric polynomials: positive and
//! negative parts, absolute values, and the `Q₁ + Q₂` splitting of
//! `1̂_{B_t}`. Convolution is the discrete circular convolution scaled by
//! `1/M`; for band-limited inputs sampled above Nyquist it agrees with the
//! convolution on `T` exactly, and the pointwise inequalities used below
//! (`|g∗h| ≤ |g|∗|h|`, Young) hold for it verbatim.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::grid;
use crate::report::LemmaReport;
use crate::setcore::{derived_sets, SymSet};
use crate::trigpoly::{require_min_norm_at_most, unit, Coeff, ExactPoly, FloatPoly, TrigPoly};

/// Default constant in `‖Q₂‖_∞ ≤ c₂·K³`.
pub const DEFAULT_C2: f64 = 64.0;

/// Constant in `|Q₁| ≤ c₁·(1̂_A + K)`.
pub const Q1_CONSTANT: f64 = 4.0;

const REAL_THRESHOLD: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridFn {
    samples: Vec<Complex64>,
    real: bool,
}

impl GridFn {
    /// Wraps samples; the length must be a power of two.
    pub fn from_complex(samples: Vec<Complex64>) -> Result<Self> {
        if !samples.len().is_power_of_two() {
            return Err(Error::Invalid(format!(
                "grid size {} is not a power of two",
                samples.len()
            )));
        }
        let scale = samples.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let real = samples.iter().all(|z| z.im.abs() <= REAL_THRESHOLD * scale);
        Ok(GridFn { samples, real })
    }

    pub fn from_real(values: Vec<f64>) -> Result<Self> {
        Self::from_complex(values.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
    }

    /// Samples `f(j/M)`.
    pub fn sample<C: Coeff>(f: &TrigPoly<C>, size: usize) -> Result<Self> {
        Self::from_complex(f.samples(size)?)
    }

    pub fn constant(value: f64, size: usize) -> Result<Self> {
        Self::from_real(vec![value; size])
    }

    pub fn size(&self) -> usize {
        self.samples.len()
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn values(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn real_values(&self) -> Result<Vec<f64>> {
        if !self.real {
            return Err(Error::NotReal);
        }
        Ok(self.samples.iter().map(|z| z.re).collect())
    }

    fn map(&self, f: impl Fn(usize, Complex64) -> Complex64) -> GridFn {
        let samples: Vec<_> = self.samples.iter().enumerate().map(|(j, &z)| f(j, z)).collect();
        GridFn::from_complex(samples).expect("size preserved")
    }

    fn zip(&self, other: &GridFn, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<GridFn> {
        if self.size() != other.size() {
            return Err(Error::GridMismatch(self.size(), other.size()));
        }
        let samples = self.samples.iter().zip(&other.samples).map(|(&a, &b)| f(a, b)).collect();
        GridFn::from_complex(samples)
    }

    /// `g⁺ = max(g, 0)` and `g⁻ = max(-g, 0)`.
    pub fn pos_neg_split(&self) -> Result<(GridFn, GridFn)> {
        let v = self.real_values()?;
        let plus = GridFn::from_real(v.iter().map(|x| x.max(0.0)).collect())?;
        let minus = GridFn::from_real(v.iter().map(|x| (-x).max(0.0)).collect())?;
        Ok((plus, minus))
    }

    pub fn abs(&self) -> GridFn {
        self.map(|_, z| Complex64::new(z.norm(), 0.0))
    }

    pub fn add(&self, other: &GridFn) -> Result<GridFn> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GridFn) -> Result<GridFn> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, s: Complex64) -> GridFn {
        self.map(|_, z| z * s)
    }

    /// Pointwise multiplication by `e(tx)`.
    pub fn modulate(&self, t: i64) -> GridFn {
        let size = self.size() as f64;
        self.map(|j, z| z * unit(t, j as f64 / size))
    }

    /// `(g∗h)(x_k) = (1/M) Σ_j g(x_j) h(x_{k-j})`.
    pub fn circ_convolve(&self, other: &GridFn) -> Result<GridFn> {
        if self.size() != other.size() {
            return Err(Error::GridMismatch(self.size(), other.size()));
        }
        GridFn::from_complex(grid::circular_convolution(&self.samples, &other.samples))
    }

    /// Sample mean, the trapezoid approximation of `∫ g`.
    pub fn mean(&self) -> Complex64 {
        self.samples.iter().sum::<Complex64>() / self.size() as f64
    }

    pub fn l1(&self) -> f64 {
        self.samples.iter().map(|z| z.norm()).sum::<f64>() / self.size() as f64
    }

    pub fn l2(&self) -> f64 {
        (self.samples.iter().map(|z| z.norm_sqr()).sum::<f64>() / self.size() as f64).sqrt()
    }

    pub fn linf(&self) -> f64 {
        self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Discrete Fourier coefficients as a polynomial on `[-M/2, M/2)`,
    /// dropping entries of magnitude at most `threshold`.
    pub fn coefficients(&self, threshold: f64) -> FloatPoly {
        let size = self.size();
        let coeffs = grid::analyze(&self.samples);
        FloatPoly::from_terms(
            coeffs
                .into_iter()
                .enumerate()
                .filter(|(_, c)| c.norm() > threshold)
                .map(|(k, c)| (grid::index_freq(k, size), c)),
        )
    }

    /// Discrete coefficient at frequency `m`.
    pub fn coefficient(&self, m: i64) -> Complex64 {
        let size = self.size() as f64;
        self.samples
            .iter()
            .enumerate()
            .map(|(j, &z)| z * unit(-m, j as f64 / size))
            .sum::<Complex64>()
            / size
    }

    /// Little-endian binary layout: `u64` size, `u8` real flag, then
    /// `(re, im)` pairs of `f64`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(9 + 16 * self.size());
        out.extend_from_slice(&(self.size() as u64).to_le_bytes());
        out.push(self.real as u8);
        for z in &self.samples {
            out.extend_from_slice(&z.re.to_le_bytes());
            out.extend_from_slice(&z.im.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let bad = |what: &str| Error::Invalid(format!("grid function bytes: {what}"));
        if bytes.len() < 9 {
            return Err(bad("truncated header"));
        }
        let size = u64::from_le_bytes(bytes[..8].try_into().unwrap()) as usize;
        let real = match bytes[8] {
            0 => false,
            1 => true,
            _ => return Err(bad("real flag must be 0 or 1")),
        };
        let body = &bytes[9..];
        if body.len() != size.checked_mul(16).ok_or_else(|| bad("size overflow"))? {
            return Err(bad("length does not match header"));
        }
        let f = |c: &[u8]| f64::from_le_bytes(c.try_into().unwrap());
        let samples = body
            .chunks_exact(16)
            .map(|c| Complex64::new(f(&c[..8]), f(&c[8..])))
            .collect();
        let g = GridFn::from_complex(samples)?;
        if g.real != real {
            return Err(bad("real flag disagrees with samples"));
        }
        Ok(g)
    }
}

/// `1̂_A = T₁ + T₂` with `T₁ = max(1̂_A, 0)` and `T₂ = min(1̂_A, 0)`.
pub fn t1_t2_split(a: &SymSet, k: f64, size: usize) -> Result<(GridFn, GridFn)> {
    let f = ExactPoly::indicator(a);
    require_min_norm_at_most(&f, k)?;
    let (plus, minus) = GridFn::sample(&f, size)?.pos_neg_split()?;
    Ok((plus, minus.scale(Complex64::new(-1.0, 0.0))))
}

/// Output of [`q1_q2_decompose`].
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub q1: GridFn,
    pub q2: GridFn,
    pub report: LemmaReport,
}

/// Shrinks `w` radially so that `|w| ≤ cap`; returns `(clamped, rest)`.
fn clamp(w: &GridFn, cap: &[f64]) -> (GridFn, GridFn) {
    let clamped = w.map(|j, z| {
        let r = z.norm();
        let c = cap[j].max(0.0);
        if r > c {
            z * (c / r)
        } else {
            z
        }
    });
    let rest = w.sub(&clamped).expect("same grid");
    (clamped, rest)
}

fn sum(parts: &[GridFn]) -> GridFn {
    parts[1..]
        .iter()
        .fold(parts[0].clone(), |acc, g| acc.add(g).expect("same grid"))
}

/// Splits `1̂_{B_t} = Q₁ + Q₂` with `|Q₁| ≤ c₁(1̂_A + K)` and
/// `‖Q₂‖_∞ ≤ c₂K³` at every sample.
///
/// Every product `T_a ∗ e_t T_b (∗ e_{-t} T_c)` whose factors are all `T₁`
/// is clamped radially to the majorant `1̂_A + K` (twice that for the odd
/// part); the overflow and all terms containing a `T₂` go to `Q₂`.
pub fn q1_q2_decompose(a: &SymSet, t: i64, k: f64, size: usize, c2: f64) -> Result<Decomposition> {
    if t == 0 {
        return Err(Error::ZeroShift);
    }
    let degree = a.max_abs() + t.unsigned_abs();
    if !size.is_power_of_two() || (size as u64) < 2 * degree + 2 {
        return Err(Error::GridTooSmall { size, degree });
    }
    let f = ExactPoly::indicator(a);
    let cert = require_min_norm_at_most(&f, k)?;
    let sets = derived_sets(a, t)?;
    let target = GridFn::sample(&ExactPoly::indicator(&sets.b_t), size)?;
    let inputs = json!({ "A": a, "t": t, "K": k, "M": size });
    let mut report = LemmaReport::new("lemma7.1", inputs)
        .certified([cert])
        .constant("c1", Q1_CONSTANT)
        .constant("c2", c2);

    if sets.b_t.is_empty() {
        let zero_fn = GridFn::constant(0.0, size)?;
        let report = report
            .inequality(0.0, 0.0, 0.0)
            .note("B_t is empty; Q1 = Q2 = 0")
            .observed(0.0)
            .finish();
        return Ok(Decomposition {
            q1: zero_fn.clone(),
            q2: zero_fn,
            report,
        });
    }

    let fs = GridFn::sample(&f, size)?;
    let fv = fs.real_values()?;
    let (t1, t2) = t1_t2_split(a, k, size)?;
    let cap: Vec<f64> = fv.iter().map(|v| v + k).collect();
    let cap2: Vec<f64> = cap.iter().map(|v| 2.0 * v).collect();
    let conv = |g: &GridFn, h: &GridFn| g.circ_convolve(h).expect("same grid");
    let ts = [&t1, &t2];

    // 1̂_{A_s} = (T₁+T₂) ∗ (e_s T₁ + e_s T₂) for s = ±t
    let pair = |s: i64| -> (GridFn, GridFn) {
        let mut small = Vec::new();
        let mut main = None;
        for (i, x) in ts.iter().enumerate() {
            for (j, y) in ts.iter().enumerate() {
                let term = conv(x, &y.modulate(s));
                if i == 0 && j == 0 {
                    let (u, v) = clamp(&term, &cap);
                    main = Some(u);
                    small.push(v);
                } else {
                    small.push(term);
                }
            }
        }
        (main.unwrap(), sum(&small))
    };
    let (r1p, r2p) = pair(t);
    let (r1pp, r2pp) = pair(-t);

    // 1̂_{A ∩ (A+t) ∩ (A-t)} = (T₁+T₂) ∗ e_t(T₁+T₂) ∗ e_{-t}(T₁+T₂)
    let mut triple_small = Vec::new();
    let mut r1ppp = None;
    for (i, x) in ts.iter().enumerate() {
        for (j, y) in ts.iter().enumerate() {
            let xy = conv(x, &y.modulate(t));
            for (l, z) in ts.iter().enumerate() {
                let term = conv(&xy, &z.modulate(-t));
                if i + j + l == 0 {
                    let (u, v) = clamp(&term, &cap);
                    r1ppp = Some(u);
                    triple_small.push(v);
                } else {
                    triple_small.push(term);
                }
            }
        }
    }
    let r1ppp = r1ppp.unwrap();
    let r2ppp = sum(&triple_small);
    let minus_two = Complex64::new(-2.0, 0.0);
    let r1 = sum(&[r1p, r1pp, r1ppp.scale(minus_two)]);
    let r2 = sum(&[r2p, r2pp, r2ppp.scale(minus_two)]);

    // 1̂_{B_t} - 1̂_{-B_t} = (T₁+T₂) ∗ (e_t - e_{-t})(T₁+T₂)
    let odd = |g: &GridFn| g.modulate(t).sub(&g.modulate(-t)).expect("same grid");
    let (s1p, s2p) = (odd(&t1), odd(&t2));
    let (s1, s_overflow) = clamp(&conv(&t1, &s1p), &cap2);
    let s2 = sum(&[s_overflow, conv(&t1, &s2p), conv(&t2, &s1p), conv(&t2, &s2p)]);

    let half = Complex64::new(0.5, 0.0);
    let q1 = r1.add(&s1)?.scale(half);
    let q2 = r2.add(&s2)?.scale(half);

    let n = a.len() as f64;
    let tol = 1e-9 * (1.0 + n + k).powi(2);
    let q1_excess = q1
        .values()
        .iter()
        .zip(&cap)
        .map(|(z, c)| z.norm() - Q1_CONSTANT * c)
        .fold(f64::NEG_INFINITY, f64::max);
    let q1_ratio = q1
        .values()
        .iter()
        .zip(&cap)
        .filter(|(_, &c)| c > 1e-6)
        .map(|(z, c)| z.norm() / c)
        .fold(0.0, f64::max);
    let q2_max = q2.linf();
    let identity_err = q1.add(&q2)?.sub(&target)?.linf();
    let split_err = t1.add(&t2)?.sub(&fs)?.linf();
    let k3 = k.powi(3);

    report = report
        .inequality(q1_excess, 0.0, tol)
        .subcheck("max |Q2| <= c2 K^3", q2_max, c2 * k3, tol)
        .subcheck("max |Q1 + Q2 - 1_B_t| <= 1e-8", identity_err, 1e-8, 0.0)
        .subcheck("max |T2| <= K", t2.linf(), k, tol)
        .subcheck("max |T1 + T2 - 1_A| <= 1e-8", split_err, 1e-8, 0.0)
        .observed(if k3 > 0.0 { q2_max / k3 } else { 0.0 })
        .note(format!("observed max |Q1|/(1_A + K) = {q1_ratio:.6}"))
        .note(format!("observed max |Q2|/K^3 = {:.6}", q2_max / k3.max(f64::MIN_POSITIVE)))
        .note("headline: max_x (|Q1(x)| - c1 (1_A(x) + K)) <= 0")
        .finish();
    Ok(Decomposition { q1, q2, report })
}
