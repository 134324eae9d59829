//! Sparse trigonometric polynomials `f(x) = Σ_m c_m e(mx)`.
//!
//! Coefficients are either exact Gaussian integers ([`ExactPoly`]) or
//! floating complex numbers ([`FloatPoly`]). Convolution on `T` is the
//! coefficientwise product, so for indicator polynomials it is exactly set
//! intersection.
//!
//! [`min_norm`] certifies the global minimum of a real polynomial: a uniform
//! grid is refined by bisection, and on each cell of width `w` the function is
//! bounded below by the smaller endpoint value minus `sup|f''|·w²/8` (the
//! linear interpolation error), with `sup|f''| ≤ Σ|c_m|(2πm)²`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::{Complex, Complex64};
use num_traits::{One, Zero};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid;
use crate::setcore::IntSet;

pub type GaussInt = Complex<i64>;

/// Default absolute tolerance for certified minima.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Cap on grid points plus refinement evaluations for one certificate.
pub const MAX_EVALUATIONS: usize = 1 << 26;

/// Coefficient ring for [`TrigPoly`].
pub trait Coeff:
    Copy
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Serialize
    + DeserializeOwned
{
    fn conj(&self) -> Self;
    fn to_c64(&self) -> Complex64;
    fn from_gauss(z: GaussInt) -> Self;
    /// Whether `a` equals `conj(b)`; exact for integer coefficients.
    fn is_conj_of(&self, other: &Self) -> bool;
}

impl Coeff for GaussInt {
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re as f64, self.im as f64)
    }
    fn from_gauss(z: GaussInt) -> Self {
        z
    }
    fn is_conj_of(&self, other: &Self) -> bool {
        *self == Complex::conj(other)
    }
}

impl Coeff for Complex64 {
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn from_gauss(z: GaussInt) -> Self {
        Complex64::new(z.re as f64, z.im as f64)
    }
    fn is_conj_of(&self, other: &Self) -> bool {
        let d = *self - Complex::conj(other);
        d.norm() <= 1e-12 * (1.0 + self.norm().max(other.norm()))
    }
}

/// Sparse Fourier-side polynomial. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "BTreeMap<i64, C>", into = "BTreeMap<i64, C>")]
#[serde(bound = "C: Coeff")]
pub struct TrigPoly<C: Coeff> {
    coeffs: BTreeMap<i64, C>,
}

pub type ExactPoly = TrigPoly<GaussInt>;
pub type FloatPoly = TrigPoly<Complex64>;

impl<C: Coeff> From<BTreeMap<i64, C>> for TrigPoly<C> {
    fn from(map: BTreeMap<i64, C>) -> Self {
        TrigPoly::from_terms(map)
    }
}

impl<C: Coeff> From<TrigPoly<C>> for BTreeMap<i64, C> {
    fn from(p: TrigPoly<C>) -> Self {
        p.coeffs
    }
}

impl<C: Coeff> Default for TrigPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> TrigPoly<C> {
    pub fn zero() -> Self {
        TrigPoly {
            coeffs: BTreeMap::new(),
        }
    }

    /// Sums repeated frequencies and drops zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut coeffs: BTreeMap<i64, C> = BTreeMap::new();
        for (m, c) in terms {
            let e = coeffs.entry(m).or_insert_with(C::zero);
            *e = *e + c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        TrigPoly { coeffs }
    }

    /// `1̂_A(x) = Σ_{a∈A} e(ax)`.
    pub fn indicator(a: &IntSet) -> Self {
        Self::from_terms(a.iter().map(|&m| (m, C::one())))
    }

    /// `c·1̂_A`.
    pub fn weighted_indicator(a: &IntSet, c: C) -> Self {
        Self::from_terms(a.iter().map(|&m| (m, c)))
    }

    /// The constant function `c`.
    pub fn constant(c: C) -> Self {
        Self::from_terms([(0, c)])
    }

    pub fn coeff(&self, m: i64) -> C {
        self.coeffs.get(&m).copied().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, C)> + '_ {
        self.coeffs.iter().map(|(&m, &c)| (m, c))
    }

    pub fn support(&self) -> IntSet {
        self.coeffs.keys().copied().collect()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `max |m|` over the support, 0 for the zero polynomial.
    pub fn degree(&self) -> u64 {
        self.coeffs.keys().map(|m| m.unsigned_abs()).max().unwrap_or(0)
    }

    /// Mean value `∫ f = c_0`.
    pub fn mean(&self) -> C {
        self.coeff(0)
    }

    /// Real-valued iff `c_{-m} = conj(c_m)` for all `m`.
    pub fn is_real(&self) -> bool {
        self.coeffs
            .iter()
            .all(|(&m, c)| c.is_conj_of(&self.coeff(-m)))
    }

    /// `Σ |c_m|`, an upper bound for `‖f‖_∞`.
    pub fn abs_sum(&self) -> f64 {
        self.coeffs.values().map(|c| c.to_c64().norm()).sum()
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(C) -> D) -> TrigPoly<D> {
        TrigPoly::from_terms(self.terms().map(|(m, c)| (m, f(c))))
    }

    pub fn to_float(&self) -> FloatPoly {
        self.map(|c| c.to_c64())
    }

    /// Coefficientwise conjugate, i.e. `conj(f(-x))`.
    pub fn conj_coeffs(&self) -> Self {
        self.map(|c| c.conj())
    }

    pub fn scale(&self, s: C) -> Self {
        self.map(|c| c * s)
    }

    /// Multiplication by `e(tx)`.
    pub fn shift(&self, t: i64) -> Self {
        Self::from_terms(self.terms().map(|(m, c)| (m + t, c)))
    }

    /// `f(cx)` for a nonzero integer `c`.
    pub fn dilate(&self, c: i64) -> Self {
        assert!(c != 0, "dilation by zero");
        Self::from_terms(self.terms().map(|(m, v)| (m * c, v)))
    }

    /// Convolution on `T`: `(f∗g)^(m) = f̂(m)ĝ(m)`.
    pub fn convolve(&self, other: &Self) -> Self {
        let (small, large) = if self.coeffs.len() <= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        Self::from_terms(small.terms().filter_map(|(m, c)| {
            large.coeffs.get(&m).map(|&d| (m, if std::ptr::eq(small, self) { c * d } else { d * c }))
        }))
    }

    /// `f^{(∗k)}`, the `k`-fold convolution power (`k ≥ 1`).
    pub fn conv_pow(&self, k: u32) -> Self {
        assert!(k >= 1, "convolution power must be at least 1");
        self.map(|c| {
            let mut acc = c;
            for _ in 1..k {
                acc = acc * c;
            }
            acc
        })
    }

    /// `f(x)` by direct summation.
    pub fn eval(&self, x: f64) -> Complex64 {
        self.terms()
            .map(|(m, c)| c.to_c64() * unit(m, x))
            .sum()
    }

    /// `f(x)` for a real-valued polynomial.
    pub fn eval_real(&self, x: f64) -> Result<f64> {
        if !self.is_real() {
            return Err(Error::NotRealValued);
        }
        let v = self.eval(x);
        debug_assert!(v.im.abs() <= 1e-10 * self.abs_sum().max(1.0));
        Ok(v.re)
    }

    /// Samples `f(j/size)`, `j = 0..size`, via one inverse FFT.
    pub fn samples(&self, size: usize) -> Result<Vec<Complex64>> {
        let degree = self.degree();
        if !size.is_power_of_two() || (size as u64) <= 2 * degree {
            return Err(Error::GridTooSmall { size, degree });
        }
        Ok(grid::synthesize(self.terms().map(|(m, c)| (m, c.to_c64())), size))
    }

    /// `‖f‖_2` by Parseval.
    pub fn l2(&self) -> f64 {
        self.coeffs.values().map(|c| c.to_c64().norm_sqr()).sum::<f64>().sqrt()
    }
}

impl<C: Coeff> Add for &TrigPoly<C> {
    type Output = TrigPoly<C>;
    fn add(self, rhs: Self) -> TrigPoly<C> {
        TrigPoly::from_terms(self.terms().chain(rhs.terms()))
    }
}

impl<C: Coeff> Sub for &TrigPoly<C> {
    type Output = TrigPoly<C>;
    fn sub(self, rhs: Self) -> TrigPoly<C> {
        TrigPoly::from_terms(self.terms().chain(rhs.terms().map(|(m, c)| (m, -c))))
    }
}

impl<C: Coeff> Neg for &TrigPoly<C> {
    type Output = TrigPoly<C>;
    fn neg(self) -> TrigPoly<C> {
        self.map(|c| -c)
    }
}

/// `e(mx)`, with the phase reduced modulo 1 before scaling by 2π.
pub fn unit(m: i64, x: f64) -> Complex64 {
    let phase = (m as f64 * x).rem_euclid(1.0);
    Complex64::from_polar(1.0, 2.0 * PI * phase)
}

/// `⟨f, g⟩ = Σ_m f̂(m)·conj(ĝ(m))`.
pub fn parseval_inner<C: Coeff>(f: &TrigPoly<C>, g: &TrigPoly<C>) -> Complex64 {
    f.terms()
        .map(|(m, c)| c.to_c64() * g.coeff(m).to_c64().conj())
        .sum()
}

/// `L¹`, `L²`, `L^∞` norms; `l2` is exact (Parseval), `l1` and `linf` come
/// from a grid of `grid_size` points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Norms {
    pub l1: f64,
    pub l2: f64,
    pub linf: f64,
    /// `min(Σ|c_m|, grid max + Lipschitz slack)`.
    pub linf_upper: f64,
    pub grid_size: usize,
}

/// Default quadrature grid for a polynomial of the given degree.
pub fn quadrature_grid(degree: u64) -> usize {
    grid::pow2_at_least((64 * degree as usize).max(8192))
}

pub fn norms<C: Coeff>(f: &TrigPoly<C>) -> Norms {
    norms_on_grid(f, quadrature_grid(f.degree()))
}

pub fn norms_on_grid<C: Coeff>(f: &TrigPoly<C>, size: usize) -> Norms {
    if f.is_zero() {
        return Norms {
            l1: 0.0,
            l2: 0.0,
            linf: 0.0,
            linf_upper: 0.0,
            grid_size: 0,
        };
    }
    let f = f.to_float();
    // a purely imaginary f is handled as the real function -i·f
    let rotated = f.scale(Complex64::new(0.0, -1.0));
    let real_form = if f.is_real() {
        Some(&f)
    } else if rotated.is_real() {
        Some(&rotated)
    } else {
        None
    };
    let integral = |m: usize| -> (f64, f64) {
        let samples = f.samples(m).expect("quadrature grid above Nyquist");
        let l1 = match real_form {
            Some(g) => {
                let v: Vec<f64> = g.samples(m).unwrap().iter().map(|z| z.re).collect();
                abs_integral_real(&v)
            }
            None => samples.iter().map(|z| z.norm()).sum::<f64>() / m as f64,
        };
        (l1, samples.iter().map(|z| z.norm()).fold(0.0, f64::max))
    };
    // kinks of |f| at its zeros leave an O(h²) error; one Richardson step removes it
    let (coarse, _) = integral(size);
    let (fine, linf) = integral(2 * size);
    let fine_size = 2 * size;
    let lipschitz = 2.0 * PI * f.degree() as f64 * f.abs_sum();
    Norms {
        l1: ((4.0 * fine - coarse) / 3.0).max(0.0),
        l2: f.l2(),
        linf,
        linf_upper: f.abs_sum().min(linf + lipschitz / (2.0 * fine_size as f64)),
        grid_size: fine_size,
    }
}

/// `∫|g|` for periodic samples of a real function: trapezoid rule with the
/// zero crossing inside sign-changing cells located by linear interpolation.
pub fn abs_integral_real(values: &[f64]) -> f64 {
    let n = values.len();
    let mut total = 0.0;
    for j in 0..n {
        let a = values[j];
        let b = values[(j + 1) % n];
        total += if (a >= 0.0) == (b >= 0.0) || a == 0.0 || b == 0.0 {
            0.5 * (a.abs() + b.abs())
        } else {
            0.5 * (a * a + b * b) / (a.abs() + b.abs())
        };
    }
    total / n as f64
}

pub fn l1_norm<C: Coeff>(f: &TrigPoly<C>) -> f64 {
    norms(f).l1
}

/// Certified bracket for the global minimum of a real polynomial.
///
/// The true minimum lies in `[lower, lower + radius]` and `lower ≤ f(x)` for
/// every `x`; `argmin` is a point where `f(argmin) = lower + radius`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinCertificate {
    pub lower: f64,
    pub argmin: f64,
    pub radius: f64,
    pub grid_size: usize,
}

impl MinCertificate {
    /// `-lower`: the smallest `K` this certificate proves makes `f + K ≥ 0`.
    pub fn min_norm(&self) -> f64 {
        -self.lower
    }

    /// The attained value `f(argmin)`.
    pub fn upper(&self) -> f64 {
        self.lower + self.radius
    }
}

struct Cell {
    start: f64,
    width: f64,
    left: f64,
    right: f64,
}

/// Real form `c_0 + Σ_{m>0} 2(a_m cos 2πmx - b_m sin 2πmx)`.
struct RealForm {
    constant: f64,
    terms: Vec<(i64, f64, f64)>,
}

impl RealForm {
    fn new(f: &FloatPoly) -> Self {
        let terms = f
            .terms()
            .filter(|&(m, _)| m > 0)
            .map(|(m, c)| (m, 2.0 * c.re, 2.0 * c.im))
            .collect();
        RealForm {
            constant: f.coeff(0).re,
            terms,
        }
    }

    fn eval(&self, x: f64) -> f64 {
        self.constant
            + self
                .terms
                .iter()
                .map(|&(m, a, b)| {
                    let (s, c) = (2.0 * PI * (m as f64 * x).rem_euclid(1.0)).sin_cos();
                    a * c - b * s
                })
                .sum::<f64>()
    }
}

/// Certified global minimum of a real polynomial to absolute tolerance `tol`.
///
/// The plain global minimum is returned for polynomials with nonzero mean;
/// the one-sided norm `‖f‖_min = -min f` is meaningful for mean-zero `f`.
pub fn min_norm<C: Coeff>(f: &TrigPoly<C>, tol: f64) -> Result<MinCertificate> {
    if !f.is_real() {
        return Err(Error::NotRealValued);
    }
    if !(tol > 0.0) {
        return Err(Error::Invalid(format!("tolerance must be positive, got {tol}")));
    }
    if f.is_zero() {
        return Ok(MinCertificate {
            lower: 0.0,
            argmin: 0.0,
            radius: 0.0,
            grid_size: 0,
        });
    }
    let f = f.to_float();
    let degree = f.degree();
    if degree == 0 {
        return Ok(MinCertificate {
            lower: f.coeff(0).re,
            argmin: 0.0,
            radius: 0.0,
            grid_size: 1,
        });
    }
    let size = grid::pow2_at_least((64 * degree as usize).max(4096));
    if size > MAX_EVALUATIONS {
        return Err(Error::NonConvergence {
            tol,
            best_radius: f64::INFINITY,
            evaluations: 0,
        });
    }
    let form = RealForm::new(&f);
    let samples: Vec<f64> = f.samples(size)?.iter().map(|z| z.re).collect();

    let abs_sum = f.abs_sum();
    let curvature: f64 = f
        .terms()
        .map(|(m, c)| c.norm() * (2.0 * PI * m as f64).powi(2))
        .sum();
    let rounding = f64::EPSILON
        * abs_sum
        * (32.0 * (1.0 + (size as f64).log2()) + 4.0 * f.num_terms() as f64);
    let bound = |c: &Cell| c.left.min(c.right) - curvature * c.width * c.width / 8.0 - rounding;

    let (mut best_idx, mut upper) = (0usize, samples[0]);
    for (j, &v) in samples.iter().enumerate() {
        if v < upper {
            upper = v;
            best_idx = j;
        }
    }
    let mut argmin = best_idx as f64 / size as f64;

    let width = 1.0 / size as f64;
    let mut lower = f64::INFINITY;
    let mut pending = Vec::new();
    for j in 0..size {
        let cell = Cell {
            start: j as f64 * width,
            width,
            left: samples[j],
            right: samples[(j + 1) % size],
        };
        let b = bound(&cell);
        if b >= upper - tol {
            lower = lower.min(b);
        } else {
            pending.push(cell);
        }
    }

    let mut evaluations = size;
    while let Some(cell) = pending.pop() {
        let b = bound(&cell);
        if b >= upper - tol {
            lower = lower.min(b);
            continue;
        }
        if evaluations >= MAX_EVALUATIONS {
            pending.push(cell);
            let open = pending.iter().map(&bound).fold(lower, f64::min);
            return Err(Error::NonConvergence {
                tol,
                best_radius: upper - open,
                evaluations,
            });
        }
        let half = cell.width / 2.0;
        let mid = cell.start + half;
        let value = form.eval(mid);
        evaluations += 1;
        if value < upper {
            upper = value;
            argmin = mid;
        }
        pending.push(Cell {
            start: cell.start,
            width: half,
            left: cell.left,
            right: value,
        });
        pending.push(Cell {
            start: mid,
            width: half,
            left: value,
            right: cell.right,
        });
    }
    let lower = lower.min(upper);
    Ok(MinCertificate {
        lower,
        argmin: argmin.rem_euclid(1.0),
        radius: upper - lower,
        grid_size: size,
    })
}

/// Shorthand: certified `‖f‖_min` at the default tolerance, i.e. `-lower`.
pub fn certified_min_norm<C: Coeff>(f: &TrigPoly<C>) -> Result<(f64, MinCertificate)> {
    let cert = min_norm(f, DEFAULT_TOL)?;
    Ok((cert.min_norm(), cert))
}

/// Certifies `‖f‖_min ≤ k` up to `DEFAULT_TOL` (relative to `max(1, k)`).
///
/// Fails with `KTooSmall` when the certified lower end of `‖f‖_min`
/// exceeds `k` by more than the tolerance.
pub fn require_min_norm_at_most<C: Coeff>(f: &TrigPoly<C>, k: f64) -> Result<MinCertificate> {
    let cert = min_norm(f, DEFAULT_TOL)?;
    if cert.min_norm() > k + DEFAULT_TOL * k.abs().max(1.0) {
        return Err(Error::KTooSmall {
            k,
            certified: cert.min_norm() - cert.radius,
        });
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ind(v: &[i64]) -> ExactPoly {
        ExactPoly::indicator(&IntSet::from(v.to_vec()))
    }

    #[test]
    fn indicator_values() {
        let f = ind(&[-1, 1]);
        assert!((f.eval_real(0.0).unwrap() - 2.0).abs() < 1e-12);
        assert!((f.eval_real(0.5).unwrap() + 2.0).abs() < 1e-12);
        assert!(f.eval_real(0.25).unwrap().abs() < 1e-12);
        let g = ind(&[-2, -1, 1, 2]);
        assert!((g.eval_real(0.0).unwrap() - 4.0).abs() < 1e-12);
        assert!(g.eval_real(0.5).unwrap().abs() < 1e-12);
        assert!(ind(&[]).is_zero());
    }

    #[test]
    fn convolution_is_intersection() {
        let a = ind(&[-3, -1, 1, 3, 5]);
        let b = ind(&[-1, 2, 3, 5, 9]);
        assert_eq!(a.convolve(&b), ind(&[-1, 3, 5]));
        assert!(a.convolve(&ExactPoly::zero()).is_zero());
    }

    #[test]
    fn cube_of_lambda() {
        let f = ExactPoly::from_terms([(4, GaussInt::new(2, -1))]);
        assert_eq!(f.conv_pow(3).coeff(4), GaussInt::new(2, -11));
        assert_eq!(f.conv_pow(1), f);
    }

    #[test]
    fn not_real_is_rejected() {
        assert_eq!(min_norm(&ind(&[1, 2]), 1e-9), Err(Error::NotRealValued));
        assert_eq!(ind(&[1]).eval_real(0.1), Err(Error::NotRealValued));
    }

    #[test]
    fn min_of_two_cosines() {
        let c = min_norm(&ind(&[-1, 1]), 1e-9).unwrap();
        assert!((c.lower + 2.0).abs() < 1e-9);
        assert!((c.argmin - 0.5).abs() < 1e-4);
        assert!(c.radius <= 1e-9);
    }

    #[test]
    fn min_of_quadratic_in_cos() {
        // 2c + 2(2c² - 1) with c = cos 2πx is minimised at c = -1/4: value -9/4
        let c = min_norm(&ind(&[-2, -1, 1, 2]), 1e-9).unwrap();
        assert!((c.lower + 2.25).abs() < 2e-9, "{c:?}");
    }

    #[test]
    fn degenerate_certificates() {
        let z = min_norm(&ExactPoly::zero(), 1e-9).unwrap();
        assert_eq!((z.lower, z.argmin, z.radius), (0.0, 0.0, 0.0));
        let k = min_norm(&ExactPoly::constant(GaussInt::new(3, 0)), 1e-9).unwrap();
        assert_eq!(k.lower, 3.0);
        assert!(min_norm(&ind(&[-1, 1]), 0.0).is_err());
    }

    #[test]
    fn norms_of_two_cosines() {
        let n = norms(&ind(&[-1, 1]));
        assert!((n.l2 - 2f64.sqrt()).abs() < 1e-15);
        assert!((n.l1 - 4.0 / PI).abs() < 1e-6, "{}", n.l1);
        assert!((n.linf - 2.0).abs() < 1e-9);
        let z = norms(&ExactPoly::zero());
        assert_eq!((z.l1, z.l2, z.linf), (0.0, 0.0, 0.0));
    }

    #[test]
    fn parseval_examples() {
        let a = ind(&[-4, -1, 1, 4]);
        assert_eq!(parseval_inner(&a, &a), Complex64::new(4.0, 0.0));
        // ⟨1̂_B, 1̂_A + K⟩ = |B ∩ A| + K·[0 ∈ B]
        let b = ind(&[0, 1, 7]);
        let shifted = &a + &ExactPoly::constant(GaussInt::new(3, 0));
        assert_eq!(parseval_inner(&b, &shifted), Complex64::new(1.0 + 3.0, 0.0));
    }

    #[test]
    fn serde_uses_integer_pairs() {
        let f = ExactPoly::from_terms([(1, GaussInt::new(2, -1)), (-1, GaussInt::new(2, 1))]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"-1":[2,1],"1":[2,-1]}"#);
        let back: ExactPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        let cert = MinCertificate {
            lower: -1.0,
            argmin: 0.5,
            radius: 0.0,
            grid_size: 8,
        };
        let v: serde_json::Value = serde_json::to_value(cert).unwrap();
        assert_eq!(v["grid_size"], 8);
    }

    #[test]
    fn samples_reject_small_grid() {
        assert!(matches!(ind(&[-4, 4]).samples(8), Err(Error::GridTooSmall { .. })));
        assert!(matches!(ind(&[-1, 1]).samples(12), Err(Error::GridTooSmall { .. })));
    }
}
