//! The one-sided norm calculus: `‖·‖₁` against `‖·‖_min`, and convolutions.

use serde_json::json;

use super::{min_norm_bracket, require_mean_zero, require_real, Config};
use crate::error::Result;
use crate::report::LemmaReport;
use crate::trigpoly::{norms, FloatPoly};

/// Absolute tolerance for checks that mix quadrature and certificates.
const QUADRATURE_TOL: f64 = 1e-6;

fn precheck(f: &FloatPoly) -> Result<()> {
    require_real(f)?;
    require_mean_zero(f)
}

/// `‖f‖₁ ≤ 2‖f‖_min` for real mean-zero `f`.
pub fn check_min_to_l1(f: &FloatPoly, cfg: &Config) -> Result<LemmaReport> {
    precheck(f)?;
    let inputs = json!({ "f": f });
    if f.is_zero() {
        return Ok(LemmaReport::new("lemma3.2", inputs)
            .exact()
            .inequality(0.0, 0.0, QUADRATURE_TOL)
            .finish());
    }
    let (low, _, cert) = min_norm_bracket(f, cfg.tol)?;
    let l1 = norms(f).l1;
    Ok(LemmaReport::new("lemma3.2", inputs)
        .certified([cert])
        .inequality(l1, 2.0 * low, QUADRATURE_TOL)
        .observed(l1 / low)
        .note("observed value is ‖f‖₁/‖f‖_min")
        .finish())
}

/// `‖f∗g‖_min ≤ (‖f‖_min‖g‖₁ + ‖f‖₁‖g‖_min)/2`.
pub fn check_conv_min(f: &FloatPoly, g: &FloatPoly, cfg: &Config) -> Result<LemmaReport> {
    precheck(f)?;
    precheck(g)?;
    let inputs = json!({ "f": f, "g": g });
    let fg = f.convolve(g);
    if f.is_zero() || g.is_zero() {
        return Ok(LemmaReport::new("lemma3.3", inputs)
            .exact()
            .inequality(0.0, 0.0, QUADRATURE_TOL)
            .finish());
    }
    let (_, lhs, c_fg) = min_norm_bracket(&fg, cfg.tol)?;
    let (f_min, _, c_f) = min_norm_bracket(f, cfg.tol)?;
    let (g_min, _, c_g) = min_norm_bracket(g, cfg.tol)?;
    let rhs = (f_min * norms(g).l1 + norms(f).l1 * g_min) / 2.0;
    Ok(LemmaReport::new("lemma3.3", inputs)
        .certified([c_fg, c_f, c_g])
        .inequality(lhs, rhs, QUADRATURE_TOL)
        .finish())
}

/// `‖f∗g‖_min ≤ ‖f‖_min‖g‖_min`, together with `‖f^{(∗m)}‖_min ≤ ‖f‖_min^m`
/// for `m = 2, 3`.
pub fn check_kconv(f: &FloatPoly, g: &FloatPoly, cfg: &Config) -> Result<LemmaReport> {
    precheck(f)?;
    precheck(g)?;
    let inputs = json!({ "f": f, "g": g });
    let (_, lhs, c_fg) = min_norm_bracket(&f.convolve(g), cfg.tol)?;
    let (f_min, _, c_f) = min_norm_bracket(f, cfg.tol)?;
    let (g_min, _, c_g) = min_norm_bracket(g, cfg.tol)?;
    let (_, f2, c_f2) = min_norm_bracket(&f.conv_pow(2), cfg.tol)?;
    let (_, f3, c_f3) = min_norm_bracket(&f.conv_pow(3), cfg.tol)?;
    let tol = cfg.tol * (1.0 + f_min.max(g_min)).powi(3) * 4.0;
    Ok(LemmaReport::new("lemma3.4", inputs)
        .certified([c_fg, c_f, c_g, c_f2, c_f3])
        .inequality(lhs, f_min * g_min, tol)
        .subcheck("‖f∗f‖_min <= ‖f‖_min^2", f2, f_min.powi(2), tol)
        .subcheck("‖f∗f∗f‖_min <= ‖f‖_min^3", f3, f_min.powi(3), tol)
        .finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::setcore::IntSet;
    use crate::trigpoly::ExactPoly;
    use num_complex::Complex64;

    fn two_cos() -> FloatPoly {
        ExactPoly::indicator(&IntSet::from(vec![-1, 1])).to_float()
    }

    #[test]
    fn two_cosines() {
        let cfg = Config::default();
        let r = check_min_to_l1(&two_cos(), &cfg).unwrap();
        assert!(r.pass);
        assert!((r.lhs - 4.0 / std::f64::consts::PI).abs() < 1e-6);
        assert!((r.rhs - 4.0).abs() < 1e-8);
        let r = check_conv_min(&two_cos(), &two_cos(), &cfg).unwrap();
        assert!(r.pass && (r.lhs - 2.0).abs() < 1e-8);
        assert!((r.rhs - 8.0 / std::f64::consts::PI).abs() < 1e-6);
        let r = check_kconv(&two_cos(), &two_cos(), &cfg).unwrap();
        assert!(r.pass && (r.rhs - 4.0).abs() < 1e-8);
    }

    #[test]
    fn zero_and_bad_inputs() {
        let cfg = Config::default();
        assert!(check_min_to_l1(&FloatPoly::zero(), &cfg).unwrap().pass);
        assert!(check_conv_min(&two_cos(), &FloatPoly::zero(), &cfg).unwrap().pass);
        let shifted = &two_cos() + &FloatPoly::constant(Complex64::new(1.0, 0.0));
        assert!(matches!(check_min_to_l1(&shifted, &cfg), Err(Error::NotMeanZero(_))));
        let complex = FloatPoly::from_terms([(1, Complex64::new(1.0, 0.0))]);
        assert_eq!(check_min_to_l1(&complex, &cfg), Err(Error::NotRealValued));
    }
}
