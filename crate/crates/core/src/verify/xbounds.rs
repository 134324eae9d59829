//! Two-sided bounds for `X = ∫(8·1̂_D + 2(1̂_B + 1̂_{-B}) + c₃K³)(H₁∗H₁)`
//! with `H₁ = |Q₁|`.

use serde_json::json;

use super::{min_norm_bracket, Config};
use crate::error::{Error, Result};
use crate::gridfn::{q1_q2_decompose, GridFn};
use crate::report::{LemmaReport, Provenance};
use crate::setcore::{derived_sets, SymSet};
use crate::trigpoly::{ExactPoly, FloatPoly};

/// `X ≤ 8|B_t| + C_a(K³|B_t|^{1/2} + K⁶)` and `X ≥ 11|B_t| - C_bK⁶`.
///
/// Both are evaluated on the grid used for the `Q₁ + Q₂` decomposition.
/// When both hold they force `|B_t| ≤ K⁶·((C_a + √(C_a² + 12(C_a + C_b)))/6)²`,
/// which is reported alongside.
pub fn check_x_bounds(a: &SymSet, t: i64, c2: f64, cfg: &Config) -> Result<LemmaReport> {
    let sets = derived_sets(a, t)?;
    let (_, k, cert) = min_norm_bracket(&ExactPoly::indicator(a), cfg.tol)?;
    let degree = a.max_abs() + t.unsigned_abs();
    let size = cfg.grid_size(2 * degree + 2);
    let decomposition = q1_q2_decompose(a, t, k, size, c2)
        .map_err(|e| Error::DecompositionUnavailable(e.to_string()))?;
    let (c3, c_a, c_b) = (cfg.constants.c3, cfg.constants.c_a, cfg.constants.c_b);
    let k3 = k.powi(3);
    let k6 = k3 * k3;

    let weight = &(&FloatPoly::weighted_indicator(&sets.d_t, 8.0.into())
        + &FloatPoly::weighted_indicator(&sets.b_t, 2.0.into()))
        + &FloatPoly::weighted_indicator(&sets.b_t.neg(), 2.0.into());
    let weight = GridFn::sample(&weight, size)?;
    let h1 = decomposition.q1.abs();
    let hh = h1.circ_convolve(&h1)?;
    let x = weight
        .values()
        .iter()
        .zip(hh.values())
        .map(|(w, v)| (w.re + c3 * k3) * v.re)
        .sum::<f64>()
        / size as f64;

    let n_b = sets.b_t.len() as f64;
    let upper = 8.0 * n_b + c_a * (k3 * n_b.sqrt() + k6);
    let lower = 11.0 * n_b - c_b * k6;
    let c_a_min = ((x - 8.0 * n_b) / (k3 * n_b.sqrt() + k6)).max(0.0);
    let c_b_min = ((11.0 * n_b - x) / k6).max(0.0);
    let root = (c_a + (c_a * c_a + 12.0 * (c_a + c_b)).sqrt()) / 6.0;
    let implied = k6 * root * root;
    let tol = 1e-8 * (1.0 + x.abs());

    let mut report = LemmaReport::new("section7.x_bounds", json!({ "A": a, "t": t, "K": k, "M": size }))
        .certified([cert])
        .inequality(x, upper, tol)
        .subcheck("X >= 11|B_t| - C_b K^6", lower, x, tol)
        .subcheck("|B_t| <= implied bound", n_b, implied, 0.0)
        .assertion("Q1/Q2 decomposition report passes", decomposition.report.pass)
        .constant("c2", c2)
        .constant("c3", c3)
        .constant("C_a", c_a)
        .constant("C_b", c_b)
        .constant("K", k)
        .observed(c_a_min.max(c_b_min))
        .note(format!("X = {x:.9}, |B_t| = {n_b}"))
        .note(format!("minimal passing C_a = {c_a_min:.6}, C_b = {c_b_min:.6}"))
        .note(format!("implied |B_t| <= {implied:.6e}"));
    report.provenance = Provenance::Grid;
    if implied >= a.len() as f64 {
        report = report.note("bracket does not constrain |B_t|: implied bound is at least |A|");
    }
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gridfn::DEFAULT_C2;
    use crate::setcore::sidon_difference_construction;

    #[test]
    fn sidon_difference_three() {
        let a = sidon_difference_construction(3);
        let r = check_x_bounds(&a, 1, DEFAULT_C2, &Config::default()).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn empty_bt() {
        let a = SymSet::new([-1, 1]).unwrap();
        let r = check_x_bounds(&a, 5, DEFAULT_C2, &Config::default()).unwrap();
        assert!(r.pass);
        assert_eq!(r.lhs, 0.0);
    }
}
