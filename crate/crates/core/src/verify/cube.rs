//! The shifted functions `f_t, g_t`, the cube inequality, the `h∗h` trick
//! and the `L¹` bounds for `1̂_{B_t}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{certify_abs_bound, min_norm_bracket, Config};
use crate::error::{Error, Result};
use crate::gridfn::GridFn;
use crate::report::LemmaReport;
use crate::setcore::{derived_sets, DerivedSets, IntSet, SymSet};
use crate::trigpoly::{norms, unit, ExactPoly, FloatPoly, GaussInt};

const LAMBDA: GaussInt = GaussInt::new(2, -1);
const I: GaussInt = GaussInt::new(0, 1);

/// `λ1̂_{B_t} + λ̄1̂_{-B_t} + 2·1̂_{D_t} - i1̂_{C_t} + i1̂_{-C_t}` with `λ = 2 - i`.
fn ft_from_sets(sets: &DerivedSets) -> ExactPoly {
    let [b, nb, d, c, nc] = sets.five();
    let parts = [
        (b, LAMBDA),
        (nb, LAMBDA.conj()),
        (d, GaussInt::new(2, 0)),
        (c, -I),
        (nc, I),
    ];
    ExactPoly::from_terms(
        parts
            .iter()
            .flat_map(|(set, coeff)| set.iter().map(move |&m| (m, *coeff))),
    )
}

/// `2(1 ± sin 2πtx)·1̂_A` computed as `2·1̂_A ∓ i1̂_{A+t} ± i1̂_{A-t}`.
fn shifted_product(a: &SymSet, t: i64, sign: i64) -> ExactPoly {
    let one = ExactPoly::indicator(a);
    let s = I.scale(sign);
    &(&one.scale(GaussInt::new(2, 0)) - &one.shift(t).scale(s)) + &one.shift(-t).scale(s)
}

/// Builds `f_t` from the five-set recipe and `g_t` with conjugate
/// coefficients, and checks them against `2(1 ± sin 2πtx)·1̂_A`.
pub fn build_ft_gt(a: &SymSet, t: i64, cfg: &Config) -> Result<(ExactPoly, ExactPoly, LemmaReport)> {
    let sets = derived_sets(a, t)?;
    let f_t = ft_from_sets(&sets);
    let g_t = f_t.conj_coeffs();
    let inputs = json!({ "A": a, "t": t });

    let size = cfg.grid_size(f_t.degree());
    let one = ExactPoly::indicator(a).samples(size)?;
    let fs = f_t.samples(size)?;
    let grid_err = fs
        .iter()
        .zip(&one)
        .enumerate()
        .map(|(j, (v, w))| {
            let s = unit(t, j as f64 / size as f64).im;
            (v - w * (2.0 * (1.0 + s))).norm()
        })
        .fold(0.0, f64::max);

    let (k_low, _, c_a) = min_norm_bracket(&ExactPoly::indicator(a), cfg.tol)?;
    let (_, f_min, c_f) = min_norm_bracket(&f_t, cfg.tol)?;
    let (_, g_min, c_g) = min_norm_bracket(&g_t, cfg.tol)?;
    let tol = 8.0 * cfg.tol * k_low.max(1.0);
    let report = LemmaReport::new("lemma5.1", inputs)
        .certified([c_a, c_f, c_g])
        .inequality(f_min, 4.0 * k_low, tol)
        .subcheck("‖g_t‖_min <= 4K", g_min, 4.0 * k_low, tol)
        .assertion("f_t coefficients = 2(1+sin)1_A coefficients", f_t == shifted_product(a, t, 1))
        .assertion("g_t coefficients = 2(1-sin)1_A coefficients", g_t == shifted_product(a, t, -1))
        .subcheck("grid |f_t - 2(1+sin)1_A| <= 1e-9", grid_err, 1e-9 * (1.0 + a.len() as f64), 0.0)
        .constant("K", k_low)
        .finish();
    Ok((f_t, g_t, report))
}

/// `11(1̂_B - 1̂_{-B}) - (1̂_C - 1̂_{-C})` and `8·1̂_D + 2(1̂_B + 1̂_{-B})`.
fn cube_sides(sets: &DerivedSets) -> (FloatPoly, FloatPoly) {
    let ind = |s: &IntSet, c: f64| FloatPoly::weighted_indicator(s, Complex64::new(c, 0.0));
    let (b, c, d) = (&sets.b_t, &sets.c_t, &sets.d_t);
    let z = &(&(&ind(b, 11.0) - &ind(&b.neg(), 11.0)) - &ind(c, 1.0)) + &ind(&c.neg(), 1.0);
    let r = &(&ind(d, 8.0) + &ind(b, 2.0)) + &ind(&b.neg(), 2.0);
    (z, r)
}

/// `|11(1̂_B - 1̂_{-B}) - (1̂_C - 1̂_{-C})| ≤ 8·1̂_D + 2(1̂_B + 1̂_{-B}) + c₃K³`
/// everywhere, plus the exact coefficients of `f_t^{(∗3)}`.
pub fn check_cube_inequality(a: &SymSet, t: i64, cfg: &Config) -> Result<LemmaReport> {
    let sets = derived_sets(a, t)?;
    let (f_t, _, ft_report) = build_ft_gt(a, t, cfg)?;
    let cube = f_t.conv_pow(3);
    let expected = [
        (GaussInt::new(2, -11), &sets.b_t, "B_t"),
        (GaussInt::new(2, 11), &sets.b_t.neg(), "-B_t"),
        (GaussInt::new(8, 0), &sets.d_t, "D_t"),
        (GaussInt::new(0, 1), &sets.c_t, "C_t"),
        (GaussInt::new(0, -1), &sets.c_t.neg(), "-C_t"),
    ];
    let mut mismatches = Vec::new();
    for (value, set, name) in &expected {
        for &m in set.iter() {
            if cube.coeff(m) != *value {
                mismatches.push(format!("coefficient at {m} in {name} is {}", cube.coeff(m)));
            }
        }
    }
    let five: IntSet = sets.five().iter().fold(IntSet::empty(), |acc, s| acc.union(s));
    let stray = cube.support().difference(&five);
    if !stray.is_empty() {
        mismatches.push(format!("support outside the five sets: {stray}"));
    }

    let (k_low, _, c_a) = min_norm_bracket(&ExactPoly::indicator(a), cfg.tol)?;
    let (z, r) = cube_sides(&sets);
    let c3 = cfg.constants.c3;
    let k3 = k_low.powi(3);
    let bound = certify_abs_bound(&z, &r, 0.0, cfg)?;
    // bound.slack = certified lower bound of min(R - |Z|)
    let excess = -bound.slack;
    let mut report = LemmaReport::new("prop5.2", json!({ "A": a, "t": t }))
        .certified(std::iter::once(c_a).chain(bound.certificates))
        .inequality(excess, c3 * k3, 4.0 * cfg.tol * (1.0 + k3))
        .constant("c3", c3)
        .constant("K", k_low)
        .observed(if k3 > 0.0 { excess.max(0.0) / k3 } else { 0.0 })
        .assertion("f_t^(*3) coefficients exact", mismatches.is_empty())
        .assertion("f_t construction report passes", ft_report.pass)
        .note("headline: max_x (|Z(x)| - R(x)) <= c3 K^3");
    report.provenance = bound.provenance;
    for m in mismatches.into_iter().take(8) {
        report = report.note(m);
    }
    Ok(report.finish())
}

/// Inputs of the `h∗h` argument: `|P₁| ≤ P₂ + L`, `P̂₁ ≥ 1 + c` on `B`,
/// `|P̂₂| ≤ 1`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HhInstance {
    pub p1: FloatPoly,
    pub p2: FloatPoly,
    pub b: IntSet,
    pub c: f64,
    pub l: f64,
}

/// The instance produced by the cube inequality: `P₁ = Z/8`, `P₂ = R/8`,
/// `B = B_t`, `c = 3/8`, `L = c₃K³/8` (with the upper end of the certified
/// `K`, so the hypothesis inherits from the cube inequality).
pub fn cube_hh_instance(a: &SymSet, t: i64, cfg: &Config) -> Result<HhInstance> {
    let sets = derived_sets(a, t)?;
    let (_, k_high, _) = min_norm_bracket(&ExactPoly::indicator(a), cfg.tol)?;
    let (z, r) = cube_sides(&sets);
    let eighth = Complex64::new(0.125, 0.0);
    Ok(HhInstance {
        p1: z.scale(eighth),
        p2: r.scale(eighth),
        b: sets.b_t,
        c: 3.0 / 8.0,
        l: cfg.constants.c3 * k_high.powi(3) / 8.0,
    })
}

/// `L ≥ c|B|/‖1̂_B‖₁²`, with the proof's chain reproduced on a grid.
pub fn check_hh_trick(inst: &HhInstance, cfg: &Config) -> Result<LemmaReport> {
    let HhInstance { p1, p2, b, c, l } = inst;
    let (c, l) = (*c, *l);
    let inputs = json!({ "B": b, "c": c, "L": l, "deg P1": p1.degree(), "deg P2": p2.degree() });
    let report = LemmaReport::new("prop5.4", inputs).constant("c", c).constant("L", l);
    if b.is_empty() {
        return Ok(report.exact().inequality(0.0, l, 0.0).mark_vacuous("B is empty").finish());
    }
    if !p2.is_real() {
        return Err(Error::HypothesisFailed("P2 is not real-valued".into()));
    }
    for &m in b {
        let v = p1.coeff(m);
        if v.re < 1.0 + c - 1e-12 || v.im.abs() > 1e-12 {
            return Err(Error::HypothesisFailed(format!("P1^({m}) = {v} is not >= 1 + c = {}", 1.0 + c)));
        }
    }
    if let Some((m, v)) = p2.terms().find(|(_, v)| v.norm() > 1.0 + 1e-12) {
        return Err(Error::HypothesisFailed(format!("|P2^({m})| = {} > 1", v.norm())));
    }
    let bound = certify_abs_bound(p1, p2, l, cfg)?;
    if bound.slack < -cfg.tol {
        return Err(Error::HypothesisFailed(format!(
            "|P1| <= P2 + L fails: certified min of P2 + L - |P1| is {:e}",
            bound.slack
        )));
    }

    let one_b = FloatPoly::indicator(b);
    let n_b = b.len() as f64;
    let l1 = norms(&one_b).l1;
    let headline = c * n_b / (l1 * l1);

    let degree = p1.degree().max(p2.degree()).max(one_b.degree());
    let size = cfg.grid_size(degree);
    let b_samples = one_b.samples(size)?;
    let h = GridFn::from_real(b_samples.iter().map(|z| z.norm()).collect())?;
    let hh = h.circ_convolve(&h)?;
    let p1s = p1.samples(size)?;
    let p2s = p2.samples(size)?;
    let mean = |f: &dyn Fn(usize) -> f64| (0..size).map(f).sum::<f64>() / size as f64;
    let (hv, hhv) = (h.values(), hh.values());

    let paired: f64 = b.iter().map(|&m| p1.coeff(m).re).sum();
    let via_grid = mean(&|j| (p1s[j] * b_samples[j].conj()).re);
    let weighted = mean(&|j| (p2s[j].re + l) * hv[j].re);
    let t1 = mean(&|j| p2s[j].re * hhv[j].re);
    let hh_mass = hh.mean().re;
    let h_mass = h.mean().re;
    let scale = 1e-9 * (1.0 + n_b) * (1.0 + l) * (1.0 + h_mass);
    let mut report = report
        .certified(bound.certificates)
        .inequality(headline, l, 1e-6 * headline.max(1.0))
        .subcheck_exact("(1+c)|B| <= Σ_b P1^(b)", (1.0 + c) * n_b, paired + 1e-12 * n_b)
        .subcheck("Σ_b P1^(b) = ∫ P1·conj(1_B)", (paired - via_grid).abs(), 0.0, scale)
        .subcheck("∫ P1·conj(1_B) <= ∫ (P2 + L)h", via_grid, weighted, scale)
        .subcheck("∫ (P2 + L)h <= T1 + L∫h∗h", weighted, t1 + l * hh_mass, scale)
        .subcheck("T1 = Σ ĥ(m)² P2^(m) <= |B|", t1, n_b, scale)
        .subcheck("∫ h∗h = (∫h)²", (hh_mass - h_mass * h_mass).abs(), 0.0, scale)
        .observed(l * l1 * l1 / n_b)
        .note(format!("‖1_B‖₁ = {l1:.9} (quadrature); chain grid M = {size}"))
        .note("observed value is L‖1_B‖₁²/|B|, the largest c the conclusion allows");
    report.provenance = bound.provenance;
    Ok(report.finish())
}

/// `‖1̂_{B_t}‖₁ ≤ C_l1‖1̂_A‖₁³`, and the refined bounds
/// `‖1̂_{B_t} - 1̂_{-B_t}‖₁, ‖1̂_{C_t} - 1̂_{-C_t}‖₁ ≤ C'_l1·L²`.
pub fn check_l1_bound(a: &SymSet, t: i64, cfg: &Config) -> Result<LemmaReport> {
    let sets = derived_sets(a, t)?;
    let (c1, c2) = (cfg.constants.c_l1, cfg.constants.c_l1_prime);
    let one = |s: &IntSet| FloatPoly::indicator(s);
    let a_l1 = norms(&ExactPoly::indicator(a)).l1;
    let b_l1 = norms(&one(&sets.b_t)).l1;
    let b_odd = norms(&(&one(&sets.b_t) - &one(&sets.b_t.neg()))).l1;
    let c_odd = norms(&(&one(&sets.c_t) - &one(&sets.c_t.neg()))).l1;
    let (l_low, _, cert) = min_norm_bracket(&ExactPoly::indicator(a), cfg.tol)?;
    let l2 = l_low * l_low;
    let a3 = a_l1.powi(3);
    let rel = |x: f64| 1e-6 * x.max(1.0);
    let observed = if a3 > 0.0 { b_l1 / a3 } else { 0.0 };
    Ok(LemmaReport::new("lemma5.5", json!({ "A": a, "t": t }))
        .certified([cert])
        .inequality(b_l1, c1 * a3, rel(c1 * a3))
        .subcheck("‖1_B - 1_-B‖₁ <= 2‖1_A‖₁²", b_odd, 2.0 * a_l1 * a_l1, rel(a_l1 * a_l1))
        .subcheck("‖1_B - 1_-B‖₁ <= C' L²", b_odd, c2 * l2, rel(c2 * l2))
        .subcheck("‖1_C - 1_-C‖₁ <= C' L²", c_odd, c2 * l2, rel(c2 * l2))
        .constant("C_l1", c1)
        .constant("C'_l1", c2)
        .constant("L", l_low)
        .observed(observed)
        .note(format!(
            "observed ‖1_B - 1_-B‖₁/L² = {:.6}, ‖1_C - 1_-C‖₁/L² = {:.6}",
            b_odd / l2,
            c_odd / l2
        ))
        .finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setcore::sidon_difference_construction;

    #[test]
    fn ft_coefficients() {
        let a = SymSet::new([-3, -2, -1, 1, 2, 3]).unwrap();
        let (f, g, r) = build_ft_gt(&a, 1, &Config::default()).unwrap();
        assert!(r.pass, "{r:?}");
        let sets = derived_sets(&a, 1).unwrap();
        for &m in &sets.d_t {
            assert_eq!(f.coeff(m), GaussInt::new(2, 0));
        }
        for (m, c) in f.terms() {
            assert_eq!(g.coeff(m), c.conj());
        }
        assert_eq!(build_ft_gt(&a, 0, &Config::default()).unwrap_err(), Error::ZeroShift);
    }

    #[test]
    fn cube_on_small_sets() {
        let cfg = Config::default();
        for t in 1..4 {
            let r = check_cube_inequality(&SymSet::new([-1, 1]).unwrap(), t, &cfg).unwrap();
            assert!(r.pass, "{r:?}");
        }
        let a = sidon_difference_construction(4);
        let r = check_cube_inequality(&a, 1, &cfg).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn hh_pipeline() {
        let cfg = Config::default();
        let a = sidon_difference_construction(3);
        for t in [1, 2, 3] {
            let inst = cube_hh_instance(&a, t, &cfg).unwrap();
            let r = check_hh_trick(&inst, &cfg).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn hh_hypothesis_failure_is_reported() {
        let b = IntSet::from(vec![1]);
        let p1 = FloatPoly::indicator(&b).scale(Complex64::new(2.0, 0.0));
        let inst = HhInstance {
            p1,
            p2: FloatPoly::zero(),
            b,
            c: 0.5,
            l: 0.1,
        };
        assert!(matches!(check_hh_trick(&inst, &Config::default()), Err(Error::HypothesisFailed(_))));
    }

    #[test]
    fn l1_bound_small() {
        let r = check_l1_bound(&SymSet::new([-1, 1]).unwrap(), 1, &Config::default()).unwrap();
        assert!(r.pass, "{r:?}");
    }
}
