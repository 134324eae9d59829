//! Sidon-difference upper bounds and the searches for a good shift `t`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::grid::pow2_at_least;
use crate::report::LemmaReport;
use crate::setcore::{ap_partition, best_shift, derived_sets, sidon_difference_of, sidon_set, SymSet};
use crate::trigpoly::{min_norm, ExactPoly};
use crate::verify::{check_roth, Config};

/// Orbit size cap for [`prime_product_t_search`].
pub const ORBIT_CAP: usize = 10_000;

/// For the greedy Sidon set `B` of size `m` and `A = (B - B) \ {0}`:
/// checks `1̂_A = |1̂_B|² - m` on a grid and certifies `‖1̂_A‖_min ≤ m`.
///
/// `n = m² - m`; the report's observed value is `‖1̂_A‖_min/√n`. In the
/// cosine convention the bound reads `-min Σ_{a∈A, a>0} cos 2πax ≤ m/2`.
pub fn sidon_upper_experiment(m: usize, tol: f64) -> Result<LemmaReport> {
    if m < 2 {
        return Err(Error::PreconditionViolated(format!("need m >= 2, got {m}")));
    }
    let b = sidon_set(m);
    let a = sidon_difference_of(&b);
    let n = a.len();
    let one_a = ExactPoly::indicator(&a);
    let one_b = ExactPoly::indicator(&b);
    let size = pow2_at_least(2 * one_a.degree().max(one_b.degree()) as usize + 1);
    let identity_err = one_a
        .samples(size)?
        .iter()
        .zip(one_b.samples(size)?)
        .map(|(fa, fb)| (fa.re - (fb.norm_sqr() - m as f64)).abs().max(fa.im.abs()))
        .fold(0.0, f64::max);
    let cert = min_norm(&one_a, tol)?;
    let k = cert.min_norm();
    let mf = m as f64;
    let ratio = k / (n as f64).sqrt();
    Ok(LemmaReport::new("sidon_upper", json!({ "m": m, "B": b, "n": n }))
        .certified([cert])
        .inequality(k, mf, tol)
        .subcheck("|1_A - (|1_B|^2 - m)| on grid", identity_err, 1e-10, 0.0)
        .assertion("|A| = m^2 - m", n == m * m - m)
        .observed(ratio)
        .note(format!(
            "exponential convention ‖1_A‖_min = {k:.9}; cosine convention {:.9} <= m/2 = {}",
            k / 2.0,
            mf / 2.0
        ))
        .note(format!("ratio ‖1_A‖_min/sqrt(n) = {ratio:.6}, m/sqrt(n) = {:.6}", mf / (n as f64).sqrt()))
        .finish())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BestShift {
    pub t: i64,
    /// `|A ∩ (A + t)|`
    pub size: usize,
    /// `Σ_{t∈A} |A ∩ (A + t)| ≥ |A|²/(2K)` with the certified `K`.
    pub roth: LemmaReport,
}

/// `argmax_{t≠0} |A ∩ (A + t)|` (ties: smallest `|t|`, then positive) with
/// the counting bound that guarantees a large value.
pub fn best_t_energy(a: &SymSet, cfg: &Config) -> Result<BestShift> {
    if a.len() < 2 {
        return Err(Error::PreconditionViolated("need |A| >= 2".into()));
    }
    let (t, size) = best_shift(a).expect("|A| >= 2");
    let cert = min_norm(&ExactPoly::indicator(a), cfg.tol)?;
    let roth = check_roth(a, a.as_intset(), cert.min_norm(), cfg)?;
    Ok(BestShift { t, size, roth })
}

/// One instance of `|A ∩ (A + jt)| ≥ |A ∩ (A + t)| - M·r(t)` where `r(t)` is
/// the number of progressions of length at least two with difference `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub t: i64,
    pub j: i64,
    /// `|A ∩ (A + jt)|`
    pub overlap_jt: usize,
    /// `|A ∩ (A + t)|`
    pub overlap_t: usize,
    pub r_t: usize,
    /// Exponent sum of `t/t₀`.
    pub depth: usize,
}

impl TraceStep {
    /// The inequality with `r(t)`; holds unconditionally.
    pub fn holds(&self, m_param: usize) -> bool {
        self.overlap_jt as i64 >= self.overlap_t as i64 - (m_param * self.r_t) as i64
    }

    /// The inequality with `L` in place of `r(t)`.
    pub fn holds_with_l(&self, m_param: usize, l: usize) -> bool {
        self.overlap_jt as i64 >= self.overlap_t as i64 - (m_param * l) as i64
    }

    /// `holds`, plus `holds_with_l` whenever `r(t) ≤ L`.
    pub fn verified(&self, m_param: usize, l: usize) -> bool {
        self.holds(m_param) && (self.r_t > l || self.holds_with_l(m_param, l))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TSearch {
    pub t0: i64,
    /// `|A ∩ (A + t₀)|`
    pub k: usize,
    /// Best shift over the explored orbit and its `|B_t|`.
    pub t: i64,
    pub b_size: usize,
    pub orbit: Vec<i64>,
    pub trace: Vec<TraceStep>,
    /// Exponent sums up to this bound were explored.
    pub depth_bound: usize,
    /// The orbit cap stopped the exploration.
    pub truncated: bool,
    /// Every explored `t` had `r(t) ≤ L`.
    pub hypothesis_holds: bool,
    /// `|A ∩ (A + t)| ≥ k - M·L·depth` at every explored `t` with
    /// `depth ≤ k/(2ML)`; only implied when `hypothesis_holds`.
    pub depth_bound_holds: bool,
}

impl TSearch {
    pub fn all_verified(&self, m_param: usize, l: usize) -> bool {
        self.trace.iter().all(|s| s.verified(m_param, l))
    }
}

fn primes_up_to(m: usize) -> Vec<i64> {
    (2..=m as i64)
        .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .collect()
}

/// Explores `t = (Π_{p≤M} p^{α_p})·t₀` from the best shift `t₀`, checking
/// `|A ∩ (A + jt)| ≥ |A ∩ (A + t)| - M·r(t)` for `j = 1..M` at each explored
/// `t`, and returns the `t` with the largest `|B_t|`.
///
/// Exponent sums go up to `max(1, ⌊k/(2ML)⌋)` with `k = |A ∩ (A + t₀)|`;
/// multiples with `A ∩ (A + t) = ∅` are not expanded further.
pub fn prime_product_t_search(a: &SymSet, m_param: usize, l: usize) -> Result<TSearch> {
    if m_param == 0 || l == 0 {
        return Err(Error::Invalid("M and L must be positive".into()));
    }
    let Some((t0, k)) = best_shift(a) else {
        return Ok(TSearch {
            t0: 1,
            k: 0,
            t: 1,
            b_size: 0,
            orbit: vec![1],
            trace: Vec::new(),
            depth_bound: 0,
            truncated: false,
            hypothesis_holds: true,
            depth_bound_holds: true,
        });
    };
    let primes = primes_up_to(m_param);
    let claim_depth = k / (2 * m_param * l);
    let depth_bound = claim_depth.max(1);

    let mut seen: HashSet<i64> = HashSet::from([t0]);
    let mut orbit = vec![t0];
    let mut level = vec![t0];
    let mut depths = vec![0usize];
    let mut truncated = false;
    for depth in 1..=depth_bound {
        let mut next = Vec::new();
        for &t in &level {
            if a.shift_overlap(t) == 0 {
                continue;
            }
            for &p in &primes {
                let Some(child) = t.checked_mul(p) else { continue };
                if seen.contains(&child) {
                    continue;
                }
                if orbit.len() >= ORBIT_CAP {
                    truncated = true;
                    break;
                }
                seen.insert(child);
                orbit.push(child);
                depths.push(depth);
                next.push(child);
            }
        }
        level = next;
        if truncated || level.is_empty() {
            break;
        }
    }

    let mut trace = Vec::new();
    let mut hypothesis_holds = true;
    let mut depth_bound_holds = true;
    let mut best = (t0, derived_sets(a, t0)?.b_t.len());
    for (&t, &depth) in orbit.iter().zip(&depths) {
        let overlap_t = a.shift_overlap(t);
        let r_t = ap_partition(a, t)?.r;
        hypothesis_holds &= r_t <= l;
        if depth <= claim_depth {
            depth_bound_holds &= overlap_t as i64 >= k as i64 - (m_param * l * depth) as i64;
        }
        for j in 1..=m_param as i64 {
            trace.push(TraceStep {
                t,
                j,
                overlap_jt: a.shift_overlap(j * t),
                overlap_t,
                r_t,
                depth,
            });
        }
        let b = derived_sets(a, t)?.b_t.len();
        let key = |(t, b): (i64, usize)| (b, std::cmp::Reverse(t.unsigned_abs()), t > 0);
        if key((t, b)) > key(best) {
            best = (t, b);
        }
    }
    if k == 0 {
        trace.clear();
    }
    Ok(TSearch {
        t0,
        k,
        t: best.0,
        b_size: best.1,
        orbit,
        trace,
        depth_bound,
        truncated,
        hypothesis_holds,
        depth_bound_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setcore::{longest_ap, sidon_difference_construction};

    #[test]
    fn sidon_small() {
        for m in [2, 4, 8] {
            let r = sidon_upper_experiment(m, 1e-9).unwrap();
            assert!(r.pass, "{r:?}");
        }
        let r = sidon_upper_experiment(4, 1e-9).unwrap();
        assert!(r.observed_min_constant.unwrap() <= 4.0 / 12f64.sqrt() + 1e-9);
        assert!(sidon_upper_experiment(1, 1e-9).is_err());
    }

    #[test]
    fn best_shift_examples() {
        let cfg = Config::default();
        let r = best_t_energy(&SymSet::from_positive([1, 2, 3]).unwrap(), &cfg).unwrap();
        assert_eq!((r.t, r.size), (1, 4));
        let r = best_t_energy(&SymSet::new([-1, 1]).unwrap(), &cfg).unwrap();
        assert_eq!((r.t, r.size), (2, 1));
    }

    #[test]
    fn long_progression_trace() {
        let a = SymSet::from_positive(1..=20).unwrap();
        let (l, _) = longest_ap(&a).unwrap();
        let s = prime_product_t_search(&a, 3, l).unwrap();
        assert!(!s.trace.is_empty());
        assert!(s.all_verified(3, l));
    }

    #[test]
    fn sidon_orbit() {
        let a = sidon_difference_construction(6);
        let s = prime_product_t_search(&a, 3, 2).unwrap();
        assert!(s.orbit.len() <= 300);
        assert!(s.trace.iter().all(|st| st.holds(3)));
        let direct = derived_sets(&a, best_shift(&a).unwrap().0).unwrap().b_t.len();
        assert!(s.b_size >= direct);
    }

    #[test]
    fn empty_set() {
        let s = prime_product_t_search(&SymSet::empty(), 3, 1).unwrap();
        assert!(s.trace.is_empty() && s.k == 0);
    }
}
