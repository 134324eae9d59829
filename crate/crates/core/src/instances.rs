//! Seeded instance generators for property runs and CLI suites.

use num_complex::Complex64;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::setcore::SymSet;
use crate::trigpoly::FloatPoly;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Symmetric set with `size` positive elements drawn from `[1, bound]`.
pub fn symmetric_with(rng: &mut impl Rng, size: usize, bound: u64) -> SymSet {
    let size = size.min(bound as usize);
    let picks = sample(rng, bound as usize, size);
    SymSet::from_positive(picks.into_iter().map(|i| i as i64 + 1)).expect("distinct positives")
}

/// Symmetric set with between 1 and `max_half` positive elements in
/// `[1, bound]`.
pub fn random_symmetric(rng: &mut impl Rng, max_half: usize, bound: u64) -> SymSet {
    let size = rng.gen_range(1..=max_half.max(1));
    symmetric_with(rng, size, bound)
}

/// Real mean-zero polynomial of degree at most `max_degree`: each frequency
/// is kept with probability 1/2, coefficients uniform in the unit square.
pub fn random_mean_zero(rng: &mut impl Rng, max_degree: u64) -> FloatPoly {
    let degree = rng.gen_range(1..=max_degree.max(1)) as i64;
    let mut terms = Vec::new();
    for m in 1..=degree {
        if m < degree && rng.gen_bool(0.5) {
            continue;
        }
        let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        terms.push((m, c));
        terms.push((-m, c.conj()));
    }
    FloatPoly::from_terms(terms)
}

/// Union of a few arithmetic progressions (random starts and differences)
/// plus a little noise, mirrored to a symmetric set.
pub fn ap_rich(rng: &mut impl Rng, progressions: usize, max_len: usize, bound: i64) -> SymSet {
    let mut positives = Vec::new();
    for _ in 0..progressions.max(1) {
        let d = rng.gen_range(1..=4);
        let len = rng.gen_range(2..=max_len.max(2)) as i64;
        let start = rng.gen_range(1..=bound.max(1));
        positives.extend((0..len).map(|i| start + i * d));
    }
    for _ in 0..rng.gen_range(0..=2) {
        positives.push(rng.gen_range(1..=bound.max(1)));
    }
    positives.sort_unstable();
    positives.dedup();
    SymSet::from_positive(positives).expect("positive elements")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        let a = random_symmetric(&mut rng(7), 10, 40);
        let b = random_symmetric(&mut rng(7), 10, 40);
        assert_eq!(a, b);
        assert!(a.is_symmetric() && !a.contains(0));
        let f = random_mean_zero(&mut rng(3), 64);
        assert!(f.is_real() && f.coeff(0) == Complex64::new(0.0, 0.0) && f.degree() <= 64);
        let p = ap_rich(&mut rng(1), 3, 6, 30);
        assert!(p.len() >= 4);
    }
}
