//! Cross-checks against independent, deliberately naive computations.

use std::collections::{HashMap, HashSet};
use std::f64::consts::PI;

use chowla_lab::gridfn::{q1_q2_decompose, GridFn};
use chowla_lab::instances::{random_mean_zero, random_symmetric, rng};
use chowla_lab::oracle::{best_t_energy, brute_k, BruteOptions};
use chowla_lab::setcore::{
    additive_energy, best_shift, derived_sets, energy, longest_ap, sidon_difference_construction, sidon_set,
};
use chowla_lab::trigpoly::{min_norm, norms};
use chowla_lab::verify::{check_hh_trick, check_holder_energy, check_vandermonde_extraction, Config, GeneralCosinePoly, HhInstance};
use chowla_lab::{ExactPoly, FloatPoly, GaussInt, IntSet, SymSet};
use num_complex::Complex64;

fn eval_real(f: &FloatPoly, x: f64) -> f64 {
    f.terms()
        .map(|(m, c)| {
            let a = 2.0 * PI * m as f64 * x;
            c.re * a.cos() - c.im * a.sin()
        })
        .sum()
}

fn dense_min(f: &FloatPoly, points: usize) -> f64 {
    (0..points)
        .map(|j| eval_real(f, j as f64 / points as f64))
        .fold(f64::INFINITY, f64::min)
}

#[test]
fn certified_min_agrees_with_dense_scan() {
    let mut r = rng(11);
    for _ in 0..10 {
        let f = random_mean_zero(&mut r, 20);
        let cert = min_norm(&f, 1e-9).unwrap();
        let scan = dense_min(&f, 1 << 18);
        // the scan overestimates the minimum by at most curvature·h²/8
        let curvature: f64 = f.terms().map(|(m, c)| c.norm() * (2.0 * PI * m as f64).powi(2)).sum();
        let h = 1.0 / (1 << 18) as f64;
        assert!(cert.lower <= scan + 1e-12, "{} > {scan}", cert.lower);
        assert!(scan - curvature * h * h / 8.0 <= cert.upper() + 1e-12);
    }
}

#[test]
fn l1_norm_matches_fine_riemann_sum() {
    let mut r = rng(12);
    for _ in 0..5 {
        let f = random_mean_zero(&mut r, 30);
        let points = 1 << 21;
        let riemann = (0..points)
            .map(|j| eval_real(&f, (j as f64 + 0.5) / points as f64).abs())
            .sum::<f64>()
            / points as f64;
        let l1 = norms(&f).l1;
        assert!((l1 - riemann).abs() < 1e-7, "{l1} vs {riemann}");
    }
    // ‖2 cos 2πx‖₁ = 4/π
    let two_cos = ExactPoly::indicator(&IntSet::from(vec![-1, 1]));
    assert!((norms(&two_cos).l1 - 4.0 / PI).abs() < 1e-9);
}

#[test]
fn energy_matches_quartic_loop() {
    let mut r = rng(13);
    for _ in 0..20 {
        let a = random_symmetric(&mut r, 8, 30);
        let xs = a.as_slice();
        let mut count = 0u64;
        for &x1 in xs {
            for &x2 in xs {
                for &x3 in xs {
                    for &x4 in xs {
                        count += (x1 - x2 == x3 - x4) as u64;
                    }
                }
            }
        }
        assert_eq!(energy(&a), count);
        let pairs = xs
            .iter()
            .flat_map(|&b1| xs.iter().map(move |&b2| b1 - b2))
            .filter(|d| a.contains(*d))
            .count() as u64;
        assert_eq!(additive_energy(&a, &a), pairs);
    }
    assert_eq!(energy(&SymSet::new([-1, 1]).unwrap()), 6);
}

#[test]
fn best_shift_matches_enumeration() {
    let mut r = rng(14);
    for _ in 0..30 {
        let a = random_symmetric(&mut r, 10, 40);
        let set: HashSet<i64> = a.iter().copied().collect();
        let mut best: Option<(i64, usize)> = None;
        for t in -80i64..=80 {
            if t == 0 {
                continue;
            }
            let c = a.iter().filter(|&&x| set.contains(&(x - t))).count();
            let better = match best {
                None => true,
                Some((bt, bc)) => c > bc || (c == bc && (t.abs() < bt.abs() || (t.abs() == bt.abs() && t > 0))),
            };
            if better {
                best = Some((t, c));
            }
        }
        assert_eq!(best_shift(&a), best);
    }
    let r = best_t_energy(&SymSet::from_positive([1, 2, 3]).unwrap(), &Config::default()).unwrap();
    assert_eq!((r.t, r.size), (1, 4));
}

#[test]
fn derived_sets_match_definitions() {
    let mut r = rng(15);
    for _ in 0..50 {
        let a = random_symmetric(&mut r, 10, 25);
        let t = (r_gen(&mut r) % 12) + 1;
        let s: HashSet<i64> = a.iter().copied().collect();
        let a_t: HashSet<i64> = s.iter().copied().filter(|x| s.contains(&(x - t))).collect();
        let b_t: HashSet<i64> = a_t.iter().copied().filter(|x| !a_t.contains(&-x)).collect();
        let c_t: HashSet<i64> = s
            .iter()
            .map(|x| x + t)
            .filter(|y| !s.contains(y) && !s.contains(&(y + t)))
            .collect();
        let d_t: HashSet<i64> = s
            .iter()
            .copied()
            .filter(|x| a_t.contains(x) == a_t.contains(&-x))
            .collect();
        let d = derived_sets(&a, t).unwrap();
        let as_set = |v: &IntSet| v.iter().copied().collect::<HashSet<i64>>();
        assert_eq!(as_set(&d.a_t), a_t);
        assert_eq!(as_set(&d.b_t), b_t);
        assert_eq!(as_set(&d.c_t), c_t);
        assert_eq!(as_set(&d.d_t), d_t);
    }
}

fn r_gen(r: &mut impl rand::RngCore) -> i64 {
    (r.next_u32() % 1000) as i64
}

#[test]
fn longest_ap_matches_exhaustive_search() {
    let mut r = rng(16);
    for _ in 0..30 {
        let a = random_symmetric(&mut r, 10, 20);
        let s: HashSet<i64> = a.iter().copied().collect();
        let mut best = 1;
        for &x in a.iter() {
            for d in 1..=40 {
                let mut len = 0;
                while s.contains(&(x + len * d)) {
                    len += 1;
                }
                best = best.max(len as usize);
            }
        }
        assert_eq!(longest_ap(&a).unwrap().0, best);
    }
    assert_eq!(longest_ap(&SymSet::new([-1, 1]).unwrap()).unwrap().0, 2);
}

#[test]
fn brute_pairs_match_dense_scan() {
    let e = brute_k(2, 6, &BruteOptions::default()).unwrap();
    let mut best = f64::INFINITY;
    for a in 1..=6i64 {
        for b in a + 1..=6 {
            if gcd(a, b) != 1 {
                continue;
            }
            let points = 1_000_000;
            let min = (0..points)
                .map(|j| {
                    let x = 2.0 * PI * j as f64 / points as f64;
                    (a as f64 * x).cos() + (b as f64 * x).cos()
                })
                .fold(f64::INFINITY, f64::min);
            best = best.min(-min);
        }
    }
    assert!((e.k_value - best).abs() < 1e-6, "{} vs {best}", e.k_value);
    // cos u + cos 2u = 2c² + c - 1 is smallest at c = -1/4
    assert!((e.k_value - 1.125).abs() < 1e-6);
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn sidon_sets_have_distinct_differences() {
    assert_eq!(sidon_set(4).as_slice(), &[1, 2, 4, 8]);
    for m in 2..=10 {
        let b = sidon_set(m);
        let mut seen = HashMap::new();
        for &x in &b {
            for &y in &b {
                if x != y {
                    assert!(seen.insert(x - y, (x, y)).is_none());
                }
            }
        }
        assert_eq!(sidon_difference_construction(m).len(), m * m - m);
    }
}

#[test]
fn cube_of_lambda_by_hand() {
    let l = GaussInt::new(2, -1);
    // (2 - i)² = 3 - 4i, (3 - 4i)(2 - i) = 2 - 11i
    assert_eq!(l * l, GaussInt::new(3, -4));
    assert_eq!(l * l * l, GaussInt::new(2, -11));
    assert_eq!(GaussInt::new(0, 1).powi(3), GaussInt::new(0, -1));
}

#[test]
fn vandermonde_two_by_two() {
    // c₁ + c₂ = 1, c₁/2 + c₂/4 = 0 gives c = (-1, 2)
    let f = GeneralCosinePoly::new(vec![
        (1.0, SymSet::new([-1, 1]).unwrap()),
        (0.5, SymSet::new([-2, 2]).unwrap()),
    ])
    .unwrap();
    let p = f.poly();
    let combo = &p.scale(Complex64::new(-1.0, 0.0)) + &p.conv_pow(2).scale(Complex64::new(2.0, 0.0));
    assert_eq!(combo, FloatPoly::indicator(&IntSet::from(vec![-1, 1])));
    let r = check_vandermonde_extraction(&f, &Config::default()).unwrap();
    assert!(r.pass && r.lhs <= 1e-10);
}

#[test]
fn decomposition_sums_to_indicator_at_samples() {
    let a = sidon_difference_construction(4);
    let t = best_shift(&a).unwrap().0;
    let k = min_norm(&ExactPoly::indicator(&a), 1e-9).unwrap().min_norm();
    let size = 1024;
    let d = q1_q2_decompose(&a, t, k, size, 64.0).unwrap();
    let b_t = derived_sets(&a, t).unwrap().b_t;
    for j in (0..size).step_by(7) {
        let x = j as f64 / size as f64;
        let direct: Complex64 = b_t
            .iter()
            .map(|&m| Complex64::from_polar(1.0, 2.0 * PI * m as f64 * x))
            .sum();
        let sum = d.q1.values()[j] + d.q2.values()[j];
        assert!((sum - direct).norm() < 1e-9);
    }
}

#[test]
fn grid_coefficients_match_direct_dft() {
    let mut r = rng(17);
    let f = random_mean_zero(&mut r, 10);
    let g = GridFn::sample(&f, 64).unwrap().abs();
    let vals = g.values();
    for m in -5i64..=5 {
        let direct: Complex64 = vals
            .iter()
            .enumerate()
            .map(|(j, v)| v * Complex64::from_polar(1.0, -2.0 * PI * m as f64 * j as f64 / 64.0))
            .sum::<Complex64>()
            / 64.0;
        assert!((g.coefficient(m) - direct).norm() < 1e-12);
    }
}

#[test]
fn hh_conclusion_on_hand_instance() {
    // P₁ = 2(1̂_B - 1̂_{-B}) is purely imaginary with |P₁| ≤ 4|sin|-type bound
    let b = IntSet::from(vec![1]);
    let p1 = FloatPoly::from_terms([(1, Complex64::new(2.0, 0.0)), (-1, Complex64::new(-2.0, 0.0))]);
    let inst = HhInstance {
        p1,
        p2: FloatPoly::zero(),
        b,
        c: 1.0,
        l: 4.0,
    };
    let r = check_hh_trick(&inst, &Config::default()).unwrap();
    assert!(r.pass, "{r:?}");
    // c|B|/‖1̂_B‖₁² = 1 for a single frequency
    assert!((r.lhs - 1.0).abs() < 1e-6 || (r.rhs - 4.0).abs() < 1e-9);
}

#[test]
fn holder_chain_on_progressions() {
    let a = SymSet::from_positive(1..=10).unwrap();
    let l1 = norms(&ExactPoly::indicator(&a)).l1;
    let (r, shift) = check_holder_energy(&a, l1 * 1.0001, &Config::default()).unwrap();
    assert!(r.pass, "{r:?}");
    assert_eq!(shift, Some((1, 18)));
}
