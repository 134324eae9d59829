//! Checker registry and instance sources for `verify`.

use chowla_lab::gridfn::q1_q2_decompose;
use chowla_lab::instances::{ap_rich, random_mean_zero, random_symmetric, rng};
use chowla_lab::setcore::{best_shift, bt_lower_bound_check, longest_ap, sidon_difference_construction};
use chowla_lab::trigpoly::min_norm;
use chowla_lab::verify::{
    self, ap_witness, check_ap_bound, check_conv_min, check_general_cube, check_hh_trick,
    check_holder_energy, check_kconv, check_l1_bound, check_min_to_l1, check_roth,
    check_ruzsa_witness, check_vandermonde_extraction, check_x_bounds, cube_hh_instance,
    GeneralCosinePoly,
};
use chowla_lab::{Error, ExactPoly, FloatPoly, LemmaReport, Result, SymSet};
use rand::Rng;

pub const CHECKERS: [&str; 17] = [
    "lemma3.2",
    "lemma3.3",
    "lemma3.4",
    "lemma4.1",
    "lemma4.2",
    "corollary4.3",
    "lemma5.1",
    "prop5.2",
    "lemma5.3",
    "prop5.4",
    "lemma5.5",
    "claim6.4",
    "claim6.5",
    "claim6.6",
    "lemma6.7",
    "lemma7.1",
    "section7.x_bounds",
];

/// Expands comma-separated suite tokens. A token selects the checker with
/// that id, every id starting with `token.`, or everything for `all`.
pub fn expand_suite(spec: &str) -> std::result::Result<Vec<&'static str>, String> {
    let mut out = Vec::new();
    for token in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let hits: Vec<&str> = CHECKERS
            .iter()
            .copied()
            .filter(|id| token == "all" || *id == token || id.starts_with(&format!("{token}.")))
            .collect();
        if hits.is_empty() {
            return Err(format!("unknown suite {token:?}; known checkers: {}", CHECKERS.join(", ")));
        }
        for h in hits {
            if !out.contains(&h) {
                out.push(h);
            }
        }
    }
    if out.is_empty() {
        return Err("empty suite".into());
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub label: String,
    pub set: SymSet,
}

/// Parses `sidon:M`, `random:COUNT`, `ap:COUNT` items separated by `;`.
pub fn parse_sources(spec: &str, seed: u64) -> std::result::Result<Vec<Instance>, String> {
    let mut out = Vec::new();
    for (i, item) in spec.split(';').map(str::trim).filter(|s| !s.is_empty()).enumerate() {
        let (kind, arg) = item
            .split_once(':')
            .ok_or_else(|| format!("instance source {item:?} is not KIND:N"))?;
        let arg: usize = arg
            .parse()
            .map_err(|_| format!("instance source {item:?}: {arg:?} is not a count"))?;
        let mut r = rng(seed.wrapping_add(i as u64));
        match kind {
            "sidon" => out.push(Instance {
                label: format!("sidon:{arg}"),
                set: sidon_difference_construction(arg),
            }),
            "random" => out.extend((0..arg).map(|j| Instance {
                label: format!("random#{j}"),
                set: random_symmetric(&mut r, 12, 40),
            })),
            "ap" => out.extend((0..arg).map(|j| Instance {
                label: format!("ap#{j}"),
                set: ap_rich(&mut r, 3, 8, 40),
            })),
            _ => return Err(format!("unknown instance kind {kind:?} (sidon, random, ap)")),
        }
    }
    Ok(out)
}

/// The default mix: a few random sets, Sidon-difference sets and AP-rich sets.
pub fn default_sources(count: usize, seed: u64) -> Vec<Instance> {
    parse_sources(&format!("random:{count};sidon:3;sidon:4;ap:{}", count.div_ceil(3).max(1)), seed)
        .expect("built-in sources parse")
}

pub struct Outcome {
    pub checker: &'static str,
    pub label: String,
    pub result: Result<LemmaReport>,
}

fn shift_for(a: &SymSet, t: Option<i64>) -> i64 {
    t.or_else(|| best_shift(a).map(|(t, _)| t)).unwrap_or(1)
}

/// Splits the positive half alternately into a main part (coefficient 1)
/// and a second part with coefficient `s`.
fn two_part(a: &SymSet, s: f64) -> Result<GeneralCosinePoly> {
    let half = a.positive_half();
    let pick = |parity: usize| {
        SymSet::from_positive(half.iter().enumerate().filter(|(i, _)| i % 2 == parity).map(|(_, &x)| x))
    };
    let mut parts = vec![(1.0, pick(0)?)];
    let second = pick(1)?;
    if !second.is_empty() {
        parts.push((s, second));
    }
    GeneralCosinePoly::new(parts)
}

fn three_part(a: &SymSet, seed: u64) -> Result<GeneralCosinePoly> {
    let half = a.positive_half();
    let mut r = rng(seed);
    let mut coeffs: Vec<f64> = Vec::new();
    while coeffs.len() < 3 {
        let s: f64 = r.gen_range(0.1..2.0);
        if coeffs.iter().all(|c| (c - s).abs() > 0.05) {
            coeffs.push(s);
        }
    }
    let mut parts = Vec::new();
    for (j, &s) in coeffs.iter().enumerate() {
        let part = SymSet::from_positive(half.iter().enumerate().filter(|(i, _)| i % 3 == j).map(|(_, &x)| x))?;
        if !part.is_empty() {
            parts.push((s, part));
        }
    }
    GeneralCosinePoly::new(parts)
}

/// Polynomial checkers run on random mean-zero polynomials and on `1̂_A`.
fn poly_inputs(instances: &[Instance], count: usize, seed: u64) -> Vec<(String, FloatPoly)> {
    let mut r = rng(seed ^ 0x5eed);
    let mut out: Vec<(String, FloatPoly)> = (0..count)
        .map(|j| (format!("poly#{j}"), random_mean_zero(&mut r, 24)))
        .collect();
    out.extend(
        instances
            .iter()
            .map(|i| (i.label.clone(), ExactPoly::indicator(&i.set).to_float())),
    );
    out
}

pub fn run(
    checker: &'static str,
    instances: &[Instance],
    t: Option<i64>,
    count: usize,
    seed: u64,
    cfg: &verify::Config,
) -> Vec<Outcome> {
    let outcome = |label: &str, result: Result<LemmaReport>| Outcome {
        checker,
        label: label.to_string(),
        result,
    };
    match checker {
        "lemma3.2" => poly_inputs(instances, count, seed)
            .iter()
            .map(|(l, f)| outcome(l, check_min_to_l1(f, cfg)))
            .collect(),
        "lemma3.3" | "lemma3.4" => {
            let polys = poly_inputs(instances, count, seed);
            polys
                .iter()
                .zip(polys.iter().cycle().skip(1))
                .map(|((l, f), (l2, g))| {
                    let label = format!("{l}*{l2}");
                    let r = if checker == "lemma3.3" {
                        check_conv_min(f, g, cfg)
                    } else {
                        check_kconv(f, g, cfg)
                    };
                    outcome(&label, r)
                })
                .collect()
        }
        _ => instances
            .iter()
            .map(|inst| outcome(&inst.label, run_on_set(checker, &inst.set, t, seed, cfg)))
            .collect(),
    }
}

fn run_on_set(checker: &str, a: &SymSet, t: Option<i64>, seed: u64, cfg: &verify::Config) -> Result<LemmaReport> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let t = shift_for(a, t);
    let k_high = || -> Result<f64> { Ok(min_norm(&ExactPoly::indicator(a), cfg.tol)?.min_norm()) };
    match checker {
        "lemma4.1" => check_roth(a, a.as_intset(), k_high()?, cfg),
        "lemma4.2" => {
            let (_, progression) = longest_ap(a)?;
            match ap_witness(&progression) {
                Some((u, v, d)) => check_ruzsa_witness(a, &u, &v, d, cfg),
                None => Ok(LemmaReport::new("lemma4.2", serde_json::json!({ "A": a }))
                    .exact()
                    .mark_vacuous("no progression of length 3 to build a witness from")
                    .finish()),
            }
        }
        "corollary4.3" => check_ap_bound(a, cfg),
        "lemma5.1" => verify::build_ft_gt(a, t, cfg).map(|(_, _, r)| r),
        "prop5.2" => verify::check_cube_inequality(a, t, cfg),
        "lemma5.3" => bt_lower_bound_check(a, t, longest_ap(a)?.0),
        "prop5.4" => check_hh_trick(&cube_hh_instance(a, t, cfg)?, cfg),
        "lemma5.5" => check_l1_bound(a, t, cfg),
        "claim6.4" => verify::build_general_ft(&two_part(a, 1.0 / 2000.0)?, t, cfg).map(|g| g.report),
        "claim6.5" => check_general_cube(&two_part(a, 1.0 / 2000.0)?, t, cfg),
        "claim6.6" => check_vandermonde_extraction(&three_part(a, seed)?, cfg),
        "lemma6.7" => {
            // ‖1̂_A‖₁ ≤ 2‖1̂_A‖_min supplies the L¹ bound
            check_holder_energy(a, 2.0 * k_high()?, cfg).map(|(r, _)| r)
        }
        "lemma7.1" => {
            let size = cfg.grid_size(2 * (a.max_abs() + t.unsigned_abs()) + 2);
            q1_q2_decompose(a, t, k_high()?, size, cfg.constants.c2).map(|d| d.report)
        }
        "section7.x_bounds" => check_x_bounds(a, t, cfg.constants.c2, cfg),
        other => Err(Error::Invalid(format!("unknown checker {other}"))),
    }
}
