//! Exact arithmetic on finite integer sets.
//!
//! Everything here is integer-exact. Sets are immutable sorted vectors; the
//! algebra (shifts, intersections, differences) is done by linear merges.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::LemmaReport;

/// A finite set of integers, stored sorted and duplicate-free.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<i64>", into = "Vec<i64>")]
pub struct IntSet(Vec<i64>);

impl From<Vec<i64>> for IntSet {
    fn from(mut v: Vec<i64>) -> Self {
        v.sort_unstable();
        v.dedup();
        IntSet(v)
    }
}

impl From<IntSet> for Vec<i64> {
    fn from(s: IntSet) -> Self {
        s.0
    }
}

impl FromIterator<i64> for IntSet {
    fn from_iter<I: IntoIterator<Item = i64>>(iter: I) -> Self {
        IntSet::from(iter.into_iter().collect::<Vec<_>>())
    }
}

impl<'a> IntoIterator for &'a IntSet {
    type Item = &'a i64;
    type IntoIter = std::slice::Iter<'a, i64>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl IntSet {
    pub fn empty() -> Self {
        IntSet(Vec::new())
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, i64> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn min(&self) -> Option<i64> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<i64> {
        self.0.last().copied()
    }

    /// Largest absolute value, 0 for the empty set.
    pub fn max_abs(&self) -> u64 {
        self.0.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }

    /// `X + t`.
    pub fn shift(&self, t: i64) -> IntSet {
        IntSet(self.0.iter().map(|x| x + t).collect())
    }

    /// `-X`.
    pub fn neg(&self) -> IntSet {
        IntSet(self.0.iter().rev().map(|x| -x).collect())
    }

    /// `c·X`.
    pub fn dilate(&self, c: i64) -> IntSet {
        IntSet::from(self.0.iter().map(|x| x * c).collect::<Vec<_>>())
    }

    pub fn union(&self, other: &IntSet) -> IntSet {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        IntSet(out)
    }

    pub fn intersection(&self, other: &IntSet) -> IntSet {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        IntSet(out)
    }

    /// `|X ∩ (X + t)|` without materialising the shifted set.
    pub fn shift_overlap(&self, t: i64) -> usize {
        let a = &self.0;
        let (mut i, mut j, mut n) = (0, 0, 0);
        while i < a.len() && j < a.len() {
            let shifted = a[j] + t;
            match a[i].cmp(&shifted) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }

    pub fn difference(&self, other: &IntSet) -> IntSet {
        IntSet(self.0.iter().copied().filter(|x| !other.contains(*x)).collect())
    }

    pub fn symmetric_difference(&self, other: &IntSet) -> IntSet {
        self.difference(other).union(&other.difference(self))
    }

    pub fn is_subset(&self, other: &IntSet) -> bool {
        self.0.iter().all(|x| other.contains(*x))
    }

    pub fn is_disjoint(&self, other: &IntSet) -> bool {
        self.intersection(other).is_empty()
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().all(|x| self.contains(-x))
    }

    /// gcd of the absolute values (0 for the empty set).
    pub fn gcd(&self) -> u64 {
        self.0.iter().fold(0u64, |g, x| gcd(g, x.unsigned_abs()))
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// A finite symmetric set `A = -A` of nonzero integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct SymSet(IntSet);

impl TryFrom<Vec<i64>> for SymSet {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        SymSet::new(v)
    }
}

impl From<SymSet> for Vec<i64> {
    fn from(s: SymSet) -> Self {
        s.0.into()
    }
}

impl std::ops::Deref for SymSet {
    type Target = IntSet;
    fn deref(&self) -> &IntSet {
        &self.0
    }
}

impl fmt::Display for SymSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl SymSet {
    /// Validates an already-symmetric, zero-free list. Duplicates are merged.
    pub fn new(raw: impl IntoIterator<Item = i64>) -> Result<Self> {
        let set: IntSet = raw.into_iter().collect();
        if set.contains(0) {
            return Err(Error::ContainsZero);
        }
        if let Some(&a) = set.iter().find(|&&a| !set.contains(-a)) {
            return Err(Error::NotSymmetric(a));
        }
        Ok(SymSet(set))
    }

    pub fn empty() -> Self {
        SymSet(IntSet::empty())
    }

    /// `B ∪ -B` for a set `B` of distinct positive integers.
    pub fn from_positive(b: impl IntoIterator<Item = i64>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for x in b {
            if x <= 0 {
                return Err(Error::NonPositiveElement(x));
            }
            if !seen.insert(x) {
                return Err(Error::DuplicateElement(x));
            }
        }
        Ok(SymSet(seen.iter().flat_map(|&x| [x, -x]).collect()))
    }

    pub fn as_intset(&self) -> &IntSet {
        &self.0
    }

    /// The positive half `B` with `A = B ∪ -B`.
    pub fn positive_half(&self) -> IntSet {
        IntSet(self.0.iter().copied().filter(|&x| x > 0).collect())
    }

    /// `cA`; `c` must be nonzero.
    pub fn dilate(&self, c: i64) -> SymSet {
        assert!(c != 0, "dilation by zero");
        SymSet(self.0.dilate(c))
    }

    /// Union of two symmetric sets.
    pub fn union(&self, other: &SymSet) -> SymSet {
        SymSet(self.0.union(&other.0))
    }
}

/// The sets the shift argument manipulates for a fixed `t ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedSets {
    pub t: i64,
    /// `A ∩ (A + t)`
    pub a_t: IntSet,
    /// `A_t \ (-A_t)`
    pub b_t: IntSet,
    /// `(A + t) \ (A ∪ (A - t))`
    pub c_t: IntSet,
    /// `A \ (A_t Δ -A_t)`
    pub d_t: IntSet,
    /// Remaining support: `(S ∪ (S+t) ∪ (S-t)) \ (±B_t ∪ ±C_t ∪ D_t)` for the
    /// full support `S`.
    pub e_t: IntSet,
}

impl DerivedSets {
    /// The five sets carrying a nonzero main coefficient, in the order
    /// `B_t, -B_t, D_t, C_t, -C_t`.
    pub fn five(&self) -> [IntSet; 5] {
        [
            self.b_t.clone(),
            self.b_t.neg(),
            self.d_t.clone(),
            self.c_t.clone(),
            self.c_t.neg(),
        ]
    }
}

/// Derived sets of `A` for the shift `t`.
pub fn derived_sets(a: &SymSet, t: i64) -> Result<DerivedSets> {
    derived_sets_within(a, a.as_intset(), t)
}

/// Derived sets of the part `a1` (playing the role of `A`), with the residual
/// set `E_t` measured against the full support `full ⊇ a1`.
pub fn derived_sets_within(a1: &SymSet, full: &IntSet, t: i64) -> Result<DerivedSets> {
    if t == 0 {
        return Err(Error::ZeroShift);
    }
    let a = a1.as_intset();
    let plus = a.shift(t);
    let minus = a.shift(-t);
    let a_t = a.intersection(&plus);
    let neg_a_t = a_t.neg();
    let b_t = a_t.difference(&neg_a_t);
    let c_t = plus.difference(&a.union(&minus));
    let d_t = a.difference(&a_t.symmetric_difference(&neg_a_t));

    let covered = b_t
        .union(&b_t.neg())
        .union(&c_t)
        .union(&c_t.neg())
        .union(&d_t);
    let e_t = full
        .union(&full.shift(t))
        .union(&full.shift(-t))
        .difference(&covered);

    let sets = DerivedSets {
        t,
        a_t,
        b_t,
        c_t,
        d_t,
        e_t,
    };
    let five = sets.five();
    for i in 0..5 {
        for j in i + 1..5 {
            assert!(
                five[i].is_disjoint(&five[j]),
                "derived sets {i} and {j} overlap for t = {t}"
            );
        }
    }
    Ok(sets)
}

/// Partition of a set into maximal progressions with a fixed common difference.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApPartition {
    pub difference: i64,
    pub progressions: Vec<IntSet>,
    /// Number of progressions with at least two elements.
    pub r: usize,
}

impl ApPartition {
    /// Progressions of size at least two.
    pub fn long_progressions(&self) -> impl Iterator<Item = &IntSet> {
        self.progressions.iter().filter(|p| p.len() >= 2)
    }
}

pub fn ap_partition(a: &IntSet, t: i64) -> Result<ApPartition> {
    if t == 0 {
        return Err(Error::ZeroShift);
    }
    let step = t.abs();
    let mut used: HashSet<i64> = HashSet::with_capacity(a.len());
    let mut progressions = Vec::new();
    // Ascending order visits each progression at its minimum first.
    for &x in a {
        if used.contains(&x) {
            continue;
        }
        let mut p = Vec::new();
        let mut y = x;
        while a.contains(y) {
            used.insert(y);
            p.push(y);
            y += step;
        }
        progressions.push(IntSet(p));
    }
    let r = progressions.iter().filter(|p| p.len() >= 2).count();
    Ok(ApPartition {
        difference: t,
        progressions,
        r,
    })
}

/// Longest arithmetic progression (common difference `d ≥ 1`) inside `a`.
///
/// Only pairs that start a progression are extended, so the cost is
/// `O(|A|² · L · log|A|)` for longest length `L`.
pub fn longest_ap(a: &IntSet) -> Result<(usize, IntSet)> {
    let xs = a.as_slice();
    let Some(&first) = xs.first() else {
        return Err(Error::EmptySet);
    };
    let mut best = (1usize, first, 1i64);
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            let d = xs[j] - xs[i];
            if a.contains(xs[i] - d) {
                continue;
            }
            let mut len = 2;
            let mut y = xs[j] + d;
            while a.contains(y) {
                len += 1;
                y += d;
            }
            if len > best.0 {
                best = (len, xs[i], d);
            }
        }
    }
    let (len, start, d) = best;
    let witness = (0..len as i64).map(|k| start + k * d).collect();
    Ok((len, witness))
}

/// `#{(b₁, b₂) ∈ B² : b₁ - b₂ ∈ A}`, computed as `Σ_{a∈A} |B ∩ (B + a)|`.
pub fn additive_energy(b: &IntSet, a: &IntSet) -> u64 {
    a.iter().map(|&d| b.shift_overlap(d) as u64).sum()
}

/// Difference representation function `r(t) = |A ∩ (A + t)|` on its support.
pub fn difference_counts(a: &IntSet) -> HashMap<i64, u64> {
    let mut reps: HashMap<i64, u64> = HashMap::new();
    for &x in a {
        for &y in a {
            *reps.entry(x - y).or_default() += 1;
        }
    }
    reps
}

/// Additive energy `#{x₁ - x₂ = x₃ - x₄}` of `a`, as `Σ_t r(t)²` over the
/// difference representation function.
pub fn energy(a: &IntSet) -> u64 {
    difference_counts(a).values().map(|r| r * r).sum()
}

/// `argmax_{t≠0} |A ∩ (A + t)|`, ties broken by smallest `|t|`, then
/// positive `t`. `None` when `|A| < 2`.
pub fn best_shift(a: &IntSet) -> Option<(i64, usize)> {
    difference_counts(a)
        .into_iter()
        .filter(|&(t, _)| t != 0)
        .max_by_key(|&(t, r)| (r, std::cmp::Reverse(t.unsigned_abs()), t > 0))
        .map(|(t, r)| (t, r as usize))
}

/// Greedy (Mian–Chowla) Sidon set of size `m`, starting at 1.
pub fn sidon_set(m: usize) -> IntSet {
    let mut elems: Vec<i64> = Vec::with_capacity(m);
    let mut diffs: HashSet<i64> = HashSet::new();
    let mut candidate = 1i64;
    while elems.len() < m {
        let new: Vec<i64> = elems.iter().map(|&e| candidate - e).collect();
        if new.iter().all(|d| !diffs.contains(d)) {
            diffs.extend(new);
            elems.push(candidate);
        }
        candidate += 1;
    }
    IntSet(elems)
}

/// `A = (B - B) \ {0}` for the greedy Sidon set `B` of size `m`; `|A| = m² - m`.
pub fn sidon_difference_construction(m: usize) -> SymSet {
    let b = sidon_set(m);
    sidon_difference_of(&b)
}

/// `(B - B) \ {0}` for a given set.
pub fn sidon_difference_of(b: &IntSet) -> SymSet {
    let diffs: IntSet = b
        .iter()
        .flat_map(|&x| b.iter().map(move |&y| x - y))
        .filter(|&d| d != 0)
        .collect();
    SymSet(diffs)
}

/// Checks `|B_t| ≥ |A_t| / L` as the integer inequality `|A_t| ≤ L·|B_t|`.
///
/// Fails with `PreconditionViolated` when `A` contains a progression longer
/// than `L`.
pub fn bt_lower_bound_check(a: &SymSet, t: i64, l: usize) -> Result<LemmaReport> {
    if l == 0 {
        return Err(Error::PreconditionViolated("L must be positive".into()));
    }
    let sets = derived_sets(a, t)?;
    if !a.is_empty() {
        let (longest, witness) = longest_ap(a)?;
        if longest > l {
            return Err(Error::PreconditionViolated(format!(
                "progression {witness} of length {longest} exceeds L = {l}"
            )));
        }
    }
    let partition = ap_partition(a, t)?;
    let a_t = sets.a_t.len();
    let b_t = sets.b_t.len();
    let mut report = LemmaReport::new(
        "lemma5.3",
        serde_json::json!({ "A": a, "t": t, "L": l }),
    )
    .exact()
    .inequality(a_t as f64, (l * b_t) as f64, 0.0)
    .subcheck_exact("|B_t| >= r(t)", partition.r as f64, b_t as f64)
    .subcheck_exact(
        "sum of long progressions >= |A_t|",
        a_t as f64,
        partition.long_progressions().map(IntSet::len).sum::<usize>() as f64,
    );
    if a_t == 0 {
        report = report.mark_vacuous("A_t is empty");
    }
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[i64]) -> IntSet {
        IntSet::from(v.to_vec())
    }

    #[test]
    fn make_symset_examples() {
        assert_eq!(SymSet::new([-3, -1, 1, 3]).unwrap().as_slice(), &[-3, -1, 1, 3]);
        assert_eq!(SymSet::new([1, 2]), Err(Error::NotSymmetric(1)));
        assert_eq!(SymSet::new([0, 1, -1]), Err(Error::ContainsZero));
    }

    #[test]
    fn from_positive_examples() {
        assert_eq!(SymSet::from_positive([1, 2]).unwrap().as_slice(), &[-2, -1, 1, 2]);
        assert_eq!(SymSet::from_positive([5]).unwrap().as_slice(), &[-5, 5]);
        assert_eq!(
            SymSet::from_positive([1, 2, 4]).unwrap().as_slice(),
            &[-4, -2, -1, 1, 2, 4]
        );
        assert_eq!(SymSet::from_positive([1, -2]), Err(Error::NonPositiveElement(-2)));
        assert_eq!(SymSet::from_positive([3, 3]), Err(Error::DuplicateElement(3)));
    }

    #[test]
    fn ap_partition_examples() {
        let p = ap_partition(&s(&[1, 2, 3, 7]), 1).unwrap();
        assert_eq!(p.progressions, vec![s(&[1, 2, 3]), s(&[7])]);
        assert_eq!(p.r, 1);
        let p = ap_partition(&s(&[2, 4, 6]), 2).unwrap();
        assert_eq!(p.progressions.len(), 1);
        assert_eq!(p.r, 1);
        let p = ap_partition(&s(&[1, 4, 7, 9]), 3).unwrap();
        assert_eq!(p.progressions, vec![s(&[1, 4, 7]), s(&[9])]);
        assert_eq!(p.r, 1);
        // negative difference gives the same progressions
        assert_eq!(ap_partition(&s(&[1, 4, 7, 9]), -3).unwrap().progressions.len(), 2);
        assert_eq!(ap_partition(&s(&[1]), 0), Err(Error::ZeroShift));
    }

    #[test]
    fn longest_ap_examples() {
        let (len, w) = longest_ap(&s(&[1, 3, 5, 8])).unwrap();
        assert_eq!((len, w), (3, s(&[1, 3, 5])));
        assert_eq!(longest_ap(&s(&[-2, -1, 1, 2])).unwrap().0, 2);
        assert_eq!(longest_ap(&s(&[4])).unwrap(), (1, s(&[4])));
        assert_eq!(longest_ap(&IntSet::empty()), Err(Error::EmptySet));
    }

    #[test]
    fn additive_energy_examples() {
        assert_eq!(additive_energy(&s(&[1, 2]), &s(&[-1, 1])), 2);
        assert_eq!(additive_energy(&IntSet::empty(), &s(&[-1, 1])), 0);
    }

    #[test]
    fn sidon_examples() {
        assert_eq!(sidon_set(1), s(&[1]));
        // greedy: 3 is rejected (3-2 = 2-1), 4 accepted, 5..7 rejected, 8 accepted
        assert_eq!(sidon_set(4), s(&[1, 2, 4, 8]));
        assert_eq!(sidon_set(8), s(&[1, 2, 4, 8, 13, 21, 31, 45]));
        assert_eq!(sidon_difference_construction(2).as_slice(), &[-1, 1]);
        assert_eq!(sidon_difference_construction(3).len(), 6);
        assert_eq!(sidon_difference_construction(4).len(), 12);
    }

    #[test]
    fn derived_sets_zero_shift() {
        let a = SymSet::new([-1, 1]).unwrap();
        assert_eq!(derived_sets(&a, 0), Err(Error::ZeroShift));
    }

    #[test]
    fn empty_intersection_gives_empty_b() {
        let a = SymSet::from_positive([1, 10]).unwrap();
        let d = derived_sets(&a, 100).unwrap();
        assert!(d.a_t.is_empty() && d.b_t.is_empty());
        assert_eq!(d.d_t, *a.as_intset());
    }

    #[test]
    fn bt_check_rejects_short_l() {
        let a = SymSet::from_positive([1, 2, 3]).unwrap();
        assert!(matches!(
            bt_lower_bound_check(&a, 1, 2),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn display_and_serde() {
        let a = SymSet::new([1, -1]).unwrap();
        assert_eq!(a.to_string(), "{-1,1}");
        assert_eq!(serde_json::to_string(&a).unwrap(), "[-1,1]");
        let back: SymSet = serde_json::from_str("[1,-1]").unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<SymSet>("[1,2]").is_err());
    }
}
