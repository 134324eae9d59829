//! Exhaustive search for the smallest one-sided norm over `n`-subsets of
//! `[1, M]`.
//!
//! Values are stored in the cosine convention `f_B(x) = Σ_{b∈B} cos 2πbx`,
//! i.e. half of `‖1̂_{B ∪ -B}‖_min`.

use std::f64::consts::PI;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::pow2_at_least;
use crate::setcore::{gcd, IntSet};
use crate::trigpoly::{min_norm, ExactPoly, MinCertificate};

/// Default cap on the number of canonical subsets.
pub const DEFAULT_CAP: u128 = 100_000_000;
pub const COSINE_CONVENTION: &str = "cosine";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrontierEntry {
    pub n: usize,
    #[serde(rename = "M")]
    pub m_bound: i64,
    /// `-min_x Σ_{b∈witness} cos 2πbx` (certified upper end).
    pub k_value: f64,
    /// Positive half of the minimizing set.
    pub witness: IntSet,
    /// Certificate for `1̂_{witness ∪ -witness}` (exponential convention,
    /// twice the cosine value).
    pub certificate: MinCertificate,
    pub convention: String,
}

impl FrontierEntry {
    /// The same value in the exponential convention `‖1̂_A‖_min`.
    pub fn k_exponential(&self) -> f64 {
        2.0 * self.k_value
    }
}

#[derive(Serialize, Deserialize)]
struct CsvRow {
    n: usize,
    #[serde(rename = "M")]
    m_bound: i64,
    k_value: f64,
    witness: String,
    radius: f64,
    convention: String,
}

/// Writes entries as CSV with header `n,M,k_value,witness,radius,convention`.
/// `radius` is in the cosine convention.
pub fn write_frontier_csv<W: std::io::Write>(out: W, entries: &[FrontierEntry]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for e in entries {
        w.serialize(CsvRow {
            n: e.n,
            m_bound: e.m_bound,
            k_value: e.k_value,
            witness: e
                .witness
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" "),
            radius: e.certificate.radius / 2.0,
            convention: e.convention.clone(),
        })
        .map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Debug)]
pub struct BruteOptions {
    /// Certificate tolerance in the exponential convention.
    pub tol: f64,
    pub cap: u128,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Directory for per-chunk checkpoint files.
    pub cache_dir: Option<PathBuf>,
    /// Reuse existing checkpoint files.
    pub resume: bool,
}

impl Default for BruteOptions {
    fn default() -> Self {
        BruteOptions {
            tol: 1e-9,
            cap: DEFAULT_CAP,
            jobs: None,
            cache_dir: None,
            resume: false,
        }
    }
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

fn mobius(limit: usize) -> Vec<i8> {
    let mut mu = vec![1i8; limit + 1];
    let mut is_composite = vec![false; limit + 1];
    for p in 2..=limit {
        if is_composite[p] {
            continue;
        }
        for q in (p..=limit).step_by(p) {
            if q > p {
                is_composite[q] = true;
            }
            mu[q] = -mu[q];
        }
        let p2 = p * p;
        for q in (p2..=limit).step_by(p2) {
            mu[q] = 0;
        }
    }
    mu
}

/// Number of `n`-subsets of `[1, M]` with gcd 1, `Σ_d μ(d)·C(⌊M/d⌋, n)`.
/// `None` on overflow.
pub fn canonical_count(n: usize, m: i64) -> Option<u128> {
    if m < 1 {
        return Some(0);
    }
    let mu = mobius(m as usize);
    let mut total: i128 = 0;
    for d in 1..=m as usize {
        if mu[d] == 0 {
            continue;
        }
        let c = binomial((m as usize / d) as u128, n as u128)?;
        total = total.checked_add(mu[d] as i128 * i128::try_from(c).ok()?)?;
    }
    u128::try_from(total).ok()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Best {
    k_exp: f64,
    witness: Vec<i64>,
    certificate: MinCertificate,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ChunkResult {
    index: usize,
    prefix: Vec<i64>,
    best: Option<Best>,
    certified: u64,
}

struct Search<'a> {
    n: usize,
    m: i64,
    tol: f64,
    table: &'a [Vec<f64>],
}

impl Search<'_> {
    fn run_chunk(&self, index: usize, prefix: &[i64]) -> Result<ChunkResult> {
        let size = self.table[0].len();
        let mut sums = vec![vec![0.0; size]; self.n + 1];
        let mut g = 0;
        for (depth, &b) in prefix.iter().enumerate() {
            let (prev, next) = sums.split_at_mut(depth + 1);
            for ((s, p), c) in next[0].iter_mut().zip(&prev[depth]).zip(&self.table[b as usize]) {
                *s = p + c;
            }
            g = gcd(g, b as u64);
        }
        let mut out = ChunkResult {
            index,
            prefix: prefix.to_vec(),
            best: None,
            certified: 0,
        };
        let mut current = prefix.to_vec();
        self.descend(&mut current, g, &mut sums, &mut out)?;
        Ok(out)
    }

    fn descend(&self, current: &mut Vec<i64>, g: u64, sums: &mut [Vec<f64>], out: &mut ChunkResult) -> Result<()> {
        let depth = current.len();
        if depth == self.n {
            return self.leaf(current, g, &sums[depth], out);
        }
        let start = current.last().map_or(1, |&b| b + 1);
        let remaining = (self.n - depth) as i64;
        for b in start..=self.m - remaining + 1 {
            {
                let (prev, next) = sums.split_at_mut(depth + 1);
                for ((s, p), c) in next[0].iter_mut().zip(&prev[depth]).zip(&self.table[b as usize]) {
                    *s = p + c;
                }
            }
            current.push(b);
            self.descend(current, gcd(g, b as u64), sums, out)?;
            current.pop();
        }
        Ok(())
    }

    fn leaf(&self, set: &[i64], g: u64, samples: &[f64], out: &mut ChunkResult) -> Result<()> {
        if g != 1 {
            return Ok(());
        }
        // grid values are attained, so -min(grid) is a lower bound for K
        let grid_bound = -samples.iter().copied().fold(f64::INFINITY, f64::min);
        if let Some(best) = &out.best {
            if grid_bound > best.k_exp {
                return Ok(());
            }
        }
        let positive = IntSet::from(set.to_vec());
        let symmetric = positive.union(&positive.neg());
        let cert = min_norm(&ExactPoly::indicator(&symmetric), self.tol)?;
        out.certified += 1;
        let k_exp = cert.min_norm();
        if out.best.as_ref().map_or(true, |b| k_exp < b.k_exp) {
            out.best = Some(Best {
                k_exp,
                witness: set.to_vec(),
                certificate: cert,
            });
        }
        Ok(())
    }
}

fn prefixes(n: usize, m: i64) -> Vec<Vec<i64>> {
    match n {
        0 => vec![Vec::new()],
        1 => (1..=m).map(|a| vec![a]).collect(),
        _ => (1..=m)
            .flat_map(|a| (a + 1..=m).map(move |b| vec![a, b]))
            .filter(|p| p[1] <= m - (n as i64 - 2))
            .collect(),
    }
}

fn checkpoint_path(dir: &Path, n: usize, m: i64, tol: f64, index: usize) -> PathBuf {
    dir.join(format!("brute_n{n}_M{m}_tol{tol:e}")).join(format!("chunk_{index}.json"))
}

fn load_checkpoint(path: &Path) -> Option<ChunkResult> {
    let text = fs::read_to_string(path).ok()?;
    serde_json::from_str(&text).ok()
}

fn save_checkpoint(path: &Path, result: &ChunkResult) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension("json.tmp");
    let mut f = fs::File::create(&tmp)?;
    f.write_all(serde_json::to_string(result)?.as_bytes())?;
    fs::rename(tmp, path)?;
    Ok(())
}

/// Smallest `-min_x Σ_{b∈B} cos 2πbx` over `n`-subsets `B ⊆ [1, M]` with
/// gcd 1, exact up to `opts.tol / 2`.
///
/// Work is split by the two smallest elements; each chunk keeps its own
/// best, and chunks are reduced in lexicographic order, so the result does
/// not depend on the number of workers.
pub fn brute_k(n: usize, m: i64, opts: &BruteOptions) -> Result<FrontierEntry> {
    if n == 0 || m < 1 || n as i64 > m {
        return Err(Error::Invalid(format!("need 1 <= n <= M, got n = {n}, M = {m}")));
    }
    let count = canonical_count(n, m).unwrap_or(u128::MAX);
    if count > opts.cap {
        return Err(Error::TooLarge { count, cap: opts.cap });
    }
    let size = pow2_at_least((16 * m as usize).max(64));
    let table: Vec<Vec<f64>> = (0..=m)
        .map(|b| {
            (0..size)
                .map(|j| 2.0 * (2.0 * PI * ((b as usize * j) % size) as f64 / size as f64).cos())
                .collect()
        })
        .collect();
    let search = Search { n, m, tol: opts.tol, table: &table };
    let chunks = prefixes(n, m);
    let work = || -> Result<Vec<ChunkResult>> {
        chunks
            .par_iter()
            .enumerate()
            .map(|(index, prefix)| {
                let path = opts
                    .cache_dir
                    .as_ref()
                    .map(|d| checkpoint_path(d, n, m, opts.tol, index));
                if opts.resume {
                    if let Some(done) = path.as_deref().and_then(load_checkpoint) {
                        if done.prefix == *prefix {
                            return Ok(done);
                        }
                    }
                }
                let result = search.run_chunk(index, prefix)?;
                if let Some(p) = &path {
                    save_checkpoint(p, &result)?;
                }
                Ok(result)
            })
            .collect()
    };
    let results = match opts.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Error::Invalid(e.to_string()))?
            .install(work)?,
        None => work()?,
    };
    let best = results
        .into_iter()
        .filter_map(|r| r.best)
        .reduce(|a, b| if b.k_exp < a.k_exp { b } else { a })
        .ok_or_else(|| Error::Invalid(format!("no subset of [1, {m}] of size {n} has gcd 1")))?;
    Ok(FrontierEntry {
        n,
        m_bound: m,
        k_value: best.k_exp / 2.0,
        witness: IntSet::from(best.witness),
        certificate: best.certificate,
        convention: COSINE_CONVENTION.to_string(),
    })
}

/// Entries for every `(n, M)` pair in order. On the first failure the
/// entries computed so far are returned together with the error.
pub fn frontier(pairs: &[(usize, i64)], opts: &BruteOptions) -> (Vec<FrontierEntry>, Option<Error>) {
    let mut entries = Vec::new();
    for &(n, m) in pairs {
        match brute_k(n, m, opts) {
            Ok(e) => entries.push(e),
            Err(e) => return (entries, Some(e)),
        }
    }
    (entries, None)
}

/// Pairs `(n, M, M')` with `M < M'` where the frontier value increased,
/// which would contradict monotonicity in `M` (up to `tol`).
pub fn monotonicity_violations(entries: &[FrontierEntry], tol: f64) -> Vec<(usize, i64, i64)> {
    let mut out = Vec::new();
    for a in entries {
        for b in entries {
            if a.n == b.n && a.m_bound < b.m_bound && b.k_value > a.k_value + tol {
                out.push((a.n, a.m_bound, b.m_bound));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(binomial(14, 4), Some(1001));
        assert_eq!(canonical_count(1, 10), Some(1));
        // pairs in [1, 6] with gcd 1
        assert_eq!(canonical_count(2, 6), Some(11));
        assert_eq!(mobius(12)[..], [1, 1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn singletons_and_pairs() {
        let opts = BruteOptions::default();
        let e = brute_k(1, 10, &opts).unwrap();
        assert!((e.k_value - 1.0).abs() < 1e-9);
        assert_eq!(e.witness.as_slice(), &[1]);
        let e = brute_k(2, 2, &opts).unwrap();
        assert!((e.k_value - 1.125).abs() < 1e-9);
        assert_eq!(e.witness.as_slice(), &[1, 2]);
    }

    #[test]
    fn cap_and_bad_input() {
        let opts = BruteOptions { cap: 10, ..Default::default() };
        assert!(matches!(brute_k(3, 12, &opts), Err(Error::TooLarge { .. })));
        assert!(brute_k(3, 2, &BruteOptions::default()).is_err());
    }

    #[test]
    fn csv_shape() {
        let e = brute_k(2, 3, &BruteOptions::default()).unwrap();
        let mut buf = Vec::new();
        write_frontier_csv(&mut buf, &[e]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("n,M,k_value,witness,radius,convention\n2,3,"));
    }
}
