use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use chowla_lab::oracle::{
    best_t_energy, frontier, prime_product_t_search, sidon_upper_experiment, write_frontier_csv,
    BruteOptions,
};
use chowla_lab::setcore::{longest_ap, sidon_difference_construction};
use chowla_lab::trigpoly::min_norm;
use chowla_lab::verify::Config;
use chowla_lab::{Error, ExactPoly, LemmaReport, SymSet};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

mod suite;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "chowla-lab", version, about = "Checks one-sided estimates for cosine sums")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Serialize)]
struct Common {
    /// Certificate tolerance for global minima.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Grid points per unit of degree for grid checks (at least 16).
    #[arg(long, global = true, default_value_t = 64)]
    grid_factor: usize,
    /// Override a named constant, e.g. `--const c3=64`. Repeatable.
    #[arg(long = "const", global = true, value_name = "NAME=V")]
    constants: Vec<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run checkers over instance sets; emits JSON Lines.
    Verify {
        /// Comma-separated checker ids or prefixes (`lemma3`, `prop5.2`, `all`).
        #[arg(long, default_value = "all")]
        suite: String,
        /// A symmetric set as a JSON array.
        #[arg(long)]
        set: Option<String>,
        /// Instance sources: `sidon:M;random:COUNT;ap:COUNT`.
        #[arg(long)]
        sets: Option<String>,
        /// Shift `t` (default: the best shift of each set).
        #[arg(long, allow_hyphen_values = true)]
        t: Option<i64>,
        /// Number of random instances in the default mix.
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// Certified one-sided norm of `1̂_A`.
    Kmin {
        #[arg(long, conflicts_with = "sidon")]
        set: Option<String>,
        /// Use the Sidon-difference set of size m² - m.
        #[arg(long)]
        sidon: Option<usize>,
    },
    /// Exhaustive frontier of the smallest cosine-sum minimum; emits CSV.
    Brute {
        /// Set size, `N` or `A..B`.
        #[arg(long)]
        n: String,
        /// Largest element, `M` or `A..B`.
        #[arg(long = "M")]
        m: String,
        /// Reuse checkpoints from `$CHOWLA_LAB_CACHE`.
        #[arg(long)]
        resume: bool,
        /// Cap on canonical subsets per entry.
        #[arg(long, default_value_t = chowla_lab::oracle::DEFAULT_CAP)]
        cap: u128,
    },
    /// Sidon-difference upper bounds for m = 2..=10 (or one m).
    Sidon {
        #[arg(long)]
        sidon: Option<usize>,
    },
    /// Best shift and the prime-product shift search.
    ExploreT {
        #[arg(long, conflicts_with = "sidon")]
        set: Option<String>,
        #[arg(long)]
        sidon: Option<usize>,
        /// Largest prime used in the search.
        #[arg(long = "M", default_value_t = 3)]
        m: usize,
        /// Bound `L` (default: longest progression in A).
        #[arg(long = "L")]
        l: Option<usize>,
    },
    /// Summarises JSON Lines reports as a table.
    Report {
        /// Report files; stdin when absent.
        inputs: Vec<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TooLarge { .. } => Failure::Cap(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn config(common: &Common) -> Result<Config, Failure> {
    let mut cfg = Config {
        tol: common.tol,
        grid_factor: common.grid_factor,
        ..Config::default()
    };
    for item in &common.constants {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("--const expects NAME=V, got {item:?}")))?;
        let value: f64 = value
            .parse()
            .map_err(|_| Failure::Usage(format!("--const {name}: {value:?} is not a number")))?;
        cfg.constants.set(name, value)?;
    }
    cfg.validate()?;
    if common.jobs == 0 {
        return Err(Failure::Usage("--jobs must be at least 1".into()));
    }
    Ok(cfg)
}

fn parse_set(text: &str) -> Result<SymSet, Failure> {
    let raw: Vec<i64> = serde_json::from_str(text)
        .map_err(|e| Failure::Usage(format!("--set must be a JSON array of integers: {e}")))?;
    Ok(SymSet::new(raw)?)
}

fn set_source(set: &Option<String>, sidon: Option<usize>) -> Result<SymSet, Failure> {
    match (set, sidon) {
        (Some(text), _) => parse_set(text),
        (None, Some(m)) if m >= 1 => Ok(sidon_difference_construction(m)),
        (None, Some(_)) => Err(Failure::Usage("--sidon needs m >= 1".into())),
        (None, None) => Err(Failure::Usage("give --set or --sidon".into())),
    }
}

fn parse_range<T: std::str::FromStr + Copy>(text: &str, flag: &str) -> Result<(T, T), Failure> {
    let bad = || Failure::Usage(format!("{flag} expects N or A..B, got {text:?}"));
    match text.split_once("..") {
        Some((a, b)) => Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?)),
        None => {
            let v = text.parse().map_err(|_| bad())?;
            Ok((v, v))
        }
    }
}

fn writer(out: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

fn resolved(common: &Common, cfg: &Config) -> serde_json::Value {
    json!({
        "tol": cfg.tol,
        "grid_factor": cfg.grid_factor,
        "constants": cfg.constants.as_map(),
        "seed": common.seed,
        "jobs": common.jobs,
    })
}

fn in_pool<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> Result<R, Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(pool.install(f))
}

fn verify(
    common: &Common,
    cfg: &Config,
    suite_spec: &str,
    set: &Option<String>,
    sets: &Option<String>,
    t: Option<i64>,
    n: usize,
) -> Result<bool, Failure> {
    let checkers = suite::expand_suite(suite_spec).map_err(Failure::Usage)?;
    if t == Some(0) {
        return Err(Failure::Usage("--t must be nonzero".into()));
    }
    let mut instances = Vec::new();
    if let Some(text) = set {
        instances.push(suite::Instance {
            label: "set".into(),
            set: parse_set(text)?,
        });
    }
    if let Some(spec) = sets {
        instances.extend(suite::parse_sources(spec, common.seed).map_err(Failure::Usage)?);
    }
    if set.is_none() && sets.is_none() {
        instances = suite::default_sources(n, common.seed);
    }
    let outcomes: Vec<suite::Outcome> = in_pool(common.jobs, || {
        checkers
            .par_iter()
            .flat_map_iter(|&c| suite::run(c, &instances, t, n, common.seed, cfg))
            .collect()
    })?;

    let config = resolved(common, cfg);
    let mut out = writer(&common.out)?;
    let mut all_pass = true;
    for o in &outcomes {
        let line = match &o.result {
            Ok(report) => {
                all_pass &= report.pass;
                json!({ "checker": o.checker, "instance": o.label, "config": config, "report": report })
            }
            Err(e) => {
                all_pass = false;
                json!({ "checker": o.checker, "instance": o.label, "config": config, "error": e.to_string() })
            }
        };
        writeln!(out, "{line}")?;
    }
    out.flush()?;
    Ok(all_pass)
}

fn kmin(common: &Common, cfg: &Config, set: &Option<String>, sidon: Option<usize>) -> Result<bool, Failure> {
    let a = set_source(set, sidon)?;
    let cert = min_norm(&ExactPoly::indicator(&a), cfg.tol)?;
    let line = json!({
        "A": a,
        "n": a.len(),
        "certificate": cert,
        "min": cert.lower,
        "min_norm": cert.min_norm(),
        "cosine_min_norm": cert.min_norm() / 2.0,
        "convention": "min_norm = -min 1_A (exponential sums); cosine_min_norm = -min of the cosine sum over the positive half",
        "config": resolved(common, cfg),
    });
    let mut out = writer(&common.out)?;
    writeln!(out, "{line}")?;
    out.flush()?;
    Ok(true)
}

fn brute(common: &Common, cfg: &Config, n: &str, m: &str, resume: bool, cap: u128) -> Result<bool, Failure> {
    let (n0, n1): (usize, usize) = parse_range(n, "--n")?;
    let (m0, m1): (i64, i64) = parse_range(m, "--M")?;
    let pairs: Vec<(usize, i64)> = (n0..=n1)
        .flat_map(|n| (m0..=m1).filter(move |&m| m >= n as i64).map(move |m| (n, m)))
        .collect();
    let opts = BruteOptions {
        tol: cfg.tol,
        cap,
        jobs: Some(common.jobs),
        cache_dir: std::env::var_os("CHOWLA_LAB_CACHE").map(PathBuf::from),
        resume,
    };
    if resume && opts.cache_dir.is_none() {
        return Err(Failure::Usage("--resume needs CHOWLA_LAB_CACHE to be set".into()));
    }
    let (entries, err) = frontier(&pairs, &opts);
    let mut out = writer(&common.out)?;
    write_frontier_csv(&mut out, &entries)?;
    out.flush()?;
    match err {
        None => Ok(true),
        Some(e @ Error::TooLarge { .. }) => Err(Failure::Cap(format!(
            "partial frontier ({} of {} entries): {e}",
            entries.len(),
            pairs.len()
        ))),
        Some(e) => Err(e.into()),
    }
}

fn sidon(common: &Common, cfg: &Config, m: Option<usize>) -> Result<bool, Failure> {
    let ms: Vec<usize> = m.map_or((2..=10).collect(), |m| vec![m]);
    let config = resolved(common, cfg);
    let mut out = writer(&common.out)?;
    let mut all_pass = true;
    for m in ms {
        let report = sidon_upper_experiment(m, cfg.tol)?;
        all_pass &= report.pass;
        writeln!(out, "{}", json!({ "m": m, "config": config, "report": report }))?;
    }
    out.flush()?;
    Ok(all_pass)
}

fn explore_t(
    common: &Common,
    cfg: &Config,
    set: &Option<String>,
    sidon: Option<usize>,
    m_param: usize,
    l: Option<usize>,
) -> Result<bool, Failure> {
    let a = set_source(set, sidon)?;
    let best = best_t_energy(&a, cfg)?;
    let l = match l {
        Some(l) => l,
        None => longest_ap(&a)?.0,
    };
    let search = prime_product_t_search(&a, m_param, l)?;
    let verified = search.all_verified(m_param, l);
    let line = json!({
        "A": a,
        "best_shift": { "t": best.t, "size": best.size },
        "roth": best.roth,
        "search": {
            "t0": search.t0,
            "k": search.k,
            "t": search.t,
            "b_size": search.b_size,
            "orbit_size": search.orbit.len(),
            "trace_steps": search.trace.len(),
            "trace_verified": verified,
            "hypothesis_holds": search.hypothesis_holds,
            "depth_bound": search.depth_bound,
            "depth_bound_holds": search.depth_bound_holds,
            "truncated": search.truncated,
        },
        "M": m_param,
        "L": l,
        "config": resolved(common, cfg),
    });
    let mut out = writer(&common.out)?;
    writeln!(out, "{line}")?;
    out.flush()?;
    Ok(verified && best.roth.pass)
}

#[derive(Default)]
struct Tally {
    total: usize,
    pass: usize,
    vacuous: usize,
    errors: usize,
    max_observed: Option<f64>,
}

fn report(common: &Common, inputs: &[PathBuf]) -> Result<bool, Failure> {
    let mut readers: Vec<Box<dyn BufRead>> = Vec::new();
    if inputs.is_empty() {
        readers.push(Box::new(BufReader::new(io::stdin())));
    }
    for p in inputs {
        readers.push(Box::new(BufReader::new(File::open(p)?)));
    }
    let mut tallies: BTreeMap<String, Tally> = BTreeMap::new();
    for r in readers {
        for line in r.lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let v: serde_json::Value = serde_json::from_str(&line)
                .map_err(|e| Failure::Usage(format!("not a JSON report line: {e}")))?;
            if let Some(rep) = v.get("report") {
                let rep: LemmaReport = serde_json::from_value(rep.clone())
                    .map_err(|e| Failure::Usage(format!("malformed report: {e}")))?;
                let t = tallies.entry(rep.lemma_id.clone()).or_default();
                t.total += 1;
                t.pass += rep.pass as usize;
                t.vacuous += rep.vacuous as usize;
                if let Some(o) = rep.observed_min_constant {
                    t.max_observed = Some(t.max_observed.map_or(o, |m: f64| m.max(o)));
                }
            } else if v.get("error").is_some() {
                let id = v.get("checker").and_then(|c| c.as_str()).unwrap_or("?");
                let t = tallies.entry(id.to_string()).or_default();
                t.total += 1;
                t.errors += 1;
            }
        }
    }
    let mut out = writer(&common.out)?;
    writeln!(out, "{:<20} {:>6} {:>6} {:>6} {:>8} {:>7} {:>14}", "lemma", "total", "pass", "fail", "vacuous", "errors", "max observed")?;
    let mut all_pass = true;
    for (id, t) in &tallies {
        let fail = t.total - t.pass - t.errors;
        all_pass &= fail == 0 && t.errors == 0;
        let observed = t.max_observed.map_or("-".to_string(), |o| format!("{o:.6}"));
        writeln!(out, "{id:<20} {:>6} {:>6} {:>6} {:>8} {:>7} {:>14}", t.total, t.pass, fail, t.vacuous, t.errors, observed)?;
    }
    out.flush()?;
    Ok(all_pass)
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let cfg = config(&cli.common)?;
    let c = &cli.common;
    match &cli.command {
        Command::Verify { suite, set, sets, t, n } => verify(c, &cfg, suite, set, sets, *t, *n),
        Command::Kmin { set, sidon } => kmin(c, &cfg, set, *sidon),
        Command::Brute { n, m, resume, cap } => brute(c, &cfg, n, m, *resume, *cap),
        Command::Sidon { sidon: m } => sidon(c, &cfg, *m),
        Command::ExploreT { set, sidon, m, l } => explore_t(c, &cfg, set, *sidon, *m, *l),
        Command::Report { inputs } => report(c, inputs),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_CAP)
        }
    }
}
