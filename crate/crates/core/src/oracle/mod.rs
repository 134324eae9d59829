//! Brute-force ground truth and shift searches.

mod brute;
mod experiments;

pub use brute::{
    brute_k, canonical_count, frontier, monotonicity_violations, write_frontier_csv, BruteOptions,
    FrontierEntry, COSINE_CONVENTION, DEFAULT_CAP,
};
pub use experiments::{
    best_t_energy, prime_product_t_search, sidon_upper_experiment, BestShift, TSearch, TraceStep,
    ORBIT_CAP,
};
