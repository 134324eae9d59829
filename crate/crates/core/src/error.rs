use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("set is not symmetric: {0} present but its negation missing")]
    NotSymmetric(i64),
    #[error("set contains 0")]
    ContainsZero,
    #[error("element {0} is not a positive integer")]
    NonPositiveElement(i64),
    #[error("element {0} appears more than once")]
    DuplicateElement(i64),
    #[error("shift t must be nonzero")]
    ZeroShift,
    #[error("operation needs a nonempty set")]
    EmptySet,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("polynomial is not real-valued (coefficients are not Hermitian)")]
    NotRealValued,
    #[error("certified minimum did not reach tolerance {tol:e}; best radius {best_radius:e} after {evaluations} evaluations")]
    NonConvergence {
        tol: f64,
        best_radius: f64,
        evaluations: usize,
    },

    #[error("grid of size {size} too small for degree {degree} (need a power of two > {})", 2 * .degree)]
    GridTooSmall { size: usize, degree: u64 },
    #[error("grid sizes differ: {0} vs {1}")]
    GridMismatch(usize, usize),
    #[error("grid function is not real-valued")]
    NotReal,
    #[error("K = {k} is below the certified one-sided norm {certified}")]
    KTooSmall { k: f64, certified: f64 },

    #[error("function does not have mean zero (mean {0:e})")]
    NotMeanZero(f64),
    #[error("B is not a subset of A ({0} ∉ A)")]
    BNotSubset(i64),
    #[error("witness invalid: {0}")]
    WitnessInvalid(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("supports of the parts are not pairwise disjoint ({0} is shared)")]
    SupportsNotDisjoint(i64),
    #[error("coefficient system is singular (repeated coefficient {0})")]
    SingularSystem(f64),
    #[error("decomposition unavailable: {0}")]
    DecompositionUnavailable(String),

    #[error("search space of {count} subsets exceeds cap {cap}")]
    TooLarge { count: u128, cap: u128 },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Invalid(e.to_string())
    }
}
