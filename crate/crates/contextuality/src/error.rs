use thiserror::Error;

/// Errors produced by system validation, analysis, and file handling.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate content id `{0}`")]
    DuplicateContent(String),

    #[error("duplicate context id `{0}`")]
    DuplicateContext(String),

    #[error("unknown content `{0}`")]
    UnknownContent(String),

    #[error("unknown context `{0}`")]
    UnknownContext(String),

    #[error("context `{0}` measures no contents")]
    EmptyContext(String),

    #[error("content `{0}` is not measured in any context")]
    UnmeasuredContent(String),

    #[error("the system has an empty measurement relation")]
    EmptyRelation,

    #[error("context `{context}`: outcome `{outcome}` has {got} coordinates, expected {expected}")]
    OutcomeLength {
        context: String,
        outcome: String,
        got: usize,
        expected: usize,
    },

    #[error("context `{context}`: probabilities sum to {sum}, expected 1")]
    PmfSum { context: String, sum: String },

    #[error("context `{context}`: negative probability {value} for outcome `{outcome}`")]
    NegativeProbability {
        context: String,
        outcome: String,
        value: String,
    },

    #[error("content `{content}` is not part of the bunch of context `{context}`")]
    SubsetNotInBunch { context: String, content: String },

    #[error("probability {0} is outside [0, 1]")]
    ProbabilityRange(String),

    #[error("a connection must have at least one member")]
    EmptyConnection,

    #[error("coupling has {got} variables, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },

    #[error("2^{contents} global assignment columns exceed the limit of {limit} (raise --max-columns)")]
    ColumnLimit { contents: usize, limit: u64 },

    #[error("relation of size {size} exceeds the feasibility-oracle limit of {limit}")]
    RelationLimit { size: usize, limit: usize },

    #[error("the exact coupling oracle handles at most {limit} variables, got {got}")]
    OracleLimit { got: usize, limit: usize },

    #[error("{count} deterministic realizations exceed the limit of {limit}")]
    RealizationLimit { count: String, limit: u64 },

    #[error("system is not simply consistently connected; use the consistifying analysis")]
    InconsistentlyConnected,

    #[error("no deterministic realization exists; contexts with empty outcome sets: {}", .0.join(", "))]
    NoRealizations(Vec<String>),

    #[error("invalid prior: {0}")]
    InvalidPrior(String),

    #[error("system is not deterministic")]
    NotDeterministic,

    #[error("no coupling satisfies the multimaximality constraints")]
    OracleInfeasible,

    #[error("more than one coupling satisfies the multimaximality constraints")]
    OracleAmbiguous,

    #[error("consistified-system property violated: {0}")]
    ConsistifiedProperty(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("invalid rational `{0}`")]
    ParseRational(String),

    #[error("invalid outcome string `{0}` (expected characters `+` and `-`)")]
    ParseOutcome(String),

    #[error("{0}")]
    Format(String),

    #[error("liar systems need at least 3 statements, got {0}")]
    LiarTooSmall(usize),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
