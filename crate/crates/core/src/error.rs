use thiserror::Error;

/// Errors shared across the exact and numeric layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by the zero rational function")]
    DivisionByZero,

    #[error("denominator vanishes at q = e^(i*{gamma}): |den| = {magnitude:.3e}")]
    PoleAtGamma { gamma: f64, magnitude: f64 },

    #[error("coefficient has a pole at q = {q_re}+{q_im}i")]
    PoleAtQ { q_re: f64, q_im: f64 },

    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { rank: usize, index: usize },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("rank {needed} exceeds available rank {available}")]
    RankOverflow { needed: usize, available: usize },

    #[error("rho pole: quantum integer [{k}] vanishes at gamma = {gamma}")]
    RhoPole { k: usize, gamma: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("relation {relation} requires n >= {min_n}, got {n}")]
    RelationOutOfRange {
        relation: String,
        min_n: usize,
        n: usize,
    },

    #[error("unknown relation id `{0}`")]
    UnknownRelation(String),

    #[error("certification of {relation} at n = {n} failed with {residual_terms} residual terms:\n{residual}")]
    CertificationFailed {
        relation: String,
        n: usize,
        residual_terms: usize,
        residual: String,
    },

    #[error("ansatz rejected: hermiticity {hermiticity:.3e}, quadratic {quadratic:.3e}, cubic {cubic:.3e}")]
    AnsatzRejected {
        hermiticity: f64,
        quadratic: f64,
        cubic: f64,
    },

    #[error("proposition check violated: {0}")]
    PropositionViolated(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
