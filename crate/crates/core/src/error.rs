use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: undeclared vertex `{name}`")]
    UndeclaredVertex { line: usize, name: String },

    #[error("line {line}: duplicate vertex `{name}`")]
    DuplicateVertex { line: usize, name: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("gauge is missing vertex `{0}`")]
    GaugeMissingVertex(String),

    #[error("{what} budget exceeded (limit {limit}){context}")]
    BudgetExceeded {
        what: &'static str,
        limit: u64,
        context: String,
    },

    #[error("endpoint outside the unrolled patch")]
    OutsidePatch,

    #[error("target unreachable inside the unrolled window")]
    Unreachable,

    #[error("quotient graph is not strongly connected ({0} components); use velocity_set")]
    NotStronglyConnected(usize),

    #[error("empty polytope")]
    EmptyPolytope,

    #[error("polytope has no facet representation")]
    MissingFacets,

    #[error("degenerate polytope: {0}")]
    Degenerate(String),

    #[error("metric is not positive definite")]
    NotPositiveDefinite,

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
