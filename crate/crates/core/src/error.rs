use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex index {index} out of range for graph on {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("graph must have at least one vertex")]
    EmptyGraph,

    #[error("vertex subset must be non-empty")]
    EmptySubset,

    #[error("vertex {0} listed more than once in subset")]
    DuplicateVertex(usize),

    #[error("malformed graph6: {0}")]
    Graph6(String),

    #[error("invalid LCF code: {0}")]
    Lcf(String),

    #[error("invalid edge list: {0}")]
    EdgeList(String),

    #[error("parameter out of range: {0}")]
    Parameter(String),

    #[error("unknown catalog graph `{0}`")]
    UnknownGraph(String),

    #[error("catalog graph `{name}` failed invariant check: {detail}")]
    CatalogInvariant { name: String, detail: String },

    #[error("random-walk operator is not symmetric on a non-regular graph (max degree {max}, min degree {min})")]
    NonRegular { min: usize, max: usize },

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("eigensolver did not converge")]
    EigenNonConvergence,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("weights must sum to 1 (sum = {0})")]
    WeightNormalization(f64),

    #[error("growth bound requires positive weights")]
    NonPositiveWeights,

    #[error("subset count C({n},{k}) = {count} exceeds budget {budget}; use a heuristic search")]
    BudgetExceeded { n: usize, k: usize, count: u128, budget: u64 },

    #[error("singular minor (reciprocal condition {rcond:e})")]
    SingularMinor { rcond: f64 },

    #[error("no nonsingular minor found for k = {0}; eigenvector matrix is defective")]
    NoMinor(usize),
}

impl Error {
    /// Stable machine-readable code, shared by the CLI JSON output and the C API.
    pub fn code(&self) -> &'static str {
        match self {
            Error::VertexOutOfRange { .. } => "vertex_out_of_range",
            Error::SelfLoop(_) => "self_loop",
            Error::Disconnected { .. } => "disconnected",
            Error::EmptyGraph => "empty_graph",
            Error::EmptySubset => "empty_subset",
            Error::DuplicateVertex(_) => "duplicate_vertex",
            Error::Graph6(_) => "graph6",
            Error::Lcf(_) => "lcf",
            Error::EdgeList(_) => "edge_list",
            Error::Parameter(_) => "parameter",
            Error::UnknownGraph(_) => "unknown_graph",
            Error::CatalogInvariant { .. } => "catalog_invariant",
            Error::NonRegular { .. } => "non_regular",
            Error::NotSymmetric(_) => "not_symmetric",
            Error::EigenNonConvergence => "eigen_non_convergence",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::WeightNormalization(_) => "weight_normalization",
            Error::NonPositiveWeights => "non_positive_weights",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::SingularMinor { .. } => "singular_minor",
            Error::NoMinor(_) => "no_minor",
        }
    }
}
