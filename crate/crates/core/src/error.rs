use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors shared by every module of the core crate.
///
/// `Inconclusive` is deliberately separate from any negative verdict: a
/// search that ran out of budget never reports "no".
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("unknown graph `{0}`")]
    UnknownGraph(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("graph on {requested} vertices exceeds the vertex limit {limit}")]
    VertexLimit { requested: u128, limit: usize },
    #[error("search inconclusive: {0}")]
    Inconclusive(String),
    #[error("dynamic programming table limit of {limit} cells exceeded")]
    TableLimit { limit: usize },
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
}

impl Error {
    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Error::Inconclusive(_) | Error::TableLimit { .. })
    }
}
