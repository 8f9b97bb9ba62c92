use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("malformed edge on line {line}: {text:?}")]
    MalformedEdge { line: usize, text: String },
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("header declares {declared} edges, found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("vertex set is empty")]
    EmptySet,
    #[error("edge {0}-{1} is not in the graph")]
    MissingEdge(usize, usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("generation failed: {0}")]
    GenerationFailed(String),
    #[error("not a spanning tree: {0}")]
    NotSpanningTree(String),
    #[error("tree edge {0}-{1} is not an edge of the host graph")]
    TreeEdgeNotInGraph(usize, usize),
    #[error("input graph is disconnected")]
    DisconnectedInput,
    #[error("spanning tree count {count} exceeds budget {budget}")]
    BudgetExceeded { count: BigUint, budget: u64 },
    #[error("marked vertex set is empty")]
    EmptyMarkSet,
    #[error("graph with {n} vertices exceeds the exact limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("graph with {n} vertices is below the minimum size {min}")]
    TooSmall { n: usize, min: usize },
    #[error("cut oracle failed: {0}")]
    OracleFailure(String),
    #[error("edge expansion is undefined on a single vertex")]
    SingleVertex,
    #[error("expander extraction removed every vertex")]
    Exhausted,
    #[error("graph has no edges")]
    EdgelessGraph,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}
