use thiserror::Error;

/// Validation failures for tree input. Vertex ids are reported 1-based.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TreeError {
    #[error("a tree needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("expected {expected} edges for a tree, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({u},{v}) has non-positive or non-finite weight {weight}")]
    NonPositiveWeight { u: usize, v: usize, weight: f64 },
    #[error("edge ({u},{v}) closes a cycle; input is not a tree")]
    Cycle { u: usize, v: usize },
    #[error("sequence is not a simple path in the tree: {0}")]
    NotAPath(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CostError {
    #[error("cost matrix must be {n}x{n}, got {len} values")]
    MatrixShape { n: usize, len: usize },
    #[error("cost matrix is not symmetric at ({u},{v})")]
    Asymmetric { u: usize, v: usize },
    #[error("cost ({u},{v}) = {value} is negative or non-finite")]
    InvalidValue { u: usize, v: usize, value: f64 },
    #[error("coordinate list must hold {n} points of dimension {dim}")]
    CoordinateShape { n: usize, dim: usize },
    #[error("cost oracle covers {oracle} vertices but the tree has {tree}")]
    SizeMismatch { oracle: usize, tree: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InstanceError {
    #[error("a path instance needs at least 2 vertices")]
    TooShort,
    #[error("expected {expected} node weights, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("path edge {index} has non-positive or non-finite weight {weight}")]
    NonPositiveEdge { index: usize, weight: f64 },
    #[error("node weight w({index}) = {weight} outside [0, {bound}]")]
    NodeWeightOutOfRange { index: usize, weight: f64, bound: f64 },
    #[error("decomposition does not match the tree: {0}")]
    Decomposition(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unexpected end of input: {0}")]
    Truncated(String),
    #[error("unknown cost specification `{0}`")]
    CostSpec(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Cost(#[from] CostError),
}

/// Umbrella error for the tree-level pipelines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Cost(#[from] CostError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("epsilon must be positive and finite, got {0}")]
    InvalidEpsilon(f64),
}
