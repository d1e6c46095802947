use thiserror::Error;

use crate::surface::EdgeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("parse error on line {line}: {msg}")]
    ParseLine { line: usize, msg: String },

    #[error("triangle is not strictly counterclockwise")]
    DegenerateTriangle,

    #[error("collinear segments overlap")]
    CollinearOverlap,

    #[error("triangle {triangle}: side vectors do not sum to zero")]
    Closure { triangle: usize },

    #[error("triangle {triangle}: corner {corner} is not positively oriented")]
    Orientation { triangle: usize, corner: usize },

    #[error("sides {a} and {b} are glued but have different squared lengths")]
    LengthMismatch { a: String, b: String },

    #[error("non-manifold pairing: {0}")]
    NonManifold(String),

    #[error("side {0} is neither glued nor marked as boundary")]
    DanglingDart(String),

    #[error("vertex orbit mixes labels `{first}` and `{second}`")]
    InconsistentLabel { first: String, second: String },

    #[error("no edge with identifier {0}")]
    UnknownEdge(EdgeId),

    #[error("edge {0} lies on the boundary")]
    BoundaryEdge(EdgeId),

    #[error("edge {0} is glued to another side of the same triangle")]
    SelfGluedEdge(EdgeId),

    #[error("edge {0} is not flippable: its quadrilateral is not strictly convex")]
    NotFlippable(EdgeId),

    #[error("replay failed at step {index} (edge {edge}): {source}")]
    Replay {
        index: usize,
        edge: EdgeId,
        #[source]
        source: Box<Error>,
    },

    #[error("edge {0} violates the Delaunay condition but cannot be flipped")]
    DelaunayAssertion(EdgeId),

    #[error("Delaunay flipping did not terminate within {cap} flips")]
    IterationLimit { cap: usize },

    #[error("search exceeded its budget of {cap} nodes")]
    SearchBudget { cap: usize },

    #[error("the two triangulations do not describe the same labeled flat surface")]
    NotSameSurface,

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("invalid diagonal ({0}, {1})")]
    InvalidDiagonal(usize, usize),

    #[error("polygon has {n} vertices; this operation is limited to {max}")]
    BudgetExceeded { n: usize, max: usize },

    #[error("internal error: {0}")]
    Internal(String),
}
