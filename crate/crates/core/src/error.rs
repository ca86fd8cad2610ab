use alloc::string::String;

use crate::rational::Rational;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex id {vertex} is out of range (vertex count {vertex_count})")]
    InvalidVertexId { vertex: usize, vertex_count: usize },
    #[error("empty simplex in input")]
    EmptyInput,
    #[error("simplex lists vertex {vertex} more than once")]
    RepeatedVertex { vertex: usize },
    #[error("cell order is not a permutation of the cells")]
    NotAPermutation,
    #[error("cell order places cell {coface} before its face {face}")]
    OrderViolatesConditionA { face: usize, coface: usize },
    #[error("filtration is not monotone: face {face} enters after coface {coface}")]
    NonMonotoneFiltration { face: usize, coface: usize },
    #[error("stage list has {found} entries, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("no value for vertex {vertex}")]
    MissingVertexValue { vertex: usize },
    #[error("no value for edge ({0}, {1})")]
    MissingEdgeValue(usize, usize),
    #[error("map is not generic: vertices {0} and {1} share a value")]
    NonGenericMap(usize, usize),
    #[error("interval endpoints must satisfy lo < hi")]
    BadInterval,
    #[error("period alpha must be positive")]
    NonPositiveAlpha,
    #[error("angle {angle} of vertex {vertex} is outside [0, alpha)")]
    AngleOutOfRange { vertex: usize, angle: Rational },
    #[error("1-cochain violates the cocycle condition on {violations} triangle(s)")]
    NotACocycle { violations: usize },
    #[error("cocycle is not almost integral for the given alpha")]
    NotAlmostIntegral,
    #[error("complex is disconnected; one base vertex per component is required")]
    DisconnectedWithSingleBase,
    #[error("simplex {simplex} spans an angular interval of at least alpha/2")]
    SpanTooWide { simplex: usize },
    #[error("vertex {vertex} lies on the level")]
    VertexOnLevel { vertex: usize },
    #[error("matrix is not upper triangular with zero diagonal (column {column})")]
    NotUpperTriangular { column: usize },
    #[error("cell order is not compatible with the filtration at position {position}")]
    OrderNotFiltrationCompatible { position: usize },
    #[error("block structure violated: {0}")]
    BlocksOverlap(String),
    #[error("boundary operator does not square to zero in degree {degree}")]
    BoundaryNotSquareZero { degree: usize },
    #[error("cell set is not a subcomplex")]
    NotASubcomplex,
    #[error("exact sequence data is under-determined")]
    UnderDetermined,
    #[error("contradiction: {0}")]
    Contradiction(String),
}
