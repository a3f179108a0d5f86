use thiserror::Error;

/// Errors raised by the library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid bit character {0:?} (expected '0' or '1')")]
    InvalidBit(char),

    #[error("rows X{x_row}/Z{z_row} anticommute")]
    Anticommuting { x_row: usize, z_row: usize },

    #[error("column count mismatch: s_x has {x_cols} columns, s_z has {z_cols}")]
    ColumnMismatch { x_cols: usize, z_cols: usize },

    #[error("code must have at least one physical qubit")]
    EmptyCode,

    #[error("edge {edge} repeats vertex {vertex}")]
    RepeatedVertex { edge: usize, vertex: usize },

    #[error("edge {edge} uses vertex {vertex} outside 1..={vertex_count}")]
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
        vertex_count: usize,
    },

    #[error("edge {edge} duplicates edge {first}")]
    DuplicateEdge { edge: usize, first: usize },

    #[error("coloring is not proper: edges {first} and {second} share vertex {vertex} and color {color}")]
    ImproperColoring {
        first: usize,
        second: usize,
        vertex: usize,
        color: usize,
    },

    #[error("coloring covers {found} edges, hypergraph has {expected}")]
    ColoringSize { expected: usize, found: usize },

    #[error("collection is empty")]
    EmptyCollection,

    #[error("support {index} is empty")]
    EmptySupport { index: usize },

    #[error("support {index} contains coordinate {coordinate} outside 1..={n}")]
    SupportOutOfRange {
        index: usize,
        coordinate: usize,
        n: usize,
    },

    #[error("selected index {index} is out of range for a collection of {len}")]
    InvalidIndex { index: usize, len: usize },

    #[error("division by zero in {0}")]
    ZeroDivisor(&'static str),

    #[error("gate pattern layout mismatch: {0}")]
    LayoutMismatch(String),

    #[error("invalid gate {gate}: {reason}")]
    InvalidGate { gate: usize, reason: String },

    #[error("circuit has {found} qubits, expected {expected}")]
    CircuitSize { expected: usize, found: usize },

    #[error("circuit has no layer assignment")]
    MissingLayers,

    #[error("layer {layer} is not well formed: {reason}")]
    MalformedLayer { layer: usize, reason: String },

    #[error("enumeration of {required} items exceeds cutoff {cutoff}")]
    CutoffExceeded { required: u128, cutoff: u128 },

    #[error("logical phase is not constant on the cosets of the triple")]
    NonConstantCosets,

    #[error("vectors are not independent logical operators")]
    NotIndependent,

    #[error("triple is not magic-friendly: {0}")]
    NotMagicFriendly(String),

    #[error("scaling fit: {0}")]
    DegenerateFit(String),

    #[error("no magic-friendly triples available")]
    NoTriples,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid rational {0:?}")]
    InvalidRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
