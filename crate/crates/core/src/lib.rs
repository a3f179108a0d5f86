//! Magic-friendly triples on CSS codes, greedy packing into disjoint
//! supports, and constant-depth scheduling of the resulting CCZ gates.
//!
//! Coordinates, qubits, vertices and colors are 1-based in every public
//! interface; collection indices are 0-based.

pub mod code;
pub mod error;
pub mod f2la;
pub mod fixtures;
pub mod fountain;
pub mod hypergraph;
pub mod io;
pub mod packing;
pub mod phaseverify;
pub mod rational;
pub mod triples;

pub use code::{CssCode, DistanceReport, DEFAULT_DISTANCE_CUTOFF};
pub use error::{Error, Result};
pub use f2la::{BitMatrix, BitVector, Echelon};
pub use fountain::{
    run_pipeline, FountainReport, GatePattern, PipelineOptions, RegisterLayout, ScalingFit,
    Strategy,
};
pub use hypergraph::{
    greedy_color, schedule_from_coloring, verify_coloring, Edge, EdgeColoring, Hypergraph3,
    Schedule,
};
pub use packing::{greedy_pack, pack_supports, verify_packing, PackingResult};
pub use phaseverify::{DiagonalCircuit, Gate, GateKind};
pub use rational::Rational;
pub use triples::{
    collection_stats, enumerate_triples, sample_triples, verify_magic_friendly, CollectionStats,
    MagicFriendlyTriple, SearchBudget,
};
