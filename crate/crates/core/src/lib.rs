//! Global minimum vertex-cut solvers for directed vertex-weighted graphs.
//!
//! The crate is organized around three randomized solvers (unweighted,
//! weighted non-dense, weighted dense) built on a common set of primitives:
//! split graphs, derived graphs, an exact flow engine, local flow,
//! approximate furthest min-cuts, and a subgraph oracle. Brute-force
//! reference oracles used for verification live in [`reference`].

pub mod afmc;
pub mod dense;
pub mod driver;
pub mod flow;
pub mod graph;
pub mod instance;
pub mod local_flow;
pub mod modadj;
pub mod oracle;
pub mod record;
pub mod reference;
pub mod sampling;
pub mod sparse;
pub mod stats;
pub mod unweighted;

pub use graph::{DiGraph, EdgeCut, Tripartition};

/// Vertex id: dense 0-based indices.
pub type Vertex = usize;

/// Weights, capacities and cut values. Exact integers; arithmetic is checked
/// up to the full range so overflow surfaces as [`Error::CapacityOverflow`]
/// instead of wrapping.
pub type Weight = u128;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("empty-source: vertex set must be nonempty")]
    EmptySource,
    #[error("not-a-cut: tripartition is not a valid vertex-cut")]
    NotACut,
    #[error("degenerate-cut: edge-cut value >= regular capacity implies no vertex-cut")]
    DegenerateCut,
    #[error("no-outside-vertex: A together with its out-neighborhood covers V")]
    NoOutsideVertex,
    #[error("adjacent-terminals: an edge runs from the source set to the sink set")]
    AdjacentTerminals,
    #[error("adjacent-st: source and sink are adjacent")]
    AdjacentSourceSink,
    #[error("alpha-range: alpha out of the admissible range")]
    AlphaRange,
    #[error("khat-range: cut size guess out of range")]
    KhatRange,
    #[error("no-candidate-sink: every other vertex is an out-neighbor of the source")]
    NoCandidateSink,
    #[error("source-degree-exceeds-delta: deg+(s) > delta")]
    SourceDegreeExceedsDelta,
    #[error("no-cut: the graph has no valid vertex-cut")]
    NoCut,
    #[error("enumeration-too-large: instance exceeds the brute-force guard")]
    EnumerationTooLarge,
    #[error("capacity overflow")]
    CapacityOverflow,
    #[error("support-retries-exhausted: small-support flow failed 64 attempts")]
    SupportRetriesExhausted,
}

pub type Result<T> = std::result::Result<T, Error>;

/// Checked product of a weight and a machine integer.
pub(crate) fn mul_w(a: Weight, b: Weight) -> Result<Weight> {
    a.checked_mul(b).ok_or(Error::CapacityOverflow)
}

/// Checked sum.
pub(crate) fn add_w(a: Weight, b: Weight) -> Result<Weight> {
    a.checked_add(b).ok_or(Error::CapacityOverflow)
}
