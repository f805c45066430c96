//! Exact-arithmetic decision procedures for links of normal surface
//! singularities presented by plumbing graphs: negative-definiteness and
//! principality of multilinks, fiber Euler characteristics, fundamental
//! cycles and topological classification, splice diagrams with linking
//! values and semigroup obstructions, and Brieskorn star graphs.
//!
//! All arithmetic is integer/rational exact; no floating point is used
//! anywhere.

pub mod brieskorn;
pub mod graph;
pub mod linalg;
pub mod realization;
pub mod semigroup;
pub mod splice;

pub use brieskorn::{brieskorn_graph, brieskorn_seifert_data, negative_continued_fraction, BrieskornError, SeifertData};
pub use graph::{parse_plumbing, Arrow, Cycle, Edge, GraphError, PlumbingGraph, RationalCycle, Vertex};
pub use linalg::{Definiteness, ExactMatrix, LinalgError, SnfResult};
pub use realization::{
    analytic_check, arithmetic_genus, chi_from_solution, classify_topology, end_curve_multiplicities,
    expand_arrows, fiber_euler_characteristic, fundamental_cycle, h1_invariants,
    homology_obstruction_check, milnor_number, monodromical_system, principal_check, ubiquitous_link,
    H1Invariants, MonodromicalSystem, PrincipalStatus, PrincipalVerdict, RealizationError,
    TopologyClass,
};
pub use semigroup::{semigroup_report, SemigroupError, SemigroupReport};
pub use splice::{
    parse_splice, semigroup_obstruction, smoothness_obstruction, splice_from_resolution,
    ObstructionCertificate, ObstructionOutcome, SemigroupConditionReport, SmoothnessOutcome,
    SpliceArrow, SpliceDiagram, SpliceEdge, SpliceError, SpliceVertex, VertexKind,
};
