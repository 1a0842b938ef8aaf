//! Exchange graphs by breadth-first mutation, sequence labeling, and the
//! verification suite for the complete-graph algebras.

mod export;
mod graph;
mod labeling;
mod suite;

use thiserror::Error;

use crate::graph_lp::GraphError;
use crate::lp::SeedError;

pub use export::{EdgeJson, GraphJson, VertexJson};
pub use graph::{explore, Edge, ExchangeGraph, Vertex, DEFAULT_MAX_SEEDS};
pub use labeling::{label_by_sequences, verify_isomorphism, Isomorphism, SequenceLabeling};
pub use suite::{
    check_sequence, commutation_eligible, expected_seed_count, expected_variable_count,
    factor_multiplicity_mismatches, mutations_commute, verify_counts, verify_identity_suite,
    CheckResult, CountReport, Identity, Mismatch, SuiteReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExploreError {
    #[error("mutation of seed {seed} in direction {direction} left the Laurent ring: {source}")]
    LaurentViolated {
        seed: String,
        direction: usize,
        source: SeedError,
    },
    #[error("mutation is not an involution at vertex {vertex}, direction {direction}")]
    Involution { vertex: usize, direction: usize },
    #[error("exploration was truncated by the seed limit")]
    Truncated,
    #[error("label conflict on edge {from} -> {to} (direction {direction}): expected ({expected}), found ({found})")]
    LabelConflict {
        from: usize,
        to: usize,
        direction: u32,
        expected: String,
        found: String,
    },
    #[error("graphs are not isomorphic: {0}")]
    NotIsomorphic(String),
    #[error("malformed graph: {0}")]
    Malformed(String),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
