//! Ground truth for small graphs: exact rational voltage solves and
//! brute-force automorphism / isomorphism search. Nothing here touches
//! floating-point linear algebra or the signature machinery.

mod automorphisms;
mod enumerate;
mod exact;
mod isomorphic;
mod rational;

use thiserror::Error;

pub use automorphisms::{brute_force_automorphisms, AutomorphismReport};
pub use enumerate::{enumerate_connected_graphs, MAX_ENUMERATION_NODES};
pub use exact::{exact_residual, exact_solve_pair};
pub use isomorphic::{brute_force_isomorphic, OracleIsomorphism};
pub use rational::ExactRational;

use crate::graph::NodeId;

/// Largest graph the permutation searches accept.
pub const MAX_BRUTE_FORCE_NODES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{n} nodes exceeds the brute-force limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("reduced system is singular")]
    SingularSystem,
    #[error("source and sink are both node {node}")]
    SameSourceSink { node: NodeId },
    #[error("node {node} outside 1..={n}")]
    NodeOutOfRange { node: NodeId, n: usize },
    #[error("need at least {min} nodes, got {n}")]
    TooSmall { n: usize, min: usize },
}

impl OracleError {
    pub fn kind(&self) -> &'static str {
        match self {
            OracleError::TooLarge { .. } => "TooLarge",
            OracleError::SingularSystem => "SingularSystem",
            OracleError::SameSourceSink { .. } => "SameSourceSink",
            OracleError::NodeOutOfRange { .. } => "NodeOutOfRange",
            OracleError::TooSmall { .. } => "TooSmall",
        }
    }
}
