//! Node and edge signatures over all ordered source/sink pairs, and what is
//! built from them: orbit candidates, fingerprints, isomorphism screening
//! and canonical labeling.
//!
//! For every ordered pair `(a, b)`, node `k` contributes its voltage `v_k`
//! and edge `{u, v}` contributes its current `w_uv (v_u - v_v)`. Sorting the
//! `N(N-1)` quantized entries discards the pair labels, so a signature
//! depends only on the node's (or edge's) position in the graph up to
//! isomorphism. Only the `N(N-1)/2` pairs with `a < b` are solved; the
//! reversed pair contributes the negated values.

mod canon;
mod fingerprint;
mod iso;
mod orbits;
mod quantize;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{Graph, NodeId};
use crate::solver::{factorizations_on_this_thread, LaplacianSystem, PairSolver, SolverError};

pub use canon::{canonical_labeling, canonical_labeling_with, CanonicalLabeling};
pub use fingerprint::{fingerprint, Fingerprint};
pub use iso::{
    find_isomorphism, find_isomorphism_with, iso_screen, iso_screen_with, verify_mapping, DistinctReason, IsoSearch,
    IsoVerdict,
};
pub use orbits::{orbit_partition, OrbitClass, OrbitPartition};
pub use quantize::{format_f64, quantize, DecimalWriter, QuantizeError, Tolerance, DEFAULT_TOLERANCE};

/// Default node-expansion budget for the backtracking searches.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SignatureError {
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Quantize(#[from] QuantizeError),
    #[error("search budget of {budget} expansions exhausted")]
    BudgetExhausted { budget: u64 },
}

impl SignatureError {
    pub fn kind(&self) -> &'static str {
        match self {
            SignatureError::Solver(e) => e.kind(),
            SignatureError::Quantize(QuantizeError::NonFinite(_)) => "NonFinite",
            SignatureError::Quantize(QuantizeError::OutOfRange { .. }) => "OutOfRange",
            SignatureError::Quantize(QuantizeError::InvalidTolerance(_)) => "InvalidTolerance",
            SignatureError::BudgetExhausted { .. } => "BudgetExhausted",
        }
    }
}

/// Sorted quantized voltages seen by one node over all ordered pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NodeSignature {
    pub node: NodeId,
    /// Grid ticks (see [`Tolerance`]), nondecreasing, length `N(N-1)`.
    pub values: Vec<i64>,
}

/// Sorted quantized currents through one edge over all ordered pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeSignature {
    pub u: NodeId,
    pub v: NodeId,
    pub values: Vec<i64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub factorizations: usize,
    pub pair_solves: usize,
}

/// All node and edge signatures of one graph at one tolerance.
#[derive(Debug, Clone)]
pub struct SignatureSet {
    pub n: usize,
    pub m: usize,
    pub tol: Tolerance,
    pub nodes: Vec<NodeSignature>,
    pub edges: Vec<EdgeSignature>,
    pub stats: SolveStats,
}

impl SignatureSet {
    /// Grounded solver: one factorization, `N(N-1)/2` back-substitutions.
    pub fn compute(graph: &Graph, tol: Tolerance) -> Result<Self, SignatureError> {
        let before = factorizations_on_this_thread();
        let system = LaplacianSystem::new(graph)?;
        let mut set = Self::compute_with(graph, &system, tol)?;
        set.stats.factorizations = factorizations_on_this_thread() - before;
        Ok(set)
    }

    /// Uses an already-built solver for the pair voltages. Pairs are solved
    /// in parallel but assembled in a fixed order, so the result does not
    /// depend on scheduling.
    pub fn compute_with<S: PairSolver>(graph: &Graph, solver: &S, tol: Tolerance) -> Result<Self, SignatureError> {
        let n = graph.n();
        if n < 2 || solver.node_count() != n {
            return Err(SolverError::TooSmall { n }.into());
        }
        let pairs: Vec<(NodeId, NodeId)> = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect();
        let profiles: Vec<Vec<f64>> = pairs
            .par_iter()
            .map(|&(a, b)| solver.solve_pair(a, b).map(|p| p.voltages))
            .collect::<Result<_, _>>()?;

        let symmetric = |samples: &mut dyn Iterator<Item = f64>| -> Result<Vec<i64>, QuantizeError> {
            let mut values = Vec::with_capacity(2 * pairs.len());
            for x in samples {
                let t = tol.ticks(x)?;
                values.push(t);
                values.push(-t);
            }
            values.sort_unstable();
            Ok(values)
        };

        let nodes = (1..=n)
            .into_par_iter()
            .map(|k| {
                let values = symmetric(&mut profiles.iter().map(|v| v[k - 1]))?;
                Ok(NodeSignature { node: k, values })
            })
            .collect::<Result<Vec<_>, QuantizeError>>()?;
        let edges = graph
            .edges()
            .par_iter()
            .map(|e| {
                let values = symmetric(&mut profiles.iter().map(|v| e.weight * (v[e.u - 1] - v[e.v - 1])))?;
                Ok(EdgeSignature { u: e.u, v: e.v, values })
            })
            .collect::<Result<Vec<_>, QuantizeError>>()?;

        Ok(Self {
            n,
            m: graph.m(),
            tol,
            nodes,
            edges,
            stats: SolveStats {
                factorizations: 0,
                pair_solves: pairs.len(),
            },
        })
    }

    pub fn node(&self, k: NodeId) -> &NodeSignature {
        &self.nodes[k - 1]
    }
}

pub fn all_node_signatures(graph: &Graph, tol: Tolerance) -> Result<Vec<NodeSignature>, SignatureError> {
    Ok(SignatureSet::compute(graph, tol)?.nodes)
}

pub fn all_edge_signatures(graph: &Graph, tol: Tolerance) -> Result<Vec<EdgeSignature>, SignatureError> {
    Ok(SignatureSet::compute(graph, tol)?.edges)
}
