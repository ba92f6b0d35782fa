//! Unit-current injection on a resistor network.
//!
//! Injecting 1 A at node `a` and withdrawing it at node `b` gives the
//! Kirchhoff system `L v = e_a - e_b`, with `L = D - A` the graph Laplacian.
//! `L` is singular (constant vectors lie in its kernel), so voltages are
//! defined up to an additive constant. Three ways of pinning it down are
//! provided:
//!
//! * [`LaplacianSystem`]: delete the ground node's row and column, factor the
//!   reduced positive definite matrix once, and back-substitute per pair.
//! * [`PseudoinverseSystem`]: spectral pseudoinverse with the zero mode
//!   deflated.
//! * [`UniversalSinkSystem`]: connect every node to an extra grounded node.
//!   This changes the network, so its voltages are only an approximation.
//!
//! Every [`VoltageProfile`] is returned in the sum-zero gauge, which makes
//! the `(b, a)` profile exactly the negation of the `(a, b)` profile.

mod cholesky;
mod currents;
mod pseudoinverse;
mod universal_sink;

use std::cell::Cell;
use std::sync::atomic::{AtomicUsize, Ordering};

use nalgebra::DMatrix;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, NodeId};

pub use cholesky::{Cholesky, NotPositiveDefinite};
pub use currents::{kcl_residual, pair_currents, EdgeCurrent, PairCurrents};
pub use pseudoinverse::{solve_pair_pseudoinverse, PseudoinverseSystem};
pub use universal_sink::{solve_pair_universal_sink, UniversalSinkSystem, DEFAULT_SINK_WEIGHT};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("source and sink are both node {node}")]
    SameSourceSink { node: NodeId },
    #[error("node {node} outside 1..={n}")]
    NodeOutOfRange { node: NodeId, n: usize },
    #[error("need at least 2 nodes, got {n}")]
    TooSmall { n: usize },
    #[error("factorization failed: {0}")]
    FactorizationFailed(NotPositiveDefinite),
    #[error("symmetric eigendecomposition did not converge")]
    EigendecompositionFailed,
    #[error("second-smallest Laplacian eigenvalue {value:e} is effectively zero")]
    SecondEigenvalueNearZero { value: f64 },
    #[error("sink weight must be positive and finite, got {0}")]
    InvalidSinkWeight(f64),
    #[error("voltage profile was computed on a different graph")]
    GraphMismatch,
}

impl SolverError {
    pub fn kind(&self) -> &'static str {
        match self {
            SolverError::SameSourceSink { .. } => "SameSourceSink",
            SolverError::NodeOutOfRange { .. } => "NodeOutOfRange",
            SolverError::TooSmall { .. } => "TooSmall",
            SolverError::FactorizationFailed(_) => "FactorizationFailed",
            SolverError::EigendecompositionFailed => "EigendecompositionFailed",
            SolverError::SecondEigenvalueNearZero { .. } => "SecondEigenvalueNearZero",
            SolverError::InvalidSinkWeight(_) => "InvalidSinkWeight",
            SolverError::GraphMismatch => "GraphMismatch",
        }
    }

    /// Input errors (bad node ids) as opposed to numerical failures.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            SolverError::SameSourceSink { .. }
                | SolverError::NodeOutOfRange { .. }
                | SolverError::TooSmall { .. }
                | SolverError::InvalidSinkWeight(_)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveMethod {
    Grounded,
    Pseudoinverse,
    UniversalSink,
}

impl SolveMethod {
    /// The universal sink alters the network; its voltages are not exact.
    pub fn is_approximate(self) -> bool {
        self == SolveMethod::UniversalSink
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SolveMethod::Grounded => "grounded",
            SolveMethod::Pseudoinverse => "pseudoinverse",
            SolveMethod::UniversalSink => "universal-sink",
        }
    }
}

/// Node voltages for 1 A injected at `source` and withdrawn at `sink`,
/// gauge-fixed so that they sum to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct VoltageProfile {
    pub source: NodeId,
    pub sink: NodeId,
    /// `voltages[k - 1]` is the voltage of node `k`.
    pub voltages: Vec<f64>,
    pub method: SolveMethod,
    graph_key: u64,
}

impl VoltageProfile {
    pub fn voltage(&self, node: NodeId) -> f64 {
        self.voltages[node - 1]
    }

    /// `v_source - v_sink`: the two-point resistance for a unit current.
    pub fn potential_drop(&self) -> f64 {
        self.voltage(self.source) - self.voltage(self.sink)
    }

    pub fn is_approximate(&self) -> bool {
        self.method.is_approximate()
    }

    pub fn graph_key(&self) -> u64 {
        self.graph_key
    }

    /// Profile of the reversed pair `(sink, source)`.
    pub fn reversed(&self) -> VoltageProfile {
        VoltageProfile {
            source: self.sink,
            sink: self.source,
            voltages: self.voltages.iter().map(|x| -x).collect(),
            method: self.method,
            graph_key: self.graph_key,
        }
    }
}

/// Anything that can produce gauge-fixed pair voltages for one graph.
/// Implementations are immutable after construction and safe to call from
/// many threads at once.
pub trait PairSolver: Sync {
    fn node_count(&self) -> usize;
    fn method(&self) -> SolveMethod;
    fn solve_pair(&self, a: NodeId, b: NodeId) -> Result<VoltageProfile, SolverError>;
}

thread_local! {
    static FACTORIZATIONS: Cell<usize> = const { Cell::new(0) };
}

/// Number of matrix factorizations (Cholesky or eigendecomposition) started
/// on the current thread since it was spawned. Take the difference of two
/// readings to count the factorizations done by a piece of work.
pub fn factorizations_on_this_thread() -> usize {
    FACTORIZATIONS.with(Cell::get)
}

fn count_factorization() {
    FACTORIZATIONS.with(|c| c.set(c.get() + 1));
}

/// Dense Laplacian `L = D - A`.
pub fn laplacian(graph: &Graph) -> DMatrix<f64> {
    let n = graph.n();
    let mut l = DMatrix::zeros(n, n);
    for e in graph.edges() {
        let (i, j) = (e.u - 1, e.v - 1);
        l[(i, j)] -= e.weight;
        l[(j, i)] -= e.weight;
        l[(i, i)] += e.weight;
        l[(j, j)] += e.weight;
    }
    l
}

fn check_pair(n: usize, a: NodeId, b: NodeId) -> Result<(), SolverError> {
    for node in [a, b] {
        if node == 0 || node > n {
            return Err(SolverError::NodeOutOfRange { node, n });
        }
    }
    if a == b {
        return Err(SolverError::SameSourceSink { node: a });
    }
    Ok(())
}

fn check_size(graph: &Graph) -> Result<(), SolverError> {
    if graph.n() < 2 {
        return Err(SolverError::TooSmall { n: graph.n() });
    }
    Ok(())
}

/// Shifts `v` by its mean so that it sums to zero.
fn fix_gauge(v: &mut [f64]) {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    for x in v.iter_mut() {
        *x -= mean;
    }
}

/// Laplacian plus a Cholesky factor of the grounded reduced matrix (row and
/// column of the ground node deleted). Built once per graph; every pair
/// solve is two triangular sweeps.
#[derive(Debug)]
pub struct LaplacianSystem {
    ground: NodeId,
    laplacian: DMatrix<f64>,
    factor: Cholesky,
    graph_key: u64,
    solves: AtomicUsize,
}

impl LaplacianSystem {
    /// Grounds node `N`, the default choice.
    pub fn new(graph: &Graph) -> Result<Self, SolverError> {
        Self::build(graph, graph.n())
    }

    pub fn build(graph: &Graph, ground: NodeId) -> Result<Self, SolverError> {
        check_size(graph)?;
        if ground == 0 || ground > graph.n() {
            return Err(SolverError::NodeOutOfRange {
                node: ground,
                n: graph.n(),
            });
        }
        let laplacian = laplacian(graph);
        let g = ground - 1;
        let full = |r: usize| if r < g { r } else { r + 1 };
        count_factorization();
        let factor = Cholesky::factor(graph.n() - 1, |i, j| laplacian[(full(i), full(j))])
            .map_err(SolverError::FactorizationFailed)?;
        Ok(Self {
            ground,
            laplacian,
            factor,
            graph_key: graph.structure_key(),
            solves: AtomicUsize::new(0),
        })
    }

    pub fn ground(&self) -> NodeId {
        self.ground
    }

    pub fn laplacian(&self) -> &DMatrix<f64> {
        &self.laplacian
    }

    /// The `(N-1)×(N-1)` matrix that was factored.
    pub fn reduced_matrix(&self) -> DMatrix<f64> {
        self.laplacian
            .clone()
            .remove_row(self.ground - 1)
            .remove_column(self.ground - 1)
    }

    /// Pair solves served so far.
    pub fn solve_count(&self) -> usize {
        self.solves.load(Ordering::Relaxed)
    }

    /// `v_a - v_b` under unit injection; strictly positive.
    pub fn effective_resistance(&self, a: NodeId, b: NodeId) -> Result<f64, SolverError> {
        Ok(self.solve_pair(a, b)?.potential_drop())
    }
}

impl PairSolver for LaplacianSystem {
    fn node_count(&self) -> usize {
        self.laplacian.nrows()
    }

    fn method(&self) -> SolveMethod {
        SolveMethod::Grounded
    }

    fn solve_pair(&self, a: NodeId, b: NodeId) -> Result<VoltageProfile, SolverError> {
        let n = self.node_count();
        check_pair(n, a, b)?;
        self.solves.fetch_add(1, Ordering::Relaxed);
        let g = self.ground - 1;
        let reduced = |node: NodeId| {
            let k = node - 1;
            match k.cmp(&g) {
                std::cmp::Ordering::Less => Some(k),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(k - 1),
            }
        };
        let mut rhs = vec![0.0; n - 1];
        if let Some(i) = reduced(a) {
            rhs[i] = 1.0;
        }
        if let Some(i) = reduced(b) {
            rhs[i] = -1.0;
        }
        self.factor.solve_in_place(&mut rhs);
        let mut v = Vec::with_capacity(n);
        v.extend_from_slice(&rhs[..g]);
        v.push(0.0);
        v.extend_from_slice(&rhs[g..]);
        fix_gauge(&mut v);
        Ok(VoltageProfile {
            source: a,
            sink: b,
            voltages: v,
            method: SolveMethod::Grounded,
            graph_key: self.graph_key,
        })
    }
}

/// Builds the grounded system (ground node `ground`) for `graph`.
pub fn build_system(graph: &Graph, ground: NodeId) -> Result<LaplacianSystem, SolverError> {
    LaplacianSystem::build(graph, ground)
}

/// Gauge-fixed voltages for unit injection at `a` and withdrawal at `b`.
pub fn solve_pair(system: &LaplacianSystem, a: NodeId, b: NodeId) -> Result<VoltageProfile, SolverError> {
    system.solve_pair(a, b)
}

pub fn effective_resistance(system: &LaplacianSystem, a: NodeId, b: NodeId) -> Result<f64, SolverError> {
    system.effective_resistance(a, b)
}
