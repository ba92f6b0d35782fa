use nalgebra::{DMatrix, SymmetricEigen};

use super::{
    check_pair, check_size, count_factorization, laplacian, PairSolver, SolveMethod, SolverError, VoltageProfile,
};
use crate::graph::{Graph, NodeId};

/// Eigenvalues below this fraction of the largest one count as zero.
const ZERO_EIGENVALUE_RATIO: f64 = 1e-12;

/// Convergence thresholds tried in order. On matrices with highly repeated
/// eigenvalues the tightest one can stop early with a wrong basis, so each
/// attempt is checked by recomposition.
const EIGEN_EPS: [f64; 4] = [f64::EPSILON, 1e-14, 1e-13, 1e-12];
const RECOMPOSE_RATIO: f64 = 1e-12;

fn decompose(l: &DMatrix<f64>) -> Option<SymmetricEigen<f64, nalgebra::Dyn>> {
    let scale = l.amax().max(1.0) * l.nrows() as f64;
    EIGEN_EPS.iter().find_map(|&eps| {
        let eig = SymmetricEigen::try_new(l.clone(), eps, 0)?;
        let err = (eig.recompose() - l).amax();
        (err <= RECOMPOSE_RATIO * scale).then_some(eig)
    })
}

/// Moore–Penrose pseudoinverse `L⁺ = Σ_{λ_i > 0} u_i u_iᵀ / λ_i`.
#[derive(Debug, Clone)]
pub struct PseudoinverseSystem {
    pinv: DMatrix<f64>,
    fiedler_value: f64,
    graph_key: u64,
}

impl PseudoinverseSystem {
    pub fn new(graph: &Graph) -> Result<Self, SolverError> {
        check_size(graph)?;
        let n = graph.n();
        count_factorization();
        let eig = decompose(&laplacian(graph)).ok_or(SolverError::EigendecompositionFailed)?;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let largest = eig.eigenvalues[order[n - 1]];
        let second = eig.eigenvalues[order[1]];
        if !(second > ZERO_EIGENVALUE_RATIO * largest.max(1.0)) {
            return Err(SolverError::SecondEigenvalueNearZero { value: second });
        }
        // the smallest eigenvalue belongs to the constant vector and is dropped
        let mut pinv = DMatrix::zeros(n, n);
        for &i in &order[1..] {
            let u = eig.eigenvectors.column(i);
            pinv.ger(1.0 / eig.eigenvalues[i], &u, &u, 1.0);
        }
        Ok(Self {
            pinv,
            fiedler_value: second,
            graph_key: graph.structure_key(),
        })
    }

    /// Second-smallest Laplacian eigenvalue (algebraic connectivity).
    pub fn fiedler_value(&self) -> f64 {
        self.fiedler_value
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.pinv
    }
}

impl PairSolver for PseudoinverseSystem {
    fn node_count(&self) -> usize {
        self.pinv.nrows()
    }

    fn method(&self) -> SolveMethod {
        SolveMethod::Pseudoinverse
    }

    fn solve_pair(&self, a: NodeId, b: NodeId) -> Result<VoltageProfile, SolverError> {
        check_pair(self.node_count(), a, b)?;
        let v = self.pinv.column(a - 1) - self.pinv.column(b - 1);
        Ok(VoltageProfile {
            source: a,
            sink: b,
            voltages: v.iter().copied().collect(),
            method: SolveMethod::Pseudoinverse,
            graph_key: self.graph_key,
        })
    }
}

/// `v = L⁺ (e_a - e_b)`. Builds the pseudoinverse for a single use; keep a
/// [`PseudoinverseSystem`] around when solving many pairs.
pub fn solve_pair_pseudoinverse(graph: &Graph, a: NodeId, b: NodeId) -> Result<VoltageProfile, SolverError> {
    check_pair(graph.n(), a, b)?;
    PseudoinverseSystem::new(graph)?.solve_pair(a, b)
}
