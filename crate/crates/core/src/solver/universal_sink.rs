use super::{
    check_pair, check_size, count_factorization, fix_gauge, laplacian, Cholesky, PairSolver, SolveMethod, SolverError,
    VoltageProfile,
};
use crate::graph::{Graph, NodeId};

pub const DEFAULT_SINK_WEIGHT: f64 = 1.0;

/// The graph augmented with node `N + 1` tied to every node by conductance
/// `sink_weight`, grounded at that extra node. The reduced matrix is
/// `L + sink_weight · I`, nonsingular for any positive weight.
///
/// The extra conductance diverts current, so voltages differ from the
/// original network's; results are flagged approximate. The error shrinks
/// as `sink_weight → 0`.
#[derive(Debug, Clone)]
pub struct UniversalSinkSystem {
    n: usize,
    sink_weight: f64,
    factor: Cholesky,
    graph_key: u64,
}

impl UniversalSinkSystem {
    pub fn new(graph: &Graph, sink_weight: f64) -> Result<Self, SolverError> {
        check_size(graph)?;
        if !(sink_weight > 0.0) || !sink_weight.is_finite() {
            return Err(SolverError::InvalidSinkWeight(sink_weight));
        }
        let l = laplacian(graph);
        count_factorization();
        let factor = Cholesky::factor(graph.n(), |i, j| l[(i, j)] + if i == j { sink_weight } else { 0.0 })
            .map_err(SolverError::FactorizationFailed)?;
        Ok(Self {
            n: graph.n(),
            sink_weight,
            factor,
            graph_key: graph.structure_key(),
        })
    }

    pub fn sink_weight(&self) -> f64 {
        self.sink_weight
    }
}

impl PairSolver for UniversalSinkSystem {
    fn node_count(&self) -> usize {
        self.n
    }

    fn method(&self) -> SolveMethod {
        SolveMethod::UniversalSink
    }

    fn solve_pair(&self, a: NodeId, b: NodeId) -> Result<VoltageProfile, SolverError> {
        check_pair(self.n, a, b)?;
        let mut v = vec![0.0; self.n];
        v[a - 1] = 1.0;
        v[b - 1] = -1.0;
        self.factor.solve_in_place(&mut v);
        // the sink node's own voltage is dropped before re-gauging
        fix_gauge(&mut v);
        Ok(VoltageProfile {
            source: a,
            sink: b,
            voltages: v,
            method: SolveMethod::UniversalSink,
            graph_key: self.graph_key,
        })
    }
}

pub fn solve_pair_universal_sink(
    graph: &Graph,
    a: NodeId,
    b: NodeId,
    sink_weight: f64,
) -> Result<VoltageProfile, SolverError> {
    check_pair(graph.n(), a, b)?;
    UniversalSinkSystem::new(graph, sink_weight)?.solve_pair(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, path};

    #[test]
    fn vanishing_sink_recovers_exact_voltages() {
        let v = solve_pair_universal_sink(&path(2), 1, 2, 1e-6).unwrap();
        assert!(v.is_approximate());
        assert!((v.voltages[0] - 0.5).abs() < 1e-4);
        assert!((v.voltages[1] + 0.5).abs() < 1e-4);
    }

    #[test]
    fn unit_sink_on_triangle_is_biased() {
        // K3 plus a unit sink is K4; the exact K4 solve gives (1/4, -1/4, 0)
        // where the true K3 answer is (1/3, -1/3, 0)
        let v = solve_pair_universal_sink(&complete(3), 1, 2, 1.0).unwrap();
        for (x, e) in v.voltages.iter().zip([0.25, -0.25, 0.0]) {
            assert!((x - e).abs() < 1e-15);
        }
    }

    #[test]
    fn swapping_pair_negates() {
        let s = UniversalSinkSystem::new(&path(4), 1.0).unwrap();
        assert_eq!(s.solve_pair(1, 3).unwrap().reversed(), s.solve_pair(3, 1).unwrap());
    }

    #[test]
    fn rejects_bad_sink_weight() {
        assert_eq!(
            UniversalSinkSystem::new(&path(3), 0.0).unwrap_err(),
            SolverError::InvalidSinkWeight(0.0)
        );
    }
}
