use super::{SolverError, VoltageProfile};
use crate::graph::{Graph, NodeId};

/// Current through one edge, positive when flowing from `u` to `v` (the
/// edge's stored endpoint order).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeCurrent {
    pub u: NodeId,
    pub v: NodeId,
    pub current: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairCurrents {
    pub source: NodeId,
    pub sink: NodeId,
    /// One entry per edge, in the graph's edge order.
    pub currents: Vec<EdgeCurrent>,
}

impl PairCurrents {
    /// Net current leaving each node (`[k - 1]` for node `k`).
    pub fn net_outflow(&self, n: usize) -> Vec<f64> {
        let mut out = vec![0.0; n];
        for c in &self.currents {
            out[c.u - 1] += c.current;
            out[c.v - 1] -= c.current;
        }
        out
    }
}

/// `i_uv = w_uv (v_u - v_v)` for every edge.
pub fn pair_currents(graph: &Graph, profile: &VoltageProfile) -> Result<PairCurrents, SolverError> {
    if profile.graph_key() != graph.structure_key() || profile.voltages.len() != graph.n() {
        return Err(SolverError::GraphMismatch);
    }
    let currents = graph
        .edges()
        .iter()
        .map(|e| EdgeCurrent {
            u: e.u,
            v: e.v,
            current: e.weight * (profile.voltage(e.u) - profile.voltage(e.v)),
        })
        .collect();
    Ok(PairCurrents {
        source: profile.source,
        sink: profile.sink,
        currents,
    })
}

/// `‖L v - (e_a - e_b)‖_∞`, evaluated edge by edge from the graph itself
/// rather than from any stored factorization.
pub fn kcl_residual(graph: &Graph, profile: &VoltageProfile) -> f64 {
    let mut r = vec![0.0; graph.n()];
    for e in graph.edges() {
        let i = e.weight * (profile.voltage(e.u) - profile.voltage(e.v));
        r[e.u - 1] += i;
        r[e.v - 1] -= i;
    }
    r[profile.source - 1] -= 1.0;
    r[profile.sink - 1] += 1.0;
    r.iter().fold(0.0, |m, x| m.max(x.abs()))
}
