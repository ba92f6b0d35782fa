use sha2::{Digest, Sha256};

use super::{SignatureError, SignatureSet, Tolerance};
use crate::graph::Graph;

/// Label-independent summary of a graph: the sorted multisets of its node
/// and edge signatures. Isomorphic graphs have equal fingerprints; the
/// converse is not guaranteed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub n: usize,
    pub m: usize,
    pub tol: Tolerance,
    pub node_part: Vec<Vec<i64>>,
    pub edge_part: Vec<Vec<i64>>,
}

impl Fingerprint {
    pub fn from_signatures(set: &SignatureSet) -> Self {
        let mut node_part: Vec<Vec<i64>> = set.nodes.iter().map(|s| s.values.clone()).collect();
        let mut edge_part: Vec<Vec<i64>> = set.edges.iter().map(|s| s.values.clone()).collect();
        node_part.sort_unstable();
        edge_part.sort_unstable();
        Self {
            n: set.n,
            m: set.m,
            tol: set.tol,
            node_part,
            edge_part,
        }
    }

    /// Compact JSON with keys in the fixed order `n, m, edge_part,
    /// node_part` and values as canonical decimals. These bytes are the
    /// hash input.
    pub fn canonical_json(&self) -> String {
        let w = self.tol.decimal_writer();
        let part = |rows: &[Vec<i64>], out: &mut String| {
            out.push('[');
            for (i, r) in rows.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('[');
                for (j, &t) in r.iter().enumerate() {
                    if j > 0 {
                        out.push(',');
                    }
                    w.write(t, out);
                }
                out.push(']');
            }
            out.push(']');
        };
        let mut out = format!("{{\"n\":{},\"m\":{},\"edge_part\":", self.n, self.m);
        part(&self.edge_part, &mut out);
        out.push_str(",\"node_part\":");
        part(&self.node_part, &mut out);
        out.push('}');
        out
    }

    /// Hex SHA-256 of [`Fingerprint::canonical_json`].
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_json().as_bytes()))
    }
}

pub fn fingerprint(graph: &Graph, tol: Tolerance) -> Result<Fingerprint, SignatureError> {
    Ok(Fingerprint::from_signatures(&SignatureSet::compute(graph, tol)?))
}
