//! Undirected, connected, weighted graphs.
//!
//! Node ids are 1-based (`1..=n`) everywhere in the public API and in every
//! file format. Vectors indexed by node (voltages, signatures) use position
//! `k - 1` for node `k`.

mod io;
mod permutation;

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use nalgebra::DMatrix;
use thiserror::Error;

pub use io::{parse_edge_list, parse_graph, parse_json, GraphJson};
pub use permutation::Permutation;

/// 1-based node identifier.
pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("line {line}: malformed edge line {content:?}")]
    MalformedLine { line: usize, content: String },
    #[error("self-loop on node {node}{}", at_line(*.line))]
    SelfLoop { node: NodeId, line: Option<usize> },
    #[error("duplicate edge {u}-{v}{}", at_line(*.line))]
    DuplicateEdge { u: NodeId, v: NodeId, line: Option<usize> },
    #[error("edge {u}-{v} has non-positive weight {weight}{}", at_line(*.line))]
    NonPositiveWeight {
        u: NodeId,
        v: NodeId,
        weight: f64,
        line: Option<usize>,
    },
    #[error("node id {node} outside 1..={n}")]
    NodeOutOfRange { node: NodeId, n: usize },
    #[error("graph is disconnected ({} components: {components:?})", components.len())]
    Disconnected { components: Vec<Vec<NodeId>> },
    #[error("graph has no nodes")]
    Empty,
    #[error("invalid JSON graph: {0}")]
    Json(String),
}

impl GraphError {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            GraphError::MalformedLine { .. } => "MalformedLine",
            GraphError::SelfLoop { .. } => "SelfLoop",
            GraphError::DuplicateEdge { .. } => "DuplicateEdge",
            GraphError::NonPositiveWeight { .. } => "NonPositiveWeight",
            GraphError::NodeOutOfRange { .. } => "NodeOutOfRange",
            GraphError::Disconnected { .. } => "Disconnected",
            GraphError::Empty => "Empty",
            GraphError::Json(_) => "Json",
        }
    }

    fn with_line(self, line: usize) -> Self {
        match self {
            GraphError::SelfLoop { node, .. } => GraphError::SelfLoop { node, line: Some(line) },
            GraphError::DuplicateEdge { u, v, .. } => GraphError::DuplicateEdge { u, v, line: Some(line) },
            GraphError::NonPositiveWeight { u, v, weight, .. } => GraphError::NonPositiveWeight {
                u,
                v,
                weight,
                line: Some(line),
            },
            other => other,
        }
    }
}

fn at_line(line: Option<usize>) -> String {
    line.map(|l| format!(" (line {l})")).unwrap_or_default()
}

/// An undirected edge `u - v` carrying conductance `weight` (siemens).
///
/// The stored endpoint order fixes the orientation used when reporting
/// currents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub weight: f64,
}

impl Edge {
    fn key(&self) -> (NodeId, NodeId) {
        ordered(self.u, self.v)
    }
}

fn ordered(u: NodeId, v: NodeId) -> (NodeId, NodeId) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Validated connected graph. Immutable after construction.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    index: HashMap<(NodeId, NodeId), usize>,
    // neighbors[k] holds (neighbor id, edge index) for node k + 1
    neighbors: Vec<Vec<(NodeId, usize)>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Graph {
    /// Builds a graph on nodes `1..=n`, rejecting anything that is not a
    /// simple connected graph with strictly positive finite weights.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (NodeId, NodeId, f64)>,
    {
        let mut builder = Builder::new(n)?;
        for (u, v, w) in edges {
            builder.push(u, v, w)?;
        }
        builder.finish()
    }

    /// Unit-weight convenience constructor.
    pub fn unweighted<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        Self::new(n, edges.into_iter().map(|(u, v)| (u, v, 1.0)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        1..=self.n
    }

    pub fn contains(&self, node: NodeId) -> bool {
        (1..=self.n).contains(&node)
    }

    /// Conductance between `u` and `v`, or 0 when they are not adjacent.
    pub fn weight(&self, u: NodeId, v: NodeId) -> f64 {
        self.edge_index(u, v).map_or(0.0, |i| self.edges[i].weight)
    }

    pub fn edge_index(&self, u: NodeId, v: NodeId) -> Option<usize> {
        self.index.get(&ordered(u, v)).copied()
    }

    /// `(neighbor, edge index)` pairs of `node`, in edge insertion order.
    pub fn neighbors(&self, node: NodeId) -> &[(NodeId, usize)] {
        &self.neighbors[node - 1]
    }

    /// Weighted degree `Σ_j a_ij`.
    pub fn degree(&self, node: NodeId) -> f64 {
        self.neighbors(node).iter().map(|&(_, e)| self.edges[e].weight).sum()
    }

    pub fn adjacency(&self) -> AdjacencyMatrix {
        let mut m = DMatrix::zeros(self.n, self.n);
        for e in &self.edges {
            m[(e.u - 1, e.v - 1)] = e.weight;
            m[(e.v - 1, e.u - 1)] = e.weight;
        }
        AdjacencyMatrix(m)
    }

    pub fn degree_matrix(&self) -> DegreeMatrix {
        DegreeMatrix(self.nodes().map(|k| self.degree(k)).collect())
    }

    /// Breadth-first reachability from node 1.
    pub fn is_connected(&self) -> bool {
        let pairs: Vec<_> = self.edges.iter().map(|e| (e.u, e.v)).collect();
        is_connected(self.n, &pairs)
    }

    /// Returns the graph with node `k` renamed to `perm.image(k)`.
    /// Edge list order is preserved.
    pub fn relabel(&self, perm: &Permutation) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation size mismatch");
        Graph::new(
            self.n,
            self.edges.iter().map(|e| (perm.image(e.u), perm.image(e.v), e.weight)),
        )
        .expect("relabeling preserves validity")
    }

    /// Hash of node count and edge list, used to detect results computed on
    /// a different graph.
    pub fn structure_key(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.n.hash(&mut h);
        for e in &self.edges {
            e.u.hash(&mut h);
            e.v.hash(&mut h);
            e.weight.to_bits().hash(&mut h);
        }
        h.finish()
    }
}

struct Builder {
    n: usize,
    edges: Vec<Edge>,
    index: HashMap<(NodeId, NodeId), usize>,
}

impl Builder {
    fn new(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        Ok(Self {
            n,
            edges: Vec::new(),
            index: HashMap::new(),
        })
    }

    fn push(&mut self, u: NodeId, v: NodeId, weight: f64) -> Result<(), GraphError> {
        for node in [u, v] {
            if node == 0 || node > self.n {
                return Err(GraphError::NodeOutOfRange { node, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop { node: u, line: None });
        }
        if !(weight > 0.0) || !weight.is_finite() {
            return Err(GraphError::NonPositiveWeight {
                u,
                v,
                weight,
                line: None,
            });
        }
        let edge = Edge { u, v, weight };
        if self.index.insert(edge.key(), self.edges.len()).is_some() {
            return Err(GraphError::DuplicateEdge { u, v, line: None });
        }
        self.edges.push(edge);
        Ok(())
    }

    fn finish(self) -> Result<Graph, GraphError> {
        let pairs: Vec<_> = self.edges.iter().map(|e| (e.u, e.v)).collect();
        let components = connected_components(self.n, &pairs);
        if components.len() > 1 {
            return Err(GraphError::Disconnected { components });
        }
        let mut neighbors = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            neighbors[e.u - 1].push((e.v, i));
            neighbors[e.v - 1].push((e.u, i));
        }
        Ok(Graph {
            n: self.n,
            edges: self.edges,
            index: self.index,
            neighbors,
        })
    }
}

/// Connected components of an arbitrary (unvalidated) edge list on nodes
/// `1..=n`, each sorted, ordered by smallest member. Out-of-range endpoints
/// are ignored.
pub fn connected_components(n: usize, edges: &[(NodeId, NodeId)]) -> Vec<Vec<NodeId>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        if (1..=n).contains(&u) && (1..=n).contains(&v) {
            adj[u - 1].push(v - 1);
            adj[v - 1].push(u - 1);
        }
    }
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut comp = Vec::new();
        while let Some(x) = queue.pop_front() {
            comp.push(x + 1);
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }
    components
}

/// True iff a breadth-first traversal from node 1 reaches all `n` nodes.
pub fn is_connected(n: usize, edges: &[(NodeId, NodeId)]) -> bool {
    n >= 1 && connected_components(n, edges).len() == 1
}

/// Symmetric `N×N` matrix with `a_ij = w` for edge `{i, j}` and zero
/// elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjacencyMatrix(DMatrix<f64>);

impl AdjacencyMatrix {
    /// Entry for 1-based nodes `u`, `v`.
    pub fn get(&self, u: NodeId, v: NodeId) -> f64 {
        self.0[(u - 1, v - 1)]
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    /// Row-major nested vectors.
    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.0.row_iter().map(|r| r.iter().copied().collect()).collect()
    }
}

/// Diagonal of weighted degrees, `D_ii = Σ_j a_ij`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeMatrix(Vec<f64>);

impl DegreeMatrix {
    pub fn get(&self, node: NodeId) -> f64 {
        self.0[node - 1]
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.0
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&self.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        Graph::unweighted(3, [(1, 2), (2, 3), (1, 3)]).unwrap()
    }

    #[test]
    fn adjacency_of_small_graphs() {
        let p2 = Graph::unweighted(2, [(1, 2)]).unwrap();
        assert_eq!(p2.adjacency().to_rows(), vec![vec![0.0, 1.0], vec![1.0, 0.0]]);

        let a = k3().adjacency();
        for u in 1..=3 {
            for v in 1..=3 {
                assert_eq!(a.get(u, v), if u == v { 0.0 } else { 1.0 });
            }
        }

        let half = Graph::new(2, [(1, 2, 0.5)]).unwrap();
        assert_eq!(half.adjacency().to_rows(), vec![vec![0.0, 0.5], vec![0.5, 0.0]]);
    }

    #[test]
    fn connectivity() {
        assert!(Graph::unweighted(3, [(1, 2), (2, 3)]).unwrap().is_connected());
        assert!(Graph::new(1, []).unwrap().is_connected());
        assert!(!is_connected(4, &[(1, 2), (3, 4)]));
        assert!(is_connected(1, &[]));
        assert!(!is_connected(0, &[]));
    }

    #[test]
    fn rejects_invalid_graphs() {
        assert!(matches!(
            Graph::unweighted(2, [(1, 1)]),
            Err(GraphError::SelfLoop { node: 1, .. })
        ));
        assert!(matches!(
            Graph::unweighted(2, [(1, 2), (2, 1)]),
            Err(GraphError::DuplicateEdge { .. })
        ));
        assert!(matches!(
            Graph::new(2, [(1, 2, 0.0)]),
            Err(GraphError::NonPositiveWeight { .. })
        ));
        assert!(matches!(
            Graph::new(2, [(1, 2, f64::NAN)]),
            Err(GraphError::NonPositiveWeight { .. })
        ));
        assert!(matches!(
            Graph::unweighted(2, [(1, 3)]),
            Err(GraphError::NodeOutOfRange { node: 3, n: 2 })
        ));
        assert_eq!(
            Graph::unweighted(4, [(1, 2), (3, 4)]),
            Err(GraphError::Disconnected {
                components: vec![vec![1, 2], vec![3, 4]]
            })
        );
        assert_eq!(Graph::new(0, []), Err(GraphError::Empty));
    }

    #[test]
    fn degree_matches_row_sums() {
        let g = Graph::new(3, [(1, 2, 0.5), (2, 3, 2.0)]).unwrap();
        let a = g.adjacency();
        let d = g.degree_matrix();
        for k in 1..=3 {
            let row: f64 = (1..=3).map(|j| a.get(k, j)).sum();
            assert_eq!(d.get(k), row);
        }
        assert_eq!(d.diagonal(), &[0.5, 2.5, 2.0]);
    }

    #[test]
    fn relabel_permutes_adjacency() {
        let g = Graph::new(3, [(1, 2, 0.5), (2, 3, 2.0)]).unwrap();
        let perm = Permutation::from_images(vec![3, 1, 2]).unwrap();
        let h = g.relabel(&perm);
        let (a, b) = (g.adjacency(), h.adjacency());
        for u in 1..=3 {
            for v in 1..=3 {
                assert_eq!(a.get(u, v), b.get(perm.image(u), perm.image(v)));
            }
        }
    }
}
