//! Canonical labeling.
//!
//! Signature classes, sorted by signature, fill consecutive blocks of
//! canonical positions. Within a block, members are ordered to minimize the
//! weight sequence read row by row from the lower triangle of the relabeled
//! adjacency matrix: `(2,1), (3,1), (3,2), (4,1), ...`. Placing position `p`
//! fixes row `p` of that triangle, so a branch whose rows so far already
//! exceed the best complete labeling is cut.
//!
//! Isomorphic graphs have the same class blocks and the same set of
//! reachable matrices, so when the search completes their canonical forms
//! are byte-identical. A search stopped by the budget returns the best
//! labeling found so far, marked uncertified.

use std::cmp::Ordering;

use sha2::{Digest, Sha256};

use super::{format_f64, OrbitPartition, SignatureError, SignatureSet, Tolerance};
use crate::graph::{Graph, NodeId, Permutation};

#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalLabeling {
    /// `order[p]` is the original node placed at canonical position `p + 1`.
    pub order: Vec<NodeId>,
    /// Original node `k` becomes `relabeling.image(k)`.
    pub relabeling: Permutation,
    /// Compact JSON `{"n":..,"m":..,"edges":[[i,j,w],..]}` in canonical
    /// labels, `i < j`, sorted.
    pub form: String,
    /// False when the search budget ran out before the minimum was proven.
    pub certified: bool,
    pub expansions: u64,
}

impl CanonicalLabeling {
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.form.as_bytes()))
    }
}

struct Search<'a> {
    graph: &'a Graph,
    // class id owning each canonical position
    position_class: Vec<usize>,
    members: Vec<Vec<NodeId>>,
    placed: Vec<NodeId>,
    used: Vec<bool>,
    rows: Vec<f64>,
    best_rows: Vec<f64>,
    best_order: Vec<NodeId>,
    expansions: u64,
    budget: u64,
    exhausted: bool,
}

fn row_start(p: usize) -> usize {
    p * (p.saturating_sub(1)) / 2
}

impl Search<'_> {
    fn row_for(&self, node: NodeId) -> impl Iterator<Item = f64> + '_ {
        self.placed.iter().map(move |&q| self.graph.weight(node, q))
    }

    /// Completes the labeling greedily (first free member per position).
    fn greedy(&mut self) {
        let n = self.graph.n();
        for p in 0..n {
            let class = self.position_class[p];
            let node = *self.members[class]
                .iter()
                .find(|&&k| !self.used[k - 1])
                .expect("class has a free member");
            let row: Vec<f64> = self.row_for(node).collect();
            self.rows.extend(row);
            self.placed.push(node);
            self.used[node - 1] = true;
        }
        self.best_rows = self.rows.clone();
        self.best_order = self.placed.clone();
        for &k in &self.placed {
            self.used[k - 1] = false;
        }
        self.placed.clear();
        self.rows.clear();
    }

    fn go(&mut self, tight: bool) {
        let p = self.placed.len();
        if p == self.graph.n() {
            // ties keep the labeling found first
            if cmp_rows(&self.rows, &self.best_rows) == Ordering::Less {
                self.best_rows = self.rows.clone();
                self.best_order = self.placed.clone();
            }
            return;
        }
        let class = self.position_class[p];
        for i in 0..self.members[class].len() {
            if self.exhausted {
                return;
            }
            let node = self.members[class][i];
            if self.used[node - 1] {
                continue;
            }
            self.expansions += 1;
            if self.expansions > self.budget {
                self.exhausted = true;
                return;
            }
            let start = self.rows.len();
            let row: Vec<f64> = self.row_for(node).collect();
            self.rows.extend(row);
            let mut still_tight = tight;
            if tight {
                let range = row_start(p)..row_start(p) + p;
                match cmp_rows(&self.rows[range.clone()], &self.best_rows[range]) {
                    Ordering::Greater => {
                        self.rows.truncate(start);
                        continue;
                    }
                    Ordering::Less => still_tight = false,
                    Ordering::Equal => {}
                }
            }
            self.placed.push(node);
            self.used[node - 1] = true;
            self.go(still_tight);
            self.placed.pop();
            self.used[node - 1] = false;
            self.rows.truncate(start);
        }
    }
}

fn cmp_rows(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

/// Canonical labeling from precomputed signatures.
pub fn canonical_labeling_with(graph: &Graph, set: &SignatureSet, budget: u64) -> CanonicalLabeling {
    let n = graph.n();
    let partition = OrbitPartition::from_signatures(set);
    let members: Vec<Vec<NodeId>> = partition.node_sets();
    let position_class: Vec<usize> = members
        .iter()
        .enumerate()
        .flat_map(|(c, m)| std::iter::repeat_n(c, m.len()))
        .collect();
    let mut search = Search {
        graph,
        position_class,
        members,
        placed: Vec::with_capacity(n),
        used: vec![false; n],
        rows: Vec::with_capacity(row_start(n)),
        best_rows: Vec::new(),
        best_order: Vec::new(),
        expansions: 0,
        budget,
        exhausted: false,
    };
    search.greedy();
    search.go(true);

    let order = search.best_order;
    let mut images = vec![0; n];
    for (p, &k) in order.iter().enumerate() {
        images[k - 1] = p;
    }
    let relabeling = Permutation::from_zero_based(images);
    let mut edges: Vec<(NodeId, NodeId, f64)> = graph
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (relabeling.image(e.u), relabeling.image(e.v));
            (a.min(b), a.max(b), e.weight)
        })
        .collect();
    edges.sort_by_key(|e| (e.0, e.1));
    let edge_text: Vec<String> = edges
        .iter()
        .map(|(a, b, w)| format!("[{a},{b},{}]", format_f64(*w)))
        .collect();
    let form = format!(
        "{{\"n\":{},\"m\":{},\"edges\":[{}]}}",
        n,
        graph.m(),
        edge_text.join(",")
    );
    CanonicalLabeling {
        order,
        relabeling,
        form,
        certified: !search.exhausted,
        expansions: search.expansions,
    }
}

pub fn canonical_labeling(graph: &Graph, tol: Tolerance, budget: u64) -> Result<CanonicalLabeling, SignatureError> {
    let set = SignatureSet::compute(graph, tol)?;
    Ok(canonical_labeling_with(graph, &set, budget))
}
