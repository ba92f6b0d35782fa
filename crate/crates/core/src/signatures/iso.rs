//! Isomorphism screening.
//!
//! Unequal fingerprints prove two graphs distinct. Equal fingerprints only
//! make isomorphism possible, so a mapping is searched for by backtracking,
//! restricted to node pairs with equal signatures and edge pairs with equal
//! edge signatures. A mapping is reported only after independent
//! verification against both edge lists.

use std::collections::HashMap;

use super::{Fingerprint, SignatureError, SignatureSet, Tolerance};
use crate::graph::{Graph, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistinctReason {
    NodeCount,
    EdgeCount,
    Fingerprint,
}

#[derive(Debug, Clone, PartialEq)]
pub enum IsoVerdict {
    /// The graphs cannot be isomorphic.
    DistinctCertified(DistinctReason),
    /// Fingerprints agree but no mapping was produced: the search ran out
    /// of budget or failed.
    PossiblyIsomorphic { budget_exhausted: bool },
    /// `mapping.image(k)` in the second graph corresponds to node `k` of
    /// the first; verified edge by edge.
    IsomorphicCertified(Permutation),
}

impl IsoVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            IsoVerdict::DistinctCertified(_) => "DistinctCertified",
            IsoVerdict::PossiblyIsomorphic { .. } => "PossiblyIsomorphic",
            IsoVerdict::IsomorphicCertified(_) => "IsomorphicCertified",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum IsoSearch {
    Found(Permutation),
    /// The search space was exhausted without a match.
    NotFound,
}

/// True when `mapping` is a bijection carrying every edge of `g1` onto an
/// edge of `g2` with the same weight (and the edge counts agree).
pub fn verify_mapping(g1: &Graph, g2: &Graph, mapping: &Permutation) -> bool {
    g1.n() == g2.n()
        && g1.m() == g2.m()
        && mapping.len() == g1.n()
        && g1
            .edges()
            .iter()
            .all(|e| g2.weight(mapping.image(e.u), mapping.image(e.v)) == e.weight)
}

struct Matcher<'a> {
    g1: &'a Graph,
    g2: &'a Graph,
    // order in which g1's nodes are assigned (0-based)
    order: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    edge_class1: Vec<usize>,
    edge_class2: Vec<usize>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    expansions: u64,
    budget: u64,
}

impl Matcher<'_> {
    fn feasible(&self, u: usize, v: usize) -> bool {
        let (g1, g2) = (self.g1, self.g2);
        // all already-mapped nodes must see the same weight (0 = no edge)
        for &x in &self.order {
            let Some(y) = self.map[x] else { continue };
            let w1 = g1.weight(u + 1, x + 1);
            if w1 != g2.weight(v + 1, y + 1) {
                return false;
            }
            if w1 != 0.0 {
                let e1 = g1.edge_index(u + 1, x + 1).unwrap();
                let e2 = g2.edge_index(v + 1, y + 1).unwrap();
                if self.edge_class1[e1] != self.edge_class2[e2] {
                    return false;
                }
            }
        }
        true
    }

    fn search(&mut self, depth: usize) -> Result<bool, SignatureError> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let u = self.order[depth];
        for i in 0..self.candidates[u].len() {
            let v = self.candidates[u][i];
            if self.used[v] || !self.feasible(u, v) {
                continue;
            }
            self.expansions += 1;
            if self.expansions > self.budget {
                return Err(SignatureError::BudgetExhausted { budget: self.budget });
            }
            self.map[u] = Some(v);
            self.used[v] = true;
            if self.search(depth + 1)? {
                return Ok(true);
            }
            self.map[u] = None;
            self.used[v] = false;
        }
        Ok(false)
    }
}

/// Searches for an isomorphism using precomputed signatures. Errors with
/// `BudgetExhausted` after `budget` node assignments.
pub fn find_isomorphism_with<'a>(
    g1: &Graph,
    s1: &'a SignatureSet,
    g2: &Graph,
    s2: &'a SignatureSet,
    budget: u64,
) -> Result<IsoSearch, SignatureError> {
    let n = g1.n();
    if n != g2.n() || g1.m() != g2.m() {
        return Ok(IsoSearch::NotFound);
    }
    let mut by_sig: HashMap<&[i64], Vec<usize>> = HashMap::new();
    for s in &s2.nodes {
        by_sig.entry(&s.values).or_default().push(s.node - 1);
    }
    let mut candidates = Vec::with_capacity(n);
    for s in &s1.nodes {
        match by_sig.get(s.values.as_slice()) {
            Some(c) => candidates.push(c.clone()),
            None => return Ok(IsoSearch::NotFound),
        }
    }
    let class_size = |u: usize| candidates[u].len();
    let mut order: Vec<usize> = (0..n).collect();
    // smallest class first, then lowest node id
    order.sort_by_key(|&u| (class_size(u), u));

    let mut edge_ids: HashMap<&[i64], usize> = HashMap::new();
    let mut edge_class = |set: &'a SignatureSet| -> Vec<usize> {
        set.edges
            .iter()
            .map(|e| {
                let next = edge_ids.len();
                *edge_ids.entry(e.values.as_slice()).or_insert(next)
            })
            .collect()
    };
    let edge_class1 = edge_class(s1);
    let edge_class2 = edge_class(s2);

    let mut matcher = Matcher {
        g1,
        g2,
        order,
        candidates,
        edge_class1,
        edge_class2,
        map: vec![None; n],
        used: vec![false; n],
        expansions: 0,
        budget,
    };
    if matcher.search(0)? {
        let images = matcher.map.iter().map(|x| x.expect("complete mapping")).collect();
        Ok(IsoSearch::Found(Permutation::from_zero_based(images)))
    } else {
        Ok(IsoSearch::NotFound)
    }
}

pub fn find_isomorphism(g1: &Graph, g2: &Graph, tol: Tolerance, budget: u64) -> Result<IsoSearch, SignatureError> {
    if g1.n() != g2.n() || g1.m() != g2.m() {
        return Ok(IsoSearch::NotFound);
    }
    let s1 = SignatureSet::compute(g1, tol)?;
    let s2 = SignatureSet::compute(g2, tol)?;
    find_isomorphism_with(g1, &s1, g2, &s2, budget)
}

pub fn iso_screen(g1: &Graph, g2: &Graph, tol: Tolerance, budget: u64) -> Result<IsoVerdict, SignatureError> {
    if let Some(reason) = size_mismatch(g1, g2) {
        return Ok(IsoVerdict::DistinctCertified(reason));
    }
    let s1 = SignatureSet::compute(g1, tol)?;
    let s2 = SignatureSet::compute(g2, tol)?;
    iso_screen_with(g1, &s1, g2, &s2, budget)
}

fn size_mismatch(g1: &Graph, g2: &Graph) -> Option<DistinctReason> {
    if g1.n() != g2.n() {
        Some(DistinctReason::NodeCount)
    } else if g1.m() != g2.m() {
        Some(DistinctReason::EdgeCount)
    } else {
        None
    }
}

/// [`iso_screen`] over signatures computed elsewhere, e.g. by another
/// solver. Both sets must use the same tolerance.
pub fn iso_screen_with(
    g1: &Graph,
    s1: &SignatureSet,
    g2: &Graph,
    s2: &SignatureSet,
    budget: u64,
) -> Result<IsoVerdict, SignatureError> {
    if let Some(reason) = size_mismatch(g1, g2) {
        return Ok(IsoVerdict::DistinctCertified(reason));
    }
    if Fingerprint::from_signatures(s1) != Fingerprint::from_signatures(s2) {
        return Ok(IsoVerdict::DistinctCertified(DistinctReason::Fingerprint));
    }
    match find_isomorphism_with(g1, s1, g2, s2, budget) {
        Ok(IsoSearch::Found(p)) if verify_mapping(g1, g2, &p) => Ok(IsoVerdict::IsomorphicCertified(p)),
        Ok(_) => Ok(IsoVerdict::PossiblyIsomorphic {
            budget_exhausted: false,
        }),
        Err(SignatureError::BudgetExhausted { .. }) => Ok(IsoVerdict::PossiblyIsomorphic { budget_exhausted: true }),
        Err(e) => Err(e),
    }
}
