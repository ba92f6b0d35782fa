use std::collections::BTreeMap;

use sha2::{Digest, Sha256};

use super::{SignatureError, SignatureSet, Tolerance};
use crate::graph::{Graph, NodeId};

/// Nodes sharing one quantized voltage signature. Every automorphism orbit
/// lies inside a single class; classes are therefore "orbit candidates".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitClass {
    /// Sorted ascending.
    pub members: Vec<NodeId>,
    pub signature: Vec<i64>,
}

/// Disjoint classes covering `1..=N`, ordered by signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub tol: Tolerance,
    pub classes: Vec<OrbitClass>,
}

impl OrbitPartition {
    pub fn from_signatures(set: &SignatureSet) -> Self {
        let mut groups: BTreeMap<&[i64], Vec<NodeId>> = BTreeMap::new();
        for s in &set.nodes {
            groups.entry(&s.values).or_default().push(s.node);
        }
        // signatures are distinct across classes, so BTreeMap order is the
        // (signature, smallest member) order
        let classes = groups
            .into_iter()
            .map(|(sig, members)| OrbitClass {
                members,
                signature: sig.to_vec(),
            })
            .collect();
        Self { tol: set.tol, classes }
    }

    pub fn node_sets(&self) -> Vec<Vec<NodeId>> {
        self.classes.iter().map(|c| c.members.clone()).collect()
    }

    /// Index of the class containing `node`.
    pub fn class_of(&self, node: NodeId) -> Option<usize> {
        self.classes.iter().position(|c| c.members.contains(&node))
    }

    /// True when every set in `finer` lies inside one class.
    pub fn contains_all(&self, finer: &[Vec<NodeId>]) -> bool {
        finer.iter().all(|set| {
            let mut classes = set.iter().map(|&k| self.class_of(k));
            match classes.next() {
                Some(first) => first.is_some() && classes.all(|c| c == first),
                None => true,
            }
        })
    }

    /// Same grouping as `other`, ignoring order.
    pub fn same_sets(&self, other: &[Vec<NodeId>]) -> bool {
        let mut a = self.node_sets();
        let mut b = other.to_vec();
        for s in b.iter_mut() {
            s.sort_unstable();
        }
        a.sort();
        b.sort();
        a == b
    }
}

impl OrbitClass {
    /// SHA-256 of the class signature's canonical decimal text.
    pub fn digest(&self, tol: Tolerance) -> String {
        let text: Vec<String> = self.signature.iter().map(|&t| tol.decimal(t)).collect();
        hex::encode(Sha256::digest(format!("[{}]", text.join(",")).as_bytes()))
    }
}

pub fn orbit_partition(graph: &Graph, tol: Tolerance) -> Result<OrbitPartition, SignatureError> {
    Ok(OrbitPartition::from_signatures(&SignatureSet::compute(graph, tol)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle, cycle_with_chord, path, star};

    fn sets(g: &Graph) -> Vec<Vec<NodeId>> {
        orbit_partition(g, Tolerance::default()).unwrap().node_sets()
    }

    #[test]
    fn small_partitions() {
        assert_eq!(sets(&path(3)), vec![vec![1, 3], vec![2]]);
        assert_eq!(sets(&complete(3)), vec![vec![1, 2, 3]]);
        assert_eq!(sets(&cycle(4)), vec![vec![1, 2, 3, 4]]);
        let s = sets(&star(3));
        assert_eq!(s.len(), 2);
        assert!(s.contains(&vec![1]) && s.contains(&vec![2, 3, 4]));
    }

    #[test]
    fn chorded_hexagon_matches_brute_force_orbits() {
        let g = cycle_with_chord(6, 1, 4);
        let p = orbit_partition(&g, Tolerance::default()).unwrap();
        let truth = crate::oracle::brute_force_automorphisms(&g).unwrap().orbits;
        assert_eq!(truth, vec![vec![1, 4], vec![2, 3, 5, 6]]);
        assert!(p.same_sets(&truth));
        assert!(p.contains_all(&truth));
    }

    #[test]
    fn containment_helpers() {
        let p = orbit_partition(&path(3), Tolerance::default()).unwrap();
        assert!(p.contains_all(&[vec![1, 3], vec![2]]));
        assert!(p.contains_all(&[vec![1], vec![3], vec![2]]));
        assert!(!p.contains_all(&[vec![1, 2], vec![3]]));
        assert_eq!(p.class_of(3), Some(0));
        assert_eq!(p.classes[0].digest(p.tol).len(), 64);
    }
}
