//! Named graph families and seeded random generators.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Graph, NodeId};

pub fn path(n: usize) -> Graph {
    Graph::unweighted(n, (1..n).map(|k| (k, k + 1))).expect("path is valid")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 nodes");
    Graph::unweighted(n, (1..=n).map(|k| (k, k % n + 1))).expect("cycle is valid")
}

pub fn complete(n: usize) -> Graph {
    let edges = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v)));
    Graph::unweighted(n, edges).expect("complete graph is valid")
}

/// Star `K_{1,leaves}` with center node 1.
pub fn star(leaves: usize) -> Graph {
    Graph::unweighted(leaves + 1, (2..=leaves + 1).map(|k| (1, k))).expect("star is valid")
}

/// Cycle `C_n` plus the chord `u - v`.
pub fn cycle_with_chord(n: usize, u: NodeId, v: NodeId) -> Graph {
    let mut edges: Vec<_> = (1..=n).map(|k| (k, k % n + 1)).collect();
    edges.push((u, v));
    Graph::unweighted(n, edges).expect("chord must join non-adjacent cycle nodes")
}

/// Uniform random labeled tree via a random Prüfer sequence.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 1);
    if n == 1 {
        return Graph::new(1, []).expect("single node");
    }
    if n == 2 {
        return path(2);
    }
    let prufer: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &x in &prufer {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in &prufer {
        let leaf = (0..n).find(|&k| degree[k] == 1).expect("a leaf exists");
        edges.push((leaf + 1, x + 1));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&k| degree[k] == 1).collect();
    edges.push((rest[0] + 1, rest[1] + 1));
    Graph::unweighted(n, edges).expect("Prüfer decoding yields a tree")
}

/// Random connected graph: a random spanning tree plus each remaining pair
/// independently with probability `p`. Unit weights.
pub fn random_connected<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let tree = random_tree(n, rng);
    let mut edges: Vec<(NodeId, NodeId)> = tree.edges().iter().map(|e| (e.u, e.v)).collect();
    for u in 1..=n {
        for v in u + 1..=n {
            if tree.edge_index(u, v).is_none() && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges.shuffle(rng);
    Graph::unweighted(n, edges).expect("supergraph of a spanning tree is connected")
}

/// Same topology with weights drawn uniformly from `[lo, hi)`.
pub fn with_random_weights<R: Rng + ?Sized>(g: &Graph, lo: f64, hi: f64, rng: &mut R) -> Graph {
    Graph::new(g.n(), g.edges().iter().map(|e| (e.u, e.v, rng.gen_range(lo..hi))))
        .expect("positive weights keep the graph valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn family_sizes() {
        assert_eq!((path(4).n(), path(4).m()), (4, 3));
        assert_eq!(cycle(6).m(), 6);
        assert_eq!(complete(5).m(), 10);
        assert_eq!(star(3).m(), 3);
        assert_eq!(cycle_with_chord(6, 1, 4).m(), 7);
    }

    #[test]
    fn random_trees_are_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..12 {
            let t = random_tree(n, &mut rng);
            assert_eq!(t.m(), n - 1);
            assert!(t.is_connected());
        }
    }

    #[test]
    fn random_weights_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = with_random_weights(&random_connected(10, 0.3, &mut rng), 0.1, 10.0, &mut rng);
        assert!(g.edges().iter().all(|e| (0.1..10.0).contains(&e.weight)));
    }
}
