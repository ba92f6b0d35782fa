#![allow(dead_code)]

use std::sync::OnceLock;

use kcanon::families::{random_connected, with_random_weights};
use kcanon::graph::{is_connected, NodeId};
use kcanon::oracle::enumerate_connected_graphs;
use kcanon::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every connected graph on 2..=7 nodes, one per isomorphism class.
pub fn exhaustive_corpus() -> &'static [Graph] {
    static CORPUS: OnceLock<Vec<Graph>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        (2..=7)
            .flat_map(|n| enumerate_connected_graphs(n).expect("n <= 7"))
            .collect()
    })
}

/// 100 random connected graphs, 2 <= n <= 30, weights uniform in [0.1, 10].
pub fn random_weighted_corpus() -> &'static [Graph] {
    static CORPUS: OnceLock<Vec<Graph>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut r = rng(0x5eed_0001);
        (0..100)
            .map(|_| {
                let n = r.gen_range(2..=30);
                let p = r.gen_range(0.0..0.4);
                let g = random_connected(n, p, &mut r);
                with_random_weights(&g, 0.1, 10.0, &mut r)
            })
            .collect()
    })
}

pub fn ordered_pairs(n: usize) -> impl Iterator<Item = (NodeId, NodeId)> {
    (1..=n).flat_map(move |a| (1..=n).filter(move |&b| b != a).map(move |b| (a, b)))
}

/// Degree-preserving double edge swap: `a-b, c-d` becomes `a-d, c-b`.
/// Retries until the result is simple and connected.
pub fn degree_preserving_shuffle<R: Rng>(g: &Graph, swaps: usize, rng: &mut R) -> Graph {
    let mut edges: Vec<(NodeId, NodeId)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    let has = |edges: &[(NodeId, NodeId)], x: NodeId, y: NodeId| {
        edges.iter().any(|&(u, v)| (u, v) == (x, y) || (u, v) == (y, x))
    };
    let mut done = 0;
    let mut attempts = 0;
    while done < swaps && attempts < 10_000 {
        attempts += 1;
        let i = rng.gen_range(0..edges.len());
        let j = rng.gen_range(0..edges.len());
        if i == j {
            continue;
        }
        let (a, b) = edges[i];
        let (mut c, mut d) = edges[j];
        if rng.gen_bool(0.5) {
            std::mem::swap(&mut c, &mut d);
        }
        if a == d || c == b || a == c || b == d || has(&edges, a, d) || has(&edges, c, b) {
            continue;
        }
        let mut trial = edges.clone();
        trial[i] = (a, d);
        trial[j] = (c, b);
        if is_connected(g.n(), &trial) {
            edges = trial;
            done += 1;
        }
    }
    edges.shuffle(rng);
    Graph::unweighted(g.n(), edges).expect("swaps keep the graph simple and connected")
}

/// Independent check that `images` (1-based, indexed by node - 1) carries
/// every edge of `g1` onto an equal-weight edge of `g2`, bijectively.
pub fn preserves_edges(g1: &Graph, g2: &Graph, images: &[NodeId]) -> bool {
    let n = g1.n();
    if g2.n() != n || g1.m() != g2.m() || images.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in images {
        if x == 0 || x > n || seen[x - 1] {
            return false;
        }
        seen[x - 1] = true;
    }
    let mut w2 = vec![0.0; n * n];
    for e in g2.edges() {
        w2[(e.u - 1) * n + (e.v - 1)] = e.weight;
        w2[(e.v - 1) * n + (e.u - 1)] = e.weight;
    }
    g1.edges()
        .iter()
        .all(|e| w2[(images[e.u - 1] - 1) * n + (images[e.v - 1] - 1)] == e.weight)
}

/// One result line per criterion, shown with `--nocapture`.
pub fn report(id: &str, title: &str, pass: bool, detail: &str) {
    println!("[{}] {id} {title}: {detail}", if pass { "PASS" } else { "FAIL" });
}
