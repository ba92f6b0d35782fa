//! Connected simple graphs on `n <= 7` nodes, one per isomorphism class.
//!
//! Graphs with `k + 1` edges are obtained by adding every missing edge to
//! every class representative with `k` edges and deduplicating by canonical
//! code: the lexicographically smallest upper-triangle bit string over all
//! `n!` relabelings, found by branch and bound (a prefix already larger than
//! the best code cannot lead to the minimum).

use std::collections::BTreeSet;

use super::OracleError;
use crate::graph::{is_connected, Graph};

pub const MAX_ENUMERATION_NODES: usize = 7;

/// Adjacency as one bitmask per node.
type Adjacency = Vec<u8>;

/// Bit string over pairs ordered column by column: (0,1), (0,2), (1,2),
/// (0,3), ... so that positions `0..=j` fix the first `j(j+1)/2` bits.
fn canonical_code(adj: &Adjacency) -> u32 {
    let n = adj.len();
    let bits = n * (n - 1) / 2;
    let mut best: Option<u32> = None;
    let mut placed = Vec::with_capacity(n);
    let mut used = 0u8;

    // code prefix is kept left-aligned in a `bits`-wide word
    fn go(
        adj: &Adjacency,
        bits: usize,
        placed: &mut Vec<usize>,
        used: &mut u8,
        code: u32,
        filled: usize,
        tight: bool,
        best: &mut Option<u32>,
    ) {
        let n = adj.len();
        let j = placed.len();
        if j == n {
            if best.is_none_or(|b| code < b) {
                *best = Some(code);
            }
            return;
        }
        for cand in 0..n {
            if *used & (1 << cand) != 0 {
                continue;
            }
            let mut c = code;
            for (i, &p) in placed.iter().enumerate() {
                if adj[p] & (1 << cand) != 0 {
                    c |= 1 << (bits - 1 - (filled + i));
                }
            }
            let now_filled = filled + j;
            let mut still_tight = tight;
            if tight {
                if let Some(b) = *best {
                    let mask = if now_filled == 0 {
                        0
                    } else {
                        (!0u32 >> (32 - now_filled)) << (bits - now_filled)
                    };
                    let (mine, theirs) = (c & mask, b & mask);
                    if mine > theirs {
                        continue;
                    }
                    still_tight = mine == theirs;
                }
            }
            *used |= 1 << cand;
            placed.push(cand);
            go(adj, bits, placed, used, c, now_filled, still_tight, best);
            placed.pop();
            *used &= !(1 << cand);
        }
    }

    if bits == 0 {
        return 0;
    }
    go(adj, bits, &mut placed, &mut used, 0, 0, true, &mut best);
    best.expect("at least one permutation")
}

fn decode(code: u32, n: usize) -> Adjacency {
    let bits = n * (n - 1) / 2;
    let mut adj = vec![0u8; n];
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            if code & (1 << (bits - 1 - idx)) != 0 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            idx += 1;
        }
    }
    adj
}

fn edges_of(adj: &Adjacency) -> Vec<(usize, usize)> {
    let n = adj.len();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| adj[i] & (1 << j) != 0)
        .map(|(i, j)| (i + 1, j + 1))
        .collect()
}

/// All connected unweighted graphs on `n` nodes up to isomorphism, ordered
/// by edge count and then canonical code.
pub fn enumerate_connected_graphs(n: usize) -> Result<Vec<Graph>, OracleError> {
    if n > MAX_ENUMERATION_NODES {
        return Err(OracleError::TooLarge {
            n,
            limit: MAX_ENUMERATION_NODES,
        });
    }
    if n < 2 {
        return Err(OracleError::TooSmall { n, min: 2 });
    }
    let mut level: BTreeSet<u32> = BTreeSet::from([0]);
    let mut out = Vec::new();
    while !level.is_empty() {
        let mut next = BTreeSet::new();
        for &code in &level {
            let adj = decode(code, n);
            let edges = edges_of(&adj);
            if is_connected(n, &edges) {
                out.push(Graph::unweighted(n, edges).expect("connected simple graph"));
            }
            for i in 0..n {
                for j in i + 1..n {
                    if adj[i] & (1 << j) == 0 {
                        let mut grown = adj.clone();
                        grown[i] |= 1 << j;
                        grown[j] |= 1 << i;
                        next.insert(canonical_code(&grown));
                    }
                }
            }
        }
        level = next;
    }
    Ok(out)
}
