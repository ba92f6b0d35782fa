use super::{OracleError, MAX_BRUTE_FORCE_NODES};
use crate::graph::{Graph, NodeId, Permutation};

/// Automorphisms are listed in full only up to this group order.
const LIST_LIMIT: u64 = 40_320;

#[derive(Debug, Clone, PartialEq)]
pub struct AutomorphismReport {
    pub order: u64,
    /// Orbits of the group, each sorted, ordered by smallest member.
    pub orbits: Vec<Vec<NodeId>>,
    /// Every automorphism when the group order is at most 40320, otherwise
    /// empty.
    pub automorphisms: Vec<Permutation>,
}

/// Dense weight table plus per-node sorted incident weights, shared by the
/// brute-force searches.
pub(super) struct WeightTable {
    pub n: usize,
    w: Vec<f64>,
    pub incident: Vec<Vec<u64>>,
}

impl WeightTable {
    pub fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut w = vec![0.0; n * n];
        let mut incident = vec![Vec::new(); n];
        for e in g.edges() {
            let (i, j) = (e.u - 1, e.v - 1);
            w[i * n + j] = e.weight;
            w[j * n + i] = e.weight;
            incident[i].push(e.weight.to_bits());
            incident[j].push(e.weight.to_bits());
        }
        for list in &mut incident {
            list.sort_unstable();
        }
        Self { n, w, incident }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.w[i * self.n + j]
    }
}

/// Depth-first search for bijections `0..n → 0..n` with
/// `left(i, j) == right(p(i), p(j))`; `visit` returns false to stop.
pub(super) fn search_bijections(left: &WeightTable, right: &WeightTable, visit: &mut dyn FnMut(&[usize]) -> bool) {
    fn go(
        depth: usize,
        left: &WeightTable,
        right: &WeightTable,
        image: &mut Vec<usize>,
        used: &mut [bool],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let n = left.n;
        if depth == n {
            return visit(image);
        }
        for cand in 0..n {
            if used[cand] || left.incident[depth] != right.incident[cand] {
                continue;
            }
            let consistent = (0..depth).all(|j| left.get(depth, j) == right.get(cand, image[j]));
            if !consistent {
                continue;
            }
            used[cand] = true;
            image.push(cand);
            let keep_going = go(depth + 1, left, right, image, used, visit);
            image.pop();
            used[cand] = false;
            if !keep_going {
                return false;
            }
        }
        true
    }
    let mut image = Vec::with_capacity(left.n);
    let mut used = vec![false; left.n];
    go(0, left, right, &mut image, &mut used, visit);
}

/// Enumerates every automorphism (weight-preserving node permutation) by
/// pruned depth-first search.
pub fn brute_force_automorphisms(graph: &Graph) -> Result<AutomorphismReport, OracleError> {
    let n = graph.n();
    if n > MAX_BRUTE_FORCE_NODES {
        return Err(OracleError::TooLarge {
            n,
            limit: MAX_BRUTE_FORCE_NODES,
        });
    }
    let table = WeightTable::new(graph);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    let mut order = 0u64;
    let mut listed = Vec::new();
    search_bijections(&table, &table, &mut |image| {
        order += 1;
        for (k, &x) in image.iter().enumerate() {
            let (rk, rx) = (find(&mut parent, k), find(&mut parent, x));
            if rk != rx {
                parent[rk.max(rx)] = rk.min(rx);
            }
        }
        if order <= LIST_LIMIT {
            listed.push(Permutation::from_zero_based(image.to_vec()));
        }
        true
    });
    if order > LIST_LIMIT {
        listed.clear();
    }
    let mut groups: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    for k in 0..n {
        let r = find(&mut parent, k);
        groups[r].push(k + 1);
    }
    let orbits = groups.into_iter().filter(|g| !g.is_empty()).collect();
    Ok(AutomorphismReport {
        order,
        orbits,
        automorphisms: listed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle, cycle_with_chord, path, star};

    #[test]
    fn small_groups() {
        let r = brute_force_automorphisms(&complete(3)).unwrap();
        assert_eq!((r.order, r.orbits.clone()), (6, vec![vec![1, 2, 3]]));
        let r = brute_force_automorphisms(&path(3)).unwrap();
        assert_eq!((r.order, r.orbits.clone()), (2, vec![vec![1, 3], vec![2]]));
        let r = brute_force_automorphisms(&cycle(4)).unwrap();
        assert_eq!((r.order, r.orbits.clone()), (8, vec![vec![1, 2, 3, 4]]));
        assert_eq!(r.automorphisms.len(), 8);
        let r = brute_force_automorphisms(&star(3)).unwrap();
        assert_eq!((r.order, r.orbits), (6, vec![vec![1], vec![2, 3, 4]]));
    }

    #[test]
    fn chorded_hexagon() {
        let r = brute_force_automorphisms(&cycle_with_chord(6, 1, 4)).unwrap();
        assert_eq!(r.order, 4);
        assert_eq!(r.orbits, vec![vec![1, 4], vec![2, 3, 5, 6]]);
    }

    #[test]
    fn weights_break_symmetry() {
        let g = Graph::new(3, [(1, 2, 1.0), (2, 3, 2.0)]).unwrap();
        let r = brute_force_automorphisms(&g).unwrap();
        assert_eq!(r.order, 1);
        assert_eq!(r.orbits.len(), 3);
    }

    #[test]
    fn listed_permutations_preserve_weights() {
        let g = cycle_with_chord(6, 1, 3);
        let r = brute_force_automorphisms(&g).unwrap();
        for p in &r.automorphisms {
            for u in 1..=6 {
                for v in 1..=6 {
                    assert_eq!(g.weight(u, v), g.weight(p.image(u), p.image(v)));
                }
            }
        }
    }

    #[test]
    fn size_limit() {
        assert_eq!(
            brute_force_automorphisms(&path(11)),
            Err(OracleError::TooLarge { n: 11, limit: 10 })
        );
    }
}
