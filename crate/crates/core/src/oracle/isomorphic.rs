use super::automorphisms::{search_bijections, WeightTable};
use super::{OracleError, MAX_BRUTE_FORCE_NODES};
use crate::graph::{Graph, Permutation};

#[derive(Debug, Clone, PartialEq)]
pub enum OracleIsomorphism {
    /// `mapping.image(k)` in the second graph corresponds to node `k` of the
    /// first.
    Isomorphic(Permutation),
    /// The exhaustive search found no weight-preserving bijection.
    ProvenDistinct,
}

impl OracleIsomorphism {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, OracleIsomorphism::Isomorphic(_))
    }
}

pub fn brute_force_isomorphic(g1: &Graph, g2: &Graph) -> Result<OracleIsomorphism, OracleError> {
    for n in [g1.n(), g2.n()] {
        if n > MAX_BRUTE_FORCE_NODES {
            return Err(OracleError::TooLarge {
                n,
                limit: MAX_BRUTE_FORCE_NODES,
            });
        }
    }
    if g1.n() != g2.n() || g1.m() != g2.m() {
        return Ok(OracleIsomorphism::ProvenDistinct);
    }
    let (left, right) = (WeightTable::new(g1), WeightTable::new(g2));
    let mut found = None;
    search_bijections(&left, &right, &mut |image| {
        found = Some(Permutation::from_zero_based(image.to_vec()));
        false
    });
    Ok(match found {
        Some(p) => OracleIsomorphism::Isomorphic(p),
        None => OracleIsomorphism::ProvenDistinct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cycle, cycle_with_chord, path, star};

    #[test]
    fn relabeled_cycle() {
        let c4 = cycle(4);
        let p = Permutation::from_images(vec![3, 1, 4, 2]).unwrap();
        let h = c4.relabel(&p);
        let OracleIsomorphism::Isomorphic(m) = brute_force_isomorphic(&c4, &h).unwrap() else {
            panic!("expected a mapping");
        };
        for e in c4.edges() {
            assert_eq!(h.weight(m.image(e.u), m.image(e.v)), e.weight);
        }
    }

    #[test]
    fn distinct_pairs() {
        assert_eq!(
            brute_force_isomorphic(&path(4), &star(3)).unwrap(),
            OracleIsomorphism::ProvenDistinct
        );
        assert_eq!(
            brute_force_isomorphic(&cycle_with_chord(6, 1, 4), &cycle_with_chord(6, 1, 3)).unwrap(),
            OracleIsomorphism::ProvenDistinct
        );
        assert_eq!(
            brute_force_isomorphic(&cycle(6), &path(6)).unwrap(),
            OracleIsomorphism::ProvenDistinct
        );
    }

    #[test]
    fn weights_matter() {
        let a = Graph::new(3, [(1, 2, 1.0), (2, 3, 2.0)]).unwrap();
        let b = Graph::new(3, [(1, 2, 2.0), (2, 3, 1.0)]).unwrap();
        let c = Graph::new(3, [(1, 2, 2.0), (2, 3, 2.0)]).unwrap();
        assert!(brute_force_isomorphic(&a, &b).unwrap().is_isomorphic());
        assert!(!brute_force_isomorphic(&a, &c).unwrap().is_isomorphic());
    }
}
