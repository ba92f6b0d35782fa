//! Floating pipeline against the exact and brute-force oracles.

mod common;

use std::collections::HashSet;

use common::*;
use kcanon::families::{
    complete, cycle, cycle_with_chord, path, random_connected, random_tree, star, with_random_weights,
};
use kcanon::oracle::{
    brute_force_automorphisms, brute_force_isomorphic, enumerate_connected_graphs, exact_residual, exact_solve_pair,
    ExactRational, OracleIsomorphism,
};
use kcanon::signatures::{
    canonical_labeling, find_isomorphism, fingerprint, iso_screen, orbit_partition, IsoSearch, DEFAULT_BUDGET,
};
use kcanon::solver::{solve_pair_universal_sink, LaplacianSystem, PairSolver};
use kcanon::{Graph, IsoVerdict, Permutation, Tolerance};
use rand::Rng;

const T: Tolerance = Tolerance::DEFAULT;

#[test]
fn exact_matches_float_on_random_weighted_graphs() {
    let mut r = rng(0x0c0f_fee1);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let n = r.gen_range(2..=8);
        let g = with_random_weights(&random_connected(n, r.gen_range(0.0..0.6), &mut r), 0.1, 10.0, &mut r);
        let s = LaplacianSystem::new(&g).unwrap();
        for (a, b) in ordered_pairs(n) {
            let exact = exact_solve_pair(&g, a, b).unwrap();
            assert!(exact_residual(&g, a, b, &exact).iter().all(ExactRational::is_zero));
            let sum = exact.iter().fold(ExactRational::zero(), |acc, x| &acc + x);
            assert!(sum.is_zero());
            let v = s.solve_pair(a, b).unwrap();
            for (x, q) in v.voltages.iter().zip(&exact) {
                worst = worst.max((x - q.to_f64()).abs());
            }
        }
    }
    assert!(worst < 1e-9, "max deviation {worst}");
}

#[test]
fn group_order_divides_factorial() {
    for g in exhaustive_corpus() {
        let rep = brute_force_automorphisms(g).unwrap();
        let fact: u64 = (1..=g.n() as u64).product();
        assert_eq!(fact % rep.order, 0);
        assert_eq!(rep.automorphisms.len() as u64, rep.order);
        for p in &rep.automorphisms {
            assert!(preserves_edges(g, g, &p.images()));
        }
    }
}

#[test]
fn oracle_agrees_with_iso_screen_on_corpus_pairs() {
    // every pair within one (n, m) bucket of the n <= 6 enumeration is
    // non-isomorphic; each graph is also paired with a relabeled copy
    let mut r = rng(0x0c0f_fee2);
    let small: Vec<&Graph> = exhaustive_corpus().iter().filter(|g| g.n() <= 6).collect();
    for (i, g) in small.iter().enumerate() {
        let h = g.relabel(&Permutation::random(g.n(), &mut r));
        match iso_screen(g, &h, T, DEFAULT_BUDGET).unwrap() {
            IsoVerdict::IsomorphicCertified(m) => assert!(preserves_edges(g, &h, &m.images())),
            other => panic!("relabeled copy screened as {}", other.name()),
        }
        for other in small.iter().skip(i + 1).filter(|o| o.n() == g.n() && o.m() == g.m()) {
            assert_eq!(
                brute_force_isomorphic(g, other).unwrap(),
                OracleIsomorphism::ProvenDistinct
            );
            assert!(matches!(
                iso_screen(g, other, T, DEFAULT_BUDGET).unwrap(),
                IsoVerdict::DistinctCertified(_)
            ));
        }
    }
}

#[test]
fn six_node_trees_sharing_a_degree_sequence() {
    let trees: Vec<Graph> = enumerate_connected_graphs(6)
        .unwrap()
        .into_iter()
        .filter(|g| g.m() == 5)
        .filter(|g| {
            let mut d: Vec<usize> = g.nodes().map(|k| g.neighbors(k).len()).collect();
            d.sort_unstable();
            d == [1, 1, 1, 2, 2, 3]
        })
        .collect();
    assert_eq!(trees.len(), 2);
    assert_eq!(
        brute_force_isomorphic(&trees[0], &trees[1]).unwrap(),
        OracleIsomorphism::ProvenDistinct
    );
    let (f0, f1) = (fingerprint(&trees[0], T).unwrap(), fingerprint(&trees[1], T).unwrap());
    assert_ne!(f0.digest(), f1.digest());
}

#[test]
fn chord_placement_on_c6() {
    let opposite = cycle_with_chord(6, 1, 4);
    let skew = cycle_with_chord(6, 1, 3);
    assert_eq!(
        brute_force_isomorphic(&opposite, &skew).unwrap(),
        OracleIsomorphism::ProvenDistinct
    );
    assert!(matches!(
        iso_screen(&opposite, &skew, T, DEFAULT_BUDGET).unwrap(),
        IsoVerdict::DistinctCertified(_)
    ));
    let truth = brute_force_automorphisms(&opposite).unwrap();
    assert_eq!(truth.orbits, vec![vec![1, 4], vec![2, 3, 5, 6]]);
    assert!(orbit_partition(&opposite, T).unwrap().same_sets(&truth.orbits));
}

#[test]
fn small_fingerprints_separate() {
    let p4 = fingerprint(&path(4), T).unwrap().digest();
    assert_ne!(p4, fingerprint(&star(3), T).unwrap().digest());
    assert_ne!(p4, fingerprint(&cycle(4), T).unwrap().digest());
    assert_eq!(
        orbit_partition(&star(3), T).unwrap().node_sets(),
        vec![vec![2, 3, 4], vec![1]]
    );
}

#[test]
fn tree_mapping_is_permutation_times_automorphism() {
    let mut r = rng(0x0c0f_fee3);
    for _ in 0..10 {
        let g = random_tree(9, &mut r);
        let pi = Permutation::random(9, &mut r);
        let h = g.relabel(&pi);
        let IsoSearch::Found(m) = find_isomorphism(&g, &h, T, DEFAULT_BUDGET).unwrap() else {
            panic!("no mapping for a relabeled tree");
        };
        // pi⁻¹ ∘ m maps g onto itself
        let auto = pi.inverse().compose(&m);
        assert!(preserves_edges(&g, &g, &auto.images()));
        assert!(brute_force_automorphisms(&g).unwrap().automorphisms.contains(&auto));
    }
}

#[test]
fn p3_canonical_form_under_all_labelings() {
    let g = path(3);
    let all = [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]];
    let forms: HashSet<String> = all
        .iter()
        .map(|p| {
            let h = g.relabel(&Permutation::from_images(p.to_vec()).unwrap());
            canonical_labeling(&h, T, DEFAULT_BUDGET).unwrap().form
        })
        .collect();
    assert_eq!(forms.len(), 1);
}

#[test]
fn caterpillar_canonical_form_is_stable() {
    // spine 1-2-3 with legs 4,5 on 1; 6 on 2; 7 on 3
    let g = Graph::unweighted(7, [(1, 2), (2, 3), (1, 4), (1, 5), (2, 6), (3, 7)]).unwrap();
    let mut r = rng(0x0c0f_fee4);
    let forms: HashSet<String> = (0..100)
        .map(|_| {
            let c = canonical_labeling(&g.relabel(&Permutation::random(7, &mut r)), T, DEFAULT_BUDGET).unwrap();
            assert!(c.certified);
            c.form
        })
        .collect();
    assert_eq!(forms.len(), 1);
}

#[test]
fn universal_sink_discrepancy() {
    let p2 = solve_pair_universal_sink(&path(2), 1, 2, 1e-6).unwrap();
    assert!((p2.voltage(1) - 0.5).abs() < 1e-4 && (p2.voltage(2) + 0.5).abs() < 1e-4);
    assert!(p2.is_approximate());

    // exact reference: K3 plus a sink joined to every node is K4
    let k4 = exact_solve_pair(&complete(4), 1, 2).unwrap();
    let mean = (&(&k4[0] + &k4[1]) + &k4[2]) / ExactRational::from_integer(3);
    let want: Vec<f64> = k4[..3].iter().map(|x| (x - &mean).to_f64()).collect();
    let got = solve_pair_universal_sink(&complete(3), 1, 2, 1.0).unwrap();
    for (x, y) in got.voltages.iter().zip(&want) {
        assert!((x - y).abs() < 1e-12);
    }
    let grounded = LaplacianSystem::new(&complete(3)).unwrap().solve_pair(1, 2).unwrap();
    let gap = got
        .voltages
        .iter()
        .zip(&grounded.voltages)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    assert!((gap - (1.0 / 3.0 - 0.25)).abs() < 1e-12, "gap {gap}");
}
