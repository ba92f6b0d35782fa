use kcanon::families::{random_connected, with_random_weights};
use kcanon::graph::parse_graph;
use kcanon::signatures::SignatureSet;
use kcanon::solver::{kcl_residual, pair_currents, LaplacianSystem, PairSolver};
use kcanon::{Graph, Permutation, Tolerance};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn weighted_graph(seed: u64, n: usize, p: f64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_connected(n, p, &mut rng);
    with_random_weights(&g, 0.1, 10.0, &mut rng)
}

fn unit_graph(seed: u64, n: usize, p: f64) -> Graph {
    random_connected(n, p, &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_and_json_round_trip(seed in any::<u64>(), n in 2usize..15, p in 0.0f64..0.6) {
        let g = weighted_graph(seed, n, p);
        let a = g.adjacency();
        prop_assert_eq!(parse_graph(&g.to_edge_list()).unwrap().adjacency(), a.clone());
        prop_assert_eq!(parse_graph(&g.to_json()).unwrap().adjacency(), a);
    }

    #[test]
    fn relabeling_permutes_adjacency(seed in any::<u64>(), n in 2usize..12) {
        let g = weighted_graph(seed, n, 0.3);
        let perm = Permutation::random(n, &mut ChaCha8Rng::seed_from_u64(seed ^ 0xabc));
        let h = parse_graph(&g.relabel(&perm).to_edge_list()).unwrap();
        let (a, b) = (g.adjacency(), h.adjacency());
        for u in 1..=n {
            for v in 1..=n {
                prop_assert_eq!(a.get(u, v), b.get(perm.image(u), perm.image(v)));
            }
        }
    }

    #[test]
    fn degree_matches_laplacian_diagonal(seed in any::<u64>(), n in 2usize..12) {
        let g = weighted_graph(seed, n, 0.4);
        let s = LaplacianSystem::new(&g).unwrap();
        let d = g.degree_matrix();
        for k in 1..=n {
            prop_assert!((s.laplacian()[(k - 1, k - 1)] - d.get(k)).abs() < 1e-12);
            let row: f64 = s.laplacian().row(k - 1).iter().sum();
            prop_assert!(row.abs() < 1e-12);
        }
    }

    #[test]
    fn pair_solve_invariants(seed in any::<u64>(), n in 2usize..20, p in 0.0f64..0.5) {
        let g = weighted_graph(seed, n, p);
        let s = LaplacianSystem::new(&g).unwrap();
        let a = 1 + (seed as usize) % n;
        let b = 1 + (a + (seed as usize >> 8) % (n - 1)) % n;
        prop_assume!(a != b);
        let v = s.solve_pair(a, b).unwrap();
        prop_assert!(kcl_residual(&g, &v) < 1e-9);
        prop_assert!(v.voltages.iter().sum::<f64>().abs() < 1e-9);
        // maximum principle; nodes carrying no current tie the extremes up
        // to rounding
        let max = v.voltages.iter().cloned().fold(f64::MIN, f64::max);
        let min = v.voltages.iter().cloned().fold(f64::MAX, f64::min);
        prop_assert!(max - v.voltage(a) < 1e-12);
        prop_assert!(v.voltage(b) - min < 1e-12);
        // antisymmetry
        let r = s.solve_pair(b, a).unwrap();
        for (x, y) in v.voltages.iter().zip(&r.voltages) {
            prop_assert!((x + y).abs() < 1e-12);
        }
        // KCL node balance of edge currents
        let out = pair_currents(&g, &v).unwrap().net_outflow(n);
        for (k, x) in out.iter().enumerate() {
            let want = if k + 1 == a { 1.0 } else if k + 1 == b { -1.0 } else { 0.0 };
            prop_assert!((x - want).abs() < 1e-9);
        }
    }

    #[test]
    fn superposition_and_metric(seed in any::<u64>(), n in 3usize..16) {
        let g = weighted_graph(seed, n, 0.3);
        let s = LaplacianSystem::new(&g).unwrap();
        let (a, b, c) = (1, 1 + n / 2, n);
        let ab = s.solve_pair(a, b).unwrap();
        let bc = s.solve_pair(b, c).unwrap();
        let ac = s.solve_pair(a, c).unwrap();
        for k in 0..n {
            prop_assert!((ac.voltages[k] - ab.voltages[k] - bc.voltages[k]).abs() < 1e-9);
        }
        let r = |x, y| s.effective_resistance(x, y).unwrap();
        prop_assert!(r(a, b) > 0.0);
        prop_assert!((r(a, b) - r(b, a)).abs() < 1e-9);
        prop_assert!(r(a, c) <= r(a, b) + r(b, c) + 1e-9);
    }

    #[test]
    fn signatures_are_label_equivariant(seed in any::<u64>(), n in 2usize..10) {
        let g = unit_graph(seed, n, 0.35);
        let perm = Permutation::random(n, &mut ChaCha8Rng::seed_from_u64(!seed));
        let t = Tolerance::default();
        let s = SignatureSet::compute(&g, t).unwrap();
        let h = SignatureSet::compute(&g.relabel(&perm), t).unwrap();
        for k in 1..=n {
            prop_assert_eq!(&s.node(k).values, &h.node(perm.image(k)).values);
        }
    }
}
