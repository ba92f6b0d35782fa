use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kcanon::families::{random_connected, with_random_weights};
use kcanon::signatures::{canonical_labeling, DEFAULT_BUDGET};
use kcanon::solver::PseudoinverseSystem;
use kcanon::{Graph, LaplacianSystem, PairSolver, Tolerance};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph(n: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
    let g = random_connected(n, 0.05, &mut rng);
    with_random_weights(&g, 0.1, 10.0, &mut rng)
}

fn factorization(c: &mut Criterion) {
    let mut group = c.benchmark_group("factor");
    for n in [25, 50, 100, 200] {
        let g = graph(n);
        group.bench_with_input(BenchmarkId::new("cholesky", n), &g, |b, g| {
            b.iter(|| LaplacianSystem::new(g).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("eigen", n), &g, |b, g| {
            b.iter(|| PseudoinverseSystem::new(g).unwrap())
        });
    }
    group.finish();
}

fn pair_solves(c: &mut Criterion) {
    let mut group = c.benchmark_group("all_pairs");
    group.sample_size(20);
    for n in [25, 50, 100] {
        let g = graph(n);
        let s = LaplacianSystem::new(&g).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &s, |b, s| {
            b.iter(|| {
                let mut acc = 0.0;
                for a in 1..=n {
                    for z in a + 1..=n {
                        acc += s.solve_pair(a, z).unwrap().potential_drop();
                    }
                }
                acc
            })
        });
    }
    group.finish();
}

fn fingerprint(c: &mut Criterion) {
    let mut group = c.benchmark_group("fingerprint");
    group.sample_size(10);
    for n in [25, 50, 100] {
        let g = graph(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| kcanon::signatures::fingerprint(g, Tolerance::DEFAULT).unwrap().digest())
        });
    }
    group.finish();
}

fn canon(c: &mut Criterion) {
    let g = graph(40);
    c.bench_function("canon/40", |b| {
        b.iter(|| {
            canonical_labeling(&g, Tolerance::DEFAULT, DEFAULT_BUDGET)
                .unwrap()
                .certified
        })
    });
}

criterion_group!(benches, factorization, pair_solves, fingerprint, canon);
criterion_main!(benches);
