use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pacres::deciders::{learn_res, Overrides, RunConfig};
use pacres::distributions::{AffineSystem, Uniform};
use pacres::generate::{random_affine, random_cnf};
use pacres::learner::learn_clause_table;
use pacres::masking::draw_masked_samples;
use pacres::{Clause, Execution};

const MODES: [Execution; 2] = [Execution::Sequential, Execution::Parallel];

fn sampling(c: &mut Criterion) {
    let mut g = c.benchmark_group("draw_masked_samples");
    let a = random_affine(&mut ChaCha8Rng::seed_from_u64(1), 64, 24, 0.2);
    for exec in MODES {
        g.bench_with_input(BenchmarkId::new("affine n=64", format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| draw_masked_samples(&a, 0.5, 20_000, 7, exec).unwrap())
        });
    }
    g.finish();
}

fn learning(c: &mut Criterion) {
    let mut g = c.benchmark_group("learn_clause_table");
    g.sample_size(20);
    let s = draw_masked_samples(&Uniform::new(20), 0.6, 5_000, 3, Execution::Sequential).unwrap();
    for exec in MODES {
        g.bench_with_input(BenchmarkId::new("n=20 w=2", format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| learn_clause_table(&s.samples, 20, 2, 50, exec).unwrap())
        });
    }
    g.finish();
}

fn deciding(c: &mut Criterion) {
    let mut g = c.benchmark_group("learn_res");
    g.sample_size(10);
    let n = 12;
    let a = AffineSystem::from_rows(n, &[(vec![0, 1], false), (vec![2, 3, 4], true)]).unwrap();
    let mut phi = random_cnf(&mut ChaCha8Rng::seed_from_u64(5), n, 30, 3);
    phi = phi.conjoin(&[Clause::from_dimacs(&[1, 2]), Clause::from_dimacs(&[-1, -2])]).unwrap();
    let cfg = RunConfig {
        mu: 0.8,
        beta: 0.5,
        gamma: 0.1,
        eps: 0.5,
        delta: 0.1,
        p_n: 100,
        n,
        overrides: Overrides { w: Some(3), m0: Some(4_000), m1: Some(512) },
        seed: 0,
    };
    let s = draw_masked_samples(&a, cfg.mu, 4_512, 0, Execution::Sequential).unwrap();
    for exec in MODES {
        g.bench_with_input(BenchmarkId::new("n=12 w=3", format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| learn_res(&phi, &cfg, &s.samples, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, sampling, learning, deciding);
criterion_main!(benches);
