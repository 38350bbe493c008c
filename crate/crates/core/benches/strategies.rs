use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use eulerlab::folded_proof::{sample_transversal, verify_proof_folded_with};
use eulerlab::polytope::{brute_force_face_lattice_with, generate, Family};
use eulerlab::schlegel_proof::verify_proof_schlegel_with;
use eulerlab::Strategy;

const STRATEGIES: [(&str, Strategy); 2] = [("sequential", Strategy::Sequential), ("parallel", Strategy::Parallel)];

fn oracle(c: &mut Criterion) {
    let p = generate(&Family::CrossPolytope(5), 0).unwrap();
    let mut group = c.benchmark_group("oracle/cross:5");
    group.sample_size(10);
    for (name, s) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, &s| {
            b.iter(|| brute_force_face_lattice_with(black_box(&p), 12, s).unwrap())
        });
    }
    group.finish();
}

fn schlegel(c: &mut Criterion) {
    let p = generate(&Family::Hypercube(4), 0).unwrap();
    let mut group = c.benchmark_group("schlegel/cube:4");
    group.sample_size(10);
    for (name, s) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, &s| {
            b.iter(|| verify_proof_schlegel_with(black_box(&p), 0, 1, s).unwrap())
        });
    }
    group.finish();
}

fn folded(c: &mut Criterion) {
    let p = generate(&Family::Hypercube(4), 0).unwrap();
    let tr = sample_transversal(&p, 1).unwrap();
    let mut group = c.benchmark_group("folded/cube:4");
    group.sample_size(10);
    for (name, s) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, &s| {
            b.iter(|| verify_proof_folded_with(black_box(&p), tr.clone(), 1, s).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, oracle, schlegel, folded);
criterion_main!(benches);
