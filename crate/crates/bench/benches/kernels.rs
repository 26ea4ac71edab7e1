use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cocycle_bench::{free_pauli, s3_multiple};
use cocycle_core::cocycles::CocycleSpace;
use cocycle_core::reps::commutant;
use cocycle_core::Tolerances;

fn z1(c: &mut Criterion) {
    let mut group = c.benchmark_group("cocycle_space");
    for m in [1, 2, 4] {
        let (g, rep, mu) = free_pauli(m);
        group.bench_with_input(BenchmarkId::new("free_pauli", 2 * m), &m, |b, _| {
            b.iter(|| CocycleSpace::new(&g, &rep, &mu, Tolerances::default()).unwrap())
        });
        let (g, rep, mu) = s3_multiple(m);
        group.bench_with_input(BenchmarkId::new("s3_standard", 2 * m), &m, |b, _| {
            b.iter(|| CocycleSpace::new(&g, &rep, &mu, Tolerances::default()).unwrap())
        });
    }
    group.finish();
}

fn commutants(c: &mut Criterion) {
    let mut group = c.benchmark_group("commutant");
    for m in [1, 2, 3] {
        let (_, rep, _) = s3_multiple(m);
        group.bench_with_input(BenchmarkId::new("s3_standard", 2 * m), &m, |b, _| b.iter(|| commutant(&rep, 1e-9)));
    }
    group.finish();
}

fn projection(c: &mut Criterion) {
    let (g, rep, mu) = free_pauli(2);
    let space = CocycleSpace::new(&g, &rep, &mu, Tolerances::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let b = space.random_cocycle(&mut rng);
    c.bench_function("project_harmonic/free_pauli_4", |bch| bch.iter(|| space.project_harmonic(&b).unwrap()));
    c.bench_function("gram_projection/free_pauli_4", |bch| bch.iter(|| space.gram_projection(&b)));
}

criterion_group!(benches, z1, commutants, projection);
criterion_main!(benches);
