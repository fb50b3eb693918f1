//! Benchmarks for the hot paths: enumeration, congruence closure,
//! semiregularization of products, cellularity, and the reflection
//! pipeline.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sepref_core::reflections::reflect_monoid;
use sepref_core::{
    enum_spaces, enum_tables, random_space, Congruence, FiniteSpace, Partition, SeparationAxiom,
    TopMonoid,
};

/// The three-element monoid with one merged pair in its least closed
/// congruence — a representative congruence-closure workload.
fn sample_monoid() -> TopMonoid {
    let points: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
    let space = FiniteSpace::make_space(
        points,
        &[
            vec![],
            vec!["a".into()],
            vec!["a".into(), "b".into(), "c".into()],
        ],
    )
    .unwrap();
    enum_tables(3)
        .unwrap()
        .into_iter()
        .filter(|t| t.is_monoid() && t.points() == space.points())
        .map(|t| TopMonoid::assemble(space.clone(), t).unwrap())
        .find(|tm| tm.profile().semitopological && tm.profile().open_shifts)
        .unwrap()
}

fn bench_enum_spaces(c: &mut Criterion) {
    c.bench_function("enum_spaces(4)", |b| {
        b.iter(|| {
            let spaces = enum_spaces(4).unwrap();
            assert_eq!(spaces.len(), 355);
            spaces
        })
    });
}

fn bench_congruence_closure(c: &mut Criterion) {
    let tm = sample_monoid();
    c.bench_function("closed congruence closure (3 points)", |b| {
        b.iter(|| {
            tm.closed_congruence_closure(&[])
                .expect("the closure exists on every finite monoid")
        })
    });
}

fn bench_semiregularization_of_product(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let x = random_space(4, &mut rng).unwrap();
    let y = random_space(4, &mut rng).unwrap();
    c.bench_function("semiregularization of a 4x4 product", |b| {
        b.iter_batched(
            || x.product(&y).unwrap(),
            |p| p.semiregularization(),
            BatchSize::SmallInput,
        )
    });
}

fn bench_cellularity(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let space = random_space(7, &mut rng).unwrap();
    c.bench_function("cellularity of a 7-point space", |b| {
        b.iter(|| space.cellularity())
    });
}

fn bench_reflection_pipeline(c: &mut Criterion) {
    let tm = sample_monoid();
    c.bench_function("t2 reflection of a 3-point monoid", |b| {
        b.iter(|| reflect_monoid(&tm, SeparationAxiom::T2).unwrap())
    });
}

fn bench_quotient(c: &mut Criterion) {
    let tm = sample_monoid();
    let partitions = Partition::all(tm.space().points());
    let congruences: Vec<Congruence> = partitions
        .into_iter()
        .filter_map(|p| Congruence::new(tm.algebra(), p).ok())
        .collect();
    assert!(!congruences.is_empty());
    c.bench_function("all congruence quotients of a 3-point monoid", |b| {
        b.iter(|| {
            congruences
                .iter()
                .map(|cg| tm.quotient(cg).unwrap())
                .collect::<Vec<_>>()
        })
    });
}

criterion_group!(
    benches,
    bench_enum_spaces,
    bench_congruence_closure,
    bench_semiregularization_of_product,
    bench_cellularity,
    bench_reflection_pipeline,
    bench_quotient,
);
criterion_main!(benches);
