use criterion::{black_box, criterion_group, criterion_main, Criterion};
use slq_core::green;
use slq_core::orders::{check_left_order, Embedding};
use slq_core::search::{enumerate_semigroups, SearchBudget};
use slq_core::FiniteSemigroup;

fn b2() -> FiniteSemigroup {
    FiniteSemigroup::from_rows(&[
        &[0, 1, 4, 4, 4],
        &[4, 4, 0, 1, 4],
        &[2, 3, 4, 4, 4],
        &[4, 4, 2, 3, 4],
        &[4, 4, 4, 4, 4],
    ])
    .unwrap()
}

fn z4() -> FiniteSemigroup {
    FiniteSemigroup::from_rows(&[
        &[0, 1, 2, 3],
        &[1, 2, 3, 0],
        &[2, 3, 0, 1],
        &[3, 0, 1, 2],
    ])
    .unwrap()
}

fn bench_relations(c: &mut Criterion) {
    let b2 = b2();
    let z4 = z4();
    c.bench_function("green_equivalences/b2", |b| {
        b.iter(|| green::green_equivalences(black_box(&b2)).unwrap())
    });
    c.bench_function("starred_equivalences/b2", |b| {
        b.iter(|| green::starred_equivalences(black_box(&b2)).unwrap())
    });
    c.bench_function("jstar_preorder/b2", |b| {
        b.iter(|| green::jstar_preorder(black_box(&b2)).unwrap())
    });
    c.bench_function("green_equivalences/z4", |b| {
        b.iter(|| green::green_equivalences(black_box(&z4)).unwrap())
    });
    c.bench_function("check_left_order/b2", |b| {
        let e = Embedding::full(&b2);
        b.iter(|| check_left_order(black_box(&e)).unwrap())
    });
    c.bench_function("enumerate_semigroups/3", |b| {
        let budget = SearchBudget::free();
        b.iter(|| enumerate_semigroups(black_box(3), &budget, false).unwrap().len())
    });
}

criterion_group!(benches, bench_relations);
criterion_main!(benches);
