use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use rseq_bench::{scattered, squares};
use rseq_core::constructions::{build_example_sequence, IPBlockSchedule};
use rseq_core::intsets::{difference_set, piecewise_syndetic_certificate};
use rseq_core::permpoly::{
    brute_permutation_check, find_non_surjective_prime, hermite_check, IntPoly, PolyModP,
    PrimeField,
};
use rseq_core::recurrence::{cyclic_crosscheck, r_sequence_cyclic, CyclicCrosscheck};

fn permpoly(c: &mut Criterion) {
    let mut group = c.benchmark_group("permpoly");
    for p in [13u64, 101, 1009] {
        let f = PolyModP::new(PrimeField::new(p).unwrap(), vec![3, 0, 1, 0, 0, 2]);
        group.bench_with_input(BenchmarkId::new("hermite", p), &f, |b, f| {
            b.iter(|| hermite_check(black_box(f)))
        });
        group.bench_with_input(BenchmarkId::new("brute", p), &f, |b, f| {
            b.iter(|| brute_permutation_check(black_box(f)))
        });
    }
    let f: IntPoly = "9x^5 - 3x^2 + 7".parse().unwrap();
    group.bench_function("find_prime", |b| {
        b.iter(|| find_non_surjective_prime(black_box(&f), 10_000))
    });
    group.finish();
}

fn intsets(c: &mut Criterion) {
    let mut group = c.benchmark_group("intsets");
    for (name, w) in [("sparse", squares(300)), ("dense", scattered(20_000, 3))] {
        group.bench_with_input(BenchmarkId::new("difference_set", name), &w, |b, w| {
            b.iter(|| difference_set(black_box(w)))
        });
    }
    let w = scattered(1_000_000, 8);
    group.bench_function("pws_certificate_1e6", |b| {
        b.iter(|| piecewise_syndetic_certificate(black_box(&w), 30, 500))
    });
    group.finish();
}

fn recurrence(c: &mut Criterion) {
    let mut group = c.benchmark_group("recurrence");
    let w = squares(1000);
    group.bench_function("r_sequence_cyclic_m50", |b| {
        b.iter(|| r_sequence_cyclic(black_box(&w), 50))
    });
    let w = scattered(10_000, 5);
    let checker = CyclicCrosscheck::new(10_000, 12).unwrap();
    group.bench_function("crosscheck_window_precomputed", |b| {
        b.iter(|| checker.check(black_box(&w), -6..=6))
    });
    group.sample_size(10);
    group.bench_function("crosscheck_window_cold", |b| {
        b.iter(|| cyclic_crosscheck(black_box(&w), 12, -6..=6))
    });
    group.finish();
}

fn constructions(c: &mut Criterion) {
    let schedule = IPBlockSchedule::default_with_blocks(30).unwrap();
    c.bench_function("build_example_30_blocks", |b| {
        b.iter(|| build_example_sequence(black_box(&schedule)))
    });
}

criterion_group!(benches, permpoly, intsets, recurrence, constructions);
criterion_main!(benches);
