use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use klqds::analysis::{exists_kl, is_kl_unambiguous, step_table};
use klqds::qds::{build_qds, prune_unreachable};
use klqds::samples;
use klqds_bench::unambiguous_nfa;
use std::hint::black_box;

fn decide(c: &mut Criterion) {
    let nine = samples::nfa(samples::NINE_STATE_NFA);
    let mut group = c.benchmark_group("decide");
    group.bench_function("square_nine_state", |b| b.iter(|| exists_kl(black_box(&nine)).unwrap()));
    for (k, l) in [(3, 3), (4, 3), (6, 3)] {
        group.bench_with_input(
            BenchmarkId::new("enumerate_nine_state", format!("{k}_{l}")),
            &(k, l),
            |b, &(k, l)| b.iter(|| is_kl_unambiguous(black_box(&nine), k, l).unwrap()),
        );
    }
    group.finish();
}

fn construct(c: &mut Criterion) {
    let mut group = c.benchmark_group("construct");
    for n in [4, 6, 8] {
        let (a, k, l) = unambiguous_nfa(n as u64 * 1000, n, 4);
        group.bench_with_input(BenchmarkId::new("step_table", n), &a, |b, a| {
            b.iter(|| step_table(black_box(a), k, l).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("build_and_prune", n), &a, |b, a| {
            b.iter(|| prune_unreachable(&build_qds(black_box(a), k, l).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, decide, construct);
criterion_main!(benches);
