use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use klqds::family::FamilyInstance;
use klqds_bench::random_words;
use std::hint::black_box;

const WORD_LEN: usize = 1000;

fn family_membership(c: &mut Criterion) {
    let mut group = c.benchmark_group("membership");
    group.throughput(Throughput::Elements(WORD_LEN as u64));
    for k in [2, 4, 8] {
        let inst = FamilyInstance::new(k);
        let words = random_words(k as u64, 16, WORD_LEN, 2);
        group.bench_with_input(BenchmarkId::new("window", k), &words, |b, ws| {
            b.iter(|| ws.iter().filter(|w| inst.sk.accepts(black_box(w)).unwrap()).count())
        });
        group.bench_with_input(BenchmarkId::new("min_dfa", k), &words, |b, ws| {
            b.iter(|| ws.iter().filter(|w| inst.dfa.accepts(black_box(w)).unwrap()).count())
        });
        group.bench_with_input(BenchmarkId::new("nfa_subsets", k), &words, |b, ws| {
            b.iter(|| ws.iter().filter(|w| inst.nfa.accepts(black_box(w)).unwrap()).count())
        });
    }
    group.finish();
}

fn recursive_vs_iterative(c: &mut Criterion) {
    let inst = FamilyInstance::new(4);
    let words = random_words(7, 16, 200, 2);
    let i = inst.sk.initial();
    let mut group = c.benchmark_group("extended_transition");
    group.bench_function("iterative", |b| {
        b.iter(|| {
            words.iter().for_each(|w| {
                black_box(inst.sk.run(black_box(w)).unwrap().terminal);
            })
        })
    });
    group.bench_function("recursive", |b| {
        b.iter(|| {
            words.iter().for_each(|w| {
                black_box(inst.sk.extended_delta(i, black_box(w)).unwrap());
            })
        })
    });
    group.finish();
}

criterion_group!(benches, family_membership, recursive_vs_iterative);
criterion_main!(benches);
