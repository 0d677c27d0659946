use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use loopdiag::enumerate::enumerate_slice;
use loopdiag::hochschild::JEvaluator;
use loopdiag::homology::homology;
use loopdiag::{compose, differential, Chain, LoopedDiagram};
use loopdiag_bench::{cacti_slice, composable_pairs, random_diagrams, shuffle_eval};

fn bench_differential(c: &mut Criterion) {
    let ds: Vec<Chain> = random_diagrams(200, 1).into_iter().map(Chain::from).collect();
    c.bench_function("differential/200 random", |b| {
        b.iter(|| ds.iter().map(|d| differential(black_box(d)).len()).sum::<usize>())
    });
}

fn bench_compose(c: &mut Criterion) {
    let pairs = composable_pairs(200, 2);
    c.bench_function("compose/200 pairs", |b| {
        b.iter(|| pairs.iter().map(|(y, x)| compose(black_box(y), black_box(x)).unwrap().len()).sum::<usize>())
    });
}

fn bench_eval(c: &mut Criterion) {
    let (a, x, h) = shuffle_eval();
    let ev = JEvaluator::new();
    c.bench_function("J/sh3 on Q[x]/x^3", |b| b.iter(|| ev.apply(&a, black_box(&x), black_box(&h)).unwrap()));
}

fn bench_cacti(c: &mut Criterion) {
    let (sig, cfg) = cacti_slice();
    let pred = |d: &LoopedDiagram| !d.is_partly_constant() && d.is_cacti().unwrap_or(false);
    let killed = |d: &LoopedDiagram| d.is_partly_constant();
    c.bench_function("cacti 1/0 -> 1/0 homology", |b| {
        b.iter(|| homology(&enumerate_slice(sig, &cfg, &pred, &killed).unwrap()).unwrap().betti())
    });
}

criterion_group!(benches, bench_differential, bench_compose, bench_eval, bench_cacti);
criterion_main!(benches);
