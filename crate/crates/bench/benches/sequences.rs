use std::hint::black_box;

use boxseq::{
    build_g_via_f, eval_g_closed, eval_g_combination, window_k, PiecewisePoly, SequenceCache,
    SequenceKind, Side,
};
use boxseq_bench::eval_points;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn build(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_from_scratch");
    group.sample_size(10);
    for n in [8usize, 16, 24] {
        for (label, kind) in [("f", SequenceKind::F), ("g", SequenceKind::G)] {
            group.bench_with_input(BenchmarkId::new(label, n), &n, |b, &n| {
                b.iter(|| SequenceCache::new(kind).get(black_box(n)).knots().len())
            });
        }
    }
    group.bench_function("g_via_f/12", |b| b.iter(|| build_g_via_f(black_box(12))));
    group.finish();
}

fn operators(c: &mut Criterion) {
    let g12: PiecewisePoly = SequenceCache::new(SequenceKind::G).get(12).clone();
    c.bench_function("window_k/g12", |b| {
        b.iter(|| window_k(black_box(&g12)).unwrap())
    });
}

fn pointwise(c: &mut Criterion) {
    let mut group = c.benchmark_group("eval_g_12");
    let g12 = SequenceCache::new(SequenceKind::G).get(12).clone();
    let xs = eval_points(12, 64);
    group.bench_function("piecewise", |b| {
        b.iter(|| {
            xs.iter().for_each(|x| {
                std::hint::black_box(g12.eval(x, Side::Interior).unwrap());
            })
        })
    });
    group.bench_function("closed_form", |b| {
        b.iter(|| {
            xs.iter().for_each(|x| {
                std::hint::black_box(eval_g_closed(12, x).unwrap());
            })
        })
    });
    group.bench_function("combination", |b| {
        b.iter(|| {
            xs.iter().for_each(|x| {
                std::hint::black_box(eval_g_combination(12, x).unwrap());
            })
        })
    });
    group.finish();
}

criterion_group!(benches, build, operators, pointwise);
criterion_main!(benches);
