use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use ordlen::ordinal::{shuffle_sum_oracle, shuffle_sum_recursive};
use ordlen::Ordinal;
use ordlen_bench::{boolean_lattice, ordinals};

fn shuffle_sums(c: &mut Criterion) {
    let all = ordinals(2, 3);
    let mut g = c.benchmark_group("shuffle_sum");
    g.bench_function("closed_form", |b| {
        b.iter(|| {
            all.iter().zip(all.iter().rev()).for_each(|(x, y)| {
                black_box(x.shuffle_sum(y));
            })
        })
    });
    g.bench_function("recursive", |b| {
        b.iter(|| {
            all.iter().zip(all.iter().rev()).for_each(|(x, y)| {
                black_box(shuffle_sum_recursive(x, y));
            })
        })
    });
    let (x, y): (Ordinal, Ordinal) = ("2*w^2+w+3".parse().unwrap(), "w^2+2*w+2".parse().unwrap());
    g.bench_function("interleavings", |b| b.iter(|| shuffle_sum_oracle(black_box(&x), black_box(&y), 24)));
    g.finish();
}

fn parsing(c: &mut Criterion) {
    c.bench_function("parse", |b| b.iter(|| black_box("3*w^4+w^2+2*w+7").parse::<Ordinal>()));
}

fn poset_ranks(c: &mut Criterion) {
    let mut g = c.benchmark_group("rank_all");
    for n in [4, 6, 8] {
        let p = boolean_lattice(n);
        g.bench_with_input(BenchmarkId::from_parameter(1 << n), &p, |b, p| b.iter(|| p.rank_all()));
    }
    g.finish();
}

criterion_group!(benches, shuffle_sums, parsing, poset_ranks);
criterion_main!(benches);
