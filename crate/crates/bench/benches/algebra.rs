use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ordlen::euclid::smith_normal_form;
use ordlen::module::finite::{FiniteModule, HomSet, SubmoduleLattice};
use ordlen_bench::{integer_matrix, koszul_like, p_group};

fn smith(c: &mut Criterion) {
    let mut g = c.benchmark_group("smith_normal_form");
    for n in [4, 8, 12] {
        let a = integer_matrix(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| b.iter(|| smith_normal_form(a)));
    }
    g.finish();
}

fn lattices(c: &mut Criterion) {
    let mut g = c.benchmark_group("submodule_lattice");
    for (name, exps) in [("2^4", vec![1, 1, 1, 1]), ("2x4x8", vec![1, 2, 3]), ("2^5", vec![1; 5])] {
        let fm = FiniteModule::new(&p_group(2, &exps), 64).unwrap();
        g.bench_function(name, |b| b.iter(|| SubmoduleLattice::new(&fm)));
    }
    g.finish();
}

fn endomorphisms(c: &mut Criterion) {
    let fm = FiniteModule::new(&p_group(2, &[1, 1, 2]), 64).unwrap();
    let lat = SubmoduleLattice::new(&fm);
    c.bench_function("surjective_endomorphisms_2x2x4", |b| {
        b.iter(|| {
            let homs = HomSet::new(&fm, &fm, &lat);
            let mut kernels = 0usize;
            homs.for_each(|images, id| {
                if id == lat.top {
                    kernels += homs.table(images).iter().filter(|&&v| v == 0).count();
                }
            });
            kernels
        })
    });
}

fn complexes(c: &mut Criterion) {
    let cx = koszul_like(3);
    c.bench_function("acyclicity_check", |b| b.iter(|| cx.acyclicity_check(0).unwrap()));
}

criterion_group!(benches, smith, lattices, endomorphisms, complexes);
criterion_main!(benches);
