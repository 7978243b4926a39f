use std::hint::black_box;

use cabcoh::exactalg::factor_fp;
use cabcoh::generic::{generic_reduce_with, GenericFamily};
use cabcoh::reduction::Reducer;
use cabcoh::valuation::{exact_coefficient, exact_coefficient_naive, mset, nu_brute, nu_count, solve_jr};
use cabcoh::BigInt;
use cabcoh_bench::{dense_poly, monomial, superelliptic};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn counting(c: &mut Criterion) {
    let rc = solve_jr(13, 3, 5).unwrap();
    let ms = mset(13, 3, 5, &rc, 400).unwrap();
    let mut g = c.benchmark_group("nu");
    for d in [10usize, 100, 400] {
        let m = ms[d - 1];
        g.bench_with_input(BenchmarkId::new("count", d), &m, |bch, &m| {
            bch.iter(|| nu_count(13, 3, 5, &rc, black_box(m)).unwrap())
        });
    }
    let rc = solve_jr(5, 2, 3).unwrap();
    g.bench_function("brute_N=3e5", |bch| bch.iter(|| nu_brute(5, 2, 3, &rc, black_box(9), u64::MAX).unwrap()));
    g.finish();
}

fn products(c: &mut Criterion) {
    let rc = solve_jr(5, 2, 3).unwrap();
    let one = BigInt::from(1);
    let mut g = c.benchmark_group("exact_coefficient");
    g.sample_size(10);
    for n in [519u64, 13_019] {
        g.bench_with_input(BenchmarkId::new("sieve", n), &n, |bch, &n| {
            bch.iter(|| exact_coefficient(2, 3, &one, &rc, black_box(n)).unwrap())
        });
    }
    g.bench_function("naive/519", |bch| bch.iter(|| exact_coefficient_naive(2, 3, &one, &rc, black_box(519))));
    g.finish();
}

fn reduction(c: &mut Criterion) {
    let curve = superelliptic(5, 2, 3, 1);
    let reducer = Reducer::for_curve(&curve);
    let mut g = c.benchmark_group("reduce_to_basis");
    g.sample_size(10);
    for i in [60u32, 3120] {
        let form = monomial(i, 1);
        g.bench_with_input(BenchmarkId::new("chain", i), &form, |bch, f| {
            bch.iter(|| reducer.reduce_to_basis(f, false).unwrap())
        });
    }
    let form = monomial(60, 1);
    g.bench_function("chain_certified/60", |bch| bch.iter(|| reducer.reduce_to_basis(&form, true).unwrap()));
    let fam = GenericFamily::new(5, 2, 3).unwrap();
    g.bench_function("generic/15", |bch| bch.iter(|| generic_reduce_with(&fam, black_box(15), 1, 15).unwrap()));
    g.finish();
}

fn factorization(c: &mut Criterion) {
    let mut g = c.benchmark_group("factor_fp");
    for n in [16usize, 48] {
        let f = dense_poly(101, n);
        g.bench_with_input(BenchmarkId::new("p=101", n), &f, |bch, f| bch.iter(|| factor_fp(f, 101, 7).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, counting, products, reduction, factorization);
criterion_main!(benches);
