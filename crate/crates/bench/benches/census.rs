use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use t3ech_core::{bourgeois_census, numeric_flow_oracle, rat, ToricContactForm};

fn census(c: &mut Criterion) {
    let mut group = c.benchmark_group("bourgeois_census");
    let lambda0 = ToricContactForm::lambda0();
    let ellipse = ToricContactForm::ellipse(rat(2, 1), rat(3, 1)).unwrap();
    for cutoff in [20.0, 60.0, 150.0] {
        group.bench_with_input(BenchmarkId::new("lambda0", cutoff), &cutoff, |b, &l| {
            b.iter(|| bourgeois_census(black_box(&lambda0), l).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("ellipse_2_3", cutoff), &cutoff, |b, &l| {
            b.iter(|| bourgeois_census(black_box(&ellipse), l).unwrap())
        });
    }
    group.finish();
}

fn certificate(c: &mut Criterion) {
    let lambda0 = ToricContactForm::lambda0();
    let mut group = c.benchmark_group("contact_certificate");
    for n in [256, 4096, 65536] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| lambda0.regridded(n).unwrap()));
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let lambda0 = ToricContactForm::lambda0();
    c.bench_function("flow_oracle/lambda0_L20", |b| {
        b.iter(|| numeric_flow_oracle(black_box(&lambda0), 0.3, 20.0).unwrap())
    });
}

criterion_group!(benches, census, certificate, oracle);
criterion_main!(benches);
