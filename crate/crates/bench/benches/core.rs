use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use quadlin_core::curvetorsion::fixed_classes;
use quadlin_core::delpezzo::order4_scan;
use quadlin_core::pencil::invariant_lines_abelian;
use quadlin_core::report::{fixtures::fixture, parse_job, run_report};
use quadlin_core::Permutation;

fn reports(c: &mut Criterion) {
    for name in ["example_7_5", "example_7_5_sylow", "example_7_3_diagonal"] {
        let job = parse_job(fixture(name).unwrap()).unwrap();
        c.bench_function(&format!("run_report/{name}"), |b| b.iter(|| run_report(black_box(&job)).unwrap()));
    }
}

fn stages(c: &mut Criterion) {
    let job = parse_job(fixture("example_7_5").unwrap()).unwrap();
    let group = job.group().unwrap();
    c.bench_function("invariant_lines/gamma", |b| {
        b.iter(|| invariant_lines_abelian(black_box(&job.pencil), &group).unwrap())
    });
    let sylow = parse_job(fixture("example_7_5_sylow").unwrap()).unwrap();
    c.bench_function("closure/sylow", |b| b.iter(|| sylow.group().unwrap().compute_closure(sylow.closure_cap()).unwrap().len()));
    let perms = [Permutation::parse(6, "(3456)").unwrap(), Permutation::parse(6, "(13)(25)(46)").unwrap()];
    c.bench_function("theta/g2", |b| b.iter(|| fixed_classes(2, black_box(&perms), 1).unwrap()));
    let big = [Permutation::parse(12, "(1 2 3 4 5 6 7 8 9 10 11 12)").unwrap()];
    c.bench_function("theta/g5", |b| b.iter(|| fixed_classes(5, black_box(&big), 1).unwrap()));
}

fn wd5(c: &mut Criterion) {
    let mut g = c.benchmark_group("wd5");
    g.sample_size(10);
    g.bench_function("order4_scan", |b| b.iter(order4_scan));
    g.finish();
}

criterion_group!(benches, reports, stages, wd5);
criterion_main!(benches);
