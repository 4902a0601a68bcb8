use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use specular_bench::{pairs, starts};
use specular_core::specular::DerivativeMode;
use specular_core::verification::{check_subgradient_inequality, Grid};
use specular_core::{isgm_run, sgm_run, specular_from_pair, RunConfig, StepSchedule};

fn a_formula(c: &mut Criterion) {
    let ps = pairs(10_000, 42);
    c.bench_function("specular_from_pair/10k", |b| {
        b.iter(|| {
            ps.iter()
                .map(|&p| specular_from_pair(black_box(p)))
                .sum::<f64>()
        })
    });
}

fn solvers(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve_30_iters");
    for (f, x0) in starts(42) {
        let cfg = RunConfig::new(x0).with_max_iters(30);
        g.bench_with_input(BenchmarkId::new("isgm", f.name()), &f, |b, f| {
            b.iter(|| isgm_run(f, black_box(cfg)).unwrap())
        });
        let shor = cfg.with_schedule(StepSchedule::ShorHalving {
            t0: f.domain().width(),
        });
        g.bench_with_input(BenchmarkId::new("sgm_shor", f.name()), &f, |b, f| {
            b.iter(|| sgm_run(f, black_box(shor)).unwrap())
        });
    }
    g.finish();
}

fn subgradient_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("subgradient_inequality_201");
    g.sample_size(20);
    for (f, _) in starts(42) {
        let grid = Grid::for_domain(f.domain(), 201).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(f.name()), &f, |b, f| {
            b.iter(|| check_subgradient_inequality(f, grid, DerivativeMode::analytic()).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, a_formula, solvers, subgradient_sweep);
criterion_main!(benches);
