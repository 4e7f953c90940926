use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use statechange::evolution::{equal_weight_state, find_orthogonal_times};
use statechange::experiments::double_interval_problem;
use statechange::lp::{solve_lp_with, PricingRule, SolverOptions};
use statechange::motion::frame_count;
use statechange::{build_lp, minimize_energy, SpectralSense, ToleranceProfile};
use statechange_bench::sweep_problems;

fn equal_and_family(c: &mut Criterion) {
    let tol = ToleranceProfile::default();
    let mut g = c.benchmark_group("family");
    for n in [4usize, 12, 19] {
        let p = double_interval_problem(n);
        g.bench_with_input(BenchmarkId::new("double", n), &p, |b, p| b.iter(|| minimize_energy(p, &tol).unwrap()));
    }
    g.finish();
}

fn sweep_shapes(c: &mut Criterion) {
    let tol = ToleranceProfile::default();
    let mut g = c.benchmark_group("sweep_shape");
    g.sample_size(10);
    for (n, nd) in [(6usize, 2usize), (12, 3), (20, 4)] {
        let problems = sweep_problems(n, nd, 4);
        g.bench_with_input(BenchmarkId::new(format!("n{n}"), nd), &problems, |b, ps| {
            b.iter(|| ps.iter().map(|p| minimize_energy(p, &tol).unwrap().e_min).sum::<f64>())
        });
    }
    g.finish();
}

fn pricing(c: &mut Criterion) {
    let tol = ToleranceProfile::default();
    let lp = build_lp(&sweep_problems(10, 3, 1)[0], SpectralSense::FromBelow);
    let mut g = c.benchmark_group("pricing");
    g.sample_size(10);
    for rule in [PricingRule::Devex, PricingRule::Dantzig] {
        let opts = SolverOptions { pricing: rule, ..SolverOptions::from_tolerances(&tol) };
        g.bench_function(format!("{rule:?}"), |b| b.iter(|| solve_lp_with(&lp, &opts).unwrap()));
    }
    g.finish();
}

fn zeros_and_frames(c: &mut Criterion) {
    let tol = ToleranceProfile::default();
    let w = equal_weight_state(20, 100).unwrap();
    c.bench_function("orthogonal_times_n20_t100", |b| b.iter(|| find_orthogonal_times(&w, 100, &tol)));
    c.bench_function("frame_count", |b| b.iter(|| frame_count(1.3, 0.77, 2.0).unwrap()));
}

criterion_group!(benches, equal_and_family, sweep_shapes, pricing, zeros_and_frames);
criterion_main!(benches);
