//! Benchmarks for the hot paths: density evaluation, sampling, likelihood
//! evaluation, fitting, moments and mode search.

use std::hint::black_box;

use criterion::{BenchmarkId, Criterion, Throughput};
use tlss::fit::{exact_observations, tlss_distribution};
use tlss::moments::moment_quadrature;
use tlss::sampling::sample;
use tlss::{
    find_modes, fit_mle, log_likelihood, Family, ModelKind, ModelSpec, Observation, SamplerConfig,
    SamplingMethod,
};

const TRUTH: [f64; 3] = [0.0, 1.0, 2.0];

/// Seeded TLSS draws shared by the likelihood and fitting benchmarks.
pub fn fixture(family: Family, n: usize) -> Vec<Observation> {
    let d = tlss_distribution(family, &TRUTH).unwrap();
    let cfg = SamplerConfig::new(SamplingMethod::InverseTransform, 2024, 0);
    exact_observations(&sample(&d, n, &cfg))
}

pub fn benchmarks(c: &mut Criterion) {
    let mut g = c.benchmark_group("density");
    let ys: Vec<f64> = (0..1000).map(|i| -6.0 + 0.012 * i as f64).collect();
    g.throughput(Throughput::Elements(ys.len() as u64));
    for f in Family::ALL {
        let d = tlss_distribution(f, &TRUTH).unwrap();
        g.bench_function(BenchmarkId::new("pdf", f), |b| {
            b.iter(|| {
                ys.iter()
                    .map(|&y| d.pdf(black_box(y)).unwrap())
                    .sum::<f64>()
            })
        });
        g.bench_function(BenchmarkId::new("quantile", f), |b| {
            b.iter(|| {
                (1..1000)
                    .map(|i| d.quantile(black_box(i as f64 / 1000.0)).unwrap())
                    .sum::<f64>()
            })
        });
    }
    g.finish();

    let mut g = c.benchmark_group("sample");
    g.throughput(Throughput::Elements(10_000));
    let d = tlss_distribution(Family::Normal, &TRUTH).unwrap();
    for method in [
        SamplingMethod::InverseTransform,
        SamplingMethod::AcceptReject,
    ] {
        let cfg = SamplerConfig::new(method, 1, 0);
        g.bench_function(format!("{method:?}"), |b| {
            b.iter(|| sample(&d, 10_000, &cfg))
        });
    }
    g.finish();

    let mut g = c.benchmark_group("likelihood");
    g.throughput(Throughput::Elements(5000));
    for f in Family::ALL {
        let data = fixture(f, 5000);
        let model = ModelSpec::new(ModelKind::tlss(f));
        g.bench_function(BenchmarkId::new("n5000", f), |b| {
            b.iter(|| log_likelihood(&model, black_box(&TRUTH), &data).unwrap())
        });
    }
    g.finish();

    let mut g = c.benchmark_group("fit");
    g.sample_size(10);
    for n in [100, 1000] {
        let data = fixture(Family::Normal, n);
        let model = ModelSpec::new(ModelKind::TlssNormal);
        g.bench_function(BenchmarkId::new("tlsn", n), |b| {
            b.iter(|| fit_mle(&model, &data, 2).unwrap())
        });
    }
    g.finish();

    let d = tlss_distribution(Family::Logistic, &TRUTH).unwrap();
    c.bench_function("moments/second_quadrature", |b| {
        b.iter(|| moment_quadrature(&d, 2).unwrap())
    });
    c.bench_function("modes/default_grid", |b| {
        b.iter(|| find_modes(&d, 10.0, 400).unwrap())
    });
}
