//! Acceptance criteria 1-8. Run with `cargo test -p tlss-verify --test acceptance`.
//!
//! Prints one PASS/FAIL/SKIP line per criterion, then the failing checks.
//! Exits non-zero when any criterion fails.

use std::path::PathBuf;

use tlss::fit::{exact_observations, tlss_distribution};
use tlss::modes::{density_slope, find_modes, ModeKind};
use tlss::moments::{abs_moment, moment_quadrature, moment_series};
use tlss::quadrature::integrate_unit_pair_split;
use tlss::sampling::{acceptance_rate, ks_statistic, sample, stream_rng, uniform_open};
use tlss::simstudy::{run_study, summarize, ReportFormat, StudyConfig};
use tlss::{
    fit_mle, parse_dataset, sample_rejection, tail_ratio_constants, Family, KernelSpec, ModelKind,
    ModelSpec, Observation, SamplerConfig, SamplingMethod, TlssDistribution,
};
use tlss_verify::{Criterion, Status};

const LAMBDAS: [f64; 6] = [-5.0, -1.0, -0.1, 0.1, 1.0, 5.0];

fn kernel(f: Family) -> KernelSpec {
    // off-centre and off-unit so location/scale handling is exercised
    KernelSpec::new(f, 0.3, 1.7).unwrap()
}

fn tlss(k: KernelSpec, lambda: f64) -> TlssDistribution {
    TlssDistribution::new(k, lambda).unwrap()
}

/// Integral of the density over the line, mapped onto (0, 1) through the
/// Cauchy quantile so that every kernel's tails are covered. Split at the
/// kernel location, where the Laplace density has its kink.
fn total_mass(d: &TlssDistribution) -> f64 {
    let (m, s) = (d.kernel().location(), d.kernel().scale());
    let pi = std::f64::consts::PI;
    integrate_unit_pair_split(
        |u, v| {
            let t = if u < 0.5 {
                -1.0 / (pi * u).tan()
            } else {
                1.0 / (pi * v).tan()
            };
            let y = m + s * t;
            if !y.is_finite() {
                return 0.0;
            }
            let p = d.pdf(y).unwrap();
            if p == 0.0 {
                0.0
            } else {
                // (1 + t^2) overflows before p t^2 does
                pi * s * (p + (p * t) * t)
            }
        },
        0.5,
        1e-12,
    )
    .unwrap()
    .value
}

fn ac1() -> Criterion {
    let mut c = Criterion::new("AC1", "analytic identities", 10);
    let us: Vec<f64> = (1..100)
        .map(|i| i as f64 / 100.0)
        .chain([1e-12, 1e-8, 1e-4, 1.0 - 1e-4, 1.0 - 1e-8])
        .collect();
    let ys: Vec<f64> = (-40..=40).map(|i| 0.3 + 0.25 * i as f64).collect();
    let (mut mass_err, mut trip_err, mut refl_err, mut limit_err) =
        (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut refl_at = (Family::Normal, 0.0, 0.0);
    for f in Family::ALL {
        let k = kernel(f);
        for l in LAMBDAS {
            let d = tlss(k, l);
            let mirror = tlss(KernelSpec::new(f, -0.3, 1.7).unwrap(), -l);
            mass_err = mass_err.max((total_mass(&d) - 1.0).abs());
            for &u in &us {
                let y = d.quantile(u).unwrap();
                trip_err = trip_err.max((d.cdf(y).unwrap() - u).abs());
            }
            // reflection: location mirrored with y so that the identity is
            // the one about the origin of the standardized variable
            for &y in &ys {
                let e = (d.pdf(y).unwrap() - mirror.pdf(-y).unwrap()).abs();
                if e > refl_err {
                    refl_err = e;
                    refl_at = (f, l, y);
                }
            }
        }
        for small in [1e-5, -1e-5] {
            let d = tlss(k, small);
            for &y in &ys {
                let a = d.pdf(y).unwrap();
                let b = k.pdf(y).unwrap();
                limit_err = limit_err.max((a - b).abs());
            }
        }
    }
    c.check(
        "normalization",
        mass_err < 1e-8,
        format!("max |mass - 1| = {mass_err:.3e}"),
    );
    c.check(
        "cdf/quantile round trip",
        trip_err < 1e-10,
        format!("max error {trip_err:.3e}"),
    );
    c.check(
        "reflection f(y; lambda) = f(-y; -lambda)",
        refl_err < 1e-12,
        format!(
            "max difference {refl_err:.3e} ({} kernel, lambda = {}, y = {}); the density is even in lambda, so f(-y; -lambda) = f(-y; lambda)",
            refl_at.0, refl_at.1, refl_at.2
        ),
    );
    c.check(
        "lambda -> 0 limit",
        limit_err < 1e-6,
        format!("max |f_Y - f_X| = {limit_err:.3e}"),
    );
    c
}

/// Argument of the logarithm in the quantile form that uses coth(lambda/2)
/// where the inverse of the cdf needs tanh(lambda/2).
fn coth_quantile_log_argument(u: f64, lambda: f64) -> f64 {
    let c = (1.0 + (-lambda).exp()) / (1.0 - (-lambda).exp());
    (1.0 - u * c) / (u * c)
}

fn ac2() -> Criterion {
    let mut c = Criterion::new("AC2", "erratum verification", 10);
    let arg = coth_quantile_log_argument(0.5, 1.0);
    c.check(
        "coth quantile form has an invalid log argument at lambda=1, u=0.5",
        arg <= 0.0 && arg.ln().is_nan(),
        format!("argument {arg}"),
    );
    let d = tlss(KernelSpec::standard(Family::Normal), 1.0);
    let y = d.quantile(0.5).unwrap();
    c.check(
        "corrected quantile round trip at lambda=1, u=0.5",
        (d.cdf(y).unwrap() - 0.5).abs() < 1e-12,
        format!("cdf(quantile(0.5)) = {}", d.cdf(y).unwrap()),
    );

    for f in Family::ALL {
        let k = kernel(f);
        for l in [-5.0, -1.0, 1.0, 5.0] {
            let d = tlss(k, l);
            let (left, right) = tail_ratio_constants(l);
            let lo = k.quantile(1e-10).unwrap();
            let hi = k.quantile(1.0 - 1e-10).unwrap();
            let rl = d.pdf(lo).unwrap() / k.pdf(lo).unwrap();
            let rr = d.pdf(hi).unwrap() / k.pdf(hi).unwrap();
            let want_l = l / (2.0 * (l / 2.0).tanh());
            let want_r = l / l.sinh();
            c.check(
                format!("tail ratios {f} lambda={l}"),
                ((rl - want_l) / want_l).abs() < 1e-4
                    && ((rr - want_r) / want_r).abs() < 1e-4
                    && (left - want_l).abs() < 1e-12
                    && (right - want_r).abs() < 1e-12,
                format!("left {rl} vs {want_l}, right {rr} vs {want_r}"),
            );
        }
    }

    let n = 10_000;
    let crit = 1.63 / (n as f64).sqrt();
    for f in Family::ALL {
        for l in [-3.0, 1.0, 3.0] {
            let d = tlss(kernel(f), l);
            let cfg = SamplerConfig::new(SamplingMethod::AcceptReject, 31, 0);
            let (v, _) = sample_rejection(&d, n, &cfg);
            let ks = ks_statistic(&v, |x| d.cdf(x).unwrap());
            c.check(
                format!("rejection KS {f} lambda={l}"),
                ks < crit,
                format!("D = {ks:.5}, critical {crit:.5}"),
            );
        }
    }
    for l in [-3.0, 1.0, 3.0] {
        let d = tlss(KernelSpec::standard(Family::Normal), l);
        let rate = acceptance_rate(l);
        let target = (1_000_000.0 * rate).round() as usize;
        let (_, proposals) = sample_rejection(
            &d,
            target,
            &SamplerConfig::new(SamplingMethod::AcceptReject, 7, 1),
        );
        let p = proposals as f64;
        let observed = target as f64 / p;
        let se = (rate * (1.0 - rate) / p).sqrt();
        c.check(
            format!("acceptance rate lambda={l}"),
            (observed - rate).abs() < 3.0 * se,
            format!("{observed:.6} vs {rate:.6} (se {se:.2e}, {proposals} proposals)"),
        );
    }
    c
}

fn ac3() -> Criterion {
    let mut c = Criterion::new("AC3", "moments", 30);
    for f in [Family::Normal, Family::Logistic] {
        for l in [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0] {
            let d = tlss(KernelSpec::new(f, 0.0, 1.0).unwrap(), l);
            for r in [1, 2] {
                let q = moment_quadrature(&d, r).unwrap();
                let s = moment_series(&d, r, 60, 60).unwrap().value;
                c.check(
                    format!("series vs quadrature {f} lambda={l} r={r}"),
                    (q - s).abs() < 1e-4,
                    format!("quadrature {q}, series {s}"),
                );
            }
        }
    }
    for f in [Family::Normal, Family::Laplace, Family::Logistic] {
        let k = kernel(f);
        for l in LAMBDAS {
            let d = tlss(k, l);
            for r in [1, 2, 3] {
                let lhs = abs_moment(&d, r).unwrap();
                let rhs = l / (2.0 * (l / 2.0).tanh()) * k.abs_moment(r).unwrap();
                c.check(
                    format!("absolute moment bound {f} lambda={l} r={r}"),
                    lhs <= rhs + 1e-8,
                    format!("E|Y|^r = {lhs}, bound {rhs}"),
                );
            }
        }
    }
    c
}

fn ac4() -> Criterion {
    let mut c = Criterion::new("AC4", "modes", 10);
    let mut located = Vec::new();
    for l in [0.5, 1.0, 2.0, 5.0] {
        let d = tlss(KernelSpec::standard(Family::Normal), l);
        let modes = find_modes(&d, 10.0, 400).unwrap();
        let maxima: Vec<_> = modes
            .iter()
            .filter(|m| m.kind == ModeKind::Maximum)
            .collect();
        let ok = maxima.len() == 1
            && maxima[0].location < 0.0
            && density_slope(&d, maxima[0].location).abs() < 1e-8;
        c.check(
            format!("lambda={l}: one maximum, y < 0, flat"),
            ok,
            format!("{modes:?}"),
        );
        if let Some(m) = maxima.first() {
            located.push((l, m.location));
        }
    }
    for (l, y) in located {
        let d = tlss(KernelSpec::standard(Family::Normal), -l);
        let modes = find_modes(&d, 10.0, 400).unwrap();
        let maxima: Vec<_> = modes
            .iter()
            .filter(|m| m.kind == ModeKind::Maximum)
            .collect();
        let ok = maxima.len() == 1
            && maxima[0].location > 0.0
            && (maxima[0].location + y).abs() < 1e-9
            && density_slope(&d, maxima[0].location).abs() < 1e-8;
        c.check(
            format!("lambda={}: mirrored maximum at {}", -l, -y),
            ok,
            format!(
                "found {:?}; the density is even in lambda, so the mode stays at {y}",
                maxima.iter().map(|m| m.location).collect::<Vec<_>>()
            ),
        );
    }
    c
}

struct TableRow {
    lambda: f64,
    n: usize,
    bias_mu: f64,
    mse: [f64; 3],
    cp_sigma: f64,
    aw_mu: f64,
}

const TABLE: [TableRow; 4] = [
    TableRow {
        lambda: 1.0,
        n: 50,
        bias_mu: 0.131,
        mse: [0.143, 0.019, 3.263],
        cp_sigma: 0.952,
        aw_mu: 1.377,
    },
    TableRow {
        lambda: 1.0,
        n: 100,
        bias_mu: 0.126,
        mse: [0.122, 0.013, 2.798],
        cp_sigma: 0.959,
        aw_mu: 1.137,
    },
    TableRow {
        lambda: -1.0,
        n: 50,
        bias_mu: 0.130,
        mse: [0.145, 0.019, 3.216],
        cp_sigma: 0.949,
        aw_mu: 1.371,
    },
    TableRow {
        lambda: -1.0,
        n: 100,
        bias_mu: 0.126,
        mse: [0.126, 0.014, 2.842],
        cp_sigma: 0.955,
        aw_mu: 1.117,
    },
];

fn ac5() -> Criterion {
    let mut c = Criterion::new("AC5", "simulation study at 1000 replications", 600);
    let mut lambda_bias = Vec::new();
    for l in [1.0, -1.0] {
        let mut cfg = StudyConfig::new([0.0, 1.0, l], vec![50, 100], 20_160_601);
        cfg.replications = 1000;
        let report = run_study(&cfg).unwrap();
        println!("{}", summarize(&report, ReportFormat::Text).trim_end());
        for cell in &report.cells {
            let row = TABLE
                .iter()
                .find(|r| r.lambda == l && r.n == cell.n)
                .unwrap();
            let tag = format!("lambda={l} n={}", cell.n);
            c.near(format!("{tag} bias(mu)"), cell.bias[0], row.bias_mu, 0.05);
            for (p, name) in ["mu", "sigma", "lambda"].iter().enumerate() {
                c.near(
                    format!("{tag} MSE({name})"),
                    cell.mse[p],
                    row.mse[p],
                    0.3 * row.mse[p],
                );
            }
            c.near(
                format!("{tag} CP(sigma)"),
                cell.cp[1].unwrap_or(f64::NAN),
                row.cp_sigma,
                0.03,
            );
            c.near(
                format!("{tag} AW(mu)"),
                cell.aw[0].unwrap_or(f64::NAN),
                row.aw_mu,
                0.1 * row.aw_mu,
            );
            if cell.n == 50 {
                lambda_bias.push(cell.bias[2]);
            }
        }
    }
    c.check(
        "bias(lambda) has opposite signs for lambda = 1 and -1",
        lambda_bias.len() == 2 && lambda_bias[0] * lambda_bias[1] < 0.0,
        format!("{lambda_bias:?}"),
    );
    c
}

fn data_dir() -> Option<PathBuf> {
    std::env::var_os(tlss::data::DATA_DIR_ENV).map(PathBuf::from)
}

fn ac6() -> Criterion {
    let mut c = Criterion::new("AC6", "data-fit reproduction", 120);
    let Some(dir) = data_dir() else {
        c.skip("TLSS_DATA_DIR is not set; criterion 7 substitutes");
        return c;
    };
    let mercury = dir.join("mercury.csv");
    let ammonium = dir.join("ammonium.csv");
    if !mercury.exists() || !ammonium.exists() {
        c.skip(format!(
            "{} and {} are required; criterion 7 substitutes",
            mercury.display(),
            ammonium.display()
        ));
        return c;
    }

    let rows = parse_dataset(&mercury).unwrap().rows;
    let ln = fit_mle(&ModelSpec::new(ModelKind::Lognormal), &rows, 1).unwrap();
    c.near(
        "mercury lognormal log-likelihood",
        ln.max_log_likelihood,
        -114.17,
        0.02,
    );
    c.near("mercury lognormal AIC", ln.aic, 232.34, 0.05);
    let tn = fit_mle(&ModelSpec::new(ModelKind::TlssNormal), &rows, 4).unwrap();
    c.near(
        "mercury TLSN log-likelihood",
        tn.max_log_likelihood,
        -82.07,
        0.02,
    );
    c.near("mercury TLSN AIC", tn.aic, 170.14, 0.05);
    let want = [1.5585, 0.6221, 4.6496];
    let cis = [(0.91627, 2.20143), (0.38518, 0.85916), (-0.30235, 9.60490)];
    for i in 0..3 {
        c.near(
            format!("mercury TLSN estimate {i}"),
            tn.estimates[i],
            want[i],
            0.01,
        );
        match tn.intervals[i] {
            Some(iv) => {
                c.near(
                    format!("mercury TLSN CI {i} lower"),
                    iv.lower,
                    cis[i].0,
                    0.01,
                );
                c.near(
                    format!("mercury TLSN CI {i} upper"),
                    iv.upper,
                    cis[i].1,
                    0.01,
                );
            }
            None => c.check(format!("mercury TLSN CI {i}"), false, "not computable"),
        }
    }

    let rows = parse_dataset(&ammonium).unwrap().rows;
    let table = [
        (ModelKind::Weibull, 178.5678),
        (ModelKind::Lognormal, 180.3288),
        (ModelKind::TlssNormal, 153.7112),
        (ModelKind::TlssLogistic, 160.4412),
    ];
    let mut aics = Vec::new();
    for (kind, want) in table {
        let fr = fit_mle(&ModelSpec::new(kind), &rows, 4).unwrap();
        c.near(format!("ammonium {kind} AIC"), fr.aic, want, 0.5);
        aics.push((kind, fr.aic));
    }
    aics.sort_by(|a, b| a.1.total_cmp(&b.1));
    let order: Vec<ModelKind> = aics.iter().map(|a| a.0).collect();
    c.check(
        "ammonium AIC ranking",
        order
            == [
                ModelKind::TlssNormal,
                ModelKind::TlssLogistic,
                ModelKind::Weibull,
                ModelKind::Lognormal,
            ],
        format!("{order:?}"),
    );
    c
}

fn within(fr: &tlss::FitResult, truth: &[f64], k: f64) -> bool {
    let Some(cov) = fr.covariance.as_ref() else {
        return false;
    };
    truth.iter().enumerate().all(|(i, t)| {
        let v = cov[i][i];
        v > 0.0 && (fr.estimates[i] - t).abs() <= k * v.sqrt()
    })
}

fn ac7() -> Criterion {
    let mut c = Criterion::new("AC7", "self-consistency at n=5000", 120);
    let truth = [1.0, 2.0, 2.0];
    for f in Family::ALL {
        let d = tlss_distribution(f, &truth).unwrap();
        let model = ModelSpec::new(ModelKind::tlss(f));
        let hits = (0..100u64)
            .filter(|&rep| {
                let cfg = SamplerConfig::new(SamplingMethod::InverseTransform, 5000 + rep, 0);
                let data = exact_observations(&sample(&d, 5000, &cfg));
                fit_mle(&model, &data, 1).is_ok_and(|fr| within(&fr, &truth, 3.0))
            })
            .count();
        c.check(
            format!("{f}: within 3 se"),
            hits >= 95,
            format!("{hits}/100 repeats"),
        );

        let threshold = d.quantile(0.4).unwrap();
        let mut held = 0;
        let repeats = 20u64;
        for rep in 0..repeats {
            let cfg = SamplerConfig::new(SamplingMethod::InverseTransform, 9000 + rep, 0);
            let data: Vec<Observation> = sample(&d, 5000, &cfg)
                .into_iter()
                .map(|y| {
                    if y <= threshold {
                        Observation::left_censored(threshold)
                    } else {
                        Observation::exact(y)
                    }
                })
                .collect();
            if fit_mle(&model, &data, 1).is_ok_and(|fr| within(&fr, &truth, 4.0)) {
                held += 1;
            }
        }
        c.check(
            format!("{f}: censored fits within 4 se"),
            held == repeats,
            format!("{held}/{repeats} repeats"),
        );
    }
    c
}

fn ac8() -> Criterion {
    let mut c = Criterion::new("AC8", "determinism", 60);
    let d = tlss(kernel(Family::Logistic), 2.5);
    for method in [
        SamplingMethod::InverseTransform,
        SamplingMethod::AcceptReject,
    ] {
        let cfg = SamplerConfig::new(method, 42, 3);
        let a: Vec<u64> = sample(&d, 2000, &cfg).iter().map(|v| v.to_bits()).collect();
        let b: Vec<u64> = sample(&d, 2000, &cfg).iter().map(|v| v.to_bits()).collect();
        c.check(format!("sample {method:?} replays bit for bit"), a == b, "");
    }
    let mut r1 = stream_rng(1, 2);
    let mut r2 = stream_rng(1, 2);
    c.check(
        "uniform stream replays",
        (0..1000).all(|_| uniform_open(&mut r1).to_bits() == uniform_open(&mut r2).to_bits()),
        "",
    );

    let mut cfg = StudyConfig::new([0.0, 1.0, 1.0], vec![30, 60], 99);
    cfg.replications = 40;
    let serial = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let wide = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap();
    let a = summarize(
        &serial.install(|| run_study(&cfg)).unwrap(),
        ReportFormat::Csv,
    );
    let b = summarize(
        &wide.install(|| run_study(&cfg)).unwrap(),
        ReportFormat::Csv,
    );
    let again = summarize(&run_study(&cfg).unwrap(), ReportFormat::Csv);
    c.check(
        "simulate is byte-identical across thread counts",
        a == b,
        "",
    );
    c.check(
        "simulate is byte-identical across invocations",
        a == again,
        "",
    );
    c
}

fn main() {
    // the default harness flags (e.g. --nocapture) are accepted and ignored
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    type Run = fn() -> Criterion;
    let all: [(&str, Run); 8] = [
        ("AC1", ac1),
        ("AC2", ac2),
        ("AC3", ac3),
        ("AC4", ac4),
        ("AC5", ac5),
        ("AC6", ac6),
        ("AC7", ac7),
        ("AC8", ac8),
    ];
    let mut failed = Vec::new();
    for (id, run) in all {
        if filter
            .as_deref()
            .is_some_and(|f| !id.eq_ignore_ascii_case(f))
        {
            continue;
        }
        let mut c = run();
        c.finish();
        println!("{}", c.render());
        if c.status() == Status::Fail {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria passed or skipped");
    } else {
        println!("acceptance: failed {}", failed.join(", "));
        std::process::exit(1);
    }
}
