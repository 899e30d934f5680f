use serde_json::{json, Value};
use tlss::data::{parse_dataset, write_observations};
use tlss::fit::{confidence_intervals, fit_mle, ModelKind, ModelSpec, Observation};
use tlss::modes::find_modes;
use tlss::sampling::sample;
use tlss::simstudy::{run_study, summarize, ReportFormat, StudyConfig, StudyReport};
use tlss::{Family, KernelSpec, SamplerConfig, TlssDistribution};

use crate::cli::{
    DistArgs, EvalArgs, FitArgs, FixtureArgs, Format, ModesArgs, SampleArgs, SimulateArgs,
};
use crate::output::{csv_table, envelope, jnum, num, num4, text_table, CliError, CliResult};

fn family(name: &str) -> CliResult<Family> {
    let kind: ModelKind = name.parse()?;
    kind.family()
        .ok_or_else(|| CliError::Usage(format!("`{name}` is not a TLSS model")))
}

fn distribution(a: &DistArgs) -> CliResult<TlssDistribution> {
    let k = KernelSpec::new(family(&a.model)?, a.mu, a.sigma)?;
    Ok(TlssDistribution::new(k, a.lambda)?)
}

pub fn eval(a: &EvalArgs) -> CliResult<String> {
    let d = distribution(&a.dist)?;
    let quantiles = !a.u.is_empty();
    let (header, rows): (Vec<&str>, Vec<Vec<f64>>) = if quantiles {
        let rows =
            a.u.iter()
                .map(|&u| Ok(vec![u, d.quantile(u)?]))
                .collect::<CliResult<_>>()?;
        (vec!["u", "quantile"], rows)
    } else {
        if !(a.from.is_finite() && a.to.is_finite() && a.from < a.to) {
            return Err(CliError::Usage(format!(
                "need finite --from < --to, got {} and {}",
                a.from, a.to
            )));
        }
        if a.grid < 2 {
            return Err(CliError::Usage("--grid must be at least 2".into()));
        }
        let step = (a.to - a.from) / (a.grid - 1) as f64;
        let rows = (0..a.grid)
            .map(|i| {
                let y = if i + 1 == a.grid {
                    a.to
                } else {
                    a.from + step * i as f64
                };
                Ok(vec![y, d.pdf(y)?, d.ln_pdf(y)?, d.cdf(y)?])
            })
            .collect::<CliResult<_>>()?;
        (vec!["y", "pdf", "logpdf", "cdf"], rows)
    };
    Ok(match a.format {
        Format::Csv => csv_table(&header, &strings(&rows, num)),
        Format::Text => text_table(&header, &strings(&rows, num4)),
        Format::Json => {
            let records: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let m = header.iter().zip(r).map(|(h, v)| (h.to_string(), jnum(*v)));
                    Value::Object(m.collect())
                })
                .collect();
            envelope("eval", a, json!({ "rows": records }), &[])
        }
    })
}

fn strings(rows: &[Vec<f64>], f: fn(f64) -> String) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| r.iter().map(|&v| f(v)).collect())
        .collect()
}

pub fn sample_cmd(a: &SampleArgs) -> CliResult<String> {
    let d = distribution(&a.dist)?;
    let cfg = SamplerConfig::new(a.method.into(), a.seed, a.stream);
    let values = sample(&d, a.n, &cfg);
    Ok(match a.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = values.iter().map(|&v| vec![num(v)]).collect();
            csv_table(&["value"], &rows)
        }
        Format::Text => values.iter().map(|&v| num4(v) + "\n").collect(),
        Format::Json => envelope("sample", a, json!({ "values": values }), &[]),
    })
}

pub fn fixture(a: &FixtureArgs) -> CliResult<String> {
    let d = distribution(&a.dist)?;
    let cfg = SamplerConfig::new(a.method.into(), a.seed, a.stream);
    let values = sample(&d, a.n, &cfg);
    let rows: Vec<Observation> = match a.censor_quantile {
        None => values.into_iter().map(Observation::exact).collect(),
        Some(p) => {
            if !(p > 0.0 && p < 1.0) {
                return Err(CliError::Usage(format!(
                    "--censor-quantile must lie in (0, 1), got {p}"
                )));
            }
            let t = d.quantile(p)?;
            values
                .into_iter()
                .map(|y| {
                    if y <= t {
                        Observation::left_censored(t)
                    } else {
                        Observation::exact(y)
                    }
                })
                .collect()
        }
    };
    Ok(write_observations(&rows))
}

const COMPARE_MODELS: [ModelKind; 4] = [
    ModelKind::Weibull,
    ModelKind::Lognormal,
    ModelKind::TlssNormal,
    ModelKind::TlssLogistic,
];

pub fn fit(a: &FitArgs, command: &str) -> CliResult<String> {
    if !(a.level > 0.0 && a.level < 1.0) {
        return Err(CliError::Usage(format!(
            "--level must lie in (0, 1), got {}",
            a.level
        )));
    }
    let kinds: Vec<ModelKind> = if a.model.is_empty() {
        if command == "compare" {
            COMPARE_MODELS.to_vec()
        } else {
            vec![ModelKind::TlssNormal]
        }
    } else {
        a.model
            .iter()
            .map(|m| m.parse())
            .collect::<Result<_, _>>()?
    };
    let data = parse_dataset(&a.data)?;
    let mut diagnostics = vec![format!(
        "{}: {} observations, {} left-censored",
        data.path.display(),
        data.rows.len(),
        data.censored_count()
    )];

    let mut fitted = Vec::new();
    let mut failures = Vec::new();
    for kind in kinds {
        match fit_mle(&ModelSpec::new(kind), &data.rows, a.starts) {
            Ok(fr) => {
                if !fr.converged {
                    diagnostics.push(format!("{kind}: optimizer did not converge"));
                }
                if !fr.positive_definite {
                    diagnostics.push(format!(
                        "{kind}: observed information is not positive definite"
                    ));
                }
                fitted.push(fr);
            }
            Err(e) => {
                diagnostics.push(format!("{kind}: {e}"));
                failures.push((kind, CliError::from(e)));
            }
        }
    }
    if fitted.is_empty() {
        let (_, first) = failures.remove(0);
        for d in &diagnostics {
            eprintln!("{d}");
        }
        return Err(first);
    }
    let mut ranking: Vec<(ModelKind, f64)> = fitted.iter().map(|f| (f.model.kind, f.aic)).collect();
    ranking.sort_by(|x, y| x.1.total_cmp(&y.1));

    for d in &diagnostics {
        eprintln!("{d}");
    }
    Ok(match a.format {
        Format::Json => {
            let mut models: Vec<Value> = fitted
                .iter()
                .map(|fr| {
                    let kind = fr.model.kind;
                    let intervals = confidence_intervals(fr, a.level);
                    let params: Vec<Value> = kind
                        .parameter_names()
                        .iter()
                        .zip(&fr.estimates)
                        .zip(&intervals)
                        .map(|((name, est), iv)| {
                            json!({
                                "name": name,
                                "estimate": jnum(*est),
                                "lower": iv.map(|i| jnum(i.lower)),
                                "upper": iv.map(|i| jnum(i.upper)),
                            })
                        })
                        .collect();
                    json!({
                        "model": kind.name(),
                        "label": kind.label(),
                        "parameters": params,
                        "log_likelihood": jnum(fr.max_log_likelihood),
                        "aic": jnum(fr.aic),
                        "k": fr.model.k,
                        "converged": fr.converged,
                        "positive_definite": fr.positive_definite,
                        "covariance": fr.covariance,
                        "iterations": fr.trace.iterations,
                    })
                })
                .collect();
            models.extend(failures.iter().map(|(kind, e)| {
                json!({ "model": kind.name(), "label": kind.label(), "error": e.to_string() })
            }));
            let ranking: Vec<Value> = ranking
                .iter()
                .map(|(k, aic)| json!({ "model": k.name(), "label": k.label(), "aic": jnum(*aic) }))
                .collect();
            let inputs = json!({
                "data": data.path,
                "observations": data.rows.len(),
                "censored": data.censored_count(),
                "level": a.level,
                "starts": a.starts,
            });
            envelope(
                command,
                &inputs,
                json!({ "models": models, "ranking": ranking }),
                &diagnostics,
            )
        }
        Format::Csv | Format::Text => {
            let header = [
                "model",
                "parameter",
                "estimate",
                "lower",
                "upper",
                "log_likelihood",
                "aic",
                "converged",
            ];
            let cell = if a.format == Format::Csv { num } else { num4 };
            let mut rows = Vec::new();
            for (kind, _) in &ranking {
                let fr = fitted
                    .iter()
                    .find(|f| f.model.kind == *kind)
                    .expect("ranked fit");
                let intervals = confidence_intervals(fr, a.level);
                for ((name, est), iv) in kind
                    .parameter_names()
                    .iter()
                    .zip(&fr.estimates)
                    .zip(&intervals)
                {
                    let (lo, hi) = match iv {
                        Some(i) => (cell(i.lower), cell(i.upper)),
                        None => (String::new(), String::new()),
                    };
                    rows.push(vec![
                        kind.label().to_string(),
                        name.to_string(),
                        cell(*est),
                        lo,
                        hi,
                        cell(fr.max_log_likelihood),
                        cell(fr.aic),
                        fr.converged.to_string(),
                    ]);
                }
            }
            if a.format == Format::Csv {
                csv_table(&header, &rows)
            } else {
                text_table(&header, &rows)
            }
        }
    })
}

pub fn simulate(a: &SimulateArgs) -> CliResult<String> {
    let mut report = StudyReport::default();
    for &l in &a.lambda {
        let mut cfg = StudyConfig::new([a.mu, a.sigma, l], a.n.clone(), a.seed);
        cfg.replications = a.reps;
        cfg.ci_level = a.level;
        cfg.sampler = a.method.into();
        cfg.starts = a.starts;
        report.extend(run_study(&cfg)?);
    }
    let mut diagnostics = Vec::new();
    for c in &report.cells {
        if c.divergent > 0 {
            diagnostics.push(format!(
                "lambda={} n={}: {} of {} fits did not converge and were excluded",
                c.lambda, c.n, c.divergent, c.replications
            ));
        }
    }
    for d in &diagnostics {
        eprintln!("{d}");
    }
    Ok(match a.format {
        Format::Csv => summarize(&report, ReportFormat::Csv),
        Format::Text => summarize(&report, ReportFormat::Text),
        Format::Json => {
            let cells: Value = serde_json::from_str(&summarize(&report, ReportFormat::Json))
                .expect("summary is valid json");
            envelope("simulate", a, cells, &diagnostics)
        }
    })
}

pub fn modes(a: &ModesArgs) -> CliResult<String> {
    let d = distribution(&a.dist)?;
    let found = find_modes(&d, a.radius, a.grid)?;
    let mut diagnostics = Vec::new();
    if found.is_empty() {
        diagnostics.push("no stationary point found in the search window".to_string());
        eprintln!("{}", diagnostics[0]);
    }
    let kind = |k: tlss::ModeKind| format!("{k:?}").to_lowercase();
    Ok(match a.format {
        Format::Json => {
            let rows: Vec<Value> = found
                .iter()
                .map(|m| {
                    json!({
                        "location": jnum(m.location),
                        "kind": kind(m.kind),
                        "residual": jnum(m.residual),
                        "kink": m.kink,
                    })
                })
                .collect();
            envelope("modes", a, json!({ "modes": rows }), &diagnostics)
        }
        Format::Csv | Format::Text => {
            let cell = if a.format == Format::Csv { num } else { num4 };
            let rows: Vec<Vec<String>> = found
                .iter()
                .map(|m| {
                    vec![
                        cell(m.location),
                        kind(m.kind),
                        cell(m.residual),
                        m.kink.to_string(),
                    ]
                })
                .collect();
            let header = ["location", "kind", "residual", "kink"];
            if a.format == Format::Csv {
                csv_table(&header, &rows)
            } else {
                text_table(&header, &rows)
            }
        }
    })
}
