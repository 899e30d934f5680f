//! Monte Carlo study of the TLSN maximum likelihood estimators: bias, MSE,
//! Wald interval coverage and width, and the share of replications whose
//! intervals cannot be computed.
//!
//! Replication `i` draws from stream `i` of the master seed, so results do
//! not depend on how replications are scheduled across threads. Outcomes are
//! collected in index order and reduced serially.
//!
//! Fits report lambda >= 0 because the likelihood is even in lambda; each
//! estimate (and its interval) is mapped to the sign of the true lambda
//! before it is compared with the truth.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, TlssError};
use crate::fit::{
    confidence_intervals, exact_observations, fit_mle, tlss_distribution, Interval, ModelKind,
    ModelSpec,
};
use crate::kernel::Family;
use crate::sampling::{sample, SamplerConfig, SamplingMethod};

pub const DEFAULT_REPLICATIONS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    /// (mu, sigma, lambda)
    pub true_params: [f64; 3],
    pub sample_sizes: Vec<usize>,
    pub replications: usize,
    pub ci_level: f64,
    pub seed: u64,
    pub sampler: SamplingMethod,
    /// Number of lambda starting values per fit.
    pub starts: usize,
}

impl StudyConfig {
    pub fn new(true_params: [f64; 3], sample_sizes: Vec<usize>, seed: u64) -> Self {
        StudyConfig {
            true_params,
            sample_sizes,
            replications: DEFAULT_REPLICATIONS,
            ci_level: 0.95,
            seed,
            sampler: SamplingMethod::InverseTransform,
            starts: 2,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(TlssError::domain("replications must be >= 1"));
        }
        if !(self.ci_level > 0.0 && self.ci_level < 1.0) {
            return Err(TlssError::domain(format!(
                "ci_level must lie in (0, 1), got {}",
                self.ci_level
            )));
        }
        if self.sample_sizes.iter().any(|&n| n < 2) {
            return Err(TlssError::domain("sample sizes must be >= 2"));
        }
        tlss_distribution(Family::Normal, &self.true_params).map(|_| ())
    }
}

/// One (lambda, n) row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyCell {
    pub lambda: f64,
    pub n: usize,
    pub replications: usize,
    /// Replications whose fit converged; bias, MSE, CP and AW use these.
    pub replications_completed: usize,
    pub divergent: usize,
    /// Per parameter (mu, sigma, lambda).
    pub bias: [f64; 3],
    pub mse: [f64; 3],
    /// Coverage over replications with a computable interval.
    pub cp: [Option<f64>; 3],
    pub aw: [Option<f64>; 3],
    /// Percent of completed replications with at least one non-computable
    /// interval.
    pub pct_ci_failed: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct StudyReport {
    pub cells: Vec<StudyCell>,
}

impl StudyReport {
    pub fn extend(&mut self, other: StudyReport) {
        self.cells.extend(other.cells);
    }
}

struct Outcome {
    estimates: [f64; 3],
    intervals: [Option<Interval>; 3],
}

fn replicate(cfg: &StudyConfig, n: usize, index: usize) -> Option<Outcome> {
    let d = tlss_distribution(Family::Normal, &cfg.true_params).ok()?;
    let sampler = SamplerConfig::new(cfg.sampler, cfg.seed, index as u64);
    let data = exact_observations(&sample(&d, n, &sampler));
    let model = ModelSpec::new(ModelKind::TlssNormal);
    let fr = fit_mle(&model, &data, cfg.starts).ok()?;
    if !fr.converged {
        return None;
    }
    let ivs = confidence_intervals(&fr, cfg.ci_level);
    let sign = if cfg.true_params[2] < 0.0 { -1.0 } else { 1.0 };
    let mut estimates = [fr.estimates[0], fr.estimates[1], fr.estimates[2]];
    estimates[2] *= sign;
    let mut intervals = [ivs[0], ivs[1], ivs[2]];
    if sign < 0.0 {
        intervals[2] = intervals[2].map(|iv| Interval {
            lower: -iv.upper,
            upper: -iv.lower,
        });
    }
    Some(Outcome {
        estimates,
        intervals,
    })
}

fn summarize_cell(cfg: &StudyConfig, n: usize, outcomes: &[Option<Outcome>]) -> StudyCell {
    let truth = cfg.true_params;
    let done: Vec<&Outcome> = outcomes.iter().flatten().collect();
    let m = done.len() as f64;
    let mut bias = [f64::NAN; 3];
    let mut mse = [f64::NAN; 3];
    let mut cp = [None; 3];
    let mut aw = [None; 3];
    for p in 0..3 {
        if !done.is_empty() {
            let err: Vec<f64> = done.iter().map(|o| o.estimates[p] - truth[p]).collect();
            bias[p] = err.iter().sum::<f64>() / m;
            mse[p] = err.iter().map(|e| e * e).sum::<f64>() / m;
        }
        let ivs: Vec<&Interval> = done
            .iter()
            .filter_map(|o| o.intervals[p].as_ref())
            .collect();
        if !ivs.is_empty() {
            let k = ivs.len() as f64;
            cp[p] = Some(ivs.iter().filter(|iv| iv.contains(truth[p])).count() as f64 / k);
            aw[p] = Some(ivs.iter().map(|iv| iv.width()).sum::<f64>() / k);
        }
    }
    let failed = done
        .iter()
        .filter(|o| o.intervals.iter().any(Option::is_none))
        .count();
    StudyCell {
        lambda: truth[2],
        n,
        replications: outcomes.len(),
        replications_completed: done.len(),
        divergent: outcomes.len() - done.len(),
        bias,
        mse,
        cp,
        aw,
        pct_ci_failed: if done.is_empty() {
            f64::NAN
        } else {
            100.0 * failed as f64 / m
        },
    }
}

/// Runs every sample size of the configuration.
pub fn run_study(cfg: &StudyConfig) -> Result<StudyReport> {
    cfg.validate()?;
    let cells = cfg
        .sample_sizes
        .iter()
        .map(|&n| {
            let outcomes: Vec<Option<Outcome>> = (0..cfg.replications)
                .into_par_iter()
                .map(|i| replicate(cfg, n, i))
                .collect();
            summarize_cell(cfg, n, &outcomes)
        })
        .collect();
    Ok(StudyReport { cells })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReportFormat {
    Text,
    Csv,
    Json,
}

pub const COLUMNS: [&str; 17] = [
    "lambda",
    "n",
    "bias_mu",
    "mse_mu",
    "bias_sigma",
    "mse_sigma",
    "bias_lambda",
    "mse_lambda",
    "cp_mu",
    "aw_mu",
    "cp_sigma",
    "aw_sigma",
    "cp_lambda",
    "aw_lambda",
    "pct_ci_failed",
    "completed",
    "divergent",
];

fn row(c: &StudyCell) -> Vec<f64> {
    let opt = |v: Option<f64>| v.unwrap_or(f64::NAN);
    vec![
        c.lambda,
        c.n as f64,
        c.bias[0],
        c.mse[0],
        c.bias[1],
        c.mse[1],
        c.bias[2],
        c.mse[2],
        opt(c.cp[0]),
        opt(c.aw[0]),
        opt(c.cp[1]),
        opt(c.aw[1]),
        opt(c.cp[2]),
        opt(c.aw[2]),
        c.pct_ci_failed,
        c.replications_completed as f64,
        c.divergent as f64,
    ]
}

/// Renders one row per (lambda, n). CSV uses shortest round-trip number
/// formatting; text rounds to four decimals.
pub fn summarize(report: &StudyReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => {
            let mut out = COLUMNS.join(",");
            out.push('\n');
            for c in &report.cells {
                let fields: Vec<String> = row(c)
                    .into_iter()
                    .enumerate()
                    .map(|(i, v)| match i {
                        1 | 15 | 16 => format!("{}", v as usize),
                        _ => crate::data::format_number(v),
                    })
                    .collect();
                out.push_str(&fields.join(","));
                out.push('\n');
            }
            out
        }
        ReportFormat::Json => {
            serde_json::to_string_pretty(&report.cells).expect("report serializes")
        }
        ReportFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{:>7} {:>5} | {:>8} {:>8} | {:>8} {:>8} | {:>8} {:>8} | {:>6} {:>7} | {:>6} {:>7} | {:>6} {:>7} | {:>6}",
                "lambda", "n", "bias_mu", "mse_mu", "bias_sg", "mse_sg", "bias_lm", "mse_lm",
                "cp_mu", "aw_mu", "cp_sg", "aw_sg", "cp_lm", "aw_lm", "%fail"
            );
            for c in &report.cells {
                let r = row(c);
                let _ = writeln!(
                    out,
                    "{:>7.3} {:>5} | {:>8.4} {:>8.4} | {:>8.4} {:>8.4} | {:>8.4} {:>8.4} | {:>6.3} {:>7.4} | {:>6.3} {:>7.4} | {:>6.3} {:>7.4} | {:>6.2}",
                    r[0], c.n, r[2], r[3], r[4], r[5], r[6], r[7], r[8], r[9], r[10], r[11], r[12], r[13], r[14]
                );
            }
            out
        }
    }
}
