//! Maximum likelihood for TLSS models and two positive-support competitors,
//! on complete or left-censored data.
//!
//! Parameter vectors are `(mu, sigma, lambda)` for the TLSS kinds,
//! `(mu*, sigma*)` for the lognormal (mean and sd of ln y) and
//! `(alpha, beta)` (shape, scale) for the Weibull.
//!
//! The likelihood is even in lambda, so the sign of lambda is not identified;
//! fits report the canonical estimate with lambda >= 0.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dist::TlssDistribution;
use crate::error::{Result, TlssError};
use crate::kernel::{Family, KernelSpec};
use crate::optimize::{nelder_mead, NelderMeadOptions};
use crate::special::{norm_ln_cdf, norm_quantile, LN_SQRT_2PI};

/// Bound on |lambda| inside the optimizer.
pub const LAMBDA_SEARCH_BOUND: f64 = 500.0;

/// Starting values of lambda, in the order they are tried. Starts of
/// opposite sign trace mirrored paths, so the positive ones come first.
pub const LAMBDA_STARTS: [f64; 4] = [0.5, 2.0, -0.5, -2.0];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Observation {
    pub value: f64,
    /// Left-censored at `value`.
    pub censored: bool,
}

impl Observation {
    pub fn exact(value: f64) -> Self {
        Observation {
            value,
            censored: false,
        }
    }

    pub fn left_censored(value: f64) -> Self {
        Observation {
            value,
            censored: true,
        }
    }
}

pub fn exact_observations(values: &[f64]) -> Vec<Observation> {
    values.iter().copied().map(Observation::exact).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    TlssNormal,
    TlssLaplace,
    TlssCauchy,
    TlssLogistic,
    Lognormal,
    Weibull,
}

impl ModelKind {
    pub const ALL: [ModelKind; 6] = [
        ModelKind::TlssNormal,
        ModelKind::TlssLaplace,
        ModelKind::TlssCauchy,
        ModelKind::TlssLogistic,
        ModelKind::Lognormal,
        ModelKind::Weibull,
    ];

    pub fn family(self) -> Option<Family> {
        match self {
            ModelKind::TlssNormal => Some(Family::Normal),
            ModelKind::TlssLaplace => Some(Family::Laplace),
            ModelKind::TlssCauchy => Some(Family::Cauchy),
            ModelKind::TlssLogistic => Some(Family::Logistic),
            ModelKind::Lognormal | ModelKind::Weibull => None,
        }
    }

    pub fn tlss(family: Family) -> Self {
        match family {
            Family::Normal => ModelKind::TlssNormal,
            Family::Laplace => ModelKind::TlssLaplace,
            Family::Cauchy => ModelKind::TlssCauchy,
            Family::Logistic => ModelKind::TlssLogistic,
        }
    }

    pub fn parameter_count(self) -> usize {
        if self.family().is_some() {
            3
        } else {
            2
        }
    }

    pub fn parameter_names(self) -> &'static [&'static str] {
        match self {
            ModelKind::Lognormal => &["mu", "sigma"],
            ModelKind::Weibull => &["alpha", "beta"],
            _ => &["mu", "sigma", "lambda"],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::TlssNormal => "tlss-normal",
            ModelKind::TlssLaplace => "tlss-laplace",
            ModelKind::TlssCauchy => "tlss-cauchy",
            ModelKind::TlssLogistic => "tlss-logistic",
            ModelKind::Lognormal => "lognormal",
            ModelKind::Weibull => "weibull",
        }
    }

    /// Short labels used in tables.
    pub fn label(self) -> &'static str {
        match self {
            ModelKind::TlssNormal => "TLSN",
            ModelKind::TlssLaplace => "TLSL",
            ModelKind::TlssCauchy => "TLSC",
            ModelKind::TlssLogistic => "TLSLG",
            ModelKind::Lognormal => "Lognormal",
            ModelKind::Weibull => "Weibull",
        }
    }

    fn positive_support(self) -> bool {
        self.family().is_none()
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = TlssError;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase();
        let kind = match key.as_str() {
            "tlss-normal" | "tlsn" | "normal" => ModelKind::TlssNormal,
            "tlss-laplace" | "tlsl" | "laplace" => ModelKind::TlssLaplace,
            "tlss-cauchy" | "tlsc" | "cauchy" => ModelKind::TlssCauchy,
            "tlss-logistic" | "tlslg" | "logistic" => ModelKind::TlssLogistic,
            "lognormal" => ModelKind::Lognormal,
            "weibull" => ModelKind::Weibull,
            _ => return Err(TlssError::domain(format!("unknown model `{s}`"))),
        };
        Ok(kind)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub k: usize,
}

impl ModelSpec {
    pub fn new(kind: ModelKind) -> Self {
        ModelSpec {
            kind,
            k: kind.parameter_count(),
        }
    }
}

impl From<ModelKind> for ModelSpec {
    fn from(kind: ModelKind) -> Self {
        ModelSpec::new(kind)
    }
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(TlssError::InvalidParameter {
            name,
            value: v,
            reason: "must be finite and > 0",
        })
    }
}

fn finite(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(TlssError::InvalidParameter {
            name,
            value: v,
            reason: "must be finite",
        })
    }
}

fn check_params(model: &ModelSpec, params: &[f64]) -> Result<()> {
    if model.k != model.kind.parameter_count() {
        return Err(TlssError::domain(format!(
            "model {} has {} parameters, ModelSpec declares {}",
            model.kind,
            model.kind.parameter_count(),
            model.k
        )));
    }
    if params.len() != model.k {
        return Err(TlssError::domain(format!(
            "model {} takes {} parameters, got {}",
            model.kind,
            model.k,
            params.len()
        )));
    }
    match model.kind {
        ModelKind::Lognormal => {
            finite("mu", params[0])?;
            positive("sigma", params[1])
        }
        ModelKind::Weibull => {
            positive("alpha", params[0])?;
            positive("beta", params[1])
        }
        _ => {
            finite("mu", params[0])?;
            positive("sigma", params[1])?;
            finite("lambda", params[2])
        }
    }
}

/// The TLSS distribution for a parameter vector `(mu, sigma, lambda)`.
pub fn tlss_distribution(family: Family, params: &[f64]) -> Result<TlssDistribution> {
    TlssDistribution::new(KernelSpec::new(family, params[0], params[1])?, params[2])
}

/// Sum over observations of the log density (exact values) or the log cdf
/// (left-censored values).
pub fn log_likelihood(model: &ModelSpec, params: &[f64], data: &[Observation]) -> Result<f64> {
    check_params(model, params)?;
    for (index, o) in data.iter().enumerate() {
        if !o.value.is_finite() || (model.kind.positive_support() && o.value <= 0.0) {
            return Err(TlssError::Support {
                model: model.kind.name(),
                index,
                value: o.value,
            });
        }
    }
    let total = match model.kind.family() {
        Some(family) => {
            let d = tlss_distribution(family, params)?;
            let exact = d.ln_pdf_sum(data.iter().filter(|o| !o.censored).map(|o| o.value));
            let censored: f64 = data
                .iter()
                .filter(|o| o.censored)
                .map(|o| d.ln_cdf_unchecked(o.value))
                .sum();
            exact + censored
        }
        None if model.kind == ModelKind::Lognormal => {
            let (mu, sigma) = (params[0], params[1]);
            let ln_sigma = sigma.ln();
            data.iter()
                .map(|o| {
                    let ly = o.value.ln();
                    let z = (ly - mu) / sigma;
                    if o.censored {
                        norm_ln_cdf(z)
                    } else {
                        -ly - ln_sigma - LN_SQRT_2PI - 0.5 * z * z
                    }
                })
                .sum()
        }
        None => {
            let (alpha, beta) = (params[0], params[1]);
            let ln_shape = alpha.ln() - beta.ln();
            data.iter()
                .map(|o| {
                    let ln_r = (o.value / beta).ln();
                    let t = (alpha * ln_r).exp();
                    if o.censored {
                        (-(-t).exp_m1()).ln()
                    } else {
                        ln_shape + (alpha - 1.0) * ln_r - t
                    }
                })
                .sum()
        }
    };
    Ok(total)
}

/// Negative Hessian of the log-likelihood by central differences with step
/// `1e-4 max(1, |theta_j|)`, symmetrized.
pub fn observed_information(
    model: &ModelSpec,
    params: &[f64],
    data: &[Observation],
) -> Result<Vec<Vec<f64>>> {
    let k = params.len();
    let h: Vec<f64> = params.iter().map(|t| 1e-4 * t.abs().max(1.0)).collect();
    let eval = |shift: &[(usize, f64)]| -> Result<f64> {
        let mut p = params.to_vec();
        for &(i, s) in shift {
            p[i] += s * h[i];
        }
        let direction = shift.first().map_or(0, |s| s.0);
        match log_likelihood(model, &p, data) {
            Ok(v) if v.is_finite() => Ok(v),
            Ok(_) | Err(TlssError::InvalidParameter { .. }) => {
                Err(TlssError::Stencil { direction })
            }
            Err(e) => Err(e),
        }
    };
    let centre = eval(&[])?;
    let mut hess = vec![vec![0.0; k]; k];
    for i in 0..k {
        let plus = eval(&[(i, 1.0)])?;
        let minus = eval(&[(i, -1.0)])?;
        hess[i][i] = (plus - 2.0 * centre + minus) / (h[i] * h[i]);
        for j in 0..i {
            let pp = eval(&[(i, 1.0), (j, 1.0)])?;
            let pm = eval(&[(i, 1.0), (j, -1.0)])?;
            let mp = eval(&[(i, -1.0), (j, 1.0)])?;
            let mm = eval(&[(i, -1.0), (j, -1.0)])?;
            hess[i][j] = (pp - pm - mp + mm) / (4.0 * h[i] * h[j]);
            hess[j][i] = hess[i][j];
        }
    }
    let info = (0..k)
        .map(|i| (0..k).map(|j| -0.5 * (hess[i][j] + hess[j][i])).collect())
        .collect();
    Ok(info)
}

/// Cholesky factor of a symmetric matrix, or `None` if it is not positive
/// definite.
pub fn cholesky(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|p| l[i][p] * l[j][p]).sum();
            if i == j {
                let d = a[i][i] - s;
                if !d.is_finite() || d <= 0.0 {
                    return None;
                }
                l[i][i] = d.sqrt();
            } else {
                l[i][j] = (a[i][j] - s) / l[j][j];
            }
        }
    }
    Some(l)
}

/// Inverse by Gauss-Jordan elimination with partial pivoting; `None` when
/// the matrix is numerically singular.
pub fn invert(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    if !scale.is_finite() || scale <= 0.0 {
        return None;
    }
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| m[x][c].abs().total_cmp(&m[y][c].abs()))?;
        if m[p][c].abs() <= 1e-13 * scale {
            return None;
        }
        m.swap(c, p);
        let d = m[c][c];
        for v in m[c].iter_mut() {
            *v /= d;
        }
        let pivot = m[c].clone();
        for (r, row) in m.iter_mut().enumerate() {
            let f = row[c];
            if r != c && f != 0.0 {
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= f * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

impl Interval {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerTrace {
    pub iterations: usize,
    pub simplex_diameter: f64,
    pub starts: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub model: ModelSpec,
    pub estimates: Vec<f64>,
    pub max_log_likelihood: f64,
    /// Observed information; `None` if the stencil left the parameter domain.
    pub information: Option<Vec<Vec<f64>>>,
    /// Inverse of the information; `None` if it is singular.
    pub covariance: Option<Vec<Vec<f64>>>,
    pub positive_definite: bool,
    pub level: f64,
    /// Per-parameter intervals at `level`; `None` where the variance is not
    /// positive.
    pub intervals: Vec<Option<Interval>>,
    pub aic: f64,
    pub converged: bool,
    pub trace: OptimizerTrace,
}

pub const DEFAULT_LEVEL: f64 = 0.95;

/// Wald intervals `theta_i +- z sqrt(v_ii)`.
pub fn confidence_intervals(fr: &FitResult, level: f64) -> Vec<Option<Interval>> {
    wald_intervals(&fr.estimates, fr.covariance.as_deref(), level)
}

fn wald_intervals(est: &[f64], cov: Option<&[Vec<f64>]>, level: f64) -> Vec<Option<Interval>> {
    let z = if level > 0.0 && level < 1.0 {
        norm_quantile(0.5 + 0.5 * level)
    } else {
        f64::NAN
    };
    est.iter()
        .enumerate()
        .map(|(i, &t)| {
            let v = cov?[i][i];
            if !v.is_finite() || v <= 0.0 || !z.is_finite() {
                return None;
            }
            let half = z * v.sqrt();
            Some(Interval {
                lower: t - half,
                upper: t + half,
            })
        })
        .collect()
}

pub fn aic(fr: &FitResult) -> f64 {
    aic_value(fr.model.k, fr.max_log_likelihood)
}

pub fn aic_value(k: usize, log_likelihood: f64) -> f64 {
    2.0 * k as f64 - 2.0 * log_likelihood
}

fn bounded_lambda(eta: f64) -> f64 {
    LAMBDA_SEARCH_BOUND * (eta / LAMBDA_SEARCH_BOUND).tanh()
}

fn unbounded_lambda(lambda: f64) -> f64 {
    let r = (lambda / LAMBDA_SEARCH_BOUND).clamp(-0.999_999, 0.999_999);
    LAMBDA_SEARCH_BOUND * r.atanh()
}

fn to_natural(kind: ModelKind, x: &[f64]) -> Vec<f64> {
    match kind {
        ModelKind::Lognormal => vec![x[0], x[1].exp()],
        ModelKind::Weibull => vec![x[0].exp(), x[1].exp()],
        _ => vec![x[0], x[1].exp(), bounded_lambda(x[2])],
    }
}

fn to_search(kind: ModelKind, p: &[f64]) -> Vec<f64> {
    match kind {
        ModelKind::Lognormal => vec![p[0], p[1].ln()],
        ModelKind::Weibull => vec![p[0].ln(), p[1].ln()],
        _ => vec![p[0], p[1].ln(), unbounded_lambda(p[2])],
    }
}

fn quantile_sorted(v: &[f64], p: f64) -> f64 {
    let h = (v.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    v[lo] + (h - lo as f64) * (v[hi] - v[lo])
}

fn mean_sd(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    let var = if v.len() > 1 {
        v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    (m, var.sqrt())
}

/// Starting points in natural coordinates.
fn initial_points(kind: ModelKind, data: &[Observation], starts: usize) -> Vec<Vec<f64>> {
    let mut values: Vec<f64> = data.iter().map(|o| o.value).collect();
    values.sort_by(f64::total_cmp);
    match kind {
        ModelKind::Lognormal | ModelKind::Weibull => {
            let logs: Vec<f64> = values.iter().map(|v| v.ln()).collect();
            let (m, sd) = mean_sd(&logs);
            let sd = if sd > 0.0 { sd } else { 1.0 };
            if kind == ModelKind::Lognormal {
                vec![vec![m, sd]]
            } else {
                // ln Y is Gumbel-min with sd pi / (alpha sqrt 6)
                let alpha = std::f64::consts::PI / (sd * 6f64.sqrt());
                let beta = (m + 0.577_215_664_901_532_9 / alpha).exp();
                vec![vec![alpha, beta]]
            }
        }
        _ => {
            let median = quantile_sorted(&values, 0.5);
            let iqr = quantile_sorted(&values, 0.75) - quantile_sorted(&values, 0.25);
            let spread = if iqr > 0.0 {
                iqr / 1.349
            } else {
                let (_, sd) = mean_sd(&values);
                if sd > 0.0 {
                    sd
                } else {
                    1.0
                }
            };
            // best initial log-likelihood first; stable, so ties keep the
            // listed order
            let model = ModelSpec::new(kind);
            let mut ranked: Vec<(f64, Vec<f64>)> = LAMBDA_STARTS
                .iter()
                .map(|&l| {
                    let p = vec![median, spread, l];
                    let ll = log_likelihood(&model, &p, data).unwrap_or(f64::NEG_INFINITY);
                    (if ll.is_nan() { f64::NEG_INFINITY } else { ll }, p)
                })
                .collect();
            ranked.sort_by(|a, b| b.0.total_cmp(&a.0));
            ranked
                .into_iter()
                .take(starts.clamp(1, LAMBDA_STARTS.len()))
                .map(|(_, p)| p)
                .collect()
        }
    }
}

/// Multi-start Nelder-Mead maximization of the log-likelihood in
/// unconstrained coordinates (log scales, bounded map for lambda). `starts`
/// is the number of lambda starting values tried for TLSS models, taken in
/// order of their initial log-likelihood.
pub fn fit_mle(model: &ModelSpec, data: &[Observation], starts: usize) -> Result<FitResult> {
    fit_mle_with(model, data, starts, &NelderMeadOptions::default())
}

pub fn fit_mle_with(
    model: &ModelSpec,
    data: &[Observation],
    starts: usize,
    options: &NelderMeadOptions,
) -> Result<FitResult> {
    if data.is_empty() {
        return Err(TlssError::Data("no observations".into()));
    }
    if data.iter().all(|o| o.censored) {
        return Err(TlssError::Data(
            "at least one uncensored observation is required".into(),
        ));
    }
    let kind = model.kind;
    if kind.positive_support() {
        if let Some((index, o)) = data
            .iter()
            .enumerate()
            .find(|(_, o)| o.value.is_nan() || o.value <= 0.0)
        {
            return Err(TlssError::Support {
                model: kind.name(),
                index,
                value: o.value,
            });
        }
    }
    let objective = |x: &[f64]| -> f64 {
        match log_likelihood(model, &to_natural(kind, x), data) {
            Ok(v) if v.is_finite() => -v,
            _ => f64::INFINITY,
        }
    };

    let mut best: Option<(crate::optimize::Minimum, bool)> = None;
    let mut iterations = 0;
    let points = initial_points(kind, data, starts);
    let n_starts = points.len();
    for p in points {
        // Surfaces support errors before any optimization.
        let init = -log_likelihood(model, &p, data)?;
        let x0 = to_search(kind, &p);
        let step: Vec<f64> = match kind {
            ModelKind::Lognormal => vec![0.25 * p[1], 0.2],
            ModelKind::Weibull => vec![0.2, 0.2],
            _ => vec![0.25 * p[1], 0.2, 0.5],
        };
        let m = nelder_mead(objective, &x0, &step, options);
        iterations += m.iterations;
        let improved = m.value <= init;
        if best.as_ref().is_none_or(|(b, _)| m.value < b.value) {
            best = Some((m, improved));
        }
    }
    let (m, improved) = best.expect("at least one start");
    let mut estimates = to_natural(kind, &m.x);
    if model.kind.family().is_some() {
        estimates[2] = estimates[2].abs();
    }
    let estimates = polish(model, estimates, data);
    let max_log_likelihood = log_likelihood(model, &estimates, data)?;

    let information = observed_information(model, &estimates, data).ok();
    let (covariance, positive_definite) = covariance_from_information(information.as_deref());
    let intervals = wald_intervals(&estimates, covariance.as_deref(), DEFAULT_LEVEL);
    Ok(FitResult {
        model: *model,
        aic: aic_value(model.k, max_log_likelihood),
        estimates,
        max_log_likelihood,
        information,
        covariance,
        positive_definite,
        level: DEFAULT_LEVEL,
        intervals,
        converged: m.converged && improved,
        trace: OptimizerTrace {
            iterations,
            simplex_diameter: m.diameter,
            starts: n_starts,
        },
    })
}

/// Newton steps on the numerical score from the simplex optimum. Only steps
/// that raise the log-likelihood are kept, so this never degrades the fit;
/// it sharpens estimates along flat directions the simplex leaves loose.
fn polish(model: &ModelSpec, mut p: Vec<f64>, data: &[Observation]) -> Vec<f64> {
    let Ok(mut ll) = log_likelihood(model, &p, data) else {
        return p;
    };
    for _ in 0..4 {
        let (Ok(g), Ok(j)) = (
            score(model, &p, data),
            observed_information(model, &p, data),
        ) else {
            break;
        };
        if cholesky(&j).is_none() {
            break;
        }
        let Some(inv) = invert(&j) else { break };
        let step: Vec<f64> = inv
            .iter()
            .map(|row| row.iter().zip(&g).map(|(a, b)| a * b).sum())
            .collect();
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..8 {
            let q: Vec<f64> = p.iter().zip(&step).map(|(a, b)| a + t * b).collect();
            if let Ok(v) = log_likelihood(model, &q, data) {
                // near the optimum the gain is below the rounding of the sum
                if v >= ll - 1e-14 * ll.abs().max(1.0) {
                    p = q;
                    ll = v;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        let size = step
            .iter()
            .zip(&p)
            .fold(0.0f64, |m, (d, x)| m.max(d.abs() / x.abs().max(1.0)));
        if !accepted || size < 1e-10 {
            break;
        }
    }
    if model.kind.family().is_some() {
        p[2] = p[2].abs();
    }
    p
}

/// Covariance `J^-1` and whether `J` is positive definite. An indefinite but
/// invertible `J` still yields a covariance; its non-positive diagonal
/// entries then mark intervals as non-computable.
pub fn covariance_from_information(info: Option<&[Vec<f64>]>) -> (Option<Vec<Vec<f64>>>, bool) {
    match info {
        Some(j) => (invert(j), cholesky(j).is_some()),
        None => (None, false),
    }
}

/// Central-difference gradient of the log-likelihood.
pub fn score(model: &ModelSpec, params: &[f64], data: &[Observation]) -> Result<Vec<f64>> {
    (0..params.len())
        .map(|i| {
            let h = 1e-5 * params[i].abs().max(1.0);
            let mut p = params.to_vec();
            p[i] += h;
            let up = log_likelihood(model, &p, data)?;
            p[i] -= 2.0 * h;
            let down = log_likelihood(model, &p, data)?;
            Ok((up - down) / (2.0 * h))
        })
        .collect()
}
