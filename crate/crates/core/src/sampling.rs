//! Random variates by inverse transform and by acceptance-rejection.
//!
//! Each `(seed, stream_id)` pair owns an independent ChaCha20 generator: the
//! seed fixes the key and the stream id selects one of 2^64 streams, so
//! replications can run concurrently and still replay bit for bit.

use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::dist::TlssDistribution;
use crate::special::logistic_weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SamplingMethod {
    InverseTransform,
    AcceptReject,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub method: SamplingMethod,
    pub seed: u64,
    pub stream_id: u64,
}

impl SamplerConfig {
    pub fn new(method: SamplingMethod, seed: u64, stream_id: u64) -> Self {
        SamplerConfig {
            method,
            seed,
            stream_id,
        }
    }

    pub fn rng(&self) -> ChaCha20Rng {
        stream_rng(self.seed, self.stream_id)
    }
}

pub fn stream_rng(seed: u64, stream_id: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream_id);
    rng
}

/// Uniform on the open interval (0, 1): the midpoints of a 2^-53 grid.
#[inline]
pub fn uniform_open<R: RngCore>(rng: &mut R) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

/// Draws `n` values with the configured method.
pub fn sample(d: &TlssDistribution, n: usize, cfg: &SamplerConfig) -> Vec<f64> {
    match cfg.method {
        SamplingMethod::InverseTransform => sample_inverse(d, n, cfg),
        SamplingMethod::AcceptReject => sample_rejection(d, n, cfg).0,
    }
}

/// `n` draws as `Q_Y(U)` with the closed-form quantile.
pub fn sample_inverse(d: &TlssDistribution, n: usize, cfg: &SamplerConfig) -> Vec<f64> {
    let mut rng = cfg.rng();
    (0..n)
        .map(|_| d.quantile_unchecked(uniform_open(&mut rng)))
        .collect()
}

/// Acceptance probability of a kernel proposal with kernel cdf value `f`:
/// `f_Y / (M f_X) = 4 w(lambda f)` for the envelope `M = lambda C(lambda) / 4`.
#[inline]
pub fn acceptance_ratio(d: &TlssDistribution, f: f64) -> f64 {
    if d.is_limit() {
        1.0
    } else {
        4.0 * logistic_weight(d.lambda() * f)
    }
}

/// `n` draws by rejection from kernel proposals, and the number of proposals
/// consumed. Each proposal uses two uniforms: one for the kernel draw, one
/// for the acceptance test.
pub fn sample_rejection(d: &TlssDistribution, n: usize, cfg: &SamplerConfig) -> (Vec<f64>, u64) {
    let mut rng = cfg.rng();
    let kernel = d.kernel();
    let mut out = Vec::with_capacity(n);
    let mut proposals = 0u64;
    while out.len() < n {
        let u = uniform_open(&mut rng);
        let v = uniform_open(&mut rng);
        proposals += 1;
        // F_X(X) = u exactly for X = Q_X(u).
        if v <= acceptance_ratio(d, u) {
            out.push(kernel.quantile_unchecked(u));
        }
    }
    (out, proposals)
}

/// Theoretical acceptance rate `2 tanh(lambda / 2) / lambda`.
pub fn acceptance_rate(lambda: f64) -> f64 {
    if lambda.abs() < crate::dist::LAMBDA_LIMIT {
        1.0
    } else {
        2.0 * (0.5 * lambda).tanh() / lambda
    }
}

/// One-sample Kolmogorov-Smirnov statistic of `xs` against `cdf`.
pub fn ks_statistic<F: Fn(f64) -> f64>(xs: &[f64], cdf: F) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len() as f64;
    v.iter().enumerate().fold(0.0, |acc: f64, (i, &x)| {
        let c = cdf(x);
        acc.max(c - i as f64 / n).max((i + 1) as f64 / n - c)
    })
}

/// Two-sample Kolmogorov-Smirnov statistic.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}
