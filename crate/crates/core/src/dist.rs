//! The truncated-logistic skew-symmetric (TLSS) distribution.
//!
//! For a symmetric kernel with density f and cdf F the density is
//!
//! ```text
//! f_Y(y) = C(lambda) * lambda * f(y) * w(lambda * F(y)),
//! C(lambda) = 2 (1 + e^-lambda) / (1 - e^-lambda) = 2 / tanh(lambda / 2),
//! w(t) = e^-t / (1 + e^-t)^2,
//! ```
//!
//! and the cdf is `tanh(lambda F / 2) / tanh(lambda / 2)`. Both w and
//! `lambda * C(lambda)` are even in lambda, so the law depends on lambda only
//! through |lambda|: TLSS(lambda) and TLSS(-lambda) coincide. Every nonzero
//! lambda tilts mass toward the lower tail of the kernel.
//!
//! |lambda| below [`LAMBDA_LIMIT`] is evaluated as the kernel itself.

use serde::{Deserialize, Serialize};

use crate::error::{Result, TlssError};
use crate::kernel::{std_cdf, std_ln_pdf, KernelSpec};
use crate::special::{ln_abs_tanh, ln_logistic_weight, logistic_weight, x_over_tanh_half};

/// Below this |lambda| all evaluations use the kernel directly.
pub const LAMBDA_LIMIT: f64 = 1e-6;

/// Largest supported |lambda|.
pub const LAMBDA_MAX: f64 = 1e4;

/// C(lambda) = 2 (1 + e^-lambda) / (1 - e^-lambda). Undefined at zero.
pub fn normalizer(lambda: f64) -> Result<f64> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(TlssError::domain(format!(
            "normalizer is undefined at lambda = {lambda}"
        )));
    }
    Ok(2.0 / (0.5 * lambda).tanh())
}

/// lambda * C(lambda) = 2 lambda / tanh(lambda / 2), continuous through zero
/// where it equals 4.
pub fn scaled_normalizer(lambda: f64) -> f64 {
    2.0 * x_over_tanh_half(lambda)
}

/// Limits of f_Y / f_X in the lower and upper tails of the kernel:
/// `lambda / (2 tanh(lambda / 2))` and `lambda / sinh(lambda)`.
pub fn tail_ratio_constants(lambda: f64) -> (f64, f64) {
    if lambda.abs() < LAMBDA_LIMIT {
        return (1.0, 1.0);
    }
    let left = 0.5 * x_over_tanh_half(lambda);
    let right = lambda / lambda.sinh();
    (left, right)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TlssDistribution {
    kernel: KernelSpec,
    lambda: f64,
}

impl TlssDistribution {
    pub fn new(kernel: KernelSpec, lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda.abs() > LAMBDA_MAX {
            return Err(TlssError::InvalidParameter {
                name: "lambda",
                value: lambda,
                reason: "must be finite with |lambda| <= 1e4",
            });
        }
        Ok(TlssDistribution { kernel, lambda })
    }

    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// True when evaluations are routed to the kernel.
    pub fn is_limit(&self) -> bool {
        self.lambda.abs() < LAMBDA_LIMIT
    }

    fn check(y: f64) -> Result<()> {
        if y.is_finite() {
            Ok(())
        } else {
            Err(TlssError::domain(format!(
                "argument must be finite, got {y}"
            )))
        }
    }

    pub fn pdf(&self, y: f64) -> Result<f64> {
        Self::check(y)?;
        Ok(self.pdf_unchecked(y))
    }

    pub fn ln_pdf(&self, y: f64) -> Result<f64> {
        Self::check(y)?;
        Ok(self.ln_pdf_unchecked(y))
    }

    pub fn cdf(&self, y: f64) -> Result<f64> {
        Self::check(y)?;
        Ok(self.cdf_from_kernel(self.kernel.cdf_unchecked(y)))
    }

    /// Survival function 1 - F_Y(y), computed from the kernel survival
    /// probability so the upper tail keeps relative accuracy.
    pub fn sf(&self, y: f64) -> Result<f64> {
        Self::check(y)?;
        let f = self.kernel.cdf_unchecked(y);
        let s = self.kernel.sf_unchecked(y);
        Ok(self.sf_from_kernel(f, s))
    }

    pub fn ln_cdf(&self, y: f64) -> Result<f64> {
        Self::check(y)?;
        Ok(self.ln_cdf_unchecked(y))
    }

    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < 1.0) {
            return Err(TlssError::domain(format!(
                "quantile probability must lie in (0, 1), got {u}"
            )));
        }
        Ok(self.quantile_unchecked(u))
    }

    /// Ratio f_Y / f_X as a function of the kernel cdf value.
    #[inline]
    pub fn weight_at(&self, kernel_cdf: f64) -> f64 {
        if self.is_limit() {
            1.0
        } else {
            scaled_normalizer(self.lambda) * logistic_weight(self.lambda * kernel_cdf)
        }
    }

    #[inline]
    pub(crate) fn pdf_unchecked(&self, y: f64) -> f64 {
        let fx = self.kernel.pdf_unchecked(y);
        if self.is_limit() {
            return fx;
        }
        fx * self.weight_at(self.kernel.cdf_unchecked(y))
    }

    #[inline]
    /// Sum of log-densities with the per-distribution constants hoisted.
    pub(crate) fn ln_pdf_sum<I: Iterator<Item = f64>>(&self, ys: I) -> f64 {
        let k = &self.kernel;
        let (m, s, family) = (k.location(), k.scale(), k.family());
        let shift = if self.is_limit() {
            -s.ln()
        } else {
            scaled_normalizer(self.lambda).ln() - s.ln()
        };
        let l = if self.is_limit() { 0.0 } else { self.lambda };
        ys.map(|y| {
            let z = (y - m) / s;
            let w = if l == 0.0 {
                0.0
            } else {
                ln_logistic_weight(l * std_cdf(family, z))
            };
            std_ln_pdf(family, z) + w + shift
        })
        .sum()
    }

    pub(crate) fn ln_pdf_unchecked(&self, y: f64) -> f64 {
        let lf = self.kernel.ln_pdf_unchecked(y);
        if self.is_limit() {
            return lf;
        }
        let f = self.kernel.cdf_unchecked(y);
        scaled_normalizer(self.lambda).ln() + lf + ln_logistic_weight(self.lambda * f)
    }

    #[inline]
    pub(crate) fn cdf_from_kernel(&self, f: f64) -> f64 {
        if self.is_limit() {
            return f;
        }
        let a = 0.5 * self.lambda.abs();
        (a * f).tanh() / a.tanh()
    }

    #[inline]
    pub(crate) fn sf_from_kernel(&self, f: f64, s: f64) -> f64 {
        if self.is_limit() {
            return s;
        }
        let l = self.lambda.abs();
        let e = (-l * f).exp();
        2.0 * e * (-(-l * s).exp_m1()) / ((-(-l).exp_m1()) * (1.0 + e))
    }

    pub(crate) fn ln_cdf_unchecked(&self, y: f64) -> f64 {
        let ln_f = self.kernel.ln_cdf_unchecked(y);
        if self.is_limit() {
            return ln_f;
        }
        let a = 0.5 * self.lambda.abs();
        let x = a * ln_f.exp();
        let num = if x < 1e-4 {
            // tanh(x) = x (1 - x^2/3 + ...), with ln x from ln F directly
            a.ln() + ln_f + (-x * x / 3.0 + 2.0 * x.powi(4) / 15.0).ln_1p()
        } else {
            ln_abs_tanh(x)
        };
        num - ln_abs_tanh(a)
    }

    /// Inverse of the cdf: F_X(y) = (2 / lambda) artanh(u tanh(lambda / 2)).
    pub(crate) fn quantile_unchecked(&self, u: f64) -> f64 {
        let p = self.kernel_probability(u);
        self.kernel.quantile_unchecked(p)
    }

    /// Kernel cdf level corresponding to TLSS probability `u`.
    #[inline]
    pub(crate) fn kernel_probability(&self, u: f64) -> f64 {
        if self.is_limit() {
            return u;
        }
        let a = 0.5 * self.lambda.abs();
        ((u * a.tanh()).atanh() / a).clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON / 2.0)
    }
}
