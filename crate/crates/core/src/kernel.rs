//! Symmetric base distributions used as kernels of the skewed family.
//!
//! Every formula is written for the standardized argument
//! `z = (x - location) / scale`; the public methods add the location-scale
//! bookkeeping and argument validation.

use std::f64::consts::{FRAC_1_PI, LN_2, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, TlssError};
use crate::special;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Normal,
    Laplace,
    Cauchy,
    Logistic,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Normal,
        Family::Laplace,
        Family::Cauchy,
        Family::Logistic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Normal => "normal",
            Family::Laplace => "laplace",
            Family::Cauchy => "cauchy",
            Family::Logistic => "logistic",
        }
    }

    pub fn has_moments(self) -> bool {
        self != Family::Cauchy
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A location-scale symmetric kernel. The scale is sigma for the normal,
/// b for the Laplace, xi for the Cauchy and s for the logistic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    family: Family,
    location: f64,
    scale: f64,
}

fn check_arg(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(TlssError::domain(format!(
            "argument must be finite, got {x}"
        )))
    }
}

impl KernelSpec {
    pub fn new(family: Family, location: f64, scale: f64) -> Result<Self> {
        if !location.is_finite() {
            return Err(TlssError::InvalidParameter {
                name: "location",
                value: location,
                reason: "must be finite",
            });
        }
        if !(scale.is_finite() && scale > 0.0) {
            return Err(TlssError::InvalidParameter {
                name: "scale",
                value: scale,
                reason: "must be finite and > 0",
            });
        }
        Ok(KernelSpec {
            family,
            location,
            scale,
        })
    }

    pub fn standard(family: Family) -> Self {
        KernelSpec {
            family,
            location: 0.0,
            scale: 1.0,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn location(&self) -> f64 {
        self.location
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    #[inline]
    pub(crate) fn standardize(&self, x: f64) -> f64 {
        (x - self.location) / self.scale
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        check_arg(x)?;
        Ok(self.pdf_unchecked(x))
    }

    pub fn ln_pdf(&self, x: f64) -> Result<f64> {
        check_arg(x)?;
        Ok(self.ln_pdf_unchecked(x))
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        check_arg(x)?;
        Ok(self.cdf_unchecked(x))
    }

    /// 1 - F(x), evaluated without cancellation in the upper tail.
    pub fn sf(&self, x: f64) -> Result<f64> {
        check_arg(x)?;
        Ok(std_cdf(self.family, -self.standardize(x)))
    }

    pub fn ln_cdf(&self, x: f64) -> Result<f64> {
        check_arg(x)?;
        Ok(self.ln_cdf_unchecked(x))
    }

    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(TlssError::domain(format!(
                "quantile probability must lie in (0, 1), got {p}"
            )));
        }
        Ok(self.quantile_unchecked(p))
    }

    /// Derivative of the density. Fails at the Laplace kink.
    pub fn pdf_derivative(&self, x: f64) -> Result<f64> {
        check_arg(x)?;
        let z = self.standardize(x);
        if self.family == Family::Laplace && z == 0.0 {
            return Err(TlssError::Singularity(x));
        }
        Ok(std_pdf_derivative(self.family, z) / (self.scale * self.scale))
    }

    #[inline]
    pub(crate) fn pdf_unchecked(&self, x: f64) -> f64 {
        std_pdf(self.family, self.standardize(x)) / self.scale
    }

    #[inline]
    pub(crate) fn ln_pdf_unchecked(&self, x: f64) -> f64 {
        std_ln_pdf(self.family, self.standardize(x)) - self.scale.ln()
    }

    #[inline]
    pub(crate) fn cdf_unchecked(&self, x: f64) -> f64 {
        std_cdf(self.family, self.standardize(x))
    }

    #[inline]
    pub(crate) fn sf_unchecked(&self, x: f64) -> f64 {
        std_cdf(self.family, -self.standardize(x))
    }

    #[inline]
    pub(crate) fn ln_cdf_unchecked(&self, x: f64) -> f64 {
        std_ln_cdf(self.family, self.standardize(x))
    }

    #[inline]
    pub(crate) fn quantile_unchecked(&self, p: f64) -> f64 {
        self.location + self.scale * std_quantile(self.family, p)
    }

    /// Quantile at u given also v = 1 - u; the upper half is taken from the
    /// complement through symmetry so that it keeps full precision.
    #[inline]
    pub(crate) fn quantile_pair(&self, u: f64, v: f64) -> f64 {
        if u <= 0.5 {
            self.location + self.scale * std_quantile(self.family, u)
        } else {
            self.location - self.scale * std_quantile(self.family, v)
        }
    }

    /// E|X|^r for the kernel, by quadrature. Cauchy kernels have none.
    pub fn abs_moment(&self, r: u32) -> Result<f64> {
        if !self.family.has_moments() {
            return Err(TlssError::MomentNonexistence(self.family.name()));
        }
        crate::quadrature::integrate_unit_pair_split(
            |u, v| self.quantile_pair(u, v).abs().powi(r as i32),
            self.cdf_unchecked(0.0),
            1e-12,
        )
        .map(|i| i.value)
    }
}

pub(crate) fn std_pdf(family: Family, z: f64) -> f64 {
    match family {
        Family::Normal => special::norm_pdf(z),
        Family::Laplace => 0.5 * (-z.abs()).exp(),
        Family::Cauchy => FRAC_1_PI / (1.0 + z * z),
        Family::Logistic => {
            let e = (-z.abs()).exp();
            e / ((1.0 + e) * (1.0 + e))
        }
    }
}

pub(crate) fn std_ln_pdf(family: Family, z: f64) -> f64 {
    match family {
        Family::Normal => -0.5 * z * z - special::LN_SQRT_2PI,
        Family::Laplace => -LN_2 - z.abs(),
        Family::Cauchy => {
            if z.abs() > 1e100 {
                -PI.ln() - 2.0 * z.abs().ln()
            } else {
                -PI.ln() - (z * z).ln_1p()
            }
        }
        Family::Logistic => special::ln_logistic_weight(z),
    }
}

pub(crate) fn std_cdf(family: Family, z: f64) -> f64 {
    match family {
        Family::Normal => special::norm_cdf(z),
        Family::Laplace => {
            if z < 0.0 {
                0.5 * z.exp()
            } else {
                1.0 - 0.5 * (-z).exp()
            }
        }
        Family::Cauchy => {
            if z < 0.0 {
                // atan(-1/z)/pi keeps relative accuracy far in the lower tail
                FRAC_1_PI * (-1.0 / z).atan()
            } else {
                0.5 + FRAC_1_PI * z.atan()
            }
        }
        Family::Logistic => {
            if z >= 0.0 {
                1.0 / (1.0 + (-z).exp())
            } else {
                let e = z.exp();
                e / (1.0 + e)
            }
        }
    }
}

pub(crate) fn std_ln_cdf(family: Family, z: f64) -> f64 {
    match family {
        Family::Normal => special::norm_ln_cdf(z),
        Family::Laplace => {
            if z < 0.0 {
                -LN_2 + z
            } else {
                (-0.5 * (-z).exp()).ln_1p()
            }
        }
        Family::Cauchy => std_cdf(family, z).ln(),
        Family::Logistic => -special::softplus(-z),
    }
}

pub(crate) fn std_quantile(family: Family, p: f64) -> f64 {
    match family {
        Family::Normal => special::norm_quantile(p),
        Family::Laplace => {
            if p < 0.5 {
                (2.0 * p).ln()
            } else {
                -(2.0 * (1.0 - p)).ln()
            }
        }
        Family::Cauchy => {
            if p == 0.5 {
                0.0
            } else if p < 0.5 {
                -1.0 / (PI * p).tan()
            } else {
                1.0 / (PI * (1.0 - p)).tan()
            }
        }
        Family::Logistic => (p / (1.0 - p)).ln(),
    }
}

pub(crate) fn std_pdf_derivative(family: Family, z: f64) -> f64 {
    match family {
        Family::Normal => -z * special::norm_pdf(z),
        Family::Laplace => -z.signum() * 0.5 * (-z.abs()).exp(),
        Family::Cauchy => {
            let d = 1.0 + z * z;
            -2.0 * z * FRAC_1_PI / (d * d)
        }
        Family::Logistic => {
            // f(z) (1 - 2F(z)) = f(z) tanh(-z/2)
            std_pdf(family, z) * (-0.5 * z).tanh()
        }
    }
}
