//! Moments, moment generating and characteristic functions.
//!
//! Quadrature is the reference method. All integrals are taken in kernel
//! probability coordinates u = F_X(y), where the TLSS density becomes the
//! bounded weight `lambda C(lambda) w(lambda u)` on (0, 1).
//!
//! The series form expands the weight in powers of u and integrates term by
//! term against the kernel, which turns each term into a moment of a sample
//! maximum, `E[X^r_{m:m}]`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::dist::{scaled_normalizer, TlssDistribution};
use crate::error::{Result, TlssError};
use crate::kernel::{Family, KernelSpec};
use crate::quadrature::{integrate_unit_pair, integrate_unit_pair_split};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// The series is restricted to |lambda| <= 2; the underlying power series
/// in u has radius pi / |lambda|.
pub const SERIES_LAMBDA_LIMIT: f64 = 2.0;

/// Largest accepted truncation index for the series.
pub const SERIES_MAX_TERMS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MomentMethod {
    Quadrature,
    Series,
}

/// A request for the r-th raw moment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentRequest {
    pub distribution: TlssDistribution,
    pub order: u32,
    pub method: MomentMethod,
    /// (Euler transform order J, number of k-shells K) for the series.
    pub series_truncation: (usize, usize),
    pub tolerance: f64,
}

impl MomentRequest {
    pub fn new(distribution: TlssDistribution, order: u32) -> Self {
        MomentRequest {
            distribution,
            order,
            method: MomentMethod::Quadrature,
            series_truncation: (60, 60),
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn evaluate(&self) -> Result<f64> {
        match self.method {
            MomentMethod::Quadrature => {
                moment_quadrature_tol(&self.distribution, self.order, self.tolerance)
            }
            MomentMethod::Series => {
                let (j, k) = self.series_truncation;
                moment_series(&self.distribution, self.order, j, k).map(|s| s.value)
            }
        }
    }
}

fn require_moments(kernel: &KernelSpec) -> Result<()> {
    if kernel.family().has_moments() {
        Ok(())
    } else {
        Err(TlssError::MomentNonexistence(kernel.family().name()))
    }
}

fn require_order(r: u32) -> Result<()> {
    if r == 0 {
        Err(TlssError::domain("moment order must be >= 1"))
    } else {
        Ok(())
    }
}

/// Integrates `g(y) f_Y(y)` over the real line in kernel probability
/// coordinates.
fn expect<G>(d: &TlssDistribution, g: G, tolerance: f64) -> Result<f64>
where
    G: Fn(f64) -> f64,
{
    let kernel = d.kernel();
    integrate_unit_pair(
        |u, v| {
            let y = kernel.quantile_pair(u, v);
            let w = d.weight_at(u);
            if w == 0.0 || !y.is_finite() {
                0.0
            } else {
                g(y) * w
            }
        },
        tolerance,
    )
    .map(|i| i.value)
}

/// E[Y^r] by quadrature.
pub fn moment_quadrature(d: &TlssDistribution, r: u32) -> Result<f64> {
    moment_quadrature_tol(d, r, DEFAULT_TOLERANCE)
}

pub fn moment_quadrature_tol(d: &TlssDistribution, r: u32, tolerance: f64) -> Result<f64> {
    require_moments(d.kernel())?;
    require_order(r)?;
    expect(d, |y| y.powi(r as i32), tolerance)
}

/// E|Y|^r by quadrature.
pub fn abs_moment(d: &TlssDistribution, r: u32) -> Result<f64> {
    require_moments(d.kernel())?;
    require_order(r)?;
    let kernel = d.kernel();
    integrate_unit_pair_split(
        |u, v| {
            let y = kernel.quantile_pair(u, v);
            let w = d.weight_at(u);
            if w == 0.0 || !y.is_finite() {
                0.0
            } else {
                y.abs().powi(r as i32) * w
            }
        },
        kernel.cdf_unchecked(0.0),
        DEFAULT_TOLERANCE,
    )
    .map(|i| i.value)
}

/// Central moment E[(Y - mean)^r].
pub fn central_moment(d: &TlssDistribution, r: u32) -> Result<f64> {
    require_order(r)?;
    let m = mean(d)?;
    require_moments(d.kernel())?;
    expect(d, |y| (y - m).powi(r as i32), DEFAULT_TOLERANCE)
}

pub fn mean(d: &TlssDistribution) -> Result<f64> {
    moment_quadrature(d, 1)
}

pub fn variance(d: &TlssDistribution) -> Result<f64> {
    central_moment(d, 2)
}

pub fn skewness(d: &TlssDistribution) -> Result<f64> {
    let v = variance(d)?;
    Ok(central_moment(d, 3)? / v.powf(1.5))
}

/// E[X^r_{m:m}], the r-th moment of the maximum of m kernel draws:
/// `m * int_0^1 Q(u)^r u^(m-1) du`.
pub fn order_statistic_moment(kernel: &KernelSpec, r: u32, m: u32) -> Result<f64> {
    require_moments(kernel)?;
    if m == 0 {
        return Err(TlssError::domain("sample size m must be >= 1"));
    }
    let mf = f64::from(m);
    integrate_unit_pair(
        |u, v| {
            let q = kernel.quantile_pair(u, v);
            mf * q.powi(r as i32) * u.powi(m as i32 - 1)
        },
        1e-12,
    )
    .map(|i| i.value)
}

fn check_mgf_domain(d: &TlssDistribution, t: f64) -> Result<()> {
    require_moments(d.kernel())?;
    if !t.is_finite() {
        return Err(TlssError::domain(format!("t must be finite, got {t}")));
    }
    let k = d.kernel();
    match k.family() {
        Family::Laplace | Family::Logistic if t.abs() * k.scale() >= 1.0 => {
            Err(TlssError::domain(format!(
                "mgf of the {} kernel requires |t| < 1/scale = {}, got {t}",
                k.family(),
                1.0 / k.scale()
            )))
        }
        _ => Ok(()),
    }
}

/// E[e^{tY}] by quadrature.
pub fn mgf_numeric(d: &TlssDistribution, t: f64) -> Result<f64> {
    check_mgf_domain(d, t)?;
    expect(d, |y| (t * y).exp(), 1e-12)
}

/// E[e^{itY}] as (real, imaginary) parts. Exists for every kernel.
pub fn chf_numeric(d: &TlssDistribution, t: f64) -> Result<(f64, f64)> {
    if !t.is_finite() {
        return Err(TlssError::domain(format!("t must be finite, got {t}")));
    }
    if t == 0.0 {
        return Ok((1.0, 0.0));
    }
    if d.kernel().family().has_moments() {
        let re = expect(d, |y| (t * y).cos(), 1e-11)?;
        let im = expect(d, |y| (t * y).sin(), 1e-11)?;
        return Ok((re, im));
    }
    // Heavy tails: in u coordinates the phase t Q(u) is unbounded at the
    // endpoints, so integrate on the line between zeros of the oscillating
    // factor and accelerate the alternating panel sums.
    let m = d.kernel().location();
    let w = t.abs();
    let f = |z: f64| d.pdf_unchecked(m + z) + d.pdf_unchecked(m - z);
    let g = |z: f64| d.pdf_unchecked(m + z) - d.pdf_unchecked(m - z);
    let h = std::f64::consts::PI / w;
    let c = oscillatory_half_line(|z| f(z) * (w * z).cos(), 0.5 * h, h)?;
    let s = t.signum() * oscillatory_half_line(|z| g(z) * (w * z).sin(), h, h)?;
    // e^{itm} (c + i s)
    let (sn, cs) = (t * m).sin_cos();
    Ok((c * cs - s * sn, c * sn + s * cs))
}

/// `int_0^inf f`, for f changing sign at `first`, `first + period`, ...
/// Partial sums over whole half-periods alternate; repeated averaging of
/// consecutive partial sums removes most of the oscillating remainder.
fn oscillatory_half_line<F>(f: F, first: f64, period: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    const PANELS: usize = 48;
    const AVERAGING: usize = 24;
    let panel = |a: f64, b: f64| {
        integrate_unit_pair(|u, v| f(a * v + b * u) * (b - a), 1e-15).map(|i| i.value)
    };
    let mut total = panel(0.0, first)?;
    let mut partial = Vec::with_capacity(PANELS);
    for k in 0..PANELS {
        let a = first + k as f64 * period;
        total += panel(a, a + period)?;
        partial.push(total);
    }
    for _ in 0..AVERAGING {
        partial = partial.windows(2).map(|p| 0.5 * (p[0] + p[1])).collect();
    }
    Ok(partial[partial.len() - 1])
}

/// Partial sum of the moment series and a size estimate of what was left out.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesMoment {
    pub value: f64,
    /// Largest magnitude among the last two shells added (or the leading
    /// shell when none was added).
    pub tail_bound: f64,
}

/// Euler-transformed value of the alternating series
/// `sum_{j>=0} (-1)^j (j+1)^{k+1}` through difference order `order`,
/// divided by k!. The summand is a polynomial of degree k+1 in j, so the
/// transform is exact once `order >= k + 1`.
fn euler_coefficient(k: usize, order: usize) -> f64 {
    let len = order + 1;
    let exponent = (k + 1) as u32;
    let mut table: Vec<BigInt> = (0..len)
        .map(|j| num_traits::pow(BigInt::from(j + 1), exponent as usize))
        .collect();
    // sum_n (-1)^n D_n / 2^{n+1} = (1 / 2^{len}) sum_n (-1)^n D_n 2^{len-1-n}
    let mut acc = BigInt::zero();
    for n in 0..len {
        let shift = (len - 1 - n) as u32;
        let term = &table[0] << shift;
        if n % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        for i in 0..table.len() - 1 {
            table[i] = &table[i + 1] - &table[i];
        }
        table.pop();
        if table.is_empty() {
            break;
        }
    }
    let mut den = BigInt::one() << (len as u32);
    for i in 2..=k {
        den *= BigInt::from(i);
    }
    BigRational::new(acc, den).to_f64().unwrap_or(f64::NAN)
}

/// Series evaluation of E[Y^r]:
///
/// ```text
/// E[Y^r] = lambda C(lambda) sum_k (-1)^k |lambda|^k / k!
///          * [sum_j (-1)^j (j+1)^{k+1}] * E[X^r_{k+1:k+1}] / (k+1)
/// ```
///
/// The j-series lies on its radius of convergence and is summed with an
/// Euler transform through difference order `euler_order`; `shells` is the
/// number of k terms kept.
pub fn moment_series(
    d: &TlssDistribution,
    r: u32,
    euler_order: usize,
    shells: usize,
) -> Result<SeriesMoment> {
    require_moments(d.kernel())?;
    require_order(r)?;
    let lambda = d.lambda();
    if lambda.abs() > SERIES_LAMBDA_LIMIT {
        return Err(TlssError::SeriesRange {
            lambda,
            limit: SERIES_LAMBDA_LIMIT,
        });
    }
    if euler_order > SERIES_MAX_TERMS || shells > SERIES_MAX_TERMS {
        return Err(TlssError::domain(format!(
            "series truncation indices must be <= {SERIES_MAX_TERMS}"
        )));
    }
    let a = lambda.abs();
    let prefactor = if d.is_limit() {
        4.0
    } else {
        scaled_normalizer(lambda)
    };

    let shell = |k: usize| -> Result<f64> {
        let c = euler_coefficient(k, euler_order);
        if c == 0.0 {
            return Ok(0.0);
        }
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        let m = (k + 1) as u32;
        let os = order_statistic_moment(d.kernel(), r, m)?;
        Ok(prefactor * sign * c * a.powi(k as i32) * os / f64::from(m))
    };

    if shells == 0 {
        return Ok(SeriesMoment {
            value: 0.0,
            tail_bound: shell(0)?.abs(),
        });
    }
    let mut value = 0.0;
    let mut last = [0.0f64; 2];
    for k in 0..shells {
        let s = if d.is_limit() && k > 0 {
            0.0
        } else {
            shell(k)?
        };
        value += s;
        last = [last[1], s.abs()];
    }
    Ok(SeriesMoment {
        value,
        tail_bound: last[0].max(last[1]),
    })
}
