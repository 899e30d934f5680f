//! Stationary points of the TLSS density.
//!
//! Differentiating `ln f_Y = ln f + ln w(lambda F)` gives the condition
//!
//! ```text
//! f'(y) / f(y)^2 = lambda tanh(lambda F(y) / 2)
//! ```
//!
//! whose right side is even in lambda. Roots are bracketed on a grid, refined
//! by bisection and classified by a finite-difference second derivative of
//! the density.

use serde::{Deserialize, Serialize};

use crate::dist::TlssDistribution;
use crate::error::{Result, TlssError};
use crate::kernel::{std_pdf, std_pdf_derivative, Family};

pub const DEFAULT_SEARCH_RADIUS: f64 = 10.0;
pub const DEFAULT_GRID_POINTS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModeKind {
    Maximum,
    Minimum,
    Inflection,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeResult {
    pub location: f64,
    pub kind: ModeKind,
    /// `f'/f^2 - lambda tanh(lambda F / 2)` at the location. Zero by
    /// convention at a Laplace kink, where the density is not differentiable.
    pub residual: f64,
    pub kink: bool,
}

/// Value of the stationarity condition, `f'/f^2 - lambda tanh(lambda F / 2)`.
pub fn mode_residual(d: &TlssDistribution, y: f64) -> f64 {
    let k = d.kernel();
    let z = k.standardize(y);
    let s = k.scale();
    let f = std_pdf(k.family(), z) / s;
    let fp = std_pdf_derivative(k.family(), z) / (s * s);
    fp / (f * f) - rhs(d, k.cdf_unchecked(y))
}

fn rhs(d: &TlssDistribution, kernel_cdf: f64) -> f64 {
    if d.is_limit() {
        0.0
    } else {
        let l = d.lambda();
        l * (0.5 * l * kernel_cdf).tanh()
    }
}

/// Sign-equivalent form of the residual, `f' - f^2 rhs`, that stays finite
/// where f underflows. `z` may be a signed zero to pick a one-sided slope at
/// the Laplace kink.
fn scaled_residual(d: &TlssDistribution, z: f64) -> f64 {
    let k = d.kernel();
    let s = k.scale();
    let f = std_pdf(k.family(), z) / s;
    let fp = std_pdf_derivative(k.family(), z) / (s * s);
    let y = k.location() + s * z;
    fp - f * f * rhs(d, k.cdf_unchecked(y))
}

fn second_derivative(d: &TlssDistribution, y: f64) -> f64 {
    let h = 1e-4 * d.kernel().scale();
    (d.pdf_unchecked(y + h) - 2.0 * d.pdf_unchecked(y) + d.pdf_unchecked(y - h)) / (h * h)
}

fn classify(d: &TlssDistribution, y: f64) -> ModeKind {
    let s = d.kernel().scale();
    let band = 1e-7 * d.pdf_unchecked(y) / (s * s);
    let c = second_derivative(d, y);
    if c < -band {
        ModeKind::Maximum
    } else if c > band {
        ModeKind::Minimum
    } else {
        ModeKind::Inflection
    }
}

/// Bisection on the standardized coordinate until the bracket is below 1e-12
/// (relative to max(1, |z|)).
fn bisect(d: &TlssDistribution, mut a: f64, mut b: f64, fa: f64) -> f64 {
    let sa = fa.signum();
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if (b - a).abs() <= 1e-12 * m.abs().max(1.0) || m == a || m == b {
            return m;
        }
        let fm = scaled_residual(d, m);
        if fm == 0.0 {
            return m;
        }
        if fm.signum() == sa {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

fn scan(d: &TlssDistribution, lo: f64, hi: f64, points: usize, out: &mut Vec<f64>) {
    let step = (hi - lo) / (points - 1) as f64;
    let z_at = |i: usize| {
        if i + 1 == points {
            hi
        } else {
            lo + step * i as f64
        }
    };
    let mut prev_z = z_at(0);
    let mut prev = scaled_residual(d, prev_z);
    for i in 1..points {
        let z = z_at(i);
        let cur = scaled_residual(d, z);
        if prev == 0.0 {
            if i >= 2 {
                let before = scaled_residual(d, z_at(i - 2));
                if before * cur < 0.0 {
                    out.push(prev_z);
                }
            }
        } else if cur != 0.0 && prev.signum() != cur.signum() {
            out.push(bisect(d, prev_z, z, prev));
        }
        prev_z = z;
        prev = cur;
    }
}

/// Finds stationary points within `search_radius` kernel scales of the
/// kernel location, sorted by location. An empty list means no sign change
/// was found on the grid.
pub fn find_modes(
    d: &TlssDistribution,
    search_radius: f64,
    grid_points: usize,
) -> Result<Vec<ModeResult>> {
    if grid_points < 16 {
        return Err(TlssError::domain(format!(
            "grid_points must be >= 16, got {grid_points}"
        )));
    }
    if !(search_radius.is_finite() && search_radius > 0.0) {
        return Err(TlssError::domain(format!(
            "search_radius must be finite and > 0, got {search_radius}"
        )));
    }
    let k = d.kernel();
    let (m, s) = (k.location(), k.scale());
    let mut roots = Vec::new();
    let mut out = Vec::new();

    if k.family() == Family::Laplace {
        // Piecewise smooth: scan each side, then test the kink.
        let half = grid_points / 2;
        scan(d, -search_radius, -f64::MIN_POSITIVE, half, &mut roots);
        scan(
            d,
            f64::MIN_POSITIVE,
            search_radius,
            grid_points - half,
            &mut roots,
        );
        let left = scaled_residual(d, -0.0);
        let right = scaled_residual(d, 0.0);
        let kind = match (left > 0.0, right > 0.0) {
            (true, false) => Some(ModeKind::Maximum),
            (false, true) => Some(ModeKind::Minimum),
            _ => None,
        };
        if let Some(kind) = kind {
            out.push(ModeResult {
                location: m,
                kind,
                residual: 0.0,
                kink: true,
            });
        }
    } else {
        scan(d, -search_radius, search_radius, grid_points, &mut roots);
    }

    for z in roots {
        let y = m + s * z;
        out.push(ModeResult {
            location: y,
            kind: classify(d, y),
            residual: mode_residual(d, y),
            kink: false,
        });
    }
    out.sort_by(|a, b| a.location.total_cmp(&b.location));
    Ok(out)
}

/// Central-difference derivative of the density.
pub fn density_slope(d: &TlssDistribution, y: f64) -> f64 {
    let h = 1e-5 * d.kernel().scale();
    (d.pdf_unchecked(y + h) - d.pdf_unchecked(y - h)) / (2.0 * h)
}
