//! Scalar special functions shared by the kernels and the likelihood code.
//!
//! The standard normal cdf goes through `libm::erfc`, which is the msun
//! rational minimax scheme (sub-ulp on the whole line). The quantile starts
//! from Acklam's rational approximation (relative error about 1.2e-9) and is
//! polished with one Halley step against that cdf.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

pub const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
pub const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Standard normal density.
#[inline]
pub fn norm_pdf(z: f64) -> f64 {
    FRAC_1_SQRT_2PI * (-0.5 * z * z).exp()
}

/// Standard normal cdf, accurate in relative terms in the lower tail.
#[inline]
pub fn norm_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z * FRAC_1_SQRT_2)
}

/// Standard normal survival function 1 - Phi(z).
#[inline]
pub fn norm_sf(z: f64) -> f64 {
    0.5 * libm::erfc(z * FRAC_1_SQRT_2)
}

/// ln Phi(z). Switches to the Mills-ratio expansion once `erfc` would underflow.
pub fn norm_ln_cdf(z: f64) -> f64 {
    if z > -37.0 {
        norm_cdf(z).ln()
    } else {
        let z2 = z * z;
        let r = 1.0 / z2;
        let series = 1.0 + r * (-1.0 + r * (3.0 + r * (-15.0 + r * (105.0 - 945.0 * r))));
        -0.5 * z2 - LN_SQRT_2PI - (-z).ln() + series.ln()
    }
}

const ACKLAM_A: [f64; 6] = [
    -3.969_683_028_665_376e1,
    2.209_460_984_245_205e2,
    -2.759_285_104_469_687e2,
    1.383_577_518_672_69e2,
    -3.066_479_806_614_716e1,
    2.506_628_277_459_239,
];
const ACKLAM_B: [f64; 5] = [
    -5.447_609_879_822_406e1,
    1.615_858_368_580_409e2,
    -1.556_989_798_598_866e2,
    6.680_131_188_771_972e1,
    -1.328_068_155_288_572e1,
];
const ACKLAM_C: [f64; 6] = [
    -7.784_894_002_430_293e-3,
    -3.223_964_580_411_365e-1,
    -2.400_758_277_161_838,
    -2.549_732_539_343_734,
    4.374_664_141_464_968,
    2.938_163_982_698_783,
];
const ACKLAM_D: [f64; 4] = [
    7.784_695_709_041_462e-3,
    3.224_671_290_700_398e-1,
    2.445_134_137_142_996,
    3.754_408_661_907_416,
];

fn acklam(p: f64) -> f64 {
    const P_LOW: f64 = 0.02425;
    let (a, b, c, d) = (&ACKLAM_A, &ACKLAM_B, &ACKLAM_C, &ACKLAM_D);
    if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5])
            / ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q
            / (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5])
            / ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0)
    }
}

/// Standard normal quantile for `p` in (0, 1). Caller validates the range.
pub fn norm_quantile(p: f64) -> f64 {
    if p == 0.5 {
        return 0.0;
    }
    // Work on the lower half so that the Halley residual is computed from a
    // small, relatively accurate tail probability.
    let (tail, sign) = if p < 0.5 { (p, 1.0) } else { (1.0 - p, -1.0) };
    let x = acklam(tail);
    let u = if tail < 1e-290 {
        // exp(x^2/2) overflows; form (Phi(x) - p) / phi(x) in log space.
        let ln_phi = -0.5 * x * x - LN_SQRT_2PI;
        (norm_ln_cdf(x) - ln_phi).exp() - (tail.ln() - ln_phi).exp()
    } else {
        (norm_cdf(x) - tail) * (2.0 * PI).sqrt() * (0.5 * x * x).exp()
    };
    let x = x - u / (1.0 + 0.5 * x * u);
    // Upper-half inputs: `1 - p` loses the low bits of p; one more Newton step
    // against the full cdf recovers them.
    let x = sign * x;
    if sign < 0.0 {
        let e = norm_cdf(x) - p;
        x - e / norm_pdf(x)
    } else {
        x
    }
}

/// ln(1 + e^x) without overflow.
#[inline]
pub fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// ln of the logistic weight e^{-t} / (1 + e^{-t})^2, which is even in t.
#[inline]
pub fn ln_logistic_weight(t: f64) -> f64 {
    let a = t.abs();
    -a - 2.0 * (-a).exp().ln_1p()
}

/// The logistic weight e^{-t} / (1 + e^{-t})^2.
#[inline]
pub fn logistic_weight(t: f64) -> f64 {
    let e = (-t.abs()).exp();
    e / ((1.0 + e) * (1.0 + e))
}

/// ln |tanh(x)|, accurate for tiny and large |x|.
pub fn ln_abs_tanh(x: f64) -> f64 {
    let a = x.abs();
    if a < 1e-4 {
        let a2 = a * a;
        a.ln() + (-a2 / 3.0 + 2.0 * a2 * a2 / 15.0).ln_1p()
    } else {
        let e = (-2.0 * a).exp();
        (-e).ln_1p() - e.ln_1p()
    }
}

/// x / tanh(x / 2), the even function equal to 2 at the origin.
#[inline]
pub fn x_over_tanh_half(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        2.0 + x * x / 6.0
    } else {
        x / (0.5 * x).tanh()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_reference_values() {
        assert!((norm_pdf(0.0) - 0.398_942_280_401_432_7).abs() < 1e-16);
        assert!((norm_cdf(1.959_963_984_540_054) - 0.975).abs() < 1e-15);
        assert_eq!(norm_cdf(0.0), 0.5);
        assert!((norm_quantile(0.975) - 1.959_963_984_540_054).abs() < 1e-13);
    }

    #[test]
    fn quantile_round_trip_tails() {
        for &p in &[
            1e-300,
            1e-100,
            1e-20,
            1e-10,
            1e-5,
            0.01,
            0.3,
            0.5,
            0.7,
            0.99,
            1.0 - 1e-10,
        ] {
            let x = norm_quantile(p);
            let back = norm_cdf(x);
            assert!(((back - p) / p).abs() < 1e-12, "p={p} x={x} back={back}");
        }
    }

    #[test]
    fn ln_cdf_is_continuous_at_switch() {
        let below = norm_ln_cdf(-37.0 - 1e-9);
        let above = norm_ln_cdf(-37.0 + 1e-9);
        assert!((below - above).abs() < 1e-7);
        assert!(norm_ln_cdf(-100.0).is_finite());
    }

    #[test]
    fn log_weight_matches_direct() {
        for &t in &[-30.0, -2.0, -1e-9, 0.0, 0.5, 3.0, 700.0] {
            let direct = logistic_weight(t).ln();
            assert!((ln_logistic_weight(t) - direct).abs() < 1e-12, "t={t}");
        }
        assert!(ln_logistic_weight(1e5).is_finite());
    }

    #[test]
    fn ln_abs_tanh_branches() {
        for &x in &[1e-12f64, 1e-5, 9.9e-5, 1.01e-4, 0.3, 5.0, -2.0] {
            let direct = x.tanh().abs().ln();
            assert!((ln_abs_tanh(x) - direct).abs() < 1e-12, "x={x}");
        }
    }
}
