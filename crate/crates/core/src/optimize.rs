//! Nelder-Mead simplex minimization.
//!
//! Uses the dimension-adaptive coefficients of Gao and Han, which keep the
//! simplex from collapsing prematurely in a few dimensions. Non-finite
//! objective values count as +inf, so the simplex steps back from them.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadOptions {
    pub max_iterations: usize,
    /// Converged once every vertex lies within this distance (max norm) of
    /// the best one.
    pub diameter_tolerance: f64,
    /// Fresh simplices built around the converged point to guard against
    /// collapse onto a non-stationary point.
    pub restarts: usize,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        NelderMeadOptions {
            max_iterations: 20_000,
            diameter_tolerance: 1e-6,
            restarts: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub diameter: f64,
    pub converged: bool,
}

fn clean(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

fn diameter(simplex: &[Vec<f64>]) -> f64 {
    let best = &simplex[0];
    simplex[1..]
        .iter()
        .flat_map(|v| v.iter().zip(best).map(|(a, b)| (a - b).abs()))
        .fold(0.0, f64::max)
}

/// Minimizes `f` from `x0` with initial edge lengths `step`.
pub fn nelder_mead<F>(f: F, x0: &[f64], step: &[f64], opts: &NelderMeadOptions) -> Minimum
where
    F: Fn(&[f64]) -> f64,
{
    let mut best = run(&f, x0, step, opts, opts.max_iterations);
    let mut used = best.iterations;
    for _ in 0..opts.restarts {
        if used >= opts.max_iterations {
            break;
        }
        let restart_step: Vec<f64> = step
            .iter()
            .map(|s| (s * 1e-2).max(1e3 * opts.diameter_tolerance))
            .collect();
        let next = run(&f, &best.x, &restart_step, opts, opts.max_iterations - used);
        used += next.iterations;
        let improved = next.value < best.value - 1e-14 * best.value.abs().max(1.0);
        let settled = next.converged && !improved;
        if next.value <= best.value {
            best = next;
        }
        if settled {
            break;
        }
    }
    best.iterations = used;
    best
}

fn run<F>(f: &F, x0: &[f64], step: &[f64], opts: &NelderMeadOptions, budget: usize) -> Minimum
where
    F: Fn(&[f64]) -> f64,
{
    let n = x0.len();
    let nf = n as f64;
    let (alpha, beta, gamma, delta) = if n >= 2 {
        (1.0, 1.0 + 2.0 / nf, 0.75 - 0.5 / nf, 1.0 - 1.0 / nf)
    } else {
        (1.0, 2.0, 0.5, 0.5)
    };

    let mut simplex: Vec<Vec<f64>> = vec![x0.to_vec()];
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += step[i];
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| clean(f(v))).collect();

    let mut iterations = 0;
    loop {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let d = diameter(&simplex);
        if d < opts.diameter_tolerance || iterations >= budget {
            return Minimum {
                x: simplex[0].clone(),
                value: values[0],
                iterations,
                diameter: d,
                converged: d < opts.diameter_tolerance,
            };
        }
        iterations += 1;

        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|v| v[j]).sum::<f64>() / nf)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = along(alpha);
        let fr = clean(f(&xr));
        if fr < values[0] {
            let xe = along(alpha * beta);
            let fe = clean(f(&xe));
            if fe < fr {
                simplex[n] = xe;
                values[n] = fe;
            } else {
                simplex[n] = xr;
                values[n] = fr;
            }
            continue;
        }
        if fr < values[n - 1] {
            simplex[n] = xr;
            values[n] = fr;
            continue;
        }
        let (xc, fc) = if fr < values[n] {
            let xc = along(alpha * gamma);
            let fc = clean(f(&xc));
            (xc, fc)
        } else {
            let xc = along(-gamma);
            let fc = clean(f(&xc));
            (xc, fc)
        };
        if fc < values[n].min(fr) {
            simplex[n] = xc;
            values[n] = fc;
            continue;
        }
        // shrink toward the best vertex
        for i in 1..=n {
            let v: Vec<f64> = simplex[0]
                .iter()
                .zip(&simplex[i])
                .map(|(b, x)| b + delta * (x - b))
                .collect();
            values[i] = clean(f(&v));
            simplex[i] = v;
        }
    }
}
