//! Small dense Levenberg–Marquardt solver for fits with a handful of parameters.

use crate::error::{Error, Result};
use crate::math;

const MAX_ITERATIONS: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Solution<const N: usize> {
    pub x: [f64; N],
    /// `(JᵀJ)⁻¹` at the solution, unscaled.
    pub inverse_normal: [[f64; N]; N],
    pub residual_norm: f64,
    pub iterations: usize,
}

fn cost<const N: usize>(residual: &impl Fn(&[f64; N], usize) -> f64, x: &[f64; N], m: usize) -> f64 {
    (0..m).map(|i| residual(x, i).powi(2)).sum()
}

fn jacobian_row<const N: usize>(residual: &impl Fn(&[f64; N], usize) -> f64, x: &[f64; N], i: usize) -> [f64; N] {
    core::array::from_fn(|k| {
        let h = 1e-6 * x[k].abs().max(1e-4);
        let (mut hi, mut lo) = (*x, *x);
        hi[k] += h;
        lo[k] -= h;
        (residual(&hi, i) - residual(&lo, i)) / (2.0 * h)
    })
}

/// Solves `a x = b` for a small symmetric positive-definite `a` by Cholesky.
fn solve<const N: usize>(a: &[[f64; N]; N], b: &[f64; N]) -> Option<[f64; N]> {
    let mut l = [[0.0; N]; N];
    for i in 0..N {
        for j in 0..=i {
            let s = a[i][j] - (0..j).map(|k| l[i][k] * l[j][k]).sum::<f64>();
            if i == j {
                if s <= 1e-12 * a[i][i] || !s.is_finite() {
                    return None;
                }
                l[i][i] = math::sqrt(s);
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    let mut y = [0.0; N];
    for i in 0..N {
        y[i] = (b[i] - (0..i).map(|k| l[i][k] * y[k]).sum::<f64>()) / l[i][i];
    }
    let mut x = [0.0; N];
    for i in (0..N).rev() {
        x[i] = (y[i] - (i + 1..N).map(|k| l[k][i] * x[k]).sum::<f64>()) / l[i][i];
    }
    Some(x)
}

fn invert<const N: usize>(a: &[[f64; N]; N]) -> Option<[[f64; N]; N]> {
    let mut inv = [[0.0; N]; N];
    for k in 0..N {
        let mut e = [0.0; N];
        e[k] = 1.0;
        let col = solve(a, &e)?;
        for i in 0..N {
            inv[i][k] = col[i];
        }
    }
    Some(inv)
}

/// Minimises `Σ residual(x, i)²` over `i < m` starting from `x0`.
///
/// Jacobians are central finite differences, so residuals must be smooth
/// near the path of the iteration.
pub(crate) fn minimize<const N: usize>(
    residual: impl Fn(&[f64; N], usize) -> f64,
    m: usize,
    x0: [f64; N],
) -> Result<Solution<N>> {
    let mut x = x0;
    let mut c = cost(&residual, &x, m);
    if !c.is_finite() {
        return Err(Error::FitNotConverged { iterations: 0, residual_norm: c, reason: "non-finite residual at start" });
    }
    let mut lambda = 1e-3;
    let mut iterations = 0;
    loop {
        let mut jtj = [[0.0; N]; N];
        let mut jtr = [0.0; N];
        for i in 0..m {
            let row = jacobian_row(&residual, &x, i);
            let r = residual(&x, i);
            for a in 0..N {
                jtr[a] += row[a] * r;
                for b in 0..N {
                    jtj[a][b] += row[a] * row[b];
                }
            }
        }
        let gradient = jtr.iter().map(|g| g.abs()).fold(0.0, f64::max);
        if gradient <= 1e-15 * (1.0 + c) || c == 0.0 || iterations == MAX_ITERATIONS {
            let converged = iterations < MAX_ITERATIONS;
            return match (converged, invert(&jtj)) {
                (true, Some(inverse_normal)) => {
                    Ok(Solution { x, inverse_normal, residual_norm: math::sqrt(c), iterations })
                }
                (true, None) => Err(Error::FitNotConverged {
                    iterations,
                    residual_norm: math::sqrt(c),
                    reason: "parameters are not identifiable from the data",
                }),
                (false, _) => Err(Error::FitNotConverged {
                    iterations,
                    residual_norm: math::sqrt(c),
                    reason: "iteration limit reached",
                }),
            };
        }
        iterations += 1;

        let mut accepted = false;
        while lambda < 1e16 {
            let mut damped = jtj;
            for (a, row) in damped.iter_mut().enumerate() {
                row[a] += lambda * jtj[a][a].max(1e-300);
            }
            let neg: [f64; N] = core::array::from_fn(|a| -jtr[a]);
            if let Some(step) = solve(&damped, &neg) {
                let trial: [f64; N] = core::array::from_fn(|a| x[a] + step[a]);
                let trial_cost = cost(&residual, &trial, m);
                if trial_cost.is_finite() && trial_cost <= c {
                    let small_step = (0..N).all(|a| step[a].abs() <= 1e-13 * (x[a].abs() + 1e-300));
                    let stalled = c - trial_cost <= 1e-15 * c;
                    x = trial;
                    c = trial_cost;
                    lambda = (lambda * 0.3).max(1e-12);
                    accepted = true;
                    if small_step || stalled {
                        lambda = f64::INFINITY;
                    }
                    break;
                }
            }
            lambda *= 10.0;
        }
        if !accepted || lambda.is_infinite() {
            // no downhill step left at this precision: x is the minimum
            let mut jtj = [[0.0; N]; N];
            for i in 0..m {
                let row = jacobian_row(&residual, &x, i);
                for a in 0..N {
                    for b in 0..N {
                        jtj[a][b] += row[a] * row[b];
                    }
                }
            }
            return match invert(&jtj) {
                Some(inverse_normal) => Ok(Solution { x, inverse_normal, residual_norm: math::sqrt(c), iterations }),
                None => Err(Error::FitNotConverged {
                    iterations,
                    residual_norm: math::sqrt(c),
                    reason: "parameters are not identifiable from the data",
                }),
            };
        }
    }
}
