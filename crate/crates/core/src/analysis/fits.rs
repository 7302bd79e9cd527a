use alloc::vec;

use crate::error::{check_non_negative, Error, Result};
use crate::math;
use crate::model::cross_correlation_from_efficiency;

use super::lm::{minimize, Solution};
use super::series::{DecaySeries, FitParameter, FitResult};

/// Functional form for [`fit_decay`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecayLaw {
    /// `A exp(-t/τ)`; the fitted `rate` is `1/τ`.
    Exponential,
    /// `A exp(-t²/τ²)`; the fitted `rate` is `1/τ²`.
    Gaussian,
}

impl DecayLaw {
    fn exponent(self, t: f64) -> f64 {
        match self {
            DecayLaw::Exponential => t,
            DecayLaw::Gaussian => t * t,
        }
    }

    fn lifetime(self, rate: f64, rate_se: f64) -> (f64, f64) {
        match self {
            DecayLaw::Exponential => (1.0 / rate, rate_se / (rate * rate)),
            DecayLaw::Gaussian => (1.0 / math::sqrt(rate), 0.5 * rate_se / (rate * math::sqrt(rate))),
        }
    }
}

/// Standard errors from the solver, scaled by the residual variance when the
/// series carries no per-point errors.
fn std_errors<const N: usize>(sol: &Solution<N>, series: &DecaySeries) -> [f64; N] {
    let dof = series.len().saturating_sub(N);
    let scale = if series.has_errors() {
        1.0
    } else if dof > 0 {
        sol.residual_norm * sol.residual_norm / dof as f64
    } else {
        0.0
    };
    core::array::from_fn(|k| math::sqrt((sol.inverse_normal[k][k] * scale).max(0.0)))
}

/// Slope and intercept of the ordinary least-squares line through `(x, y)`.
fn line_fit(points: impl Iterator<Item = (f64, f64)>) -> Option<(f64, f64)> {
    let (mut n, mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (x, y) in points {
        n += 1.0;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let det = n * sxx - sx * sx;
    if n < 2.0 || det <= 0.0 {
        return None;
    }
    let slope = (n * sxy - sx * sy) / det;
    Some((slope, (sy - slope * sx) / n))
}

/// Decay rates below this fraction of the inverse time span are reported as
/// an infinite lifetime.
const NEGLIGIBLE_DECAY: f64 = 1e-9;

/// Least-squares fit of a decaying series, returning `amplitude`, `rate` and
/// `tau` (infinite for a flat series).
pub fn fit_decay(series: &DecaySeries, law: DecayLaw) -> Result<FitResult> {
    if series.len() < 3 {
        return Err(Error::InsufficientData("a decay fit needs at least 3 points"));
    }
    let pts = series.points();
    let span = law.exponent(pts[pts.len() - 1].t.abs().max(pts[0].t.abs()));
    let guess = line_fit(pts.iter().filter(|p| p.value > 0.0).map(|p| (law.exponent(p.t), math::ln(p.value))))
        .map(|(slope, icept)| [math::exp(icept), (-slope).max(0.0)])
        .unwrap_or_else(|| [pts.iter().map(|p| p.value).fold(f64::MIN, f64::max), 0.0]);

    let sol = minimize(
        |x: &[f64; 2], i| {
            let p = pts[i];
            (x[0] * math::exp(-x[1] * law.exponent(p.t)) - p.value) * series.weight(i)
        },
        pts.len(),
        guess,
    )?;
    let [amp_se, rate_se] = std_errors(&sol, series);
    let [amplitude, rate] = sol.x;
    if rate * span < -NEGLIGIBLE_DECAY {
        return Err(Error::IllPosed("fitted decay rate is negative: the series grows"));
    }
    let (tau, tau_se) =
        if rate * span <= NEGLIGIBLE_DECAY { (f64::INFINITY, f64::INFINITY) } else { law.lifetime(rate, rate_se) };
    Ok(FitResult {
        parameters: vec![
            FitParameter { name: "amplitude", value: amplitude, std_error: amp_se },
            FitParameter { name: "rate", value: rate, std_error: rate_se },
            FitParameter { name: "tau", value: tau, std_error: tau_se },
        ],
        residual_norm: sol.residual_norm,
        iterations: sol.iterations,
        clamped: false,
    })
}

/// One-parameter fit of the spontaneous-emission noise fraction `xi_se` in
/// `g = 1 + γ/(χγ + χ(1-γ)ξ_se + Z)`, with `γ(t)` given by `gamma` and χ, Z fixed.
///
/// The result is clamped to [0, 1]; `clamped` flags a fit that wanted to leave
/// that range.
pub fn fit_cross_correlation(
    series: &DecaySeries,
    gamma: impl Fn(f64) -> f64,
    chi: f64,
    z_noise: f64,
) -> Result<FitResult> {
    check_non_negative("chi", chi)?;
    check_non_negative("z_noise", z_noise)?;
    if series.len() < 2 {
        return Err(Error::InsufficientData("a cross-correlation fit needs at least 2 points"));
    }
    let pts = series.points();
    let gammas: alloc::vec::Vec<f64> = pts.iter().map(|p| gamma(p.t)).collect();
    let residual = |x: &[f64; 1], i: usize| {
        let g = cross_correlation_from_efficiency(gammas[i], chi, x[0], z_noise).unwrap_or(f64::NAN);
        (g - pts[i].value) * series.weight(i)
    };
    let cost = |xi: f64| (0..pts.len()).map(|i| residual(&[xi], i).powi(2)).sum::<f64>();
    let start = (0..=20)
        .map(|k| k as f64 / 20.0)
        .filter(|&xi| cost(xi).is_finite())
        .min_by(|a, b| cost(*a).total_cmp(&cost(*b)))
        .ok_or(Error::IllPosed("cross-correlation model is undefined for every ξ_se in [0, 1]"))?;
    let sol = minimize(residual, pts.len(), [start])?;
    let [se] = std_errors(&sol, series);
    let xi = sol.x[0].clamp(0.0, 1.0);
    Ok(FitResult {
        parameters: vec![FitParameter { name: "xi_se", value: xi, std_error: se }],
        residual_norm: sol.residual_norm,
        iterations: sol.iterations,
        clamped: xi != sol.x[0],
    })
}

/// Fit of `V(t) = V_g(t) ξ' exp(-t/τ0)` for the contrast factor and the
/// dephasing lifetime, with the SMFF-free visibility `V_g(t)` given by `vg`.
///
/// Returns `xi_prime`, `rate` (1/τ0), `tau_0` and the field-noise width
/// `sigma_b = 1/(2π μ' τ0)` for a phase-difference sensitivity `mu_prime`.
pub fn fit_visibility_dephasing(series: &DecaySeries, vg: impl Fn(f64) -> f64, mu_prime: f64) -> Result<FitResult> {
    if !(mu_prime > 0.0) {
        return Err(Error::invalid("mu_prime", "must be positive"));
    }
    if series.len() < 3 {
        return Err(Error::InsufficientData("a dephasing fit needs at least 3 points"));
    }
    let pts = series.points();
    let base: alloc::vec::Vec<f64> = pts.iter().map(|p| vg(p.t)).collect();
    if base.iter().any(|b| !(*b > 0.0)) {
        return Err(Error::invalid("vg", "SMFF-free visibility must be positive at every sample"));
    }
    let span = pts[pts.len() - 1].t.abs().max(pts[0].t.abs());
    let guess =
        line_fit(pts.iter().zip(&base).filter(|(p, _)| p.value > 0.0).map(|(p, b)| (p.t, math::ln(p.value / b))))
            .map(|(slope, icept)| [math::exp(icept), (-slope).max(0.0)])
            .unwrap_or([1.0, 0.0]);
    let sol = minimize(
        |x: &[f64; 2], i| (base[i] * x[0] * math::exp(-x[1] * pts[i].t) - pts[i].value) * series.weight(i),
        pts.len(),
        guess,
    )?;
    let [xi_se, rate_se] = std_errors(&sol, series);
    let [xi_prime, rate] = sol.x;
    if rate * span < -NEGLIGIBLE_DECAY {
        return Err(Error::IllPosed("fitted dephasing lifetime is not positive"));
    }
    let (tau, tau_se, sigma, sigma_se) = if rate * span <= NEGLIGIBLE_DECAY {
        (f64::INFINITY, f64::INFINITY, 0.0, rate_se / (math::TAU * mu_prime))
    } else {
        (1.0 / rate, rate_se / (rate * rate), rate / (math::TAU * mu_prime), rate_se / (math::TAU * mu_prime))
    };
    Ok(FitResult {
        parameters: vec![
            FitParameter { name: "xi_prime", value: xi_prime, std_error: xi_se },
            FitParameter { name: "rate", value: rate, std_error: rate_se },
            FitParameter { name: "tau_0", value: tau, std_error: tau_se },
            FitParameter { name: "sigma_b", value: sigma, std_error: sigma_se },
        ],
        residual_norm: sol.residual_norm,
        iterations: sol.iterations,
        clamped: false,
    })
}
