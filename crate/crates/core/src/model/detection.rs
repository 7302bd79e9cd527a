use crate::error::{check_time, Error, Result};
use crate::lifetime::Lifetime;
use crate::math;

use super::params::EnsembleParams;

/// Stokes/anti-Stokes cross-correlation of one ensemble,
/// `g = 1 + γ / (χγ + χ(1-γ)ξ_se + Z)`.
pub fn cross_correlation(p: &EnsembleParams, t: f64) -> Result<f64> {
    let gamma = p.retrieval(t)?;
    cross_correlation_from_efficiency(gamma, p.chi, p.xi_se, p.z_noise)
}

/// [`cross_correlation`] for a known retrieval efficiency `gamma`.
pub fn cross_correlation_from_efficiency(gamma: f64, chi: f64, xi_se: f64, z_noise: f64) -> Result<f64> {
    let noise = chi * gamma + chi * (1.0 - gamma) * xi_se + z_noise;
    if gamma == 0.0 {
        return Ok(1.0);
    }
    if noise <= 0.0 {
        return Err(Error::IllPosed("cross-correlation denominator χγ + χ(1-γ)ξ_se + Z vanishes"));
    }
    Ok(1.0 + gamma / noise)
}

/// Heralded single-photon interference visibility
/// `V = ζ ξ' (g-1)/(g+1) exp(-t/τ0)`.
///
/// Use `xi_prime = 1` for a link and for a same-sensitivity pair, and an
/// infinite `tau_0` when the stored phases share the field noise.
pub fn visibility(g: f64, t: f64, tau_0: Lifetime, zeta: f64, xi_prime: f64) -> Result<f64> {
    check_time(t)?;
    if g.is_nan() || g < 1.0 {
        return Err(Error::invalid("g", "cross-correlation must be >= 1"));
    }
    let contrast = if g.is_infinite() { 1.0 } else { (g - 1.0) / (g + 1.0) };
    Ok(zeta * xi_prime * contrast * tau_0.decay(t))
}

/// Detection probabilities for the link's D_S1/D_aS1 coincidence channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoincidenceBreakdown {
    /// Stokes detection probability of one ensemble, `χη`.
    pub p_s: f64,
    /// Anti-Stokes detection probability of one ensemble,
    /// `χγη + χ(1-γ)ξ_se η + Zη`.
    pub p_as: f64,
    /// Probability of a click at D_S1.
    pub p_s1: f64,
    /// Probability of a click at D_aS1.
    pub p_as1: f64,
    /// Conditional D_aS1 click probability from the heralded excitation.
    pub p_c: f64,
    /// D_S1 and D_aS1 coincidence probability.
    pub p_coincidence: f64,
}

/// Coincidence probability between D_S1 and D_aS1 at interferometer phase `theta`,
/// to first order in χ.
pub fn coincidence_probability(
    theta: f64,
    p: &EnsembleParams,
    tau_0: Lifetime,
    t: f64,
) -> Result<CoincidenceBreakdown> {
    coincidence_probability_with_overlap(theta, p, tau_0, t, 1.0)
}

/// [`coincidence_probability`] with the interference term scaled by the arm
/// overlap `zeta`. `zeta = 1` is the ideal-overlap expression.
pub fn coincidence_probability_with_overlap(
    theta: f64,
    p: &EnsembleParams,
    tau_0: Lifetime,
    t: f64,
    zeta: f64,
) -> Result<CoincidenceBreakdown> {
    check_time(t)?;
    let gamma = p.retrieval(t)?;
    let eta = p.eta;
    let p_s = p.chi * eta;
    let p_as = p.chi * gamma * eta + p.chi * (1.0 - gamma) * p.xi_se * eta + p.z_noise * eta;
    // 50/50 splitting times two symmetric sources
    let p_s1 = 0.5 * (2.0 * p_s);
    let p_as1 = 0.5 * (2.0 * p_as);
    let p_c = eta * gamma * (1.0 + zeta * tau_0.decay(t) * math::cos(theta)) / 2.0;
    Ok(CoincidenceBreakdown { p_s, p_as, p_s1, p_as1, p_c, p_coincidence: p_s1 * p_c + p_s1 * p_as1 })
}
