use crate::error::{check_non_negative, check_time, Result};
use crate::lifetime::Lifetime;
use crate::math;

/// Coherence lifetime `τ0 = (2π μ' σ)^-1` of a phase channel driven by
/// Lorentzian field noise of half-width `sigma` (G) with sensitivity
/// `mu_prime` (Hz/G).
///
/// For a link, `mu_prime` is the common clock sensitivity and `sigma` is the
/// relative width σ_Δ. For two modes of one ensemble, `mu_prime` is the
/// sensitivity difference and `sigma` is σ_B.
pub fn dephasing_lifetime(mu_prime: f64, sigma: f64) -> Result<Lifetime> {
    check_non_negative("mu_prime", mu_prime)?;
    check_non_negative("sigma", sigma)?;
    Ok(Lifetime::from_rate(math::TAU * mu_prime * sigma))
}

/// Fringe damping `|<exp(i 2π μ' δB t)>| = exp(-2π μ' σ t)` averaged over a
/// Lorentzian of half-width `sigma`.
pub fn lorentzian_characteristic(mu_prime: f64, sigma: f64, t: f64) -> Result<f64> {
    check_time(t)?;
    Ok(dephasing_lifetime(mu_prime, sigma)?.decay(t))
}
