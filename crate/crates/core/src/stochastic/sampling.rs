use rand::distr::Open01;
use rand::Rng;

use crate::error::{check_non_negative, check_time, Error, Result};
use crate::math;
use crate::model::{LinkConfig, SupplyTopology};

use super::rng::TrialRandomness;

/// Inverse-CDF Lorentzian sample `σ tan(π(u - 1/2))` for `u` in (0, 1).
pub fn lorentzian_from_uniform(sigma: f64, u: f64) -> f64 {
    if sigma == 0.0 {
        0.0
    } else {
        sigma * math::tan(core::f64::consts::PI * (u - 0.5))
    }
}

/// One Lorentzian field fluctuation of half-width `sigma` from the trial's stream.
///
/// Samples are not truncated; everything downstream only takes cos/sin of them.
pub fn sample_lorentzian(sigma: f64, r: TrialRandomness) -> f64 {
    sample_lorentzian_with(sigma, &mut r.rng())
}

pub fn sample_lorentzian_with<R: Rng + ?Sized>(sigma: f64, rng: &mut R) -> f64 {
    let u: f64 = rng.sample(Open01);
    lorentzian_from_uniform(sigma, u)
}

/// Stored-phase noise `(δφ_L, δφ_R) = 2π μ' δB t` of the two link nodes.
///
/// Independent supplies draw two fluctuations; a shared supply draws one and
/// applies it to both nodes.
pub fn sample_link_phases(cfg: &LinkConfig, t: f64, r: TrialRandomness) -> Result<(f64, f64)> {
    check_time(t)?;
    Ok(sample_link_phases_with(cfg, t, &mut r.rng()))
}

pub fn sample_link_phases_with<R: Rng + ?Sized>(cfg: &LinkConfig, t: f64, rng: &mut R) -> (f64, f64) {
    let sigma = cfg.noise.sigma_b;
    let (db_l, db_r) = match cfg.noise.topology {
        SupplyTopology::IndependentSupplies => {
            let l = sample_lorentzian_with(sigma, rng);
            (l, sample_lorentzian_with(sigma, rng))
        }
        SupplyTopology::SharedSupply => {
            let b = sample_lorentzian_with(sigma, rng);
            (b, b)
        }
    };
    (math::TAU * cfg.mode_l.mu_prime * db_l * t, math::TAU * cfg.mode_r.mu_prime * db_r * t)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseAverage {
    pub mean_cos: f64,
    pub std_error: f64,
}

/// Monte-Carlo estimate of `<cos(2π μ' δB t)>` over Lorentzian δB.
pub fn mc_phase_average(mu_prime: f64, sigma: f64, t: f64, n: u64, seed: u64) -> Result<PhaseAverage> {
    check_time(t)?;
    check_non_negative("sigma", sigma)?;
    if n < 1000 {
        return Err(Error::invalid("n", "at least 1000 trials are required"));
    }
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for i in 0..n {
        let db = sample_lorentzian(sigma, TrialRandomness::new(seed, i));
        let c = math::cos(math::TAU * mu_prime * db * t);
        sum += c;
        sum_sq += c * c;
    }
    let nf = n as f64;
    let mean = sum / nf;
    let var = (sum_sq / nf - mean * mean).max(0.0) * nf / (nf - 1.0);
    Ok(PhaseAverage { mean_cos: mean, std_error: math::sqrt(var / nf) })
}
