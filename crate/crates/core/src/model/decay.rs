use crate::error::{check_time, Result};
use crate::lifetime::Lifetime;
use crate::math;

use super::params::{DecayModel, MotionBroadeningParams};

/// Motional, gradient and combined amplitude lifetimes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotionLifetimes {
    /// Atomic-motion lifetime `1 / (Δk v_s)`.
    pub tau_1: Lifetime,
    /// Gradient-broadening lifetime `1 / (2π μ' B' l)`.
    pub tau_2: Lifetime,
    /// Combined `τ1 τ2 / sqrt(τ1² + τ2²)`.
    pub tau_d: Lifetime,
}

/// Lifetimes of the spin-wave amplitude set by atomic motion and by the field gradient.
///
/// A vanishing rate gives [`Lifetime::Infinite`]. The combination works on
/// rates, `1/τ_D = sqrt(1/τ1² + 1/τ2²)`, so infinite parts drop out exactly.
pub fn motion_lifetimes(p: &MotionBroadeningParams) -> MotionLifetimes {
    let rate_1 = p.delta_k * p.v_s;
    let rate_2 = math::TAU * p.mu_prime * p.b_gradient * p.l;
    MotionLifetimes {
        tau_1: Lifetime::from_rate(rate_1),
        tau_2: Lifetime::from_rate(rate_2),
        tau_d: Lifetime::from_rate(math::hypot(rate_1, rate_2)),
    }
}

/// Magnitude of the spin-wave amplitude factor `|D(t)|`.
pub fn amplitude_factor(decay: &DecayModel, t: f64) -> Result<f64> {
    check_time(t)?;
    let d = match *decay {
        DecayModel::GaussianAmplitude { tau_d } => gaussian(t, Lifetime::Finite(tau_d)),
        DecayModel::ExponentialEfficiency { tau_d } => math::exp(-t / (2.0 * tau_d)),
        DecayModel::FromMotion(ref m) => {
            let l = motion_lifetimes(m);
            gaussian(t, l.tau_1) * gaussian(t, l.tau_2)
        }
    };
    Ok(d)
}

fn gaussian(t: f64, tau: Lifetime) -> f64 {
    let r = tau.rate();
    if r == 0.0 {
        1.0
    } else {
        let x = t * r;
        math::exp(-0.5 * x * x)
    }
}

/// Retrieval efficiency `γ(t) = γ0 |D(t)|²`.
pub fn retrieval_efficiency(gamma_0: f64, decay: &DecayModel, t: f64) -> Result<f64> {
    crate::error::check_probability("gamma_0", gamma_0)?;
    let d = amplitude_factor(decay, t)?;
    Ok(gamma_0 * d * d)
}
