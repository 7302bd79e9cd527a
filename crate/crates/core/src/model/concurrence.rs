use crate::error::{check_probability, Error, Result};
use crate::math;

/// Concurrence of the heralded two-mode state from photon-number
/// probabilities and the fringe visibility:
/// `C = max(0, (V(p01 + p10) - sqrt(p00 p11)) / P)`.
///
/// `p_ij` need not be normalised; the result only depends on their ratios.
pub fn concurrence_from_probs(p00: f64, p01: f64, p10: f64, p11: f64, v: f64) -> Result<f64> {
    for (name, p) in [("p00", p00), ("p01", p01), ("p10", p10), ("p11", p11)] {
        if p.is_nan() || p < 0.0 {
            return Err(Error::invalid(name, "must be non-negative"));
        }
    }
    check_probability("v", v)?;
    let total = p00 + p01 + p10 + p11;
    if total <= 0.0 {
        return Err(Error::InsufficientData("all p_ij are zero"));
    }
    let coherence = v * (p01 + p10) / 2.0;
    Ok(((2.0 * coherence - math::sqrt(p00 * p11)) / total).max(0.0))
}

/// Signed margin `V - 2 sqrt((1 - p_c)/g)`; the concurrence estimate is positive
/// exactly where this is.
pub fn concurrence_margin(p_c: f64, v: f64, g: f64) -> f64 {
    v - 2.0 * math::sqrt((1.0 - p_c) / g)
}

/// Weak-excitation concurrence estimate `max(0, p_c (V - 2 sqrt((1-p_c)/g)))`.
pub fn concurrence_param(p_c: f64, v: f64, g: f64) -> Result<f64> {
    check_probability("p_c", p_c)?;
    check_probability("v", v)?;
    if g.is_nan() || g < 1.0 {
        return Err(Error::invalid("g", "cross-correlation must be >= 1"));
    }
    Ok((p_c * concurrence_margin(p_c, v, g)).max(0.0))
}

/// [`concurrence_param`] for two modes with different retrieval efficiencies,
/// using `p̄_c = η(γ↑ + γ↓)/2` and `ḡ = (g↑ + g↓)/2`.
pub fn concurrence_param_averaged(
    eta: f64,
    gamma_up: f64,
    gamma_down: f64,
    v: f64,
    g_up: f64,
    g_down: f64,
) -> Result<f64> {
    concurrence_param(eta * (gamma_up + gamma_down) / 2.0, v, (g_up + g_down) / 2.0)
}
