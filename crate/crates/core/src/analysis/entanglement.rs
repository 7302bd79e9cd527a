use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lifetime::Lifetime;
use crate::model::{
    concurrence_margin, link_point, single_ensemble_point, LinkConfig, NoiseField, SingleEnsembleConfig,
};

/// First scan point and geometric step of the root bracketing.
const SCAN_START: f64 = 1e-6;
const SCAN_RATIO: f64 = 1.05;
/// Storage times beyond this are treated as never losing entanglement [s].
const SCAN_END: f64 = 1e5;
/// Bracket width at which bisection stops [s].
const ROOT_TOLERANCE: f64 = 1e-7;

fn link_margin(cfg: &LinkConfig, t: f64) -> Result<f64> {
    let p = link_point(cfg, t)?;
    Ok(concurrence_margin(p.p_c, p.visibility, p.g))
}

fn single_ensemble_margin(cfg: &SingleEnsembleConfig, t: f64) -> Result<f64> {
    let p = single_ensemble_point(cfg, t)?;
    let eta = (cfg.ensemble_u.eta + cfg.ensemble_d.eta) / 2.0;
    let p_c = eta * (p.gamma_u + p.gamma_d) / 2.0;
    Ok(concurrence_margin(p_c, p.visibility, (p.g_u + p.g_d) / 2.0))
}

/// First zero of a margin that is positive at `t = 0`.
fn first_zero(margin: impl Fn(f64) -> Result<f64>) -> Result<Lifetime> {
    let (mut lo, mut hi) = (0.0, SCAN_START);
    while margin(hi)? > 0.0 {
        if hi > SCAN_END {
            return Ok(Lifetime::Infinite);
        }
        lo = hi;
        hi *= SCAN_RATIO;
    }
    // the margin has to stay closed past the root, otherwise the first
    // crossing is not the entanglement lifetime
    let mut t = hi;
    for _ in 0..40 {
        t *= SCAN_RATIO;
        if margin(t)? > 0.0 {
            return Err(Error::IllPosed("concurrence revives after its first zero"));
        }
    }
    while hi - lo > ROOT_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if margin(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Lifetime::Finite(hi))
}

/// Storage time at which the link's concurrence first reaches zero.
///
/// Scans geometrically from 1 μs to bracket the first sign change of the
/// concurrence margin and bisects it to 0.1 μs. Returns
/// [`Lifetime::Infinite`] if the margin never closes within 10⁵ s.
pub fn entanglement_lifetime(cfg: &LinkConfig) -> Result<Lifetime> {
    cfg.validate()?;
    if link_margin(cfg, 0.0)? <= 0.0 {
        return Err(Error::NeverEntangled(link_point(cfg, 0.0)?.concurrence));
    }
    first_zero(|t| link_margin(cfg, t))
}

/// Storage time at which the two-mode concurrence of a single ensemble first
/// reaches zero.
pub fn single_ensemble_lifetime(cfg: &SingleEnsembleConfig) -> Result<Lifetime> {
    cfg.validate()?;
    if single_ensemble_margin(cfg, 0.0)? <= 0.0 {
        return Err(Error::NeverEntangled(single_ensemble_point(cfg, 0.0)?.concurrence));
    }
    first_zero(|t| single_ensemble_margin(cfg, t))
}

/// Quantum link efficiency `T_s / T_G`.
pub fn link_efficiency(t_s: Lifetime, t_g: f64) -> Result<f64> {
    if !(t_g > 0.0) {
        return Err(Error::invalid("t_g", "entanglement generation time must be positive"));
    }
    Ok(t_s.as_secs() / t_g)
}

/// One row of the storage-lifetime table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table1Row {
    pub sigma_b: f64,
    /// Width of the field difference seen by the two stored phases.
    pub sigma_delta: f64,
    pub t_s: Lifetime,
    pub eta_link: f64,
}

/// Entanglement lifetime and link efficiency of `cfg` for each field-noise
/// width in `sigma_b_list`, keeping the supply topology of `cfg`.
pub fn make_table1(sigma_b_list: &[f64], cfg: &LinkConfig, t_g: f64) -> Result<Vec<Table1Row>> {
    sigma_b_list
        .iter()
        .map(|&sigma_b| {
            let cfg = cfg.with_noise(NoiseField { sigma_b, ..cfg.noise });
            let t_s = entanglement_lifetime(&cfg)?;
            Ok(Table1Row {
                sigma_b,
                sigma_delta: cfg.noise.relative_width(),
                t_s,
                eta_link: link_efficiency(t_s, t_g)?,
            })
        })
        .collect()
}
