use crate::error::{check_time, Result};
use crate::lifetime::Lifetime;

use super::concurrence::{concurrence_param, concurrence_param_averaged};
use super::detection::{cross_correlation, visibility};
use super::params::{LinkConfig, SingleEnsembleConfig};

/// Closed-form link quantities at one storage time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkPoint {
    pub t: f64,
    /// Retrieval efficiency, averaged over the two nodes.
    pub gamma: f64,
    /// Cross-correlation, averaged over the two nodes.
    pub g: f64,
    pub tau_0: Lifetime,
    pub visibility: f64,
    /// Conditional anti-Stokes detection probability `η γ`.
    pub p_c: f64,
    pub concurrence: f64,
}

/// Evaluates retrieval, cross-correlation, visibility and concurrence of a link
/// at storage time `t`. Asymmetric nodes are averaged.
pub fn link_point(cfg: &LinkConfig, t: f64) -> Result<LinkPoint> {
    check_time(t)?;
    let gamma_l = cfg.node_l.retrieval(t)?;
    let gamma_r = cfg.node_r.retrieval(t)?;
    let g = (cross_correlation(&cfg.node_l, t)? + cross_correlation(&cfg.node_r, t)?) / 2.0;
    let gamma = (gamma_l + gamma_r) / 2.0;
    let eta = (cfg.node_l.eta + cfg.node_r.eta) / 2.0;
    let tau_0 = cfg.tau_0();
    let v = visibility(g, t, tau_0, cfg.zeta, cfg.xi_prime)?;
    let p_c = eta * gamma;
    Ok(LinkPoint { t, gamma, g, tau_0, visibility: v, p_c, concurrence: concurrence_param(p_c, v, g)? })
}

/// Closed-form two-mode quantities of the single-ensemble experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleEnsemblePoint {
    pub t: f64,
    pub gamma_u: f64,
    pub gamma_d: f64,
    pub g_u: f64,
    pub g_d: f64,
    /// Visibility without field-noise dephasing, `ζ(ḡ-1)/(ḡ+1)`.
    pub visibility_g: f64,
    /// Visibility including ξ' and the `exp(-t/τ0)` factor.
    pub visibility: f64,
    pub concurrence: f64,
}

pub fn single_ensemble_point(cfg: &SingleEnsembleConfig, t: f64) -> Result<SingleEnsemblePoint> {
    check_time(t)?;
    let gamma_u = cfg.ensemble_u.retrieval(t)?;
    let gamma_d = cfg.ensemble_d.retrieval(t)?;
    let g_u = cross_correlation(&cfg.ensemble_u, t)?;
    let g_d = cross_correlation(&cfg.ensemble_d, t)?;
    let g_bar = (g_u + g_d) / 2.0;
    let visibility_g = visibility(g_bar, t, Lifetime::Infinite, cfg.zeta, 1.0)?;
    let v = visibility(g_bar, t, cfg.tau_0(), cfg.zeta, cfg.xi_prime)?;
    let eta = (cfg.ensemble_u.eta + cfg.ensemble_d.eta) / 2.0;
    Ok(SingleEnsemblePoint {
        t,
        gamma_u,
        gamma_d,
        g_u,
        g_d,
        visibility_g,
        visibility: v,
        concurrence: concurrence_param_averaged(eta, gamma_u, gamma_d, v, g_u, g_d)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::NoiseField;
    use proptest::prelude::*;

    #[test]
    fn t0_row_has_gamma0() {
        let p = link_point(&LinkConfig::lattice_default(), 0.0).unwrap();
        assert_eq!(p.gamma, 0.76);
        assert!((p.p_c - 0.304).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn visibility_nonincreasing(sigma in 0.0f64..5e-3, shared in any::<bool>(), t in 0.0f64..3.0, dt in 0.0f64..3.0) {
            let noise = if shared { NoiseField::shared(sigma) } else { NoiseField::independent(sigma) };
            let cfg = LinkConfig::lattice_default().with_noise(noise);
            let a = link_point(&cfg, t).unwrap().visibility;
            let b = link_point(&cfg, t + dt).unwrap().visibility;
            prop_assert!(b <= a);
        }
    }

    #[test]
    fn same_sensitivity_pair_has_no_dephasing() {
        let cfg = SingleEnsembleConfig::mfs_mfs(0.02, 0.4);
        for t in [0.0, 50e-6, 500e-6] {
            let p = single_ensemble_point(&cfg, t).unwrap();
            assert_eq!(p.visibility, p.visibility_g);
        }
    }

    #[test]
    fn mixed_pair_decays_with_tau0() {
        let cfg = SingleEnsembleConfig::mfi_mfs(0.02, 0.4);
        let p = single_ensemble_point(&cfg, 50e-6).unwrap();
        let ratio = p.visibility / (p.visibility_g * 0.88);
        assert!((ratio - (-1.0f64).exp()).abs() < 1e-12);
    }
}
