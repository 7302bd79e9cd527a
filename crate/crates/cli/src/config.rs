//! JSON run configuration.
//!
//! Every key is optional; missing keys take the lattice-memory link defaults
//! (χ = 0.005, γ0 = 0.76, τ_D = 410 ms exponential, ξ_se = 0.26, Z = 3e-4,
//! η = 0.4, ζ = 0.85, μ' = 5 Hz/mG). Units are seconds, Gauss and Hz/G.

use std::path::{Path, PathBuf};

use dlcz_core::analysis::{linear_grid, log_grid};
use dlcz_core::model::{
    DecayModel, EnsembleParams, LinkConfig, MotionBroadeningParams, NoiseField, SpinWaveMode, SupplyTopology,
};
use serde::Deserialize;

use crate::error::{keyed, CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Supply {
    #[default]
    Independent,
    Shared,
}

/// Spin-wave decay law of both nodes.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case", deny_unknown_fields)]
pub enum DecayConfig {
    Exponential { tau_d: f64 },
    Gaussian { tau_d: f64 },
    Motion { delta_k: f64, v_s: f64, l: f64, b_gradient: f64, mu_prime: f64 },
}

impl Default for DecayConfig {
    fn default() -> Self {
        DecayConfig::Exponential { tau_d: 0.41 }
    }
}

impl DecayConfig {
    fn to_model(self) -> DecayModel {
        match self {
            DecayConfig::Exponential { tau_d } => DecayModel::ExponentialEfficiency { tau_d },
            DecayConfig::Gaussian { tau_d } => DecayModel::GaussianAmplitude { tau_d },
            DecayConfig::Motion { delta_k, v_s, l, b_gradient, mu_prime } => {
                DecayModel::FromMotion(MotionBroadeningParams { delta_k, v_s, l, b_gradient, mu_prime })
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct McConfig {
    /// Trials per interferometer phase bin at each sweep point.
    pub trials: u64,
    pub seed: u64,
    pub theta_points: usize,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig { trials: 100_000, seed: 2024, theta_points: 12 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub t_start: f64,
    pub t_end: f64,
    pub n_points: usize,
    pub spacing: Spacing,
}

impl SweepConfig {
    /// 200 log-spaced points over 1 ms–3 s.
    pub fn link_default() -> Self {
        SweepConfig { t_start: 1e-3, t_end: 3.0, n_points: 200, spacing: Spacing::Log }
    }

    /// 10 log-spaced points over 1 ms–3 s.
    pub fn mc_default() -> Self {
        SweepConfig { n_points: 10, ..Self::link_default() }
    }

    pub fn times(&self) -> Vec<f64> {
        match self.spacing {
            Spacing::Linear => linear_grid(self.t_start, self.t_end, self.n_points),
            Spacing::Log => log_grid(self.t_start, self.t_end, self.n_points),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_points < 2 {
            return Err(CliError::config("sweep.n_points", "must be at least 2"));
        }
        if !(self.t_start >= 0.0 && self.t_start.is_finite()) {
            return Err(CliError::config("sweep.t_start", "must be non-negative"));
        }
        if !(self.t_end > self.t_start && self.t_end.is_finite()) {
            return Err(CliError::config("sweep.t_end", "must exceed sweep.t_start"));
        }
        if self.spacing == Spacing::Log && self.t_start <= 0.0 {
            return Err(CliError::config("sweep.t_start", "log spacing needs a positive start"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    /// Destination file; standard output when absent.
    pub path: Option<PathBuf>,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Table1Config {
    /// Field-noise widths [G].
    pub sigma_b_list: Vec<f64>,
    /// Entanglement generation time T_G [s].
    pub t_g: f64,
}

impl Default for Table1Config {
    fn default() -> Self {
        Table1Config { sigma_b_list: vec![2e-3, 1e-3, 0.2e-3, 0.0], t_g: 0.63 }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FigureConfig {
    /// χ of the single-ensemble experiment.
    pub chi: f64,
    /// η of the single-ensemble experiment.
    pub eta: f64,
    /// Field-noise widths of the link curves [G].
    pub sigma_b_list: Vec<f64>,
}

impl Default for FigureConfig {
    fn default() -> Self {
        FigureConfig { chi: 0.02, eta: 0.4, sigma_b_list: vec![2e-3, 1e-3, 0.2e-3, 0.0] }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitModel {
    /// `A exp(-t/τ)`.
    Exponential,
    /// `A exp(-t²/τ²)`.
    Gaussian,
    /// ξ_se of the cross-correlation; the data needs a `gamma` column.
    CrossCorrelation,
    /// ξ' and τ0 of a dephasing visibility; the data needs a `v_g` column.
    VisibilityDephasing,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitConfig {
    /// CSV with `t_s,value` and optional `std_error`, `gamma`, `v_g` columns.
    /// Relative paths are resolved against the config file's directory.
    pub data: PathBuf,
    pub model: FitModel,
    /// Defaults to the top-level `chi`.
    pub chi: Option<f64>,
    /// Defaults to the top-level `z_noise`.
    pub z_noise: Option<f64>,
    /// Phase sensitivity [Hz/G]; defaults to the top-level `mu_prime`.
    pub mu_prime: Option<f64>,
}

/// One JSON config document. Link parameters sit at the top level and apply
/// to both nodes.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub chi: f64,
    pub gamma_0: f64,
    pub decay: DecayConfig,
    pub xi_se: f64,
    pub z_noise: f64,
    pub eta: f64,
    pub zeta: f64,
    pub xi_prime: f64,
    /// Clock-transition sensitivity of both nodes [Hz/G].
    pub mu_prime: f64,
    /// Lorentzian half-width of each supply's field noise [G].
    pub sigma_b: f64,
    pub supply: Supply,
    /// RMS interferometer phase jitter [rad].
    pub residual_phase_jitter: f64,
    pub mc: McConfig,
    pub sweep: Option<SweepConfig>,
    pub output: OutputConfig,
    pub table1: Table1Config,
    pub figure: FigureConfig,
    pub fit: Option<FitConfig>,
    #[serde(skip)]
    pub base_dir: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let node = EnsembleParams::lattice_node();
        let link = LinkConfig::lattice_default();
        RunConfig {
            chi: node.chi,
            gamma_0: node.gamma_0,
            decay: DecayConfig::default(),
            xi_se: node.xi_se,
            z_noise: node.z_noise,
            eta: node.eta,
            zeta: link.zeta,
            xi_prime: link.xi_prime,
            mu_prime: link.mode_l.mu_prime,
            sigma_b: link.noise.sigma_b,
            supply: Supply::Independent,
            residual_phase_jitter: 0.0,
            mc: McConfig::default(),
            sweep: None,
            output: OutputConfig::default(),
            table1: Table1Config::default(),
            figure: FigureConfig::default(),
            fit: None,
            base_dir: None,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn link(&self) -> LinkConfig {
        let node = EnsembleParams {
            chi: self.chi,
            gamma_0: self.gamma_0,
            decay: self.decay.to_model(),
            xi_se: self.xi_se,
            z_noise: self.z_noise,
            eta: self.eta,
        };
        let topology = match self.supply {
            Supply::Independent => SupplyTopology::IndependentSupplies,
            Supply::Shared => SupplyTopology::SharedSupply,
        };
        LinkConfig {
            node_l: node,
            node_r: node,
            noise: NoiseField { sigma_b: self.sigma_b, topology },
            mode_l: SpinWaveMode::clock(self.mu_prime),
            mode_r: SpinWaveMode::clock(self.mu_prime),
            zeta: self.zeta,
            xi_prime: self.xi_prime,
            residual_phase_jitter: self.residual_phase_jitter,
        }
    }

    /// Resolves a data path from the config against the config's directory.
    pub fn resolve(&self, path: &Path) -> PathBuf {
        match &self.base_dir {
            Some(dir) if path.is_relative() => dir.join(path),
            _ => path.to_path_buf(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.link().validate().map_err(keyed)?;
        if self.mc.trials == 0 {
            return Err(CliError::config("mc.trials", "must be at least 1"));
        }
        if self.mc.theta_points < 8 {
            return Err(CliError::config("mc.theta_points", "must be at least 8"));
        }
        if let Some(sweep) = &self.sweep {
            sweep.validate()?;
        }
        if !(self.table1.t_g > 0.0 && self.table1.t_g.is_finite()) {
            return Err(CliError::config("table1.t_g", "must be positive"));
        }
        for (key, list) in
            [("table1.sigma_b_list", &self.table1.sigma_b_list), ("figure.sigma_b_list", &self.figure.sigma_b_list)]
        {
            if list.iter().any(|s| !(*s >= 0.0 && s.is_finite())) {
                return Err(CliError::config(key, "field-noise widths must be non-negative"));
            }
        }
        if !(self.figure.chi >= 0.0 && self.figure.chi <= 1.0) {
            return Err(CliError::config("figure.chi", "must lie in [0, 1]"));
        }
        if !(self.figure.eta > 0.0 && self.figure.eta <= 1.0) {
            return Err(CliError::config("figure.eta", "must lie in (0, 1]"));
        }
        Ok(())
    }
}

/// Reads and validates a config file.
pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut cfg =
        RunConfig::from_json(&text).map_err(|source| CliError::ConfigSyntax { path: path.to_path_buf(), source })?;
    cfg.base_dir = path.parent().map(Path::to_path_buf);
    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_is_lattice_default() {
        let cfg = RunConfig::from_json("{}").unwrap();
        cfg.validate().unwrap();
        assert_eq!(cfg.link(), LinkConfig::lattice_default());
    }

    #[test]
    fn bad_chi_names_the_key() {
        let cfg = RunConfig::from_json(r#"{"chi": -0.1}"#).unwrap();
        let err = cfg.validate().unwrap_err().to_string();
        assert!(err.contains("`chi`"), "{err}");
    }

    #[test]
    fn unknown_key_is_named() {
        let err = RunConfig::from_json(r#"{"foo": 1}"#).unwrap_err().to_string();
        assert!(err.contains("foo"), "{err}");
        let err = RunConfig::from_json(r#"{"mc": {"trails": 1}}"#).unwrap_err().to_string();
        assert!(err.contains("trails"), "{err}");
    }

    #[test]
    fn decay_laws_parse() {
        let cfg = RunConfig::from_json(r#"{"decay": {"law": "gaussian", "tau_d": 0.1}}"#).unwrap();
        assert_eq!(cfg.link().node_l.decay, DecayModel::GaussianAmplitude { tau_d: 0.1 });
        assert!(RunConfig::from_json(r#"{"decay": {"law": "gaussian", "tau": 0.1}}"#).is_err());
    }

    #[test]
    fn sweep_validation() {
        let mut cfg = RunConfig {
            sweep: Some(SweepConfig { t_start: 0.0, t_end: 1.0, n_points: 5, spacing: Spacing::Log }),
            ..RunConfig::default()
        };
        assert!(cfg.validate().unwrap_err().to_string().contains("sweep.t_start"));
        cfg.sweep = Some(SweepConfig { t_start: 0.0, t_end: 1.0, n_points: 1, spacing: Spacing::Linear });
        assert!(cfg.validate().unwrap_err().to_string().contains("sweep.n_points"));
        cfg.sweep = Some(SweepConfig { t_start: 0.0, t_end: 1.0, n_points: 5, spacing: Spacing::Linear });
        assert_eq!(cfg.sweep.unwrap().times(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn zero_trials_rejected() {
        let cfg = RunConfig { mc: McConfig { trials: 0, ..McConfig::default() }, ..RunConfig::default() };
        assert!(cfg.validate().unwrap_err().to_string().contains("mc.trials"));
    }
}
