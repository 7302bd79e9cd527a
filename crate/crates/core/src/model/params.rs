use crate::error::{check_non_negative, check_probability, Error, Result};
use crate::lifetime::Lifetime;
use crate::math;
use crate::BOHR_MAGNETON_HZ_PER_GAUSS;

use super::dephasing::dephasing_lifetime;

/// Inputs of the motional and gradient dephasing of a spin wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotionBroadeningParams {
    /// Spin-wave wavevector magnitude |k_w - k_s| [rad/m].
    pub delta_k: f64,
    /// RMS atomic speed along the spin-wave direction [m/s].
    pub v_s: f64,
    /// RMS cloud length along z [m].
    pub l: f64,
    /// Field gradient B' [G/m].
    pub b_gradient: f64,
    /// Transition sensitivity [Hz/G].
    pub mu_prime: f64,
}

impl MotionBroadeningParams {
    pub fn validate(&self) -> Result<()> {
        check_non_negative("delta_k", self.delta_k)?;
        check_non_negative("v_s", self.v_s)?;
        check_non_negative("l", self.l)?;
        check_non_negative("b_gradient", self.b_gradient)?;
        check_non_negative("mu_prime", self.mu_prime)
    }
}

/// Law for the decay of the retrieval efficiency with storage time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayModel {
    /// `D(t) = exp(-t² / 2τ_D²)`, efficiency `γ0 exp(-t²/τ_D²)`.
    GaussianAmplitude { tau_d: f64 },
    /// Efficiency `γ0 exp(-t/τ_D)`, as measured for lattice and cold-cloud memories.
    ExponentialEfficiency { tau_d: f64 },
    /// Gaussian law with τ_D derived from motion and gradient broadening.
    FromMotion(MotionBroadeningParams),
}

impl DecayModel {
    pub fn validate(&self) -> Result<()> {
        match self {
            DecayModel::GaussianAmplitude { tau_d } | DecayModel::ExponentialEfficiency { tau_d } => {
                if *tau_d > 0.0 {
                    Ok(())
                } else {
                    Err(Error::invalid("tau_d", "must be positive"))
                }
            }
            DecayModel::FromMotion(m) => m.validate(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeLabel {
    /// Magnetic-field-insensitive ("clock") coherence.
    Mfi,
    /// Magnetic-field-sensitive coherence.
    Mfs,
}

/// Magnetic properties of a stored spin-wave coherence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinWaveMode {
    /// Sensitivity of the transition frequency to the field [Hz/G].
    pub mu_prime: f64,
    /// Larmor angular frequency under the bias field [rad/s].
    pub omega_0: f64,
    pub label: ModeLabel,
}

impl SpinWaveMode {
    /// Clock coherence with no first-order field sensitivity.
    pub fn mfi() -> Self {
        SpinWaveMode { mu_prime: 0.0, omega_0: 0.0, label: ModeLabel::Mfi }
    }

    /// Clock coherence with a small residual sensitivity, as in lattice memories.
    pub fn clock(mu_prime: f64) -> Self {
        SpinWaveMode { mu_prime, omega_0: 0.0, label: ModeLabel::Mfi }
    }

    /// Field-sensitive coherence with sensitivity `mu_prime` under bias `b0` [G].
    pub fn mfs(mu_prime: f64, b0: f64) -> Self {
        SpinWaveMode { mu_prime, omega_0: math::TAU * mu_prime * b0, label: ModeLabel::Mfs }
    }

    /// The |g, m=0> ↔ |s, m=+2> coherence of 87Rb, μ' = μ_B/h.
    pub fn rb87_stretched(b0: f64) -> Self {
        Self::mfs(BOHR_MAGNETON_HZ_PER_GAUSS, b0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupplyTopology {
    /// Each node's coils have their own current supply; fluctuations are independent.
    IndependentSupplies,
    /// One supply drives both nodes' coils in series; fluctuations are identical.
    SharedSupply,
}

/// Shot-to-shot Lorentzian field noise at each node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseField {
    /// Lorentzian half-width σ_B per node [G].
    pub sigma_b: f64,
    pub topology: SupplyTopology,
}

impl NoiseField {
    pub fn independent(sigma_b: f64) -> Self {
        NoiseField { sigma_b, topology: SupplyTopology::IndependentSupplies }
    }

    pub fn shared(sigma_b: f64) -> Self {
        NoiseField { sigma_b, topology: SupplyTopology::SharedSupply }
    }

    /// Relative width σ_Δ between the nodes: 2σ_B or 0.
    pub fn relative_width(&self) -> f64 {
        match self.topology {
            SupplyTopology::IndependentSupplies => 2.0 * self.sigma_b,
            SupplyTopology::SharedSupply => 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_non_negative("sigma_b", self.sigma_b)
    }
}

/// Per-node DLCZ source, memory and detection parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleParams {
    /// Excitation probability per write pulse.
    pub chi: f64,
    /// Zero-delay retrieval efficiency.
    pub gamma_0: f64,
    pub decay: DecayModel,
    /// Branching ratio of the read-photon transitions (spontaneous-emission noise).
    pub xi_se: f64,
    /// Background noise probability per pulse in the anti-Stokes channel.
    pub z_noise: f64,
    /// Detection efficiency of each channel.
    pub eta: f64,
}

impl EnsembleParams {
    /// Optical-lattice memory node: γ0 = 76 %, τ_D = 410 ms exponential,
    /// χ = 0.5 %, Z = 3e-4, ξ_se = 0.26, η = 0.4.
    pub fn lattice_node() -> Self {
        EnsembleParams {
            chi: 0.005,
            gamma_0: 0.76,
            decay: DecayModel::ExponentialEfficiency { tau_d: 0.41 },
            xi_se: 0.26,
            z_noise: 3e-4,
            eta: 0.4,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_probability("chi", self.chi)?;
        check_probability("gamma_0", self.gamma_0)?;
        check_probability("xi_se", self.xi_se)?;
        check_probability("z_noise", self.z_noise)?;
        check_probability("eta", self.eta)?;
        self.decay.validate()
    }

    /// `true` when χ is outside the weak-excitation regime the formulas assume.
    pub fn chi_is_large(&self) -> bool {
        self.chi > 0.1
    }

    pub fn retrieval(&self, t: f64) -> Result<f64> {
        super::decay::retrieval_efficiency(self.gamma_0, &self.decay, t)
    }
}

/// Two nodes joined by the Stokes and anti-Stokes interferometers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkConfig {
    pub node_l: EnsembleParams,
    pub node_r: EnsembleParams,
    pub noise: NoiseField,
    pub mode_l: SpinWaveMode,
    pub mode_r: SpinWaveMode,
    /// Mode overlap of the two interferometer arms.
    pub zeta: f64,
    /// Empirical contrast factor; 1 except for mixed-sensitivity pairs.
    pub xi_prime: f64,
    /// RMS of the unstabilised interferometer phase [rad].
    pub residual_phase_jitter: f64,
}

impl LinkConfig {
    /// Lattice-memory link with clock sensitivity 5 Hz/mG, ζ = 0.85 and
    /// independent supplies at σ_B = 0.2 mG.
    pub fn lattice_default() -> Self {
        LinkConfig {
            node_l: EnsembleParams::lattice_node(),
            node_r: EnsembleParams::lattice_node(),
            noise: NoiseField::independent(0.2e-3),
            mode_l: SpinWaveMode::clock(5.0e3),
            mode_r: SpinWaveMode::clock(5.0e3),
            zeta: 0.85,
            xi_prime: 1.0,
            residual_phase_jitter: 0.0,
        }
    }

    /// Same link with a different per-node field-noise model.
    pub fn with_noise(mut self, noise: NoiseField) -> Self {
        self.noise = noise;
        self
    }

    /// Same link with detection efficiency `eta` at both nodes.
    pub fn with_eta(mut self, eta: f64) -> Self {
        self.node_l.eta = eta;
        self.node_r.eta = eta;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.node_l.validate()?;
        self.node_r.validate()?;
        self.noise.validate()?;
        check_non_negative("mu_prime", self.mode_l.mu_prime)?;
        check_non_negative("mu_prime", self.mode_r.mu_prime)?;
        if !(self.zeta > 0.0 && self.zeta <= 1.0) {
            return Err(Error::invalid("zeta", "must lie in (0, 1]"));
        }
        if !(self.xi_prime > 0.0 && self.xi_prime <= 1.0) {
            return Err(Error::invalid("xi_prime", "must lie in (0, 1]"));
        }
        check_non_negative("residual_phase_jitter", self.residual_phase_jitter)
    }

    pub fn is_symmetric(&self) -> bool {
        self.node_l == self.node_r && self.mode_l.mu_prime == self.mode_r.mu_prime
    }

    /// Width of the Lorentzian phase-difference rate `μ'_L δB_L - μ'_R δB_R` [Hz].
    ///
    /// For equal sensitivities this is μ' σ_Δ.
    pub fn phase_noise_width(&self) -> f64 {
        let (a, b) = (self.mode_l.mu_prime, self.mode_r.mu_prime);
        match self.noise.topology {
            SupplyTopology::IndependentSupplies => (a + b) * self.noise.sigma_b,
            SupplyTopology::SharedSupply => (a - b).abs() * self.noise.sigma_b,
        }
    }

    /// Coherence lifetime τ0 between the two stored spin waves.
    pub fn tau_0(&self) -> Lifetime {
        Lifetime::from_rate(math::TAU * self.phase_noise_width())
    }
}

/// Two spin-wave modes stored in one ensemble and read through a polarisation
/// interferometer. Both modes see the same field fluctuation in each shot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleEnsembleConfig {
    pub mode_u: SpinWaveMode,
    pub mode_d: SpinWaveMode,
    pub ensemble_u: EnsembleParams,
    pub ensemble_d: EnsembleParams,
    /// Only σ_B matters; both modes share the fluctuation.
    pub noise: NoiseField,
    pub zeta: f64,
    pub xi_prime: f64,
}

impl SingleEnsembleConfig {
    /// Fitted τ0 of the mixed MFI–MFS pair [s].
    pub const FITTED_TAU_0: f64 = 50e-6;

    /// Field noise σ_B that gives the fitted τ0 for a μ_B/h sensitivity difference.
    pub fn fitted_sigma_b() -> f64 {
        1.0 / (math::TAU * BOHR_MAGNETON_HZ_PER_GAUSS * Self::FITTED_TAU_0)
    }

    /// Cold-cloud ensemble of the two-mode experiment: γ0↑ = 22 %, γ0↓ = 17 %,
    /// τ_D = 1 ms, ξ_se = 0.26, Z± = 3.1e-4 / 3.3e-4. `chi` is a free input.
    pub fn cold_cloud(chi: f64, eta: f64) -> (EnsembleParams, EnsembleParams) {
        let decay = DecayModel::ExponentialEfficiency { tau_d: 1e-3 };
        let up = EnsembleParams { chi, gamma_0: 0.22, decay, xi_se: 0.26, z_noise: 3.1e-4, eta };
        let down = EnsembleParams { chi, gamma_0: 0.17, decay, xi_se: 0.26, z_noise: 3.3e-4, eta };
        (up, down)
    }

    /// MFI (U arm) and MFS (D arm) pair with the fitted τ0 = 50 μs and ξ' = 0.88.
    pub fn mfi_mfs(chi: f64, eta: f64) -> Self {
        let (up, down) = Self::cold_cloud(chi, eta);
        SingleEnsembleConfig {
            mode_u: SpinWaveMode::mfi(),
            mode_d: SpinWaveMode::rb87_stretched(1.0),
            ensemble_u: up,
            ensemble_d: down,
            noise: NoiseField::shared(Self::fitted_sigma_b()),
            zeta: 0.85,
            xi_prime: 0.88,
        }
    }

    /// Both arms in the MFS coherence.
    pub fn mfs_mfs(chi: f64, eta: f64) -> Self {
        let (_, down) = Self::cold_cloud(chi, eta);
        SingleEnsembleConfig {
            mode_u: SpinWaveMode::rb87_stretched(1.0),
            mode_d: SpinWaveMode::rb87_stretched(1.0),
            ensemble_u: down,
            ensemble_d: down,
            noise: NoiseField::shared(Self::fitted_sigma_b()),
            zeta: 0.85,
            xi_prime: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.ensemble_u.validate()?;
        self.ensemble_d.validate()?;
        self.noise.validate()?;
        if !(self.zeta > 0.0 && self.zeta <= 1.0) {
            return Err(Error::invalid("zeta", "must lie in (0, 1]"));
        }
        if !(self.xi_prime > 0.0 && self.xi_prime <= 1.0) {
            return Err(Error::invalid("xi_prime", "must lie in (0, 1]"));
        }
        Ok(())
    }

    /// Sensitivity of the phase difference between the two modes [Hz/G].
    pub fn differential_sensitivity(&self) -> f64 {
        (self.mode_d.mu_prime - self.mode_u.mu_prime).abs()
    }

    pub fn tau_0(&self) -> Lifetime {
        dephasing_lifetime(self.differential_sensitivity(), self.noise.sigma_b)
            .expect("validated sensitivities are non-negative")
    }
}
