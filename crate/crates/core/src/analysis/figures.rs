use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::math;
use crate::model::{
    cross_correlation, link_point, single_ensemble_point, LinkConfig, NoiseField, SingleEnsembleConfig,
};

/// Named columns of `f64` rows.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DataTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl DataTable {
    pub fn new(columns: &[&str]) -> Self {
        DataTable { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }
}

/// Figures whose model curves can be regenerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigureId {
    /// Cross-correlations g↑ and g↓ of the two modes.
    Fig4,
    /// MFI–MFS visibility with and without field-noise dephasing.
    Fig5,
    /// MFS–MFS visibility.
    Fig6,
    /// Two-mode concurrence for both pairings.
    Fig7,
    /// Link concurrence for several field-noise widths.
    Fig8,
    /// Retrieval efficiencies γ↑ and γ↓.
    S1,
}

impl FigureId {
    pub const ALL: [FigureId; 6] =
        [FigureId::Fig4, FigureId::Fig5, FigureId::Fig6, FigureId::Fig7, FigureId::Fig8, FigureId::S1];

    pub fn as_str(self) -> &'static str {
        match self {
            FigureId::Fig4 => "4",
            FigureId::Fig5 => "5",
            FigureId::Fig6 => "6",
            FigureId::Fig7 => "7",
            FigureId::Fig8 => "8",
            FigureId::S1 => "S1",
        }
    }

    /// Storage times sampled when none are given: 0–200 μs for Fig. 5,
    /// 200 log-spaced points over 1 ms–3 s for Fig. 8, 0–3 ms otherwise.
    pub fn default_times(self) -> Vec<f64> {
        match self {
            FigureId::Fig5 => linear_grid(0.0, 200e-6, 50),
            FigureId::Fig8 => log_grid(1e-3, 3.0, 200),
            _ => linear_grid(0.0, 3e-3, 61),
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or(Error::invalid("figure-id", "valid ids are 4, 5, 6, 7, 8, S1"))
    }
}

/// `n` evenly spaced points from `start` to `end` inclusive.
pub fn linear_grid(start: f64, end: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..n).map(|k| start + (end - start) * k as f64 / (n - 1) as f64).collect(),
    }
}

/// `n` logarithmically spaced points from `start` to `end` inclusive; `start > 0`.
pub fn log_grid(start: f64, end: f64, n: usize) -> Vec<f64> {
    let (a, b) = (math::ln(start), math::ln(end));
    linear_grid(a, b, n).into_iter().map(math::exp).collect()
}

/// Parameters behind the figure curves.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureInputs {
    /// Excitation probability of the single-ensemble experiment.
    pub chi: f64,
    /// Detection efficiency of the single-ensemble experiment.
    pub eta: f64,
    /// Link used for Fig. 8.
    pub link: LinkConfig,
    /// Field-noise widths of the Fig. 8 curves [G], independent supplies.
    pub sigma_b_list: Vec<f64>,
    /// Sample times; the figure's default grid when `None`.
    pub times: Option<Vec<f64>>,
}

impl Default for FigureInputs {
    fn default() -> Self {
        FigureInputs {
            chi: 0.02,
            eta: 0.4,
            link: LinkConfig::lattice_default(),
            sigma_b_list: vec![2e-3, 1e-3, 0.2e-3, 0.0],
            times: None,
        }
    }
}

fn sigma_label(sigma_b: f64) -> String {
    let micro_gauss = math::round(sigma_b * 1e6) as i64;
    let (whole, frac) = (micro_gauss / 1000, micro_gauss % 1000);
    let mut label = format!("C_sigma_b_{whole}");
    if frac != 0 {
        let digits = format!("{frac:03}");
        label.push('.');
        label.push_str(digits.trim_end_matches('0'));
    }
    label.push_str("mG");
    label
}

/// Model curves underlying figure `id`.
pub fn figure_data(id: FigureId, inputs: &FigureInputs) -> Result<DataTable> {
    let times = inputs.times.clone().unwrap_or_else(|| id.default_times());
    let mixed = SingleEnsembleConfig::mfi_mfs(inputs.chi, inputs.eta);
    let same = SingleEnsembleConfig::mfs_mfs(inputs.chi, inputs.eta);
    let (up, down) = (mixed.ensemble_u, mixed.ensemble_d);

    let mut table = match id {
        FigureId::Fig4 => DataTable::new(&["t_s", "gamma_up", "gamma_down", "g_up", "g_down"]),
        FigureId::Fig5 => DataTable::new(&["t_s", "g_mean", "V_g", "V"]),
        FigureId::Fig6 => DataTable::new(&["t_s", "g_down", "V_down_down"]),
        FigureId::Fig7 => DataTable::new(&["t_s", "C_mfi_mfs", "C_mfs_mfs"]),
        FigureId::S1 => DataTable::new(&["t_s", "gamma_up", "gamma_down"]),
        FigureId::Fig8 => {
            let mut columns = vec!["t_s".to_string()];
            columns.extend(inputs.sigma_b_list.iter().map(|&s| sigma_label(s)));
            DataTable { columns, rows: Vec::new() }
        }
    };

    let links: Vec<LinkConfig> =
        inputs.sigma_b_list.iter().map(|&s| inputs.link.with_noise(NoiseField::independent(s))).collect();
    for &t in &times {
        let row = match id {
            FigureId::Fig4 => {
                vec![t, up.retrieval(t)?, down.retrieval(t)?, cross_correlation(&up, t)?, cross_correlation(&down, t)?]
            }
            FigureId::Fig5 => {
                let p = single_ensemble_point(&mixed, t)?;
                vec![t, (p.g_u + p.g_d) / 2.0, p.visibility_g, p.visibility]
            }
            FigureId::Fig6 => {
                let p = single_ensemble_point(&same, t)?;
                vec![t, p.g_d, p.visibility]
            }
            FigureId::Fig7 => {
                vec![t, single_ensemble_point(&mixed, t)?.concurrence, single_ensemble_point(&same, t)?.concurrence]
            }
            FigureId::S1 => vec![t, up.retrieval(t)?, down.retrieval(t)?],
            FigureId::Fig8 => {
                let mut row = vec![t];
                for cfg in &links {
                    row.push(link_point(cfg, t)?.concurrence);
                }
                row
            }
        };
        table.rows.push(row);
    }
    Ok(table)
}
