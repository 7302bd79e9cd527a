//! Subcommand bodies. Each returns the table it would print.

use std::path::Path;

use dlcz_core::analysis::{
    figure_data, fit_cross_correlation, fit_decay, fit_visibility_dephasing, make_table1, DecayLaw, DecaySeries,
    FigureId, FigureInputs, FitResult, SeriesPoint,
};
use dlcz_core::model::link_point;
use dlcz_core::stochastic::{derive_seed, estimate_statistics, LinkTrialSetup, McPlan};

use crate::config::{FitModel, RunConfig, SweepConfig};
use crate::error::{CliError, Result};
use crate::output::{Cell, Table};
use crate::runner::simulate_parallel;

pub const CURVE_COLUMNS: [&str; 6] = ["t_s", "gamma", "g", "tau0", "V", "C_param"];

pub fn cmd_curve(cfg: &RunConfig) -> Result<Table> {
    let link = cfg.link();
    let times = cfg.sweep.unwrap_or_else(SweepConfig::link_default).times();
    let mut table = Table::new(&CURVE_COLUMNS);
    for t in times {
        let p = link_point(&link, t)?;
        table.push(vec![
            t.into(),
            p.gamma.into(),
            p.g.into(),
            p.tau_0.as_secs().into(),
            p.visibility.into(),
            p.concurrence.into(),
        ]);
    }
    Ok(table)
}

pub const MC_COLUMNS: [&str; 19] = [
    "t_s",
    "V_mc",
    "V_se",
    "g_mc",
    "p00",
    "p01",
    "p10",
    "p11",
    "C_mc",
    "C_se",
    "V_model",
    "g_model",
    "C_model",
    "g_se",
    "P_S1_mc",
    "P_S1_se",
    "P_S1_model",
    "heralds",
    "trials",
];

/// Monte-Carlo estimates next to the closed form at each sweep time. Sweep
/// point `k` runs with seed `derive_seed(seed, k)`.
pub fn cmd_mc(cfg: &RunConfig) -> Result<Table> {
    let link = cfg.link();
    let times = cfg.sweep.unwrap_or_else(SweepConfig::mc_default).times();
    let mut table = Table::new(&MC_COLUMNS);
    for (k, t) in times.into_iter().enumerate() {
        let plan = McPlan::new(derive_seed(cfg.mc.seed, k as u64), cfg.mc.theta_points, cfg.mc.trials);
        let counts = simulate_parallel(&LinkTrialSetup::new(&link, t)?, &plan);
        let model = link_point(&link, t)?;
        let p_s1 = (link.node_l.chi * link.node_l.eta + link.node_r.chi * link.node_r.eta) / 2.0;
        let s = match estimate_statistics(&counts) {
            Ok(s) => s,
            Err(dlcz_core::Error::InsufficientData(_)) => {
                let mut row = vec![Cell::Num(f64::NAN); MC_COLUMNS.len()];
                row[0] = t.into();
                row[10] = model.visibility.into();
                row[11] = model.g.into();
                row[12] = model.concurrence.into();
                row[16] = p_s1.into();
                row[17] = 0.0.into();
                row[18] = (counts.n_trials() as f64).into();
                table.push(row);
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        table.push(vec![
            t.into(),
            s.visibility.v.into(),
            s.visibility.std_error.into(),
            s.g.value.into(),
            s.p[0][0].into(),
            s.p[0][1].into(),
            s.p[1][0].into(),
            s.p[1][1].into(),
            s.concurrence.value.into(),
            s.concurrence.std_error.into(),
            model.visibility.into(),
            model.g.into(),
            model.concurrence.into(),
            s.g.std_error.into(),
            s.herald_rate.value.into(),
            s.herald_rate.std_error.into(),
            p_s1.into(),
            (s.n_heralds as f64).into(),
            (counts.n_trials() as f64).into(),
        ]);
    }
    Ok(table)
}

pub const TABLE1_COLUMNS: [&str; 4] = ["sigma_b", "sigma_delta", "T_s", "eta_link"];

pub fn cmd_table1(cfg: &RunConfig) -> Result<Table> {
    let rows = make_table1(&cfg.table1.sigma_b_list, &cfg.link(), cfg.table1.t_g)?;
    let mut table = Table::new(&TABLE1_COLUMNS);
    for r in rows {
        table.push(vec![r.sigma_b.into(), r.sigma_delta.into(), r.t_s.as_secs().into(), r.eta_link.into()]);
    }
    Ok(table)
}

/// Model curves of a figure. The sweep, if configured, replaces the
/// figure's default time grid.
pub fn cmd_figure(cfg: &RunConfig, id: FigureId) -> Result<Table> {
    let inputs = FigureInputs {
        chi: cfg.figure.chi,
        eta: cfg.figure.eta,
        link: cfg.link(),
        sigma_b_list: cfg.figure.sigma_b_list.clone(),
        times: cfg.sweep.map(|s| s.times()),
    };
    Ok(figure_data(id, &inputs)?.into())
}

/// Fit data read from CSV.
struct FitData {
    series: DecaySeries,
    gamma: Option<Vec<f64>>,
    v_g: Option<Vec<f64>>,
}

fn read_fit_data(path: &Path) -> Result<FitData> {
    let data_err = |message: String| CliError::Data { path: path.to_path_buf(), message };
    let mut reader =
        csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path).map_err(|e| data_err(e.to_string()))?;
    let headers = reader.headers().map_err(|e| data_err(e.to_string()))?.clone();
    let column = |name: &str| headers.iter().position(|h| h == name);
    let t_col = column("t_s").ok_or_else(|| data_err("missing column `t_s`".into()))?;
    let v_col = column("value").ok_or_else(|| data_err("missing column `value`".into()))?;
    let (se_col, gamma_col, vg_col) = (column("std_error"), column("gamma"), column("v_g"));

    let mut points = Vec::new();
    let (mut gamma, mut v_g) = (Vec::new(), Vec::new());
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| data_err(e.to_string()))?;
        let num = |col: usize, name: &str| -> Result<f64> {
            record
                .get(col)
                .and_then(|s| s.parse::<f64>().ok())
                .ok_or_else(|| data_err(format!("row {}: `{name}` is not a number", line + 2)))
        };
        points.push(SeriesPoint {
            t: num(t_col, "t_s")?,
            value: num(v_col, "value")?,
            std_error: se_col.map(|c| num(c, "std_error")).transpose()?,
        });
        if let Some(c) = gamma_col {
            gamma.push(num(c, "gamma")?);
        }
        if let Some(c) = vg_col {
            v_g.push(num(c, "v_g")?);
        }
    }
    let series = DecaySeries::new(points).map_err(|e| data_err(e.to_string()))?;
    Ok(FitData { series, gamma: gamma_col.map(|_| gamma), v_g: vg_col.map(|_| v_g) })
}

/// Looks up a per-sample curve value by exact sample time.
fn sampled(series: &DecaySeries, values: &[f64]) -> impl Fn(f64) -> f64 {
    let times: Vec<f64> = series.points().iter().map(|p| p.t).collect();
    let values = values.to_vec();
    move |t| times.iter().position(|&s| s == t).map_or(f64::NAN, |i| values[i])
}

pub const FIT_COLUMNS: [&str; 3] = ["parameter", "value", "std_error"];

pub fn cmd_fit(cfg: &RunConfig) -> Result<Table> {
    let fit = cfg.fit.as_ref().ok_or_else(|| CliError::config("fit", "the fit command needs a `fit` section"))?;
    let path = cfg.resolve(&fit.data);
    let data = read_fit_data(&path)?;
    let missing =
        |col: &str| CliError::Data { path: path.clone(), message: format!("this fit model needs a `{col}` column") };
    let result: FitResult = match fit.model {
        FitModel::Exponential => fit_decay(&data.series, DecayLaw::Exponential)?,
        FitModel::Gaussian => fit_decay(&data.series, DecayLaw::Gaussian)?,
        FitModel::CrossCorrelation => {
            let gamma = data.gamma.as_deref().ok_or_else(|| missing("gamma"))?;
            fit_cross_correlation(
                &data.series,
                sampled(&data.series, gamma),
                fit.chi.unwrap_or(cfg.chi),
                fit.z_noise.unwrap_or(cfg.z_noise),
            )?
        }
        FitModel::VisibilityDephasing => {
            let v_g = data.v_g.as_deref().ok_or_else(|| missing("v_g"))?;
            fit_visibility_dephasing(&data.series, sampled(&data.series, v_g), fit.mu_prime.unwrap_or(cfg.mu_prime))?
        }
    };
    let mut table = Table::new(&FIT_COLUMNS);
    for p in &result.parameters {
        table.push(vec![p.name.into(), p.value.into(), p.std_error.into()]);
    }
    table.push(vec!["residual_norm".into(), result.residual_norm.into(), Cell::Empty]);
    table.push(vec!["iterations".into(), (result.iterations as f64).into(), Cell::Empty]);
    table.push(vec!["clamped".into(), f64::from(u8::from(result.clamped)).into(), Cell::Empty]);
    Ok(table)
}
