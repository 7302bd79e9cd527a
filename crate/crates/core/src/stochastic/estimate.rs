use crate::error::{Error, Result};
use crate::math;
use crate::model::concurrence_from_probs;

use super::counts::{CountsRecord, NodeSingles};
use super::trial::HeraldPort;

/// A point estimate with its one-sigma standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateEstimate {
    pub value: f64,
    pub std_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VisibilityMethod {
    /// Least-squares fit of `A + B cos θ` to the per-bin conditional rates.
    #[default]
    CosineFit,
    /// `(max - min)/(max + min)` over the bins.
    MaxMin,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VisibilityEstimate {
    pub v: f64,
    pub std_error: f64,
    /// Mean conditional coincidence rate `A`.
    pub offset: f64,
    /// Fringe amplitude `B`; negative for a π-shifted fringe.
    pub amplitude: f64,
}

/// Fringe visibility of the D_S1-heralded D_aS1 rate by cosine fit.
pub fn estimate_visibility(c: &CountsRecord) -> Result<VisibilityEstimate> {
    estimate_visibility_with(c, VisibilityMethod::CosineFit, HeraldPort::S1)
}

/// Fringe visibility with an explicit estimator and herald detector.
pub fn estimate_visibility_with(
    c: &CountsRecord,
    method: VisibilityMethod,
    herald: HeraldPort,
) -> Result<VisibilityEstimate> {
    if c.theta_bins.len() < 8 {
        return Err(Error::InsufficientData("at least 8 phase bins are required"));
    }
    let mut rates = alloc::vec::Vec::with_capacity(c.theta_bins.len());
    for b in &c.theta_bins {
        let (k, n) = match herald {
            HeraldPort::S1 => (b.coincidences, b.heralds),
            HeraldPort::S2 => (b.coincidences_s2, b.heralds_s2),
        };
        if n == 0 {
            return Err(Error::InsufficientData("a phase bin has no heralds"));
        }
        let y = k as f64 / n as f64;
        rates.push((b.theta, y, y * (1.0 - y) / n as f64));
    }
    match method {
        VisibilityMethod::CosineFit => cosine_fit(&rates),
        VisibilityMethod::MaxMin => max_min(&rates),
    }
}

fn cosine_fit(rates: &[(f64, f64, f64)]) -> Result<VisibilityEstimate> {
    let (mut s00, mut s01, mut s11, mut r0, mut r1) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &(theta, y, _) in rates {
        let x = math::cos(theta);
        s00 += 1.0;
        s01 += x;
        s11 += x * x;
        r0 += y;
        r1 += x * y;
    }
    let det = s00 * s11 - s01 * s01;
    if det.abs() < 1e-12 * s00 * s11 {
        return Err(Error::InsufficientData("phase bins do not resolve a cosine"));
    }
    // rows of (XᵀX)⁻¹Xᵀ give the weights of each rate in A and B
    let weights = |x: f64| ((s11 - s01 * x) / det, (s00 * x - s01) / det);
    let a = (s11 * r0 - s01 * r1) / det;
    let b = (s00 * r1 - s01 * r0) / det;
    if a <= 0.0 {
        return Err(Error::IllPosed("fringe offset is not positive"));
    }
    let v = b.abs() / a;
    let (da, db) = (-v / a, b.signum() / a);
    let mut var = 0.0;
    for &(theta, _, var_y) in rates {
        let (wa, wb) = weights(math::cos(theta));
        let dv = da * wa + db * wb;
        var += dv * dv * var_y;
    }
    Ok(VisibilityEstimate { v, std_error: math::sqrt(var), offset: a, amplitude: b })
}

fn max_min(rates: &[(f64, f64, f64)]) -> Result<VisibilityEstimate> {
    let hi = rates.iter().copied().fold(rates[0], |m, r| if r.1 > m.1 { r } else { m });
    let lo = rates.iter().copied().fold(rates[0], |m, r| if r.1 < m.1 { r } else { m });
    let sum = hi.1 + lo.1;
    if sum <= 0.0 {
        return Err(Error::IllPosed("fringe offset is not positive"));
    }
    let v = (hi.1 - lo.1) / sum;
    let (dh, dl) = (2.0 * lo.1 / (sum * sum), -2.0 * hi.1 / (sum * sum));
    let std_error = math::sqrt(dh * dh * hi.2 + dl * dl * lo.2);
    let amplitude = if math::cos(hi.0) >= math::cos(lo.0) { (hi.1 - lo.1) / 2.0 } else { (lo.1 - hi.1) / 2.0 };
    Ok(VisibilityEstimate { v, std_error, offset: sum / 2.0, amplitude })
}

/// D_S1 click probability per trial.
pub fn herald_rate(c: &CountsRecord) -> Result<RateEstimate> {
    let n = c.n_trials();
    if n == 0 {
        return Err(Error::InsufficientData("no trials"));
    }
    let p = c.n_heralds() as f64 / n as f64;
    Ok(RateEstimate { value: p, std_error: math::sqrt(p * (1.0 - p) / n as f64) })
}

/// `g = N n_{S,aS} / (n_S n_aS)` with a Poisson delta-method error over the
/// exclusive click cells.
fn cross_correlation_of(n: u64, s: &NodeSingles) -> Result<RateEstimate> {
    if s.coincidences == 0 {
        return Err(Error::InsufficientData("no Stokes/anti-Stokes coincidences"));
    }
    let (c, st, ast) = (s.coincidences as f64, s.stokes as f64, s.anti_stokes as f64);
    let g = n as f64 * c / (st * ast);
    let d11 = 1.0 / c - 1.0 / st - 1.0 / ast;
    let rel_var = c * d11 * d11 + (st - c) / (st * st) + (ast - c) / (ast * ast);
    Ok(RateEstimate { value: g, std_error: g * math::sqrt(rel_var) })
}

/// Cross-correlation from the direct per-node readouts: pooled over both
/// nodes (assumes they are identical) and per node.
pub fn estimate_cross_correlation(c: &CountsRecord) -> Result<(RateEstimate, [RateEstimate; 2])> {
    let n = c.n_trials();
    let [a, b] = c.singles;
    let pooled = NodeSingles {
        stokes: a.stokes + b.stokes,
        anti_stokes: a.anti_stokes + b.anti_stokes,
        coincidences: a.coincidences + b.coincidences,
    };
    Ok((cross_correlation_of(2 * n, &pooled)?, [cross_correlation_of(n, &a)?, cross_correlation_of(n, &b)?]))
}

/// Everything estimable from one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Statistics {
    pub n_heralds: u64,
    pub herald_rate: RateEstimate,
    /// Cross-correlation pooled over the two nodes.
    pub g: RateEstimate,
    pub g_nodes: [RateEstimate; 2],
    /// `p[i][j]`, conditional on a D_S1 herald.
    pub p: [[f64; 2]; 2],
    pub p_std_error: [[f64; 2]; 2],
    pub visibility: VisibilityEstimate,
    pub concurrence: RateEstimate,
}

const UNAVAILABLE: RateEstimate = RateEstimate { value: f64::NAN, std_error: f64::NAN };

/// Estimates g, p_ij, V and the concurrence from counts.
///
/// Only a run without heralds is an error. Quantities the counts cannot
/// support (a phase bin without heralds, no Stokes/anti-Stokes coincidences)
/// come back as NaN, and so does the concurrence when V is unavailable.
pub fn estimate_statistics(c: &CountsRecord) -> Result<Statistics> {
    let h = c.n_heralds();
    if h == 0 {
        return Err(Error::InsufficientData("no heralded trials"));
    }
    let hf = h as f64;
    let p = c.pij_counts.map(|row| row.map(|k| k as f64 / hf));
    let p_std_error = p.map(|row| row.map(|q| math::sqrt(q * (1.0 - q) / hf)));
    let (g, g_nodes) = match estimate_cross_correlation(c) {
        Ok(est) => est,
        Err(Error::InsufficientData(_)) => (UNAVAILABLE, [UNAVAILABLE; 2]),
        Err(e) => return Err(e),
    };
    let visibility = match estimate_visibility(c) {
        Ok(v) => v,
        Err(Error::InsufficientData(_) | Error::IllPosed(_)) => {
            VisibilityEstimate { v: f64::NAN, std_error: f64::NAN, offset: f64::NAN, amplitude: f64::NAN }
        }
        Err(e) => return Err(e),
    };
    let concurrence = if visibility.v.is_nan() { UNAVAILABLE } else { concurrence_estimate(&p, &visibility, hf)? };
    Ok(Statistics { n_heralds: h, herald_rate: herald_rate(c)?, g, g_nodes, p, p_std_error, visibility, concurrence })
}

fn concurrence_estimate(p: &[[f64; 2]; 2], visibility: &VisibilityEstimate, heralds: f64) -> Result<RateEstimate> {
    let v = visibility.v.min(1.0);
    let [[p00, p01], [p10, p11]] = *p;
    let value = concurrence_from_probs(p00, p01, p10, p11, v)?;

    // gradient of V(p01 + p10) - sqrt(p00 p11) under the multinomial covariance
    let root = math::sqrt(p00 * p11);
    let (d00, d11) = if root > 0.0 { (-p11 / (2.0 * root), -p00 / (2.0 * root)) } else { (0.0, 0.0) };
    let probs = [p00, p01, p10, p11];
    let grad = [d00, v, v, d11];
    let mean: f64 = probs.iter().zip(&grad).map(|(q, d)| q * d).sum();
    let var_p: f64 = probs.iter().zip(&grad).map(|(q, d)| q * d * d).sum::<f64>() - mean * mean;
    let dv = p01 + p10;
    let var = var_p.max(0.0) / heralds + dv * dv * visibility.std_error * visibility.std_error;
    Ok(RateEstimate { value, std_error: math::sqrt(var) })
}
