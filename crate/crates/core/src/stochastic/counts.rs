use alloc::vec::Vec;

use crate::error::{Error, Result};

use super::trial::{HeraldPort, TrialOutcome};

/// Tallies of one interferometer phase.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ThetaBin {
    pub theta: f64,
    pub trials: u64,
    /// D_S1 clicks.
    pub heralds: u64,
    /// D_S1 and D_aS1 coincidences.
    pub coincidences: u64,
    /// Trials heralded only by D_S2.
    pub heralds_s2: u64,
    /// D_aS1 clicks in trials heralded only by D_S2.
    pub coincidences_s2: u64,
}

/// Direct per-node Stokes/anti-Stokes tallies over all trials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NodeSingles {
    pub stokes: u64,
    pub anti_stokes: u64,
    pub coincidences: u64,
}

/// Integer tallies of a Monte-Carlo run.
///
/// `pij_counts[i][j]` counts D_S1-heralded trials with `i` anti-Stokes clicks
/// in the first node's retrieval channel and `j` in the second.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CountsRecord {
    pub theta_bins: Vec<ThetaBin>,
    pub pij_counts: [[u64; 2]; 2],
    pub singles: [NodeSingles; 2],
}

impl CountsRecord {
    pub fn new(thetas: &[f64]) -> Self {
        CountsRecord {
            theta_bins: thetas.iter().map(|&theta| ThetaBin { theta, ..ThetaBin::default() }).collect(),
            ..CountsRecord::default()
        }
    }

    pub fn n_trials(&self) -> u64 {
        self.theta_bins.iter().map(|b| b.trials).sum()
    }

    pub fn n_heralds(&self) -> u64 {
        self.theta_bins.iter().map(|b| b.heralds).sum()
    }

    pub fn record(&mut self, bin: usize, o: &TrialOutcome) {
        let b = &mut self.theta_bins[bin];
        b.trials += 1;
        match o.herald_port {
            Some(HeraldPort::S1) => {
                b.heralds += 1;
                b.coincidences += u64::from(o.as_clicks[0]);
                let [l, r] = o.direct_anti_stokes;
                self.pij_counts[usize::from(l)][usize::from(r)] += 1;
            }
            Some(HeraldPort::S2) => {
                b.heralds_s2 += 1;
                b.coincidences_s2 += u64::from(o.as_clicks[0]);
            }
            None => {}
        }
        for (s, (&st, &ast)) in self.singles.iter_mut().zip(o.direct_stokes.iter().zip(&o.direct_anti_stokes)) {
            s.stokes += u64::from(st);
            s.anti_stokes += u64::from(ast);
            s.coincidences += u64::from(st && ast);
        }
    }

    /// Adds `other` into `self`. Both records must share the same phase grid.
    pub fn merge(&mut self, other: &CountsRecord) -> Result<()> {
        if self.theta_bins.len() != other.theta_bins.len()
            || self.theta_bins.iter().zip(&other.theta_bins).any(|(a, b)| a.theta != b.theta)
        {
            return Err(Error::invalid("counts", "records use different phase grids"));
        }
        for (a, b) in self.theta_bins.iter_mut().zip(&other.theta_bins) {
            a.trials += b.trials;
            a.heralds += b.heralds;
            a.coincidences += b.coincidences;
            a.heralds_s2 += b.heralds_s2;
            a.coincidences_s2 += b.coincidences_s2;
        }
        for (row, other_row) in self.pij_counts.iter_mut().zip(&other.pij_counts) {
            for (a, b) in row.iter_mut().zip(other_row) {
                *a += b;
            }
        }
        for (a, b) in self.singles.iter_mut().zip(&other.singles) {
            a.stokes += b.stokes;
            a.anti_stokes += b.anti_stokes;
            a.coincidences += b.coincidences;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::LinkConfig;
    use crate::stochastic::{simulate, LinkTrialSetup, McPlan};

    #[test]
    fn invariants_hold() {
        let cfg = LinkConfig::lattice_default();
        let c = simulate(&LinkTrialSetup::new(&cfg, 0.0).unwrap(), &McPlan::new(4, 12, 20_000));
        assert_eq!(c.n_trials(), 240_000);
        let pij: u64 = c.pij_counts.iter().flatten().sum();
        assert_eq!(pij, c.n_heralds());
        for b in &c.theta_bins {
            assert!(b.coincidences <= b.heralds && b.heralds <= b.trials);
            assert!(b.heralds + b.heralds_s2 <= b.trials);
        }
        for s in &c.singles {
            assert!(s.coincidences <= s.stokes.min(s.anti_stokes));
        }
    }

    #[test]
    fn merge_is_commutative() {
        let cfg = LinkConfig::lattice_default();
        let setup = LinkTrialSetup::new(&cfg, 0.0).unwrap();
        let a = simulate(&setup, &McPlan::new(1, 8, 3000));
        let b = simulate(&setup, &McPlan::new(2, 8, 3000));
        let mut ab = a.clone();
        ab.merge(&b).unwrap();
        let mut ba = b.clone();
        ba.merge(&a).unwrap();
        assert_eq!(ab, ba);
        assert_eq!(ab.n_trials(), 48_000);
    }

    #[test]
    fn merge_rejects_other_grid() {
        let mut a = CountsRecord::new(&[0.0, 1.0]);
        assert!(a.merge(&CountsRecord::new(&[0.0])).is_err());
        assert!(a.merge(&CountsRecord::new(&[0.0, 2.0])).is_err());
    }
}
