//! Fitting, entanglement-lifetime root finding, the storage-lifetime table
//! and figure data.

mod entanglement;
mod figures;
mod fits;
mod lm;
mod series;

pub use entanglement::{entanglement_lifetime, link_efficiency, make_table1, single_ensemble_lifetime, Table1Row};
pub use figures::{figure_data, linear_grid, log_grid, DataTable, FigureId, FigureInputs};
pub use fits::{fit_cross_correlation, fit_decay, fit_visibility_dephasing, DecayLaw};
pub use series::{DecaySeries, FitParameter, FitResult, SeriesPoint};
