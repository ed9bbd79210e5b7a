//! The diagnostic function Γ and the coefficient table.

mod ensemble;
mod gamma;
mod table;

pub use ensemble::{average_gamma_series, gamma_ensemble_average, BinSpec, GammaEnsemble};
pub use gamma::{
    constancy_check, gamma_series, Constancy, ConstancyVerdict, GammaPoint, GammaSeries,
};
pub use table::{build_table, render_table_csv, render_table_text, TableEntry, TableRow};
