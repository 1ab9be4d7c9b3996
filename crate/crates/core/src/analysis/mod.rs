//! Error measurement against manufactured solutions and convergence studies.

mod eoc;
mod norms;
mod study;

pub use eoc::{eoc, Eoc, ERROR_FLOOR};
pub use norms::{error_l2_energy, error_l2_multiplier, error_nodal_max, error_quadrature};
pub use study::{run_study, EocRow, EocTable, NormSelection, StudySpec};
