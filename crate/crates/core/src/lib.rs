//! Discontinuous Galerkin time stepping for parabolic problems with
//! inhomogeneous linear constraints.
//!
//! The crate is organised bottom-up:
//!
//! * [`timecore`]: time meshes, Gauss rules, the shifted-Legendre slab basis,
//!   broken (piecewise polynomial) functions and the discrete time-derivative
//!   forms `D` and `D*`.
//! * [`projection`]: the endpoint-plus-moments projection of constraint data
//!   onto the broken polynomial space.
//! * [`systems`]: finite-dimensional constrained systems, plus two generators
//!   with manufactured solutions (1D P2 heat equation, saddle-point DAE).
//! * [`dgsolver`]: slab-by-slab solution of the constrained (lifting) and
//!   mixed (Lagrange multiplier) formulations.
//! * [`analysis`]: error norms, orders of convergence and study tables.

// index loops mirror the block formulas; NaN-aware negated comparisons are
// deliberate in argument checks
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod dgsolver;
pub mod error;
pub mod projection;
pub mod systems;
pub mod timecore;

pub use analysis::{run_study, Eoc, EocRow, EocTable, NormSelection, StudySpec};
pub use dgsolver::{solve, solve_constrained, solve_mixed, MixedSolution, SolverOptions};
pub use error::{DgError, Result};
pub use projection::{project_broken, project_slab, ProjectionSpec};
pub use systems::{ConstrainedSystem, ValidationReport, VectorFn};
pub use timecore::{dh_form, dh_star_form, gauss_legendre, BrokenFunction, Quadrature, Side, SlabPoly, TimeMesh};

pub use nalgebra::{DMatrix, DVector};
