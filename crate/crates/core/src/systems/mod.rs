//! Finite-dimensional constrained parabolic systems
//!
//! ```text
//! M u' + A u + B1ᵀ p = f,    B1 u = g1,    B2 u = g2,    u(0) = u0
//! ```
//!
//! `B1` rows are enforced through a Lagrange multiplier `p`, `B2` rows by
//! lifting the data with a right inverse of `B2`.

mod file;
mod heat;
pub(crate) mod linalg;
mod saddle;
mod validate;

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::error::{invalid, Result};

pub use file::{load_system_file, parse_system_json, SystemFile};
pub use heat::{build_heat_1d, p2_element_mass, p2_element_stiffness, HeatSolution, ScalarFn2};
pub use saddle::{build_saddle_dae, stokes3, stokes3_matrices, stokes3_solution, SaddleSolution, SaddleSpec};
pub use validate::{validate_system, Check, ValidationReport};

/// Time-dependent vector data `t -> R^d`.
pub type VectorFn = Arc<dyn Fn(f64) -> DVector<f64> + Send + Sync>;

pub fn vector_fn(f: impl Fn(f64) -> DVector<f64> + Send + Sync + 'static) -> VectorFn {
    Arc::new(f)
}

/// Zero data of dimension `d`.
pub fn zero_fn(d: usize) -> VectorFn {
    Arc::new(move |_| DVector::zeros(d))
}

#[derive(Clone)]
pub struct ConstrainedSystem {
    pub name: String,
    pub mass: DMatrix<f64>,
    pub stiffness: DMatrix<f64>,
    /// `r1 × m`, Lagrange multiplier constraints.
    pub b1: DMatrix<f64>,
    /// `r2 × m`, explicitly lifted constraints.
    pub b2: DMatrix<f64>,
    pub load: VectorFn,
    pub g1: VectorFn,
    pub g2: VectorFn,
    pub u0: DVector<f64>,
    /// `m × r2` right inverse of `b2`.
    pub lift: DMatrix<f64>,
    pub norm_u: DMatrix<f64>,
    pub norm_q1: DMatrix<f64>,
    pub exact_u: Option<VectorFn>,
    pub exact_p: Option<VectorFn>,
    /// Non-fatal findings from construction, e.g. incompatible initial data.
    pub warnings: Vec<String>,
}

impl fmt::Debug for ConstrainedSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, r1, r2) = self.dims();
        f.debug_struct("ConstrainedSystem")
            .field("name", &self.name)
            .field("m", &m)
            .field("r1", &r1)
            .field("r2", &r2)
            .field("has_exact_u", &self.exact_u.is_some())
            .field("has_exact_p", &self.exact_p.is_some())
            .field("warnings", &self.warnings)
            .finish()
    }
}

impl ConstrainedSystem {
    /// `(m, r1, r2)`.
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.mass.nrows(), self.b1.nrows(), self.b2.nrows())
    }

    pub fn check_shapes(&self) -> Result<()> {
        let (m, r1, r2) = self.dims();
        let square = |name: &str, a: &DMatrix<f64>, n: usize| {
            if a.nrows() != n || a.ncols() != n {
                invalid(format!("{name} is {}x{}, expected {n}x{n}", a.nrows(), a.ncols()))
            } else {
                Ok(())
            }
        };
        square("mass", &self.mass, m)?;
        square("stiffness", &self.stiffness, m)?;
        square("norm_u", &self.norm_u, m)?;
        square("norm_q1", &self.norm_q1, r1)?;
        if self.b1.ncols() != m && r1 > 0 {
            return invalid(format!("B1 has {} columns, expected {m}", self.b1.ncols()));
        }
        if self.b2.ncols() != m && r2 > 0 {
            return invalid(format!("B2 has {} columns, expected {m}", self.b2.ncols()));
        }
        if r2 > 0 && (self.lift.nrows() != m || self.lift.ncols() != r2) {
            return invalid(format!("lift is {}x{}, expected {m}x{r2}", self.lift.nrows(), self.lift.ncols()));
        }
        if self.u0.len() != m {
            return invalid(format!("u0 has length {}, expected {m}", self.u0.len()));
        }
        Ok(())
    }

    /// `[B1; B2]`.
    pub fn constraint_matrix(&self) -> DMatrix<f64> {
        let (m, r1, r2) = self.dims();
        let mut b = DMatrix::zeros(r1 + r2, m);
        if r1 > 0 {
            b.rows_mut(0, r1).copy_from(&self.b1);
        }
        if r2 > 0 {
            b.rows_mut(r1, r2).copy_from(&self.b2);
        }
        b
    }

    /// Residual `max |B2 · lift - I|`.
    pub fn lift_residual(&self) -> f64 {
        let r2 = self.b2.nrows();
        if r2 == 0 {
            return 0.0;
        }
        (&self.b2 * &self.lift - DMatrix::identity(r2, r2)).amax()
    }
}
