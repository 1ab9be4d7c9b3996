//! Finite-dimensional index-2 saddle-point DAE
//!
//! ```text
//! M u' + A u + B1ᵀ p = f,    B1 u = g1
//! ```
//!
//! with data manufactured from a smooth pair `(u, p)`. This is the desk-scale
//! stand-in for a spatially discretized Stokes system: velocity `u`,
//! pressure-like multiplier `p`, inhomogeneous divergence-like constraint.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use super::linalg::numerical_rank;
use super::{vector_fn, zero_fn, ConstrainedSystem, VectorFn};
use crate::error::{invalid, Result};

#[derive(Clone)]
pub struct SaddleSolution {
    pub name: String,
    pub u: VectorFn,
    /// Time derivative of `u`.
    pub du: VectorFn,
    pub p: VectorFn,
}

impl SaddleSolution {
    pub fn zero(m: usize, r1: usize) -> Self {
        Self { name: "zero".into(), u: zero_fn(m), du: zero_fn(m), p: zero_fn(r1) }
    }

    /// `u(t) = Σ_k t^k u_k`, `p(t) = Σ_k t^k p_k`.
    pub fn polynomial(u_coeffs: Vec<DVector<f64>>, p_coeffs: Vec<DVector<f64>>) -> Self {
        fn eval(c: &[DVector<f64>], t: f64) -> DVector<f64> {
            let mut out = DVector::zeros(c[0].len());
            for (k, ck) in c.iter().enumerate() {
                out += ck * t.powi(k as i32);
            }
            out
        }
        fn deriv(c: &[DVector<f64>], t: f64) -> DVector<f64> {
            let mut out = DVector::zeros(c[0].len());
            for (k, ck) in c.iter().enumerate().skip(1) {
                out += ck * (k as f64 * t.powi(k as i32 - 1));
            }
            out
        }
        let u = Arc::new(u_coeffs);
        let p = Arc::new(p_coeffs);
        let (u1, u2) = (u.clone(), u);
        Self {
            name: "poly".into(),
            u: vector_fn(move |t| eval(&u1, t)),
            du: vector_fn(move |t| deriv(&u2, t)),
            p: vector_fn(move |t| eval(&p, t)),
        }
    }
}

pub struct SaddleSpec {
    pub name: String,
    pub mass: DMatrix<f64>,
    pub stiffness: DMatrix<f64>,
    pub b1: DMatrix<f64>,
    pub solution: SaddleSolution,
    /// Defaults to `u(0)`.
    pub u0: Option<DVector<f64>>,
}

/// Build the saddle system whose data make `(u, p)` an exact solution.
pub fn build_saddle_dae(spec: SaddleSpec) -> Result<ConstrainedSystem> {
    let m = spec.mass.nrows();
    let r1 = spec.b1.nrows();
    if spec.mass.ncols() != m || spec.stiffness.shape() != (m, m) {
        return invalid("mass and stiffness must be square of equal size");
    }
    if spec.b1.ncols() != m {
        return invalid(format!("B1 has {} columns, expected {m}", spec.b1.ncols()));
    }
    if r1 > 0 && numerical_rank(&spec.b1) < r1 {
        return invalid("B1 does not have full row rank");
    }
    let sol = spec.solution;
    let u_start = (sol.u)(0.0);
    if u_start.len() != m || (sol.p)(0.0).len() != r1 {
        return invalid("manufactured solution dimensions do not match the matrices");
    }

    let load: VectorFn = {
        let (mass, a, b1t) = (spec.mass.clone(), spec.stiffness.clone(), spec.b1.transpose());
        let (u, du, p) = (sol.u.clone(), sol.du.clone(), sol.p.clone());
        vector_fn(move |t| &mass * du(t) + &a * u(t) + &b1t * p(t))
    };
    let g1: VectorFn = {
        let (b1, u) = (spec.b1.clone(), sol.u.clone());
        vector_fn(move |t| &b1 * u(t))
    };

    let u0 = spec.u0.unwrap_or(u_start);
    let mut warnings = Vec::new();
    let defect = (&spec.b1 * &u0 - g1(0.0)).amax();
    if defect > 1e-12 * (1.0 + u0.amax()) {
        warnings.push(format!(
            "initial state violates the constraint (|B1 u0 - g1(0)| = {defect:.3e}); expect reduced accuracy near t = 0"
        ));
    }

    Ok(ConstrainedSystem {
        name: spec.name,
        norm_u: &spec.mass + &spec.stiffness,
        norm_q1: DMatrix::identity(r1, r1),
        mass: spec.mass,
        stiffness: spec.stiffness,
        b1: spec.b1,
        b2: DMatrix::zeros(0, m),
        load,
        g1,
        g2: zero_fn(0),
        u0,
        lift: DMatrix::zeros(m, 0),
        exact_u: Some(sol.u),
        exact_p: Some(sol.p),
        warnings,
    })
}

pub fn stokes3_matrices() -> (DMatrix<f64>, DMatrix<f64>, DMatrix<f64>) {
    let mass = DMatrix::identity(3, 3);
    let a = DMatrix::from_row_slice(3, 3, &[2.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 2.0]);
    let b1 = DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 1.0]);
    (mass, a, b1)
}

/// `u = (sin 4t (1 + t), cos 3t, e^{-t} + t²)`, `p = e^t`.
pub fn stokes3_solution() -> SaddleSolution {
    SaddleSolution {
        name: "stokes3".into(),
        u: vector_fn(|t| DVector::from_vec(vec![(4.0 * t).sin() * (1.0 + t), (3.0 * t).cos(), (-t).exp() + t * t])),
        du: vector_fn(|t| {
            DVector::from_vec(vec![
                4.0 * (4.0 * t).cos() * (1.0 + t) + (4.0 * t).sin(),
                -3.0 * (3.0 * t).sin(),
                -(-t).exp() + 2.0 * t,
            ])
        }),
        p: vector_fn(|t| DVector::from_element(1, t.exp())),
    }
}

/// The built-in three-dimensional saddle preset.
pub fn stokes3() -> ConstrainedSystem {
    let (mass, stiffness, b1) = stokes3_matrices();
    build_saddle_dae(SaddleSpec { name: "stokes3".into(), mass, stiffness, b1, solution: stokes3_solution(), u0: None })
        .expect("stokes3 preset is well formed")
}
