use nalgebra::{DMatrix, DVector};

use crate::error::{invalid, Result};
use crate::timecore::{gauss_legendre, BrokenFunction, Quadrature};

/// Rule used for error integrals: one more point than the solver default
/// for small `q` (`q + 3` points).
pub fn error_quadrature(q: usize) -> Quadrature {
    gauss_legendre((q + 3).min(crate::timecore::MAX_GAUSS_POINTS)).expect("point count in range")
}

fn weighted(norm: &DMatrix<f64>, v: &DVector<f64>) -> f64 {
    v.dot(&(norm * v))
}

fn check_dims(u: &BrokenFunction, norm: &DMatrix<f64>) -> Result<()> {
    if norm.nrows() != u.dim() || norm.ncols() != u.dim() {
        return invalid(format!("norm matrix is {}x{}, function has dim {}", norm.nrows(), norm.ncols(), u.dim()));
    }
    Ok(())
}

/// `(Σ_n ∫_{I_n} ‖U - u‖²_norm)^{1/2}` by quadrature.
pub fn error_l2_energy(
    u: &BrokenFunction,
    exact: &dyn Fn(f64) -> DVector<f64>,
    norm: &DMatrix<f64>,
    quad: &Quadrature,
) -> Result<f64> {
    check_dims(u, norm)?;
    if quad.len() < u.n_coeffs() + 2 {
        return invalid(format!("error quadrature needs at least {} points", u.n_coeffs() + 2));
    }
    let mesh = u.mesh();
    let mut total = 0.0;
    for (i, slab) in u.slabs().iter().enumerate() {
        let (a, b) = mesh.slab(i);
        for (&s, &w) in quad.nodes.iter().zip(&quad.weights) {
            let e = slab.eval_local(s) - exact(a + (b - a) * s);
            if e.len() != u.dim() {
                return invalid("exact solution has the wrong dimension");
            }
            total += (b - a) * w * weighted(norm, &e);
        }
    }
    Ok(total.max(0.0).sqrt())
}

/// `max_n ‖U^n - u(t_n)‖_M` over `n = 1..N`.
pub fn error_nodal_max(u: &BrokenFunction, exact: &dyn Fn(f64) -> DVector<f64>, m: &DMatrix<f64>) -> Result<f64> {
    check_dims(u, m)?;
    let bp = u.mesh().breakpoints();
    let mut worst = 0.0f64;
    for i in 0..u.mesh().n_slabs() {
        let e = u.end_value(i) - exact(bp[i + 1]);
        if e.len() != u.dim() {
            return invalid("exact solution has the wrong dimension");
        }
        worst = worst.max(weighted(m, &e).max(0.0).sqrt());
    }
    Ok(worst)
}

/// Multiplier error `‖P - p‖_{L²(Q1)}`.
pub fn error_l2_multiplier(
    p: &BrokenFunction,
    exact_p: &dyn Fn(f64) -> DVector<f64>,
    norm_q1: &DMatrix<f64>,
    quad: &Quadrature,
) -> Result<f64> {
    error_l2_energy(p, exact_p, norm_q1, quad)
}
