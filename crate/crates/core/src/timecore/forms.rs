//! The discrete time-derivative forms
//!
//! ```text
//! D(Y, X)  = Σ_n ∫_{I_n} (Y', X) + Σ_{n=1}^{N-1} ([Y]^n, X^n_+) + (Y^0_+, X^0_+)
//! D*(Y, X) = Σ_n ∫_{I_n} (Y, X') + Σ_{n=1}^{N-1} (Y^n, [X]^n) - (Y^N, X^N)
//! ```
//!
//! with all inner products weighted by an SPD matrix `M`.

use nalgebra::{DMatrix, DVector};

use super::broken::BrokenFunction;
use super::quadrature::Quadrature;
use crate::error::{invalid, Result};

fn inner(m: &DMatrix<f64>, a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    a.dot(&(m * b))
}

fn check(y: &BrokenFunction, x: &BrokenFunction, m: &DMatrix<f64>, quad: &Quadrature) -> Result<()> {
    y.check_compatible(x)?;
    if m.nrows() != y.dim() || m.ncols() != y.dim() {
        return invalid(format!("weight matrix is {}x{}, functions have dim {}", m.nrows(), m.ncols(), y.dim()));
    }
    let needed = (y.degree() + x.degree()).saturating_sub(1);
    if quad.exactness_degree < needed {
        return invalid(format!(
            "quadrature exact to degree {} but the integrand has degree {needed}",
            quad.exactness_degree
        ));
    }
    Ok(())
}

/// Slab integral `∫ (Y', X)_M`. The slab width cancels between `dt` and `d/dt`.
fn derivative_term(deriv: &BrokenFunction, other: &BrokenFunction, m: &DMatrix<f64>, quad: &Quadrature) -> f64 {
    let mut total = 0.0;
    for (dp, op) in deriv.slabs().iter().zip(other.slabs()) {
        for (&s, &w) in quad.nodes.iter().zip(&quad.weights) {
            total += w * inner(m, &dp.deriv_local(s), &op.eval_local(s));
        }
    }
    total
}

pub fn dh_form(y: &BrokenFunction, x: &BrokenFunction, m: &DMatrix<f64>, quad: &Quadrature) -> Result<f64> {
    check(y, x, m, quad)?;
    let n = y.mesh().n_slabs();
    let mut total = derivative_term(y, x, m, quad);
    for b in 1..n {
        total += inner(m, &y.jump(b)?, &x.start_value(b));
    }
    total += inner(m, &y.start_value(0), &x.start_value(0));
    Ok(total)
}

pub fn dh_star_form(y: &BrokenFunction, x: &BrokenFunction, m: &DMatrix<f64>, quad: &Quadrature) -> Result<f64> {
    check(y, x, m, quad)?;
    let n = y.mesh().n_slabs();
    // ∫ (Y, X')_M == ∫ (X', Y)_M for symmetric M
    let mt = m.transpose();
    let mut total = derivative_term(x, y, &mt, quad);
    for b in 1..n {
        total += inner(m, &y.end_value(b - 1), &x.jump(b)?);
    }
    total -= inner(m, &y.terminal_value(), &x.terminal_value());
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::timecore::{gauss_legendre, SlabPoly, TimeMesh};

    fn one() -> DMatrix<f64> {
        DMatrix::identity(1, 1)
    }

    #[test]
    fn constants_keep_only_boundary_terms() {
        let mesh = TimeMesh::uniform(1.0, 3).unwrap();
        let q = gauss_legendre(4).unwrap();
        let y = BrokenFunction::constant(mesh.clone(), 2, &DVector::from_element(1, 1.5));
        let x = BrokenFunction::constant(mesh, 2, &DVector::from_element(1, -2.0));
        assert!((dh_form(&y, &x, &one(), &q).unwrap() - (-3.0)).abs() < 1e-14);
        assert!((dh_star_form(&y, &x, &one(), &q).unwrap() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn step_function_value() {
        let mesh = TimeMesh::uniform(1.0, 2).unwrap();
        let y = BrokenFunction::new(
            mesh,
            vec![SlabPoly::constant(1, &DVector::from_element(1, 1.0)), SlabPoly::zeros(1, 1)],
        )
        .unwrap();
        let q = gauss_legendre(2).unwrap();
        // ∫ y' y = 0, jump -1 times y_+^1 = 0, initial 1 * 1
        let v = dh_form(&y, &y, &one(), &q).unwrap();
        assert!((v - 1.0).abs() < 1e-15);
        assert!(v >= 0.5 * y.terminal_value()[0].powi(2));
    }

    #[test]
    fn zero_first_argument() {
        let mesh = TimeMesh::uniform(1.0, 2).unwrap();
        let y = BrokenFunction::zeros(mesh.clone(), 3, 2);
        let mut x = BrokenFunction::zeros(mesh, 3, 2);
        x.slab_mut(1).coeffs_mut()[(2, 1)] = 4.0;
        let q = gauss_legendre(4).unwrap();
        let m = DMatrix::identity(2, 2);
        assert_eq!(dh_star_form(&y, &x, &m, &q).unwrap(), 0.0);
    }

    #[test]
    fn rejects_mismatch_and_weak_quadrature() {
        let mesh = TimeMesh::uniform(1.0, 2).unwrap();
        let y = BrokenFunction::zeros(mesh.clone(), 4, 1);
        let x = BrokenFunction::zeros(mesh.clone(), 4, 2);
        let q = gauss_legendre(4).unwrap();
        assert!(dh_form(&y, &x, &one(), &q).is_err());
        let x = BrokenFunction::zeros(mesh, 4, 1);
        assert!(dh_form(&y, &x, &one(), &gauss_legendre(2).unwrap()).is_err());
    }
}
