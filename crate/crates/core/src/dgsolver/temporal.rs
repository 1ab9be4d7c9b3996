use nalgebra::{DMatrix, DVector};

use crate::error::{invalid, Result};
use crate::timecore::{legendre, Quadrature};

/// Slab-local temporal matrices in the shifted-Legendre basis.
///
/// * `derivative[(i, j)] = ∫ φ_j' φ_i + φ_j(t_{n-1}^+) φ_i(t_{n-1}^+)`
/// * `mass[(i, j)] = ∫ φ_j φ_i`
/// * `start[i] = φ_i(t_{n-1}^+)`
#[derive(Debug, Clone, PartialEq)]
pub struct TemporalMatrices {
    pub derivative: DMatrix<f64>,
    pub mass: DMatrix<f64>,
    pub start: DVector<f64>,
}

pub fn assemble_temporal_matrices(k: f64, q: usize, quad: &Quadrature) -> Result<TemporalMatrices> {
    if q == 0 {
        return invalid("q must be at least 1");
    }
    if !(k > 0.0) {
        return invalid(format!("slab width must be positive, got {k}"));
    }
    if quad.exactness_degree < 2 * q - 2 {
        return invalid(format!(
            "quadrature exact to degree {} cannot integrate the degree {} slab mass",
            quad.exactness_degree,
            2 * q - 2
        ));
    }
    let start = DVector::from_vec(legendre(q, 0.0).values);
    let mut derivative = &start * start.transpose();
    let mut mass = DMatrix::zeros(q, q);
    for (&s, &w) in quad.nodes.iter().zip(&quad.weights) {
        let b = legendre(q, s);
        for i in 0..q {
            for j in 0..q {
                // dt and d/dt scale by k and 1/k respectively
                derivative[(i, j)] += w * b.derivs[j] * b.values[i];
                mass[(i, j)] += k * w * b.values[j] * b.values[i];
            }
        }
    }
    Ok(TemporalMatrices { derivative, mass, start })
}
