//! Projection of (constraint) data onto the broken polynomial space.
//!
//! On a slab `J = (a, b]` the projection `Π φ` of degree `q - 1` is fixed by
//!
//! ```text
//! Π φ(b) = φ(b),      ∫_J (Π φ - φ) ψ = 0   for all ψ of degree <= q - 2.
//! ```
//!
//! For `q = 1` only the endpoint condition remains. Applied slab by slab and
//! componentwise this gives the operator `I_q` on vector-valued data. It
//! interpolates the data at every breakpoint `t_n`, `n >= 1`.

use nalgebra::{DMatrix, DVector};

use crate::error::{invalid, DgError, Result};
use crate::timecore::{legendre, BrokenFunction, Quadrature, SlabPoly, TimeMesh};

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionSpec {
    q: usize,
    quadrature: Quadrature,
}

impl ProjectionSpec {
    pub fn new(q: usize, quadrature: Quadrature) -> Result<Self> {
        if q == 0 {
            return invalid("q must be at least 1");
        }
        if quadrature.exactness_degree < 2 * q - 2 {
            return invalid(format!(
                "moment quadrature exact to degree {} but {} is required",
                quadrature.exactness_degree,
                2 * q - 2
            ));
        }
        Ok(Self { q, quadrature })
    }

    /// Uses the default `max(q + 2, 4)`-point Gauss rule.
    pub fn with_default_quadrature(q: usize) -> Result<Self> {
        Self::new(q, Quadrature::default_for(q))
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn quadrature(&self) -> &Quadrature {
        &self.quadrature
    }
}

fn sample(phi: &dyn Fn(f64) -> DVector<f64>, t: f64, dim: Option<usize>) -> Result<DVector<f64>> {
    let v = phi(t);
    if let Some(d) = dim {
        if v.len() != d {
            return Err(DgError::Data(format!("data has dimension {} at t = {t}, expected {d}", v.len())));
        }
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(DgError::Data(format!("non-finite data value at t = {t}")));
    }
    Ok(v)
}

/// Project `phi` restricted to `(a, b]`.
pub fn project_slab(phi: &dyn Fn(f64) -> DVector<f64>, a: f64, b: f64, spec: &ProjectionSpec) -> Result<SlabPoly> {
    if !(b > a) {
        return invalid(format!("empty interval ({a}, {b})"));
    }
    let q = spec.q;
    let quad = &spec.quadrature;
    let end = sample(phi, b, None)?;
    let dim = end.len();
    let k = b - a;

    // Row 0: endpoint condition. Row r >= 1: moment against the degree r-1
    // Legendre polynomial.
    let mut lhs = DMatrix::zeros(q, q);
    let mut rhs = DMatrix::zeros(q, dim);
    for (j, v) in legendre(q, 1.0).values.into_iter().enumerate() {
        lhs[(0, j)] = v;
    }
    rhs.row_mut(0).copy_from(&end.transpose());
    if q > 1 {
        for (&s, &w) in quad.nodes.iter().zip(&quad.weights) {
            let basis = legendre(q, s).values;
            let value = sample(phi, a + k * s, Some(dim))?;
            for r in 1..q {
                let test = basis[r - 1] * w * k;
                for j in 0..q {
                    lhs[(r, j)] += test * basis[j];
                }
                for c in 0..dim {
                    rhs[(r, c)] += test * value[c];
                }
            }
        }
    }
    let coeffs =
        lhs.lu().solve(&rhs).ok_or_else(|| DgError::Internal(format!("singular projection system on ({a}, {b})")))?;
    SlabPoly::new(coeffs)
}

/// Slab-wise projection `I_q phi` on `mesh`.
pub fn project_broken(
    phi: &dyn Fn(f64) -> DVector<f64>,
    mesh: &TimeMesh,
    dim: usize,
    spec: &ProjectionSpec,
) -> Result<BrokenFunction> {
    let slabs = (0..mesh.n_slabs())
        .map(|i| {
            let (a, b) = mesh.slab(i);
            let p = project_slab(phi, a, b, spec)?;
            if p.dim() != dim {
                return Err(DgError::Data(format!("data has dimension {}, expected {dim}", p.dim())));
            }
            Ok(p)
        })
        .collect::<Result<Vec<_>>>()?;
    BrokenFunction::new(mesh.clone(), slabs)
}
