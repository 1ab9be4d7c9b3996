//! Shifted Legendre basis on a slab.
//!
//! On slab `(a, b]` the `j`-th basis function is `P_j(2 (t - a) / (b - a) - 1)`.
//! All basis functions equal 1 at the right end and `(-1)^j` at the left end.

use nalgebra::DMatrix;

/// Values and reference-coordinate derivatives of the first `q` shifted
/// Legendre polynomials at one point.
#[derive(Debug, Clone)]
pub struct LegendreValues {
    pub values: Vec<f64>,
    /// `d/ds` with `s` the reference coordinate in `[0, 1]`.
    pub derivs: Vec<f64>,
}

/// Evaluate the first `q` shifted Legendre polynomials at `s` in `[0, 1]`.
pub fn legendre(q: usize, s: f64) -> LegendreValues {
    let x = 2.0 * s - 1.0;
    let mut values = vec![0.0; q];
    let mut dx = vec![0.0; q];
    if q > 0 {
        values[0] = 1.0;
    }
    if q > 1 {
        values[1] = x;
        dx[1] = 1.0;
    }
    for n in 1..q.saturating_sub(1) {
        let nf = n as f64;
        values[n + 1] = ((2.0 * nf + 1.0) * x * values[n] - nf * values[n - 1]) / (nf + 1.0);
        dx[n + 1] = dx[n - 1] + (2.0 * nf + 1.0) * values[n];
    }
    let derivs = dx.into_iter().map(|d| 2.0 * d).collect();
    LegendreValues { values, derivs }
}

/// Value of basis function `j` at the left end of the slab.
pub(crate) fn left_sign(j: usize) -> f64 {
    if j.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `∫_slab φ_i φ_j` for a slab of width `k`: `diag(k / (2j + 1))`.
pub fn slab_mass_matrix(q: usize, k: f64) -> DMatrix<f64> {
    DMatrix::from_fn(q, q, |i, j| if i == j { k / (2 * j + 1) as f64 } else { 0.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::timecore::gauss_legendre;

    #[test]
    fn endpoint_values() {
        for q in 1..8 {
            let r = legendre(q, 1.0);
            let l = legendre(q, 0.0);
            for j in 0..q {
                assert!((r.values[j] - 1.0).abs() < 1e-14);
                assert!((l.values[j] - left_sign(j)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn quadrature_mass_is_diagonal() {
        let q = 6;
        let k = 0.37;
        let g = gauss_legendre(q + 1).unwrap();
        let mut mass = DMatrix::<f64>::zeros(q, q);
        for (&s, &w) in g.nodes.iter().zip(&g.weights) {
            let v = legendre(q, s);
            for i in 0..q {
                for j in 0..q {
                    mass[(i, j)] += k * w * v.values[i] * v.values[j];
                }
            }
        }
        let exact = slab_mass_matrix(q, k);
        for i in 0..q {
            for j in 0..q {
                let scale = exact[(i.max(j), i.max(j))];
                assert!((mass[(i, j)] - exact[(i, j)]).abs() <= 1e-13 * scale, "({i},{j})");
            }
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let q = 5;
        let h = 1e-6;
        for &s in &[0.1, 0.4, 0.77] {
            let v = legendre(q, s);
            let p = legendre(q, s + h);
            let m = legendre(q, s - h);
            for j in 0..q {
                let fd = (p.values[j] - m.values[j]) / (2.0 * h);
                assert!((fd - v.derivs[j]).abs() < 1e-6);
            }
        }
    }
}
