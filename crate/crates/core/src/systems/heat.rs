//! 1D heat equation `u_t - u_xx = f` on `(0, 1)` with inhomogeneous Dirichlet
//! data, discretized by continuous P2 elements on a uniform mesh.
//!
//! Manufactured solutions must be at most quadratic in `x`, so the P2 space
//! represents them exactly and every measured error is temporal.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use super::{zero_fn, ConstrainedSystem, VectorFn};
use crate::error::{invalid, Result};
use crate::timecore::gauss_legendre;

/// Scalar space-time field `(x, t) -> value`.
pub type ScalarFn2 = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Manufactured solution of the heat problem together with the derivatives
/// needed to build the load.
#[derive(Clone)]
pub struct HeatSolution {
    pub name: String,
    pub u: ScalarFn2,
    pub u_t: ScalarFn2,
    pub u_xx: ScalarFn2,
}

impl HeatSolution {
    pub fn new(
        name: impl Into<String>,
        u: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        u_t: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        u_xx: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self { name: name.into(), u: Arc::new(u), u_t: Arc::new(u_t), u_xx: Arc::new(u_xx) }
    }

    /// `u = (x² + 1) sin 4t`.
    pub fn sin4t() -> Self {
        Self::new(
            "heat-sin4t",
            |x, t| (x * x + 1.0) * (4.0 * t).sin(),
            |x, t| 4.0 * (x * x + 1.0) * (4.0 * t).cos(),
            |_, t| 2.0 * (4.0 * t).sin(),
        )
    }

    /// `u = x²`, constant in time.
    pub fn stationary() -> Self {
        Self::new("heat-stationary", |x, _| x * x, |_, _| 0.0, |_, _| 2.0)
    }

    /// `u = Σ_k t^k (a_k + b_k x + c_k x²)` with `coeffs[k] = [a_k, b_k, c_k]`.
    pub fn polynomial_in_time(coeffs: Vec<[f64; 3]>) -> Self {
        let c = Arc::new(coeffs);
        let (c1, c2, c3) = (c.clone(), c.clone(), c);
        Self::new(
            "heat-poly",
            move |x, t| c1.iter().enumerate().map(|(k, [a, b, cc])| t.powi(k as i32) * (a + b * x + cc * x * x)).sum(),
            move |x, t| {
                c2.iter()
                    .enumerate()
                    .skip(1)
                    .map(|(k, [a, b, cc])| k as f64 * t.powi(k as i32 - 1) * (a + b * x + cc * x * x))
                    .sum()
            },
            move |_, t| c3.iter().enumerate().map(|(k, [_, _, cc])| 2.0 * cc * t.powi(k as i32)).sum(),
        )
    }
}

fn shape(xi: f64) -> [f64; 3] {
    [(1.0 - xi) * (1.0 - 2.0 * xi), 4.0 * xi * (1.0 - xi), xi * (2.0 * xi - 1.0)]
}

fn shape_deriv(xi: f64) -> [f64; 3] {
    [4.0 * xi - 3.0, 4.0 - 8.0 * xi, 4.0 * xi - 1.0]
}

/// P2 element mass matrix on an element of length `h`, local nodes ordered
/// left, middle, right.
pub fn p2_element_mass(h: f64) -> DMatrix<f64> {
    let g = gauss_legendre(3).expect("3-point rule");
    let mut m = DMatrix::zeros(3, 3);
    for (&xi, &w) in g.nodes.iter().zip(&g.weights) {
        let n = shape(xi);
        for i in 0..3 {
            for j in 0..3 {
                m[(i, j)] += h * w * n[i] * n[j];
            }
        }
    }
    m
}

pub fn p2_element_stiffness(h: f64) -> DMatrix<f64> {
    let g = gauss_legendre(3).expect("3-point rule");
    let mut k = DMatrix::zeros(3, 3);
    for (&xi, &w) in g.nodes.iter().zip(&g.weights) {
        let d = shape_deriv(xi);
        for i in 0..3 {
            for j in 0..3 {
                k[(i, j)] += w * d[i] * d[j] / h;
            }
        }
    }
    k
}

const SAMPLE_TIMES: [f64; 6] = [0.0, 0.13, 0.37, 0.5, 0.71, 1.0];

fn check_quadratic_in_space(sol: &HeatSolution, n_el: usize) -> Result<()> {
    let h = 1.0 / n_el as f64;
    let g = gauss_legendre(4).expect("4-point rule");
    for &t in &SAMPLE_TIMES {
        for e in 0..n_el {
            let x0 = e as f64 * h;
            let nodal = [(sol.u)(x0, t), (sol.u)(x0 + h / 2.0, t), (sol.u)(x0 + h, t)];
            let scale = 1.0 + nodal.iter().fold(0.0f64, |a, v| a.max(v.abs()));
            for &xi in &g.nodes {
                let n = shape(xi);
                let interp: f64 = (0..3).map(|i| n[i] * nodal[i]).sum();
                let exact = (sol.u)(x0 + xi * h, t);
                if (interp - exact).abs() > 1e-10 * scale {
                    return invalid(format!(
                        "manufactured solution '{}' is not quadratic in x (residual {:.3e} at x = {}, t = {t})",
                        sol.name,
                        (interp - exact).abs(),
                        x0 + xi * h
                    ));
                }
            }
            let second = 4.0 * (nodal[0] - 2.0 * nodal[1] + nodal[2]) / (h * h);
            let given = (sol.u_xx)(x0 + h / 2.0, t);
            if (second - given).abs() > 1e-10 * scale / (h * h) {
                return invalid(format!(
                    "u_xx of '{}' disagrees with the interpolant ({second} vs {given} at t = {t})",
                    sol.name
                ));
            }
        }
    }
    Ok(())
}

/// Assemble the P2 heat problem on `n_elements` uniform elements.
pub fn build_heat_1d(n_elements: usize, sol: &HeatSolution) -> Result<ConstrainedSystem> {
    if n_elements < 2 {
        return invalid(format!("need at least 2 spatial elements, got {n_elements}"));
    }
    check_quadratic_in_space(sol, n_elements)?;
    let h = 1.0 / n_elements as f64;
    let m = 2 * n_elements + 1;
    let me = p2_element_mass(h);
    let ke = p2_element_stiffness(h);
    let mut mass = DMatrix::zeros(m, m);
    let mut stiffness = DMatrix::zeros(m, m);
    for e in 0..n_elements {
        for i in 0..3 {
            for j in 0..3 {
                mass[(2 * e + i, 2 * e + j)] += me[(i, j)];
                stiffness[(2 * e + i, 2 * e + j)] += ke[(i, j)];
            }
        }
    }

    let mut b2 = DMatrix::zeros(2, m);
    b2[(0, 0)] = 1.0;
    b2[(1, m - 1)] = 1.0;
    let lift = b2.transpose();

    let nodes: Vec<f64> = (0..m).map(|i| i as f64 * h / 2.0).collect();
    let interp = {
        let u = sol.u.clone();
        let nodes = nodes.clone();
        move |t: f64| DVector::from_iterator(nodes.len(), nodes.iter().map(|&x| u(x, t)))
    };

    let load: VectorFn = {
        let (u_t, u_xx) = (sol.u_t.clone(), sol.u_xx.clone());
        let g = gauss_legendre(3).expect("3-point rule");
        Arc::new(move |t| {
            let mut f = DVector::zeros(m);
            for e in 0..n_elements {
                let x0 = e as f64 * h;
                for (&xi, &w) in g.nodes.iter().zip(&g.weights) {
                    let x = x0 + xi * h;
                    let val = u_t(x, t) - u_xx(x, t);
                    let n = shape(xi);
                    for i in 0..3 {
                        f[2 * e + i] += h * w * val * n[i];
                    }
                }
            }
            f
        })
    };
    let g2: VectorFn = {
        let u = sol.u.clone();
        Arc::new(move |t| DVector::from_vec(vec![u(0.0, t), u(1.0, t)]))
    };

    Ok(ConstrainedSystem {
        name: format!("heat1d[{}; NS={n_elements}]", sol.name),
        norm_u: &mass + &stiffness,
        mass,
        stiffness,
        b1: DMatrix::zeros(0, m),
        b2,
        load,
        g1: zero_fn(0),
        g2,
        u0: interp(0.0),
        lift,
        norm_q1: DMatrix::zeros(0, 0),
        exact_u: Some(Arc::new(interp)),
        exact_p: None,
        warnings: Vec::new(),
    })
}
