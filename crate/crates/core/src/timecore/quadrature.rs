use crate::error::{invalid, Result};

pub const MAX_GAUSS_POINTS: usize = 16;

/// Quadrature rule on the reference interval `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadrature {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub exactness_degree: usize,
}

impl Quadrature {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Integrate `f` over `[a, b]`.
    pub fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        let h = b - a;
        self.nodes.iter().zip(&self.weights).map(|(&s, &w)| w * f(a + h * s)).sum::<f64>() * h
    }

    /// Gauss rule used for time integrals of data with `q` temporal dofs:
    /// `max(q + 2, 4)` points.
    pub fn default_for(q: usize) -> Self {
        gauss_legendre((q + 2).clamp(4, MAX_GAUSS_POINTS)).expect("point count within range")
    }
}

/// `n`-point Gauss–Legendre rule mapped to `[0, 1]`, exact for degree `2n - 1`.
pub fn gauss_legendre(n: usize) -> Result<Quadrature> {
    if n == 0 || n > MAX_GAUSS_POINTS {
        return invalid(format!("Gauss rule needs 1..={MAX_GAUSS_POINTS} points, got {n}"));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    // roots in (-1, 1) by Newton's method on P_n, mirrored for exact symmetry
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // x is the i-th largest root
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        nodes[i] = 0.5 * (1.0 - x);
        weights[n - 1 - i] = 0.5 * w;
        weights[i] = 0.5 * w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.5;
    }
    Ok(Quadrature { nodes, weights, exactness_degree: 2 * n - 1 })
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let p2 = ((2 * k + 1) as f64 * x * p1 - k as f64 * p0) / (k + 1) as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn midpoint_rule() {
        let g = gauss_legendre(1).unwrap();
        assert_eq!(g.nodes, vec![0.5]);
        assert!((g.weights[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn two_point_rule() {
        let g = gauss_legendre(2).unwrap();
        let s3 = 3f64.sqrt();
        assert!((g.nodes[0] - (3.0 - s3) / 6.0).abs() < 1e-15);
        assert!((g.nodes[1] - (3.0 + s3) / 6.0).abs() < 1e-15);
        assert!((g.weights[0] - 0.5).abs() < 1e-15);
        assert!((g.weights[1] - 0.5).abs() < 1e-15);
        // exact antiderivatives of t^j on [0, 1]
        for j in 0..=3 {
            let val = g.integrate(0.0, 1.0, |t| t.powi(j));
            assert!((val - 1.0 / (j as f64 + 1.0)).abs() < 1e-15, "degree {j}");
        }
    }

    #[test]
    fn four_point_rule_degree_seven() {
        let g = gauss_legendre(4).unwrap();
        assert!((g.integrate(0.0, 1.0, |t| t.powi(7)) - 0.125).abs() < 1e-14);
    }

    #[test]
    fn monomial_exactness_all_rules() {
        for n in 1..=MAX_GAUSS_POINTS {
            let g = gauss_legendre(n).unwrap();
            assert_eq!(g.exactness_degree, 2 * n - 1);
            let sum: f64 = g.weights.iter().sum();
            assert!((sum - 1.0).abs() < 1e-14);
            for j in 0..=g.exactness_degree {
                let exact = 1.0 / (j as f64 + 1.0);
                let val = g.integrate(0.0, 1.0, |t| t.powi(j as i32));
                assert!((val - exact).abs() <= 1e-13 * exact, "n={n} j={j}");
            }
            for i in 0..n {
                assert!(g.nodes[i] > 0.0 && g.nodes[i] < 1.0);
                assert!(g.weights[i] > 0.0);
                assert!((g.nodes[i] + g.nodes[n - 1 - i] - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn out_of_range() {
        assert!(gauss_legendre(0).is_err());
        assert!(gauss_legendre(17).is_err());
    }
}
