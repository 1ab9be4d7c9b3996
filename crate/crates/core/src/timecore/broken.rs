use nalgebra::{DMatrix, DVector};

use super::basis::{left_sign, legendre};
use super::mesh::TimeMesh;
use crate::error::{invalid, DgError, Result};

/// One-sided limit selector at breakpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Vector-valued polynomial on one slab in the shifted-Legendre basis.
///
/// Row `j` of `coeffs` is the vector coefficient of basis function `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct SlabPoly {
    coeffs: DMatrix<f64>,
}

impl SlabPoly {
    pub fn new(coeffs: DMatrix<f64>) -> Result<Self> {
        if coeffs.nrows() == 0 {
            return invalid("a slab polynomial needs at least one coefficient");
        }
        Ok(Self { coeffs })
    }

    pub fn zeros(q: usize, dim: usize) -> Self {
        Self { coeffs: DMatrix::zeros(q.max(1), dim) }
    }

    pub fn constant(q: usize, value: &DVector<f64>) -> Self {
        let mut p = Self::zeros(q, value.len());
        p.coeffs.row_mut(0).copy_from(&value.transpose());
        p
    }

    /// Number of coefficients (`degree + 1`).
    pub fn n_coeffs(&self) -> usize {
        self.coeffs.nrows()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.nrows() - 1
    }

    pub fn dim(&self) -> usize {
        self.coeffs.ncols()
    }

    pub fn coeffs(&self) -> &DMatrix<f64> {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut DMatrix<f64> {
        &mut self.coeffs
    }

    pub fn coeff(&self, j: usize) -> DVector<f64> {
        self.coeffs.row(j).transpose()
    }

    /// Value at reference coordinate `s` in `[0, 1]`.
    pub fn eval_local(&self, s: f64) -> DVector<f64> {
        let v = legendre(self.n_coeffs(), s);
        self.combine(&v.values)
    }

    /// `d/ds` at reference coordinate `s`.
    pub fn deriv_local(&self, s: f64) -> DVector<f64> {
        let v = legendre(self.n_coeffs(), s);
        self.combine(&v.derivs)
    }

    pub fn right_value(&self) -> DVector<f64> {
        self.coeffs.row_sum().transpose()
    }

    pub fn left_value(&self) -> DVector<f64> {
        let w: Vec<f64> = (0..self.n_coeffs()).map(left_sign).collect();
        self.combine(&w)
    }

    /// Same polynomial with `n` coefficients (zero padded or truncated).
    pub fn resized(&self, n: usize) -> Self {
        Self { coeffs: self.coeffs.clone().resize_vertically(n.max(1), 0.0) }
    }

    fn combine(&self, w: &[f64]) -> DVector<f64> {
        let mut out = DVector::zeros(self.dim());
        for (j, &wj) in w.iter().enumerate() {
            if wj != 0.0 {
                out += self.coeffs.row(j).transpose() * wj;
            }
        }
        out
    }
}

/// Piecewise polynomial on a [`TimeMesh`], discontinuous across breakpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct BrokenFunction {
    mesh: TimeMesh,
    slabs: Vec<SlabPoly>,
}

impl BrokenFunction {
    pub fn new(mesh: TimeMesh, slabs: Vec<SlabPoly>) -> Result<Self> {
        if slabs.len() != mesh.n_slabs() {
            return invalid(format!("{} slab polynomials for a mesh with {} slabs", slabs.len(), mesh.n_slabs()));
        }
        let (q, d) = (slabs[0].n_coeffs(), slabs[0].dim());
        if slabs.iter().any(|s| s.n_coeffs() != q || s.dim() != d) {
            return invalid("slab polynomials must share degree and dimension");
        }
        Ok(Self { mesh, slabs })
    }

    pub fn zeros(mesh: TimeMesh, q: usize, dim: usize) -> Self {
        let slabs = vec![SlabPoly::zeros(q, dim); mesh.n_slabs()];
        Self { mesh, slabs }
    }

    pub fn constant(mesh: TimeMesh, q: usize, value: &DVector<f64>) -> Self {
        let slabs = vec![SlabPoly::constant(q, value); mesh.n_slabs()];
        Self { mesh, slabs }
    }

    pub fn mesh(&self) -> &TimeMesh {
        &self.mesh
    }

    pub fn slabs(&self) -> &[SlabPoly] {
        &self.slabs
    }

    pub fn slab(&self, i: usize) -> &SlabPoly {
        &self.slabs[i]
    }

    pub fn slab_mut(&mut self, i: usize) -> &mut SlabPoly {
        &mut self.slabs[i]
    }

    pub fn n_coeffs(&self) -> usize {
        self.slabs[0].n_coeffs()
    }

    pub fn degree(&self) -> usize {
        self.slabs[0].degree()
    }

    pub fn dim(&self) -> usize {
        self.slabs[0].dim()
    }

    /// One-sided value at `t`. Away from breakpoints `side` is irrelevant.
    pub fn eval(&self, t: f64, side: Side) -> Result<DVector<f64>> {
        let t_end = self.mesh.t_end();
        let oob = DgError::OutOfDomain { t, t_end };
        if !(0.0..=t_end).contains(&t) {
            return Err(oob);
        }
        let bp = self.mesh.breakpoints();
        match side {
            Side::Right => {
                if t >= t_end {
                    return Err(oob);
                }
                // slab whose left end is at or before t
                let i = bp.partition_point(|&b| b <= t) - 1;
                Ok(self.slabs[i].eval_local(self.mesh.to_local(i, t)))
            }
            Side::Left => {
                if t <= 0.0 {
                    return Err(oob);
                }
                let i = self.mesh.locate(t)?;
                Ok(self.slabs[i].eval_local(self.mesh.to_local(i, t)))
            }
        }
    }

    /// `U^{i+1}`: left limit at the right end of slab `i`.
    pub fn end_value(&self, i: usize) -> DVector<f64> {
        self.slabs[i].right_value()
    }

    /// `U^i_+`: right limit at the left end of slab `i`.
    pub fn start_value(&self, i: usize) -> DVector<f64> {
        self.slabs[i].left_value()
    }

    /// `U^N`.
    pub fn terminal_value(&self) -> DVector<f64> {
        self.end_value(self.mesh.n_slabs() - 1)
    }

    /// `[U]^n = U^n_+ - U^n` at interior breakpoint `n` in `1..N`.
    pub fn jump(&self, n: usize) -> Result<DVector<f64>> {
        if n == 0 || n >= self.mesh.n_slabs() {
            return invalid(format!("jump index {n} outside 1..={}", self.mesh.n_slabs().saturating_sub(1)));
        }
        Ok(self.start_value(n) - self.end_value(n - 1))
    }

    /// Apply a constant matrix to the values: `t -> C · F(t)`.
    pub fn map_matrix(&self, c: &DMatrix<f64>) -> Result<Self> {
        if c.ncols() != self.dim() {
            return invalid("matrix columns must equal the function dimension");
        }
        let ct = c.transpose();
        let slabs = self.slabs.iter().map(|s| SlabPoly { coeffs: s.coeffs() * &ct }).collect();
        Ok(Self { mesh: self.mesh.clone(), slabs })
    }

    /// Pointwise difference, padding the lower degree operand with zeros.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.n_coeffs().max(other.n_coeffs());
        let slabs = self
            .slabs
            .iter()
            .zip(&other.slabs)
            .map(|(a, b)| SlabPoly { coeffs: a.resized(n).coeffs - b.resized(n).coeffs })
            .collect();
        Ok(Self { mesh: self.mesh.clone(), slabs })
    }

    pub fn scale(&self, s: f64) -> Self {
        let slabs = self.slabs.iter().map(|p| SlabPoly { coeffs: &p.coeffs * s }).collect();
        Self { mesh: self.mesh.clone(), slabs }
    }

    pub(crate) fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.mesh != other.mesh {
            return invalid("broken functions live on different meshes");
        }
        if self.dim() != other.dim() {
            return invalid(format!("dimension mismatch: {} vs {}", self.dim(), other.dim()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mesh2() -> TimeMesh {
        TimeMesh::uniform(1.0, 2).unwrap()
    }

    fn scalar(v: f64) -> DVector<f64> {
        DVector::from_element(1, v)
    }

    fn step() -> BrokenFunction {
        BrokenFunction::new(mesh2(), vec![SlabPoly::constant(2, &scalar(1.0)), SlabPoly::zeros(2, 1)]).unwrap()
    }

    /// F(t) = t on each slab of a uniform mesh.
    fn identity_fn(n: usize) -> BrokenFunction {
        let mesh = TimeMesh::uniform(1.0, n).unwrap();
        let slabs = (0..n)
            .map(|i| {
                let (a, b) = mesh.slab(i);
                // t = (a+b)/2 + (b-a)/2 * P_1
                SlabPoly::new(DMatrix::from_column_slice(2, 1, &[(a + b) / 2.0, (b - a) / 2.0])).unwrap()
            })
            .collect();
        BrokenFunction::new(mesh, slabs).unwrap()
    }

    #[test]
    fn constant_everywhere() {
        let c = DVector::from_vec(vec![1.5, -2.0]);
        let f = BrokenFunction::constant(TimeMesh::uniform(1.0, 3).unwrap(), 3, &c);
        for &t in &[0.1, 1.0 / 3.0, 0.5, 0.99] {
            assert_eq!(f.eval(t, Side::Left).unwrap(), c);
            assert_eq!(f.eval(t, Side::Right).unwrap(), c);
        }
    }

    #[test]
    fn one_sided_limits_at_breakpoint() {
        let f = step();
        assert_eq!(f.eval(0.5, Side::Left).unwrap()[0], 1.0);
        assert_eq!(f.eval(0.5, Side::Right).unwrap()[0], 0.0);
    }

    #[test]
    fn continuous_function_limits_agree() {
        let f = identity_fn(4);
        for &t in &[0.25, 0.5, 0.75] {
            assert!((f.eval(t, Side::Left).unwrap()[0] - t).abs() < 1e-15);
            assert!((f.eval(t, Side::Right).unwrap()[0] - t).abs() < 1e-15);
        }
        for n in 1..4 {
            assert!(f.jump(n).unwrap()[0].abs() < 1e-15);
        }
    }

    #[test]
    fn jump_of_step() {
        assert_eq!(step().jump(1).unwrap()[0], -1.0);
        assert!(step().jump(0).is_err());
        assert!(step().jump(2).is_err());
    }

    #[test]
    fn jump_by_construction() {
        // t^2 on slab 1, t^2 + 0.3 on slab 2
        let mesh = mesh2();
        let sq = |a: f64, b: f64, shift: f64| {
            // t^2 on (a, b] in Legendre coefficients: t = m + h x
            let (m, h) = ((a + b) / 2.0, (b - a) / 2.0);
            // t^2 = m^2 + 2 m h x + h^2 x^2, x^2 = (2 P_2 + 1) / 3
            SlabPoly::new(DMatrix::from_column_slice(
                3,
                1,
                &[m * m + h * h / 3.0 + shift, 2.0 * m * h, 2.0 * h * h / 3.0],
            ))
            .unwrap()
        };
        let f = BrokenFunction::new(mesh, vec![sq(0.0, 0.5, 0.0), sq(0.5, 1.0, 0.3)]).unwrap();
        assert!((f.eval(0.3, Side::Left).unwrap()[0] - 0.09).abs() < 1e-15);
        assert!((f.jump(1).unwrap()[0] - 0.3).abs() < 1e-14);
    }

    #[test]
    fn domain_checks() {
        let f = step();
        assert!(matches!(f.eval(-0.1, Side::Left), Err(DgError::OutOfDomain { .. })));
        assert!(matches!(f.eval(1.1, Side::Right), Err(DgError::OutOfDomain { .. })));
        assert!(f.eval(1.0, Side::Right).is_err());
        assert!(f.eval(0.0, Side::Left).is_err());
        assert_eq!(f.eval(0.0, Side::Right).unwrap()[0], 1.0);
    }

    #[test]
    fn shape_mismatch_rejected() {
        let mesh = mesh2();
        assert!(BrokenFunction::new(mesh.clone(), vec![SlabPoly::zeros(2, 1)]).is_err());
        assert!(BrokenFunction::new(mesh, vec![SlabPoly::zeros(2, 1), SlabPoly::zeros(3, 1)]).is_err());
    }
}
