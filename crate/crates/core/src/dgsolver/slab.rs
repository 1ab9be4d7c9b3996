//! Per-slab assembly.
//!
//! Unknowns on one slab are ordered `[w_0, ..., w_{q-1}, p_0, ..., p_{q-1}]`
//! with `w_j` the kernel coordinates (`U_j = Z w_j + H_j`) of temporal mode `j`
//! and `p_j` the multiplier coefficients. `Z` spans `ker B2` and `H` is the
//! time-projected lift of the explicit constraint data.

use nalgebra::{DMatrix, DVector};

use super::temporal::{assemble_temporal_matrices, TemporalMatrices};
use super::SolverOptions;
use crate::error::{invalid, DgError, Result};
use crate::projection::{project_broken, ProjectionSpec};
use crate::systems::linalg::kernel_basis;
use crate::systems::ConstrainedSystem;
use crate::timecore::{legendre, BrokenFunction, Quadrature, SlabPoly, TimeMesh};

pub struct SlabAssembler<'a> {
    sys: &'a ConstrainedSystem,
    mesh: &'a TimeMesh,
    q: usize,
    use_projection: bool,
    quad: Quadrature,
    proj: ProjectionSpec,
    z: DMatrix<f64>,
    mass_z: DMatrix<f64>,
    stiffness_z: DMatrix<f64>,
    b1_z: DMatrix<f64>,
    /// Lifted explicit-constraint data `L g2` projected in time, when `r2 > 0`.
    lifted: Option<BrokenFunction>,
}

fn finite(v: &DVector<f64>, what: &str, t: f64) -> Result<()> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(DgError::Data(format!("non-finite {what} at t = {t}")))
    }
}

/// `(2j + 1)/k ∫ φ_j φ` on each slab: the L²-orthogonal projection.
fn l2_project(
    phi: &dyn Fn(f64) -> DVector<f64>,
    mesh: &TimeMesh,
    dim: usize,
    q: usize,
    quad: &Quadrature,
) -> Result<BrokenFunction> {
    let mut slabs = Vec::with_capacity(mesh.n_slabs());
    for i in 0..mesh.n_slabs() {
        let (a, b) = mesh.slab(i);
        let mut c = DMatrix::zeros(q, dim);
        for (&s, &w) in quad.nodes.iter().zip(&quad.weights) {
            let t = a + (b - a) * s;
            let v = phi(t);
            finite(&v, "constraint data", t)?;
            let basis = legendre(q, s).values;
            for j in 0..q {
                let scale = (2 * j + 1) as f64 * w * basis[j];
                for d in 0..dim {
                    c[(j, d)] += scale * v[d];
                }
            }
        }
        slabs.push(SlabPoly::new(c)?);
    }
    BrokenFunction::new(mesh.clone(), slabs)
}

impl<'a> SlabAssembler<'a> {
    pub fn new(sys: &'a ConstrainedSystem, mesh: &'a TimeMesh, opts: &SolverOptions) -> Result<Self> {
        sys.check_shapes()?;
        opts.check()?;
        let (m, _, r2) = sys.dims();
        if r2 > 0 && sys.lift_residual() > 1e-12 {
            return invalid(format!("lift is not a right inverse of B2 (residual {:.3e})", sys.lift_residual()));
        }
        let q = opts.q;
        let quad = opts.quadrature()?;
        let proj = ProjectionSpec::new(q, quad.clone())?;
        let z = kernel_basis(&sys.b2, m);
        let lifted = if r2 > 0 {
            let (lift, g2) = (&sys.lift, &sys.g2);
            let lifted_data = move |t: f64| lift * g2(t);
            Some(if opts.use_projection {
                project_broken(&lifted_data, mesh, m, &proj)?
            } else {
                l2_project(&lifted_data, mesh, m, q, &quad)?
            })
        } else {
            None
        };
        Ok(Self {
            mass_z: z.transpose() * &sys.mass * &z,
            stiffness_z: z.transpose() * &sys.stiffness * &z,
            b1_z: &sys.b1 * &z,
            z,
            sys,
            mesh,
            q,
            use_projection: opts.use_projection,
            quad,
            proj,
            lifted,
        })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n_kernel(&self) -> usize {
        self.z.ncols()
    }

    pub fn kernel(&self) -> &DMatrix<f64> {
        &self.z
    }

    pub fn mesh(&self) -> &TimeMesh {
        self.mesh
    }

    pub fn system(&self) -> &ConstrainedSystem {
        self.sys
    }

    /// Number of unknowns per slab.
    pub fn local_size(&self) -> usize {
        self.q * (self.n_kernel() + self.sys.dims().1)
    }

    pub fn temporal(&self, slab: usize) -> Result<TemporalMatrices> {
        assemble_temporal_matrices(self.mesh.width(slab), self.q, &self.quad)
    }

    pub(crate) fn lifted_slab(&self, slab: usize) -> Option<&SlabPoly> {
        self.lifted.as_ref().map(|h| h.slab(slab))
    }

    /// Slab system matrix. Depends on the slab only through its width.
    pub fn matrix(&self, slab: usize) -> Result<DMatrix<f64>> {
        let tm = self.temporal(slab)?;
        let (q, nz, r1) = (self.q, self.n_kernel(), self.sys.dims().1);
        let n = self.local_size();
        let mut k = DMatrix::zeros(n, n);
        let b1t = self.b1_z.transpose();
        for i in 0..q {
            for j in 0..q {
                let (d, s) = (tm.derivative[(i, j)], tm.mass[(i, j)]);
                let block = &self.mass_z * d + &self.stiffness_z * s;
                k.view_mut((i * nz, j * nz), (nz, nz)).copy_from(&block);
                if r1 > 0 && s != 0.0 {
                    k.view_mut((i * nz, q * nz + j * r1), (nz, r1)).copy_from(&(&b1t * s));
                    k.view_mut((q * nz + i * r1, j * nz), (r1, nz)).copy_from(&(&self.b1_z * s));
                }
            }
        }
        Ok(k)
    }

    /// `F_i = ∫_{I_n} φ_i f`.
    pub(crate) fn load_moments(&self, slab: usize) -> Result<Vec<DVector<f64>>> {
        self.moments(slab, &*self.sys.load, "load")
    }

    fn moments(&self, slab: usize, f: &dyn Fn(f64) -> DVector<f64>, what: &str) -> Result<Vec<DVector<f64>>> {
        let (a, b) = self.mesh.slab(slab);
        let k = b - a;
        let mut out: Vec<DVector<f64>> = Vec::with_capacity(self.q);
        for (&s, &w) in self.quad.nodes.iter().zip(&self.quad.weights) {
            let t = a + k * s;
            let v = f(t);
            finite(&v, what, t)?;
            let basis = legendre(self.q, s).values;
            if out.is_empty() {
                out = vec![DVector::zeros(v.len()); self.q];
            }
            for (i, o) in out.iter_mut().enumerate() {
                o.axpy(k * w * basis[i], &v, 1.0);
            }
        }
        Ok(out)
    }

    /// `∫_{I_n} φ_i (I_q g)` (projection on) or `∫_{I_n} φ_i g` (off).
    fn constraint_moments(
        &self,
        slab: usize,
        g: &dyn Fn(f64) -> DVector<f64>,
        tm: &TemporalMatrices,
    ) -> Result<Vec<DVector<f64>>> {
        if self.use_projection {
            let (a, b) = self.mesh.slab(slab);
            let p = crate::projection::project_slab(g, a, b, &self.proj)?;
            Ok((0..self.q)
                .map(|i| {
                    let mut acc = DVector::zeros(p.dim());
                    for j in 0..self.q {
                        acc.axpy(tm.mass[(i, j)], &p.coeff(j), 1.0);
                    }
                    acc
                })
                .collect())
        } else {
            self.moments(slab, g, "constraint data")
        }
    }

    pub(crate) fn g1_moments(&self, slab: usize, tm: &TemporalMatrices) -> Result<Vec<DVector<f64>>> {
        self.constraint_moments(slab, &*self.sys.g1, tm)
    }

    pub(crate) fn g2_moments(&self, slab: usize, tm: &TemporalMatrices) -> Result<Vec<DVector<f64>>> {
        self.constraint_moments(slab, &*self.sys.g2, tm)
    }

    /// Right-hand side given the state `U^{n-1}` at the left end of the slab
    /// (`u0` on the first slab).
    ///
    /// With `W = U - H` the state rows read
    /// `F_i - Σ_j (D_ij M + S_ij A) H_j + e_i M U^{n-1}`. Since `D` carries the
    /// inflow term `e eᵀ`, this equals the form
    /// `F_i - ∫ φ_i (M H' + A H) - e_i M (H_+^{n-1} - G(t_{n-1})) + e_i M W^{n-1}`
    /// which only needs point values of the explicit constraint data.
    pub fn rhs(&self, slab: usize, u_prev: &DVector<f64>) -> Result<DVector<f64>> {
        let tm = self.temporal(slab)?;
        let (q, nz, r1) = (self.q, self.n_kernel(), self.sys.dims().1);
        let (mass, stiffness) = (&self.sys.mass, &self.sys.stiffness);
        let mut rhs = DVector::zeros(self.local_size());

        let loads = self.load_moments(slab)?;
        let m_prev = mass * u_prev;
        let h = self.lifted_slab(slab);
        let zt = self.z.transpose();
        for i in 0..q {
            let mut r = loads[i].clone();
            r.axpy(tm.start[i], &m_prev, 1.0);
            if let Some(h) = h {
                for j in 0..q {
                    let hj = h.coeff(j);
                    r -= mass * &hj * tm.derivative[(i, j)] + stiffness * &hj * tm.mass[(i, j)];
                }
            }
            rhs.rows_mut(i * nz, nz).copy_from(&(&zt * r));
        }

        if r1 > 0 {
            let g1 = self.g1_moments(slab, &tm)?;
            for i in 0..q {
                let mut r = g1[i].clone();
                if let Some(h) = h {
                    for j in 0..q {
                        r -= &self.sys.b1 * h.coeff(j) * tm.mass[(i, j)];
                    }
                }
                rhs.rows_mut(q * nz + i * r1, r1).copy_from(&r);
            }
        }
        Ok(rhs)
    }

    /// Map a slab solution vector back to `(U, P)` slab polynomials.
    pub fn expand(&self, slab: usize, x: &DVector<f64>) -> Result<(SlabPoly, Option<SlabPoly>)> {
        let (m, r1, _) = self.sys.dims();
        let (q, nz) = (self.q, self.n_kernel());
        let mut u = DMatrix::zeros(q, m);
        for j in 0..q {
            let mut v = &self.z * x.rows(j * nz, nz);
            if let Some(h) = self.lifted_slab(slab) {
                v += h.coeff(j);
            }
            u.row_mut(j).copy_from(&v.transpose());
        }
        let p = if r1 > 0 {
            let mut p = DMatrix::zeros(q, r1);
            for j in 0..q {
                p.row_mut(j).copy_from(&x.rows(q * nz + j * r1, r1).transpose());
            }
            Some(SlabPoly::new(p)?)
        } else {
            None
        };
        Ok((SlabPoly::new(u)?, p))
    }

    /// Kernel coordinates of a full state polynomial on `slab` (inverse of
    /// [`expand`](Self::expand) for states satisfying the explicit constraint).
    pub fn restrict(&self, slab: usize, u: &SlabPoly, p: Option<&SlabPoly>) -> DVector<f64> {
        let (_, r1, _) = self.sys.dims();
        let (q, nz) = (self.q, self.n_kernel());
        let mut x = DVector::zeros(self.local_size());
        let zt = self.z.transpose();
        for j in 0..q {
            let mut v = u.coeff(j);
            if let Some(h) = self.lifted_slab(slab) {
                v -= h.coeff(j);
            }
            x.rows_mut(j * nz, nz).copy_from(&(&zt * v));
            if let (Some(p), true) = (p, r1 > 0) {
                x.rows_mut(q * nz + j * r1, r1).copy_from(&p.coeff(j));
            }
        }
        x
    }
}
