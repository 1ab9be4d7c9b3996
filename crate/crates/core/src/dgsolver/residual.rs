//! Verification utilities: Galerkin residuals and constraint defects.

use nalgebra::DVector;

use super::slab::SlabAssembler;
use super::SolverOptions;
use crate::error::{invalid, Result};
use crate::projection::{project_broken, ProjectionSpec};
use crate::systems::ConstrainedSystem;
use crate::timecore::{BrokenFunction, TimeMesh};

/// Max absolute residual per slab of both discrete equations, tested against
/// every temporal × spatial basis function (state tests restricted to
/// `ker B2`).
pub fn dg_residual(
    sys: &ConstrainedSystem,
    mesh: &TimeMesh,
    opts: &SolverOptions,
    u: &BrokenFunction,
    p: Option<&BrokenFunction>,
) -> Result<Vec<f64>> {
    let (m, r1, r2) = sys.dims();
    if u.mesh() != mesh || u.dim() != m || u.n_coeffs() != opts.q {
        return invalid("state does not match the system, mesh and q");
    }
    if r1 > 0 {
        match p {
            Some(p) if p.mesh() == mesh && p.dim() == r1 && p.n_coeffs() == opts.q => {}
            _ => return invalid("multiplier does not match the system, mesh and q"),
        }
    }
    let asm = SlabAssembler::new(sys, mesh, opts)?;
    let zt = asm.kernel().transpose();
    let q = opts.q;
    let mut out = Vec::with_capacity(mesh.n_slabs());
    let mut u_prev = sys.u0.clone();
    for n in 0..mesh.n_slabs() {
        let tm = asm.temporal(n)?;
        let loads = asm.load_moments(n)?;
        let us: Vec<DVector<f64>> = (0..q).map(|j| u.slab(n).coeff(j)).collect();
        let ps: Vec<DVector<f64>> = match (p, r1) {
            (Some(p), r) if r > 0 => (0..q).map(|j| p.slab(n).coeff(j)).collect(),
            _ => Vec::new(),
        };
        let mut worst = 0.0f64;
        let m_prev = &sys.mass * &u_prev;
        for i in 0..q {
            let mut r = -&loads[i] - &m_prev * tm.start[i];
            for j in 0..q {
                r += &sys.mass * &us[j] * tm.derivative[(i, j)] + &sys.stiffness * &us[j] * tm.mass[(i, j)];
                if r1 > 0 {
                    r += sys.b1.transpose() * &ps[j] * tm.mass[(i, j)];
                }
            }
            worst = worst.max((&zt * r).amax());
        }
        if r1 > 0 {
            let g1 = asm.g1_moments(n, &tm)?;
            for i in 0..q {
                let mut r = -&g1[i];
                for j in 0..q {
                    r += &sys.b1 * &us[j] * tm.mass[(i, j)];
                }
                worst = worst.max(r.amax());
            }
        }
        if r2 > 0 {
            let g2 = asm.g2_moments(n, &tm)?;
            for i in 0..q {
                let mut r = -&g2[i];
                for j in 0..q {
                    r += &sys.b2 * &us[j] * tm.mass[(i, j)];
                }
                worst = worst.max(r.amax());
            }
        }
        out.push(worst);
        u_prev = u.end_value(n);
    }
    Ok(out)
}

/// Per slab, the largest modal coefficient of `[B1; B2] U - I_q [g1; g2]`.
pub fn constraint_defect(
    sys: &ConstrainedSystem,
    mesh: &TimeMesh,
    opts: &SolverOptions,
    u: &BrokenFunction,
) -> Result<Vec<f64>> {
    let (_, r1, r2) = sys.dims();
    let spec = ProjectionSpec::new(opts.q, opts.quadrature()?)?;
    let mut worst = vec![0.0f64; mesh.n_slabs()];
    for (b, g, r) in [(&sys.b1, &sys.g1, r1), (&sys.b2, &sys.g2, r2)] {
        if r == 0 {
            continue;
        }
        let projected = project_broken(&**g, mesh, r, &spec)?;
        let diff = u.map_matrix(b)?.sub(&projected)?;
        for (w, s) in worst.iter_mut().zip(diff.slabs()) {
            *w = w.max(s.coeffs().amax());
        }
    }
    Ok(worst)
}
