use nalgebra::{DMatrix, DVector};

use super::slab::SlabAssembler;
use super::{MixedSolution, SolverOptions};
use crate::error::{invalid, DgError, Result};
use crate::systems::ConstrainedSystem;
use crate::timecore::{BrokenFunction, TimeMesh};

/// Assemble all slabs into one block lower-bidiagonal system and solve it in
/// a single factorization. Only meant for checking the sequential solver on
/// small meshes.
pub fn solve_monolithic(sys: &ConstrainedSystem, mesh: &TimeMesh, opts: &SolverOptions) -> Result<MixedSolution> {
    let asm = SlabAssembler::new(sys, mesh, opts)?;
    let n_slabs = mesh.n_slabs();
    if n_slabs > 64 {
        return invalid("monolithic solve is limited to 64 slabs");
    }
    let (q, nz) = (asm.q(), asm.n_kernel());
    let local = asm.local_size();
    let total = local * n_slabs;
    let mut big = DMatrix::zeros(total, total);
    let mut rhs = DVector::zeros(total);

    let z = asm.kernel();
    let mass_z = z.transpose() * &sys.mass * z;
    for n in 0..n_slabs {
        big.view_mut((n * local, n * local), (local, local)).copy_from(&asm.matrix(n)?);
        // the previous slab's kernel part of U^{n-1} moves to the left-hand
        // side; its lifted part stays in the data
        let u_prev = if n == 0 {
            sys.u0.clone()
        } else {
            match asm.lifted_slab(n - 1) {
                Some(h) => h.right_value(),
                None => DVector::zeros(sys.dims().0),
            }
        };
        rhs.rows_mut(n * local, local).copy_from(&asm.rhs(n, &u_prev)?);
        if n > 0 {
            let tm = asm.temporal(n)?;
            for i in 0..q {
                for j in 0..q {
                    // φ_j(t_{n-1}^-) = 1 on the previous slab
                    let block = &mass_z * (-tm.start[i]);
                    big.view_mut((n * local + i * nz, (n - 1) * local + j * nz), (nz, nz)).copy_from(&block);
                }
            }
        }
    }

    let x = big.lu().solve(&rhs).ok_or(DgError::SolverFailure { slab: 0 })?;
    let mut u_slabs = Vec::with_capacity(n_slabs);
    let mut p_slabs = Vec::with_capacity(n_slabs);
    for n in 0..n_slabs {
        let (u, p) = asm.expand(n, &x.rows(n * local, local).into_owned())?;
        u_slabs.push(u);
        if let Some(p) = p {
            p_slabs.push(p);
        }
    }
    Ok(MixedSolution {
        u: BrokenFunction::new(mesh.clone(), u_slabs)?,
        p: if p_slabs.is_empty() { None } else { Some(BrokenFunction::new(mesh.clone(), p_slabs)?) },
        diagnostics: Vec::new(),
    })
}
