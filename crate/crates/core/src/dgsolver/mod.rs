//! Slab-by-slab solution of the time-discrete constrained and mixed problems.
//!
//! On slab `I_n` with temporal matrices `D`, `S`, `e` (see
//! [`assemble_temporal_matrices`]) the mixed system reads
//!
//! ```text
//! (D ⊗ M + S ⊗ A) w + (S ⊗ B1ᵀ) p = F + e ⊗ (M u_prev)
//! (S ⊗ B1) w                      = G
//! ```
//!
//! Explicit constraints `B2 u = g2` are removed by writing `U = Z w + H` with
//! `Z` a basis of `ker B2` and `H` the time projection of `lift · g2`.
//! With `use_projection` the constraint data enter through `I_q`; without it
//! through plain L² moments, which is the usual (sub-optimal) DG treatment.

mod monolithic;
mod residual;
mod slab;
mod temporal;

use nalgebra::{DVector, Dyn, LU};

use crate::error::{invalid, DgError, Result};
use crate::systems::ConstrainedSystem;
use crate::timecore::{BrokenFunction, Quadrature, TimeMesh, MAX_GAUSS_POINTS};

pub use monolithic::solve_monolithic;
pub use residual::{constraint_defect, dg_residual};
pub use slab::SlabAssembler;
pub use temporal::{assemble_temporal_matrices, TemporalMatrices};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverOptions {
    /// Temporal dofs per slab (polynomial degree `q - 1`).
    pub q: usize,
    pub use_projection: bool,
    /// Gauss points per slab for data integrals. `None` means `max(q + 2, 4)`.
    pub quad_points: Option<usize>,
}

impl SolverOptions {
    pub fn new(q: usize) -> Self {
        Self { q, use_projection: true, quad_points: None }
    }

    pub fn without_projection(mut self) -> Self {
        self.use_projection = false;
        self
    }

    pub fn with_projection(mut self, on: bool) -> Self {
        self.use_projection = on;
        self
    }

    pub fn quadrature(&self) -> Result<Quadrature> {
        match self.quad_points {
            Some(n) => crate::timecore::gauss_legendre(n),
            None => Ok(Quadrature::default_for(self.q)),
        }
    }

    pub fn check(&self) -> Result<()> {
        if self.q == 0 {
            return invalid("q must be at least 1");
        }
        if self.q + 2 > MAX_GAUSS_POINTS {
            return invalid(format!("q = {} is too large", self.q));
        }
        let quad = self.quadrature()?;
        if quad.exactness_degree < 2 * self.q - 1 {
            return invalid(format!(
                "{} quadrature points are exact to degree {}, need {}",
                quad.len(),
                quad.exactness_degree,
                2 * self.q - 1
            ));
        }
        Ok(())
    }
}

/// Per-slab factorization record.
#[derive(Debug, Clone, PartialEq)]
pub struct SlabDiagnostics {
    pub slab: usize,
    pub size: usize,
    /// `max |u_ii| / min |u_ii|` over the LU pivots, a cheap conditioning hint.
    pub pivot_ratio: f64,
}

#[derive(Debug, Clone)]
pub struct MixedSolution {
    pub u: BrokenFunction,
    /// Lagrange multiplier, absent when there are no `B1` constraints.
    pub p: Option<BrokenFunction>,
    pub diagnostics: Vec<SlabDiagnostics>,
}

fn pivot_ratio(lu: &LU<f64, Dyn, Dyn>) -> f64 {
    let u = lu.u();
    let d = u.diagonal();
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for v in d.iter() {
        lo = lo.min(v.abs());
        hi = hi.max(v.abs());
    }
    if lo == 0.0 {
        f64::INFINITY
    } else {
        hi / lo
    }
}

fn run(asm: &SlabAssembler<'_>) -> Result<MixedSolution> {
    let mesh = asm.mesh();
    let sys = asm.system();
    let mut u_prev: DVector<f64> = sys.u0.clone();
    let mut u_slabs = Vec::with_capacity(mesh.n_slabs());
    let mut p_slabs = Vec::with_capacity(mesh.n_slabs());
    let mut diagnostics = Vec::with_capacity(mesh.n_slabs());
    let mut cached: Option<(u64, LU<f64, Dyn, Dyn>, f64)> = None;

    for n in 0..mesh.n_slabs() {
        let width_bits = mesh.width(n).to_bits();
        if cached.as_ref().map(|c| c.0) != Some(width_bits) {
            let lu = asm.matrix(n)?.lu();
            let ratio = pivot_ratio(&lu);
            cached = Some((width_bits, lu, ratio));
        }
        let (_, lu, ratio) = cached.as_ref().expect("factorization cached above");
        if !ratio.is_finite() || *ratio > 1e15 {
            return Err(DgError::SolverFailure { slab: n });
        }
        let rhs = asm.rhs(n, &u_prev)?;
        let x = lu.solve(&rhs).ok_or(DgError::SolverFailure { slab: n })?;
        if x.iter().any(|v| !v.is_finite()) {
            return Err(DgError::SolverFailure { slab: n });
        }
        let (u, p) = asm.expand(n, &x)?;
        u_prev = u.right_value();
        u_slabs.push(u);
        if let Some(p) = p {
            p_slabs.push(p);
        }
        diagnostics.push(SlabDiagnostics { slab: n, size: rhs.len(), pivot_ratio: *ratio });
    }

    let u = BrokenFunction::new(mesh.clone(), u_slabs)?;
    let p = if p_slabs.is_empty() { None } else { Some(BrokenFunction::new(mesh.clone(), p_slabs)?) };
    Ok(MixedSolution { u, p, diagnostics })
}

/// Mixed formulation for systems without explicit constraints (`r2 = 0`).
pub fn solve_mixed(sys: &ConstrainedSystem, mesh: &TimeMesh, opts: &SolverOptions) -> Result<MixedSolution> {
    if sys.dims().2 != 0 {
        return invalid("solve_mixed expects no explicit constraints; use solve_constrained");
    }
    run(&SlabAssembler::new(sys, mesh, opts)?)
}

/// Constrained formulation: explicit constraints are lifted, the remaining
/// multiplier constraints (if any) are kept as in [`solve_mixed`].
pub fn solve_constrained(sys: &ConstrainedSystem, mesh: &TimeMesh, opts: &SolverOptions) -> Result<MixedSolution> {
    if sys.dims().2 == 0 {
        return invalid("solve_constrained expects at least one explicit constraint");
    }
    run(&SlabAssembler::new(sys, mesh, opts)?)
}

/// Dispatch on the constraint structure of `sys`.
pub fn solve(sys: &ConstrainedSystem, mesh: &TimeMesh, opts: &SolverOptions) -> Result<MixedSolution> {
    if sys.dims().2 == 0 {
        solve_mixed(sys, mesh, opts)
    } else {
        solve_constrained(sys, mesh, opts)
    }
}
