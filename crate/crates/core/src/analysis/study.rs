use rayon::prelude::*;

use super::eoc::{eoc, Eoc};
use super::norms::{error_l2_energy, error_l2_multiplier, error_nodal_max, error_quadrature};
use crate::dgsolver::{solve, SolverOptions};
use crate::error::{invalid, DgError, Result};
use crate::systems::ConstrainedSystem;
use crate::timecore::TimeMesh;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormSelection {
    pub energy: bool,
    pub nodal: bool,
    pub multiplier: bool,
}

impl NormSelection {
    pub fn all() -> Self {
        Self { energy: true, nodal: true, multiplier: true }
    }

    /// Energy and nodal errors only.
    pub fn state() -> Self {
        Self { energy: true, nodal: true, multiplier: false }
    }
}

#[derive(Debug, Clone)]
pub struct StudySpec {
    pub problem: String,
    pub system: ConstrainedSystem,
    pub q: usize,
    pub ns: Vec<usize>,
    pub use_projection: bool,
    pub norms: NormSelection,
    pub t_end: f64,
    /// Worker threads across `N` values; `None` uses all cores.
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EocRow {
    pub n: usize,
    pub k: f64,
    pub err_energy: Option<f64>,
    pub err_nodal: Option<f64>,
    pub err_multiplier: Option<f64>,
    pub eoc_energy: Option<Eoc>,
    pub eoc_nodal: Option<Eoc>,
    pub eoc_multiplier: Option<Eoc>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EocTable {
    pub problem: String,
    pub q: usize,
    pub use_projection: bool,
    pub rows: Vec<EocRow>,
    /// Spatial error is zero by construction, so only temporal orders are
    /// reported.
    pub note: String,
}

struct RunErrors {
    energy: Option<f64>,
    nodal: Option<f64>,
    multiplier: Option<f64>,
}

fn run_one(spec: &StudySpec, n: usize) -> Result<RunErrors> {
    let sys = &spec.system;
    let mesh = TimeMesh::uniform(spec.t_end, n)?;
    let opts = SolverOptions::new(spec.q).with_projection(spec.use_projection);
    let sol = solve(sys, &mesh, &opts)?;
    let quad = error_quadrature(spec.q);
    let exact_u = sys.exact_u.as_ref();
    let need_u = spec.norms.energy || spec.norms.nodal;
    if need_u && exact_u.is_none() {
        return invalid("state error requested but the system has no exact solution");
    }
    let energy = match (spec.norms.energy, exact_u) {
        (true, Some(u)) => Some(error_l2_energy(&sol.u, &**u, &sys.norm_u, &quad)?),
        _ => None,
    };
    let nodal = match (spec.norms.nodal, exact_u) {
        (true, Some(u)) => Some(error_nodal_max(&sol.u, &**u, &sys.mass)?),
        _ => None,
    };
    let multiplier = if spec.norms.multiplier {
        match (&sol.p, &sys.exact_p) {
            (Some(p), Some(exact)) => Some(error_l2_multiplier(p, &**exact, &sys.norm_q1, &quad)?),
            _ => return invalid("multiplier error requested but the system has no multiplier"),
        }
    } else {
        None
    };
    Ok(RunErrors { energy, nodal, multiplier })
}

fn orders(values: &[Option<f64>], ns: &[usize]) -> Result<Vec<Option<Eoc>>> {
    let mut out = vec![None; values.len()];
    if values.len() < 2 || values.iter().any(Option::is_none) {
        return Ok(out);
    }
    let errs: Vec<f64> = values.iter().map(|v| v.expect("checked above")).collect();
    for (i, e) in eoc(&errs, ns)?.into_iter().enumerate() {
        out[i + 1] = Some(e);
    }
    Ok(out)
}

/// Solve on uniform meshes with the given slab counts and tabulate errors
/// and orders. Runs for different `N` may execute in parallel; the table is
/// ordered by `N`.
pub fn run_study(spec: &StudySpec) -> Result<EocTable> {
    if spec.ns.is_empty() {
        return invalid("no slab counts given");
    }
    if spec.ns.windows(2).any(|w| w[1] <= w[0]) {
        return invalid("slab counts must be strictly increasing");
    }
    let work = || -> Vec<Result<RunErrors>> {
        spec.ns
            .par_iter()
            .map(|&n| run_one(spec, n).map_err(|e| DgError::Study { n_slabs: n, source: Box::new(e) }))
            .collect()
    };
    let results = match spec.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| DgError::Internal(e.to_string()))?
            .install(work),
        None => work(),
    };
    let results = results.into_iter().collect::<Result<Vec<_>>>()?;

    let energy: Vec<_> = results.iter().map(|r| r.energy).collect();
    let nodal: Vec<_> = results.iter().map(|r| r.nodal).collect();
    let mult: Vec<_> = results.iter().map(|r| r.multiplier).collect();
    let (oe, on, om) = (orders(&energy, &spec.ns)?, orders(&nodal, &spec.ns)?, orders(&mult, &spec.ns)?);
    let rows = spec
        .ns
        .iter()
        .enumerate()
        .map(|(i, &n)| EocRow {
            n,
            k: spec.t_end / n as f64,
            err_energy: energy[i],
            err_nodal: nodal[i],
            err_multiplier: mult[i],
            eoc_energy: oe[i],
            eoc_nodal: on[i],
            eoc_multiplier: om[i],
        })
        .collect();
    Ok(EocTable {
        problem: spec.problem.clone(),
        q: spec.q,
        use_projection: spec.use_projection,
        rows,
        note: "temporal orders only; the spatial discretization is exact for these problems".into(),
    })
}
