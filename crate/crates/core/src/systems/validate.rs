use std::fmt;

use nalgebra::DMatrix;

use super::linalg::{kernel_basis, numerical_rank, singular_values, RANK_TOL};
use super::ConstrainedSystem;

/// One invariant check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub value: Option<f64>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    /// Dimension of `ker [B1; B2]`.
    pub kernel_dim: usize,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            match c.value {
                Some(v) => writeln!(f, "{status} {:<20} {v:>12.5e}  {}", c.name, c.detail)?,
                None => writeln!(f, "{status} {:<20} {:>12}  {}", c.name, "-", c.detail)?,
            }
        }
        writeln!(f, "constraint kernel dimension: {}", self.kernel_dim)
    }
}

fn asymmetry(a: &DMatrix<f64>) -> f64 {
    let scale = a.amax().max(f64::MIN_POSITIVE);
    (a - a.transpose()).amax() / scale
}

fn min_eigenvalue(a: &DMatrix<f64>) -> Option<f64> {
    if a.nrows() == 0 {
        return None;
    }
    let sym = (a + a.transpose()) * 0.5;
    Some(sym.symmetric_eigen().eigenvalues.min())
}

/// Check the structural assumptions the solver relies on. Never fails; each
/// invariant is reported separately.
pub fn validate_system(sys: &ConstrainedSystem) -> ValidationReport {
    let mut checks = Vec::new();
    if let Err(e) = sys.check_shapes() {
        checks.push(Check { name: "shapes", passed: false, value: None, detail: e.to_string() });
        return ValidationReport { checks, kernel_dim: 0 };
    }
    let (m, r1, r2) = sys.dims();

    let asym = asymmetry(&sys.mass);
    let chol = sys.mass.clone().cholesky().is_some();
    checks.push(Check {
        name: "mass-spd",
        passed: asym <= 1e-12 && chol,
        value: Some(asym),
        detail: format!("relative asymmetry; Cholesky {}", if chol { "ok" } else { "failed" }),
    });

    let asym = asymmetry(&sys.stiffness);
    checks.push(Check {
        name: "stiffness-symmetric",
        passed: asym <= 1e-12,
        value: Some(asym),
        detail: "relative asymmetry".into(),
    });

    let b = sys.constraint_matrix();
    let rank = numerical_rank(&b);
    checks.push(Check {
        name: "constraint-rank",
        passed: rank == r1 + r2,
        value: Some(rank as f64),
        detail: format!("rank of [B1; B2], expected {}", r1 + r2),
    });

    let z = kernel_basis(&b, m);
    let kernel_dim = z.ncols();
    let projected = z.transpose() * &sys.stiffness * &z;
    let scale = sys.stiffness.amax().max(1.0);
    let ellipticity = match min_eigenvalue(&projected) {
        Some(lam) => Check {
            name: "ellipticity",
            passed: lam > 1e-12 * scale,
            value: Some(lam),
            detail: "smallest eigenvalue of A on ker [B1; B2]".into(),
        },
        None => Check { name: "ellipticity", passed: true, value: None, detail: "constraint kernel is trivial".into() },
    };
    checks.push(ellipticity);

    let lift = sys.lift_residual();
    checks.push(Check {
        name: "lift-residual",
        passed: lift <= 1e-12,
        value: Some(lift),
        detail: "max |B2 L - I|".into(),
    });

    let inf_sup = if r1 == 0 {
        Check { name: "inf-sup", passed: true, value: None, detail: "no multiplier constraints".into() }
    } else {
        let z2 = kernel_basis(&sys.b2, m);
        let s = singular_values(&(&sys.b1 * &z2));
        let smax = s.first().copied().unwrap_or(0.0);
        let smin = if s.len() < r1 { 0.0 } else { s[r1 - 1] };
        Check {
            name: "inf-sup",
            passed: smax > 0.0 && smin > RANK_TOL * smax,
            value: Some(smin),
            detail: "smallest singular value of B1 on ker B2".into(),
        }
    };
    checks.push(inf_sup);

    ValidationReport { checks, kernel_dim }
}
