//! JSON system files.
//!
//! Matrices are row-major arrays of rows. Data functions are chosen by preset
//! name:
//!
//! * `"zero"`: `f = 0`, `g1 = 0`, `g2 = 0`.
//! * `"smooth"`: data manufactured from `u_i(t) = sin((i + 1) t + i / 2)`,
//!   `p_j(t) = cos(t + j)`, with `u0 = u(0)` unless given.
//!
//! ```json
//! { "name": "demo", "mass": [[1,0],[0,1]], "stiffness": [[2,-1],[-1,2]],
//!   "b1": [[1,1]], "data": "smooth" }
//! ```

use std::path::Path;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{vector_fn, zero_fn, ConstrainedSystem};
use crate::error::{invalid, DgError, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DataPreset {
    #[default]
    Zero,
    Smooth,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    #[serde(default)]
    pub name: Option<String>,
    pub mass: Vec<Vec<f64>>,
    pub stiffness: Vec<Vec<f64>>,
    #[serde(default)]
    pub b1: Vec<Vec<f64>>,
    #[serde(default)]
    pub b2: Vec<Vec<f64>>,
    #[serde(default)]
    pub lift: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub norm_u: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub norm_q1: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub u0: Option<Vec<f64>>,
    #[serde(default)]
    pub data: DataPreset,
}

fn matrix(name: &str, rows: &[Vec<f64>], ncols: usize) -> Result<DMatrix<f64>> {
    if let Some(r) = rows.iter().find(|r| r.len() != ncols) {
        return invalid(format!("{name}: row of length {} but {ncols} columns expected", r.len()));
    }
    Ok(DMatrix::from_fn(rows.len(), ncols, |i, j| rows[i][j]))
}

fn smooth_u(m: usize, t: f64) -> DVector<f64> {
    DVector::from_fn(m, |i, _| ((i + 1) as f64 * t + 0.5 * i as f64).sin())
}

fn smooth_du(m: usize, t: f64) -> DVector<f64> {
    DVector::from_fn(m, |i, _| (i + 1) as f64 * ((i + 1) as f64 * t + 0.5 * i as f64).cos())
}

fn smooth_p(r: usize, t: f64) -> DVector<f64> {
    DVector::from_fn(r, |j, _| (t + j as f64).cos())
}

impl SystemFile {
    pub fn into_system(self) -> Result<ConstrainedSystem> {
        let m = self.mass.len();
        if m == 0 {
            return invalid("mass matrix is empty");
        }
        let mass = matrix("mass", &self.mass, m)?;
        let stiffness = matrix("stiffness", &self.stiffness, m)?;
        if stiffness.nrows() != m {
            return invalid("stiffness must be square with the size of the mass matrix");
        }
        let b1 = matrix("b1", &self.b1, m)?;
        let b2 = matrix("b2", &self.b2, m)?;
        let (r1, r2) = (b1.nrows(), b2.nrows());
        let lift = match &self.lift {
            Some(rows) => matrix("lift", rows, r2)?,
            None if r2 == 0 => DMatrix::zeros(m, 0),
            None => b2.clone().pseudo_inverse(1e-14).map_err(|e| DgError::InvalidArgument(e.to_string()))?,
        };
        let norm_u = match &self.norm_u {
            Some(rows) => matrix("norm_u", rows, m)?,
            None => &mass + &stiffness,
        };
        let norm_q1 = match &self.norm_q1 {
            Some(rows) => matrix("norm_q1", rows, r1)?,
            None => DMatrix::identity(r1, r1),
        };
        let name = self.name.unwrap_or_else(|| "file".into());

        let mut sys = match self.data {
            DataPreset::Zero => ConstrainedSystem {
                name,
                mass,
                stiffness,
                b1,
                b2,
                load: zero_fn(m),
                g1: zero_fn(r1),
                g2: zero_fn(r2),
                u0: DVector::zeros(m),
                lift,
                norm_u,
                norm_q1,
                exact_u: Some(zero_fn(m)),
                exact_p: Some(zero_fn(r1)),
                warnings: Vec::new(),
            },
            DataPreset::Smooth => {
                let load = {
                    let (mm, a, b1t) = (mass.clone(), stiffness.clone(), b1.transpose());
                    vector_fn(move |t| &mm * smooth_du(m, t) + &a * smooth_u(m, t) + &b1t * smooth_p(r1, t))
                };
                let g1 = {
                    let b1 = b1.clone();
                    vector_fn(move |t| &b1 * smooth_u(m, t))
                };
                let g2 = {
                    let b2 = b2.clone();
                    vector_fn(move |t| &b2 * smooth_u(m, t))
                };
                ConstrainedSystem {
                    name,
                    mass,
                    stiffness,
                    b1,
                    b2,
                    load,
                    g1,
                    g2,
                    u0: smooth_u(m, 0.0),
                    lift,
                    norm_u,
                    norm_q1,
                    exact_u: Some(vector_fn(move |t| smooth_u(m, t))),
                    exact_p: Some(vector_fn(move |t| smooth_p(r1, t))),
                    warnings: Vec::new(),
                }
            }
        };
        if let Some(u0) = self.u0 {
            if u0.len() != m {
                return invalid(format!("u0 has length {}, expected {m}", u0.len()));
            }
            sys.u0 = DVector::from_vec(u0);
        }
        sys.check_shapes()?;
        Ok(sys)
    }
}

pub fn parse_system_json(text: &str) -> Result<ConstrainedSystem> {
    let file: SystemFile =
        serde_json::from_str(text).map_err(|e| DgError::InvalidArgument(format!("system file: {e}")))?;
    file.into_system()
}

pub fn load_system_file(path: &Path) -> Result<ConstrainedSystem> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| DgError::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    parse_system_json(&text)
}
