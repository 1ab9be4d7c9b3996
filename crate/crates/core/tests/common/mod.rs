#![allow(dead_code)]

use dgtime::systems::{build_saddle_dae, SaddleSolution, SaddleSpec};
use dgtime::{BrokenFunction, ConstrainedSystem, DMatrix, DVector, SlabPoly, TimeMesh};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    rng.random_range(-1.0..1.0)
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> DVector<f64> {
    DVector::from_fn(n, |_, _| uniform(rng))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize) -> DMatrix<f64> {
    DMatrix::from_fn(r, c, |_, _| uniform(rng))
}

pub fn random_spd(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    let g = random_matrix(rng, n, n);
    &g * g.transpose() + DMatrix::identity(n, n) * 0.5
}

/// Random broken function with coefficients in [-1, 1].
pub fn random_broken(rng: &mut ChaCha8Rng, mesh: &TimeMesh, q: usize, dim: usize) -> BrokenFunction {
    let slabs = (0..mesh.n_slabs()).map(|_| SlabPoly::new(random_matrix(rng, q, dim)).unwrap()).collect();
    BrokenFunction::new(mesh.clone(), slabs).unwrap()
}

/// Random piecewise polynomial with `n_coeffs` coefficients, glued so that
/// it is continuous across breakpoints.
pub fn random_continuous(rng: &mut ChaCha8Rng, mesh: &TimeMesh, n_coeffs: usize, dim: usize) -> BrokenFunction {
    let mut slabs: Vec<SlabPoly> = Vec::new();
    for i in 0..mesh.n_slabs() {
        let mut p = SlabPoly::new(random_matrix(rng, n_coeffs, dim)).unwrap();
        if i > 0 {
            let shift = slabs[i - 1].right_value() - p.left_value();
            let mut row = p.coeffs().row(0).transpose();
            row += shift;
            p.coeffs_mut().row_mut(0).copy_from(&row.transpose());
        }
        slabs.push(p);
    }
    BrokenFunction::new(mesh.clone(), slabs).unwrap()
}

/// Random saddle system with zero data (f = 0, g1 = 0) and a random initial
/// state.
pub fn random_homogeneous_saddle(rng: &mut ChaCha8Rng, m: usize, r1: usize) -> ConstrainedSystem {
    let mut sys = build_saddle_dae(SaddleSpec {
        name: "random".into(),
        mass: random_spd(rng, m),
        stiffness: random_spd(rng, m),
        b1: random_matrix(rng, r1, m),
        solution: SaddleSolution::zero(m, r1),
        u0: None,
    })
    .unwrap();
    sys.u0 = random_vector(rng, m);
    sys
}

pub fn m_norm(m: &DMatrix<f64>, v: &DVector<f64>) -> f64 {
    v.dot(&(m * v)).sqrt()
}
