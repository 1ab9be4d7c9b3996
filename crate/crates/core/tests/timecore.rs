mod common;

use dgtime::timecore::{dh_form, dh_star_form, gauss_legendre, legendre, slab_mass_matrix};
use dgtime::{DMatrix, TimeMesh};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn antisymmetry(seed in any::<u64>(), q in 1usize..=4, n in 1usize..=8, dim in 1usize..=3) {
        let mut rng = common::rng(seed);
        let mesh = TimeMesh::uniform(1.0 + seed as f64 % 3.0, n).unwrap();
        let y = common::random_broken(&mut rng, &mesh, q, dim);
        let x = common::random_broken(&mut rng, &mesh, q, dim);
        let m = common::random_spd(&mut rng, dim);
        let quad = gauss_legendre(q + 1).unwrap();
        let d = dh_form(&y, &x, &m, &quad).unwrap();
        let ds = dh_star_form(&y, &x, &m, &quad).unwrap();
        prop_assert!((d + ds).abs() <= 1e-12 * (d.abs() + 1.0), "{} vs {}", d, ds);
    }

    #[test]
    fn terminal_coercivity(seed in any::<u64>(), q in 1usize..=4, n in 1usize..=8, dim in 1usize..=3) {
        let mut rng = common::rng(seed);
        let mesh = TimeMesh::uniform(1.0, n).unwrap();
        let y = common::random_broken(&mut rng, &mesh, q, dim);
        let m = common::random_spd(&mut rng, dim);
        let quad = gauss_legendre(q + 1).unwrap();
        let d = dh_form(&y, &y, &m, &quad).unwrap();
        let end = y.terminal_value();
        prop_assert!(d >= 0.5 * end.dot(&(&m * &end)) - 1e-12);
    }

    #[test]
    fn continuous_from_zero_keeps_only_integrals(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = common::rng(seed);
        let mesh = TimeMesh::uniform(1.0, n).unwrap();
        let mut y = common::random_continuous(&mut rng, &mesh, 3, 1);
        // shift so that Y(0) = 0
        let start = y.start_value(0)[0];
        for i in 0..n {
            y.slab_mut(i).coeffs_mut()[(0, 0)] -= start;
        }
        let x = common::random_broken(&mut rng, &mesh, 2, 1);
        let quad = gauss_legendre(4).unwrap();
        let mut integral = 0.0;
        for i in 0..n {
            for (&s, &w) in quad.nodes.iter().zip(&quad.weights) {
                integral += w * y.slab(i).deriv_local(s)[0] * x.slab(i).eval_local(s)[0];
            }
        }
        let d = dh_form(&y, &x, &DMatrix::identity(1, 1), &quad).unwrap();
        prop_assert!((d - integral).abs() < 1e-12 * (1.0 + integral.abs()));
    }
}

#[test]
fn slab_mass_matrix_diagonal_for_all_degrees() {
    for q in 1..=6 {
        let k = 0.125;
        let quad = gauss_legendre(q + 1).unwrap();
        let exact = slab_mass_matrix(q, k);
        for i in 0..q {
            for j in 0..q {
                let v: f64 = quad
                    .nodes
                    .iter()
                    .zip(&quad.weights)
                    .map(|(&s, &w)| {
                        let b = legendre(q, s).values;
                        k * w * b[i] * b[j]
                    })
                    .sum();
                assert!((v - exact[(i, j)]).abs() <= 1e-13 * k, "q={q} ({i},{j})");
            }
        }
    }
}

#[test]
fn variable_mesh_forms_still_antisymmetric() {
    let mut rng = common::rng(11);
    let mesh = TimeMesh::new(vec![0.0, 0.05, 0.2, 0.6, 1.3]).unwrap();
    let y = common::random_broken(&mut rng, &mesh, 3, 2);
    let x = common::random_broken(&mut rng, &mesh, 3, 2);
    let m = DMatrix::identity(2, 2);
    let quad = gauss_legendre(4).unwrap();
    let d = dh_form(&y, &x, &m, &quad).unwrap();
    let ds = dh_star_form(&y, &x, &m, &quad).unwrap();
    assert!((d + ds).abs() < 1e-12 * (1.0 + d.abs()));
}
