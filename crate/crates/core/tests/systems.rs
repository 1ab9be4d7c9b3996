mod common;

use dgtime::systems::{build_heat_1d, stokes3, validate_system, HeatSolution};
use dgtime::DVector;
use rand::Rng;

#[test]
fn stokes3_data_satisfies_the_equations() {
    let sys = stokes3();
    let u = sys.exact_u.clone().unwrap();
    let p = sys.exact_p.clone().unwrap();
    let mut rng = common::rng(3);
    let h = 1e-5;
    for _ in 0..20 {
        let t: f64 = rng.random_range(0.0..1.0);
        // central difference for u' keeps this oracle independent of the
        // closed-form derivative used to build the load
        let du = (u(t + h) - u(t - h)) / (2.0 * h);
        let res = &sys.mass * du + &sys.stiffness * u(t) + sys.b1.transpose() * p(t) - (sys.load)(t);
        assert!(res.amax() < 1e-8, "t = {t}: {res}");
        assert!((&sys.b1 * u(t) - (sys.g1)(t)).amax() < 1e-14);
    }
}

#[test]
fn heat_interpolant_is_exact_in_space() {
    let sys = build_heat_1d(5, &HeatSolution::sin4t()).unwrap();
    let u = sys.exact_u.clone().unwrap();
    let mut rng = common::rng(9);
    let h = 1e-5;
    for _ in 0..20 {
        let t: f64 = rng.random_range(0.05..0.95);
        let du = (u(t + h) - u(t - h)) / (2.0 * h);
        let res: DVector<f64> = &sys.mass * du + &sys.stiffness * u(t) - (sys.load)(t);
        // only interior rows are tested by the discrete equation
        let m = res.len();
        assert!(res.rows(1, m - 2).amax() < 1e-8, "t = {t}");
        assert!((&sys.b2 * u(t) - (sys.g2)(t)).amax() < 1e-14);
    }
}

#[test]
fn presets_validate() {
    assert!(validate_system(&stokes3()).all_passed());
    let report = validate_system(&build_heat_1d(6, &HeatSolution::sin4t()).unwrap());
    assert!(report.all_passed(), "{report}");
    assert_eq!(report.kernel_dim, 11);
}
