mod common;

use common::TestRng;
use windplan::{feasible_state, solve_wind_triangle, Error, Vec3, VehicleModel, WindVector};

fn random_unit(rng: &mut TestRng, max_gamma: f64) -> Vec3 {
    let psi = rng.uniform(-std::f64::consts::PI, std::f64::consts::PI);
    let g = rng.uniform(-max_gamma, max_gamma);
    Vec3::new(g.cos() * psi.cos(), g.cos() * psi.sin(), g.sin())
}

#[test]
fn feasible_solutions_reconstruct_airspeed() {
    let m = VehicleModel::default();
    let mut rng = TestRng::new(1);
    let (mut feasible, mut infeasible) = (0, 0);
    for _ in 0..20_000 {
        let u = random_unit(&mut rng, 0.6);
        let w = WindVector::new(rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0), rng.uniform(-8.0, 8.0));
        let sol = solve_wind_triangle(&u, &w, &m).unwrap();
        let wv = w.as_vec();
        let w_par = wv.dot(&u);
        let w_perp = (wv - w_par * u).norm();
        if sol.feasible {
            feasible += 1;
            let va = sol.ground_speed * u - wv;
            assert!((va.norm() - m.airspeed).abs() < 1e-9);
            assert_eq!(sol.ground_speed, sol.airspeed_parallel + sol.wind_parallel);
            assert!(sol.ground_speed > 0.0);
            assert!((sol.gamma_air - (va.z / va.norm()).asin()).abs() < 1e-9);
            assert!(sol.gamma_air.abs() <= m.gamma_air_max);
        } else {
            infeasible += 1;
            let v_par = (m.airspeed.powi(2) - w_perp.powi(2)).max(0.0).sqrt();
            let vg = v_par + w_par;
            let gamma_ok = ((vg * u.z - wv.z) / m.airspeed).abs() <= m.gamma_air_max.sin();
            assert!(w_perp >= m.airspeed - 1e-9 || vg <= 1e-9 || !gamma_ok, "{u:?} {w:?}");
        }
        assert_eq!(feasible_state(&u, &w, &m), sol.feasible);
    }
    assert!(feasible > 1000 && infeasible > 1000);
}

#[test]
fn wind_exactly_at_airspeed_is_infeasible() {
    let m = VehicleModel::default();
    let east = Vec3::new(1.0, 0.0, 0.0);
    assert!(!feasible_state(&east, &WindVector::new(0.0, 15.0, 0.0), &m));
    assert!(feasible_state(&east, &WindVector::new(0.0, 14.999, 0.0), &m));
    assert!(!feasible_state(&east, &WindVector::new(-15.0, 0.0, 0.0), &m));
}

#[test]
fn non_unit_tangent_is_a_contract_error() {
    let m = VehicleModel::default();
    let r = solve_wind_triangle(&Vec3::new(1.0, 1.0, 0.0), &WindVector::zero(), &m);
    assert!(matches!(r, Err(Error::Contract(_))));
}

#[test]
fn ground_speed_monotone_symmetric_and_dominant() {
    let m = VehicleModel::default();
    let u = Vec3::new(1.0, 0.0, 0.0);
    let mut rng = TestRng::new(9);
    for _ in 0..2000 {
        let perp = rng.uniform(0.0, 14.0);
        let (a, b) = (rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0));
        let (lo, hi) = (a.min(b), a.max(b));
        if hi - lo < 1e-6 {
            continue;
        }
        let slow = solve_wind_triangle(&u, &WindVector::new(lo, perp, 0.0), &m).unwrap();
        let fast = solve_wind_triangle(&u, &WindVector::new(hi, perp, 0.0), &m).unwrap();
        if slow.feasible && fast.feasible {
            assert!(fast.ground_speed > slow.ground_speed);
        }
        let mirrored = solve_wind_triangle(&u, &WindVector::new(hi, -perp, 0.0), &m).unwrap();
        assert_eq!(mirrored.ground_speed.to_bits(), fast.ground_speed.to_bits());
        if fast.feasible {
            let other_root = -(m.airspeed.powi(2) - perp.powi(2)).sqrt() + hi;
            assert!(fast.ground_speed >= other_root);
        }
    }
}
