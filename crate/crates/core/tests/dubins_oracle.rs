mod common;

use common::{brute_force_dubins, TestRng};
use windplan::{dubins_2d_shortest, dubins_airplane_connect, dubins::heading_difference, State, VehicleModel};

#[test]
fn planar_shortest_matches_parameter_search() {
    let mut rng = TestRng::new(11);
    let r = 50.0;
    for _ in 0..300 {
        let s = (rng.uniform(-300.0, 300.0), rng.uniform(-300.0, 300.0), rng.uniform(-3.2, 3.2));
        let g = (rng.uniform(-300.0, 300.0), rng.uniform(-300.0, 300.0), rng.uniform(-3.2, 3.2));
        let fast = dubins_2d_shortest(&State::new(s.0, s.1, 0.0, s.2), &State::new(g.0, g.1, 0.0, g.2), r).length();
        let slow = brute_force_dubins(s, g, r);
        assert!((fast - slow).abs() < 1e-3, "{s:?} -> {g:?}: {fast} vs {slow}");
    }
}

#[test]
fn close_configurations_use_ccc_words() {
    // goal just behind the start with the same heading: a turning word wins
    let s = State::new(0.0, 0.0, 0.0, 0.0);
    let g = State::new(-10.0, 0.0, 0.0, 0.0);
    let p = dubins_2d_shortest(&s, &g, 50.0);
    let slow = brute_force_dubins((0.0, 0.0, 0.0), (-10.0, 0.0, 0.0), 50.0);
    assert!((p.length() - slow).abs() < 1e-3);
}

#[test]
fn airplane_paths_reach_goal_within_limits() {
    let m = VehicleModel::default();
    let mut rng = TestRng::new(5);
    for _ in 0..300 {
        let s = State::new(rng.uniform(-500.0, 500.0), rng.uniform(-500.0, 500.0), rng.uniform(0.0, 800.0), rng.uniform(-3.2, 3.2));
        let g = State::new(rng.uniform(-500.0, 500.0), rng.uniform(-500.0, 500.0), rng.uniform(0.0, 800.0), rng.uniform(-3.2, 3.2));
        let p = dubins_airplane_connect(&s, &g, &m);
        let e = p.end();
        assert!((e.position() - g.position()).norm() < 1e-6, "{s:?} -> {g:?}: {e:?}");
        assert!(heading_difference(e.heading, g.heading) < 1e-6);
        assert!(p.gamma().abs() <= m.gamma_ground_max + 1e-12);
        // never shorter than the straight line or the planar Dubins path
        assert!(p.length() + 1e-9 >= (g.position() - s.position()).norm());
        assert!(p.horizontal_length() + 1e-6 >= dubins_2d_shortest(&s, &g, m.turn_radius()).length());
    }
}

#[test]
fn length_is_invariant_under_rigid_motion() {
    let m = VehicleModel::default();
    let r = m.turn_radius();
    let mut rng = TestRng::new(17);
    for _ in 0..300 {
        let s = State::new(rng.uniform(-300.0, 300.0), rng.uniform(-300.0, 300.0), 0.0, rng.uniform(-3.2, 3.2));
        let g = State::new(rng.uniform(-300.0, 300.0), rng.uniform(-300.0, 300.0), 0.0, rng.uniform(-3.2, 3.2));
        let (tx, ty, rot) = (rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3), rng.uniform(-3.2, 3.2));
        let mv = |p: &State| {
            let (c, sn) = (rot.cos(), rot.sin());
            State::new(c * p.x - sn * p.y + tx, sn * p.x + c * p.y + ty, 0.0, p.heading + rot)
        };
        let a = dubins_2d_shortest(&s, &g, r).length();
        let b = dubins_2d_shortest(&mv(&s), &mv(&g), r).length();
        assert!((a - b).abs() < 1e-9 * a.max(1.0), "{a} vs {b}");
        assert!(a + 1e-9 >= s.planar_distance(&g));
    }
}

#[test]
fn sampled_curvature_respects_the_bound() {
    let m = VehicleModel::default();
    let mut rng = TestRng::new(23);
    for _ in 0..100 {
        let s = State::new(0.0, 0.0, 100.0, rng.uniform(-3.2, 3.2));
        let g = State::new(rng.uniform(-400.0, 400.0), rng.uniform(-400.0, 400.0), rng.uniform(0.0, 600.0), rng.uniform(-3.2, 3.2));
        let p = dubins_airplane_connect(&s, &g, &m);
        for smp in windplan::sample_path(&p, 3.0) {
            assert!(smp.curvature.abs() <= m.kappa_max + 1e-12);
        }
    }
}
