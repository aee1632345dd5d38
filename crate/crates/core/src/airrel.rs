//! Air-relative Dubins airplane connections in non-uniform wind.
//!
//! The path is a Dubins airplane path expressed in the moving air mass. Its
//! ground track is the air path advected by the wind,
//! `dp/ds = u_air(s) + W(p)/V̄`, which has no closed-form inverse in a
//! non-uniform field. The connection is found by virtual-goal iteration:
//! plan in the air frame to a virtual goal, simulate the drift, move the
//! virtual goal by the ground endpoint error and repeat.

use crate::dubins::{connect_with_climb_limit, sample_offsets, DubinsAirplanePath, State};
use crate::energy::{power, CostReport, Objective, DEFAULT_STEP};
use crate::{Vec3, VehicleModel, WindField};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AirRelativeConfig {
    /// Ground endpoint tolerance, m.
    pub goal_tolerance: f64,
    pub max_iterations: usize,
    /// Fraction of the endpoint error applied to the virtual goal per
    /// iteration.
    pub damping: f64,
    /// Drift integration step, m of air-relative arc length.
    pub step: f64,
}

impl Default for AirRelativeConfig {
    fn default() -> Self {
        AirRelativeConfig {
            goal_tolerance: 1.0,
            max_iterations: 50,
            damping: 1.0,
            step: DEFAULT_STEP,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AirRelativePath {
    /// The path in the air frame: headings are air-relative headings and the
    /// flight path angle is the air-relative one.
    pub air_path: DubinsAirplanePath,
    /// Air-frame arc length of every ground-track point.
    pub track_offsets: Vec<f64>,
    /// Simulated ground positions at `track_offsets`.
    pub ground_track: Vec<Vec3>,
    pub converged: bool,
    pub iterations: usize,
    /// Ground endpoint error after each iteration, m.
    pub error_history: Vec<f64>,
}

impl AirRelativePath {
    pub fn endpoint_error(&self) -> f64 {
        self.error_history.last().copied().unwrap_or(f64::INFINITY)
    }

    pub fn ground_end(&self) -> Vec3 {
        *self.ground_track.last().expect("track has points")
    }

    /// Wind drift (ground position minus air-frame position) along the track.
    pub fn drift(&self) -> Vec<Vec3> {
        self.track_offsets
            .iter()
            .zip(&self.ground_track)
            .map(|(&s, p)| p - self.air_path.sample_at(s).state.position())
            .collect()
    }
}

/// Advects an air-frame path through the wind. The air-frame position is
/// exact; only the accumulated drift `dd/ds = W(p)/V̄` is stepped with
/// forward Euler.
fn simulate_drift(air: &DubinsAirplanePath, field: &WindField, airspeed: f64, step: f64) -> (Vec<f64>, Vec<Vec3>) {
    let offsets: Vec<f64> = sample_offsets(air.length(), step).collect();
    let mut track = Vec::with_capacity(offsets.len());
    let mut drift = Vec3::zeros();
    let mut p = air.start().position();
    track.push(p);
    for w in offsets.windows(2) {
        drift += field.sample(&p).as_vec() * ((w[1] - w[0]) / airspeed);
        p = air.sample_at(w[1]).state.position() + drift;
        track.push(p);
    }
    (offsets, track)
}

/// Iteratively solves for an air-relative path whose ground track ends at
/// `goal`'s position. Non-convergence (iteration limit or an endpoint error
/// that grows three times in a row) is reported through `converged`.
pub fn connect_air_relative(
    start: &State,
    goal: &State,
    field: &WindField,
    model: &VehicleModel,
    config: &AirRelativeConfig,
) -> AirRelativePath {
    assert!(config.goal_tolerance > 0.0 && config.step > 0.0);
    let target = goal.position();
    let mut virtual_goal = *goal;
    let mut errors: Vec<f64> = Vec::new();
    let mut growth = 0;
    let mut iteration = 0;
    loop {
        iteration += 1;
        let air = connect_with_climb_limit(start, &virtual_goal, model.turn_radius(), model.gamma_air_max);
        let (offsets, track) = simulate_drift(&air, field, model.airspeed, config.step);
        let miss = target - track.last().expect("track has points");
        let err = miss.norm();
        if errors.last().is_some_and(|&prev| err > prev) {
            growth += 1;
        } else {
            growth = 0;
        }
        errors.push(err);
        let converged = err < config.goal_tolerance;
        if converged || growth >= 3 || iteration >= config.max_iterations {
            return AirRelativePath {
                air_path: air,
                track_offsets: offsets,
                ground_track: track,
                converged,
                iterations: iteration,
                error_history: errors,
            };
        }
        virtual_goal.x += config.damping * miss.x;
        virtual_goal.y += config.damping * miss.y;
        virtual_goal.z += config.damping * miss.z;
    }
}

/// Cost of an air-relative path. Every segment is flown at a constant
/// air-relative flight path angle and airspeed, so time is air distance over
/// airspeed and energy is power times time, with no wind integration.
pub fn cost_air_relative(path: &AirRelativePath, model: &VehicleModel, objective: Objective) -> CostReport {
    if !path.converged {
        return CostReport::infeasible(objective);
    }
    let mut report = CostReport::zero(objective);
    for seg in path.air_path.segments() {
        let len = seg.length();
        let dt = len / model.airspeed;
        report.flight_time += dt;
        report.energy += power(seg.gamma, model) * dt;
        report.length += len;
    }
    report.value = match objective {
        Objective::Distance => report.length,
        Objective::Time => report.flight_time,
        Objective::Energy => report.energy,
    };
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dubins::dubins_airplane_connect;
    use crate::energy::integrate_cost;
    use crate::windfields::{AnalyticWindField, WindVector};

    fn uniform(wx: f64, wy: f64) -> WindField {
        AnalyticWindField::Uniform {
            wind: WindVector::new(wx, wy, 0.0),
        }
        .into()
    }

    #[test]
    fn calm_converges_immediately() {
        let m = VehicleModel::default();
        let s = State::new(0.0, 0.0, 100.0, 0.0);
        let g = State::new(1200.0, 300.0, 150.0, 1.0);
        let p = connect_air_relative(&s, &g, &WindField::calm(), &m, &AirRelativeConfig::default());
        assert!(p.converged);
        assert_eq!(p.iterations, 1);
        let ground = dubins_airplane_connect(&s, &g, &m);
        assert!((p.air_path.length() - ground.length()).abs() < 1e-9);
        assert!(p.drift().iter().all(|d| d.norm() < 1e-9));
    }

    #[test]
    fn uniform_crosswind_converges() {
        let m = VehicleModel::default();
        let cfg = AirRelativeConfig::default();
        let p = connect_air_relative(
            &State::new(0.0, 0.0, 100.0, 0.0),
            &State::new(2000.0, 0.0, 100.0, 0.0),
            &uniform(3.0, 0.0),
            &m,
            &cfg,
        );
        assert!(p.converged, "{:?}", p.error_history);
        assert!(p.endpoint_error() < cfg.goal_tolerance);
        assert!((p.ground_end() - Vec3::new(2000.0, 0.0, 100.0)).norm() < 1.0);
    }

    #[test]
    fn overpowering_headwind_diverges() {
        let m = VehicleModel::default();
        let p = connect_air_relative(
            &State::new(0.0, 0.0, 100.0, 0.0),
            &State::new(2000.0, 0.0, 100.0, 0.0),
            &uniform(-20.0, 0.0),
            &m,
            &AirRelativeConfig::default(),
        );
        assert!(!p.converged);
        assert!(p.iterations < 50);
        assert_eq!(cost_air_relative(&p, &m, Objective::Energy).value, f64::INFINITY);
    }

    #[test]
    fn calm_cost_matches_ground_integrator() {
        let m = VehicleModel::default();
        let s = State::new(0.0, 0.0, 100.0, 0.0);
        let g = State::new(1500.0, 0.0, 100.0, 0.0);
        let p = connect_air_relative(&s, &g, &WindField::calm(), &m, &AirRelativeConfig::default());
        let c = cost_air_relative(&p, &m, Objective::Energy);
        assert!((c.flight_time - 100.0).abs() < 1e-9);
        assert!((c.energy - 31_000.0).abs() < 1e-6);
        let ground = integrate_cost(&dubins_airplane_connect(&s, &g, &m), &WindField::calm(), &m, Objective::Energy, 10.0);
        assert!((c.energy - ground.energy).abs() / ground.energy < 1e-6);
    }

    #[test]
    fn max_climb_power() {
        let m = VehicleModel::default();
        // Steep enough to force the air-frame climb limit.
        let s = State::new(0.0, 0.0, 0.0, 0.0);
        let g = State::new(500.0, 0.0, 600.0, 0.0);
        let p = connect_air_relative(&s, &g, &WindField::calm(), &m, &AirRelativeConfig::default());
        assert!((p.air_path.gamma() - m.gamma_air_max).abs() < 1e-9);
        let c = cost_air_relative(&p, &m, Objective::Energy);
        let expected = power(m.gamma_air_max, &m) * c.flight_time;
        assert!((c.energy - expected).abs() < 1e-6 * expected);
        assert!((power(m.gamma_air_max, &m) - 1148.5).abs() < 0.5);
    }
}
