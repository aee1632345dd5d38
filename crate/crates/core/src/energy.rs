//! Thrust and power model, and cost integration along a path.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dubins::{sample_offsets, DubinsAirplanePath, PathSample};
use crate::kinematics::solve_unchecked;
use crate::{Error, Result, VehicleModel, WindField};

/// Default Euler integration step, m.
pub const DEFAULT_STEP: f64 = 10.0;

/// Required thrust from static longitudinal equilibrium
/// `T = max(D + m·g·sin γA, 0)`.
///
/// Negative values (steep descent) are clamped to zero: surplus energy is
/// assumed to be dumped rather than recovered.
pub fn thrust(gamma_air: f64, model: &VehicleModel) -> f64 {
    (model.drag + model.mass * model.gravity * gamma_air.sin()).max(0.0)
}

/// Electrical power `P = P_c + T·V̄ / c_T`.
pub fn power(gamma_air: f64, model: &VehicleModel) -> f64 {
    model.avionics_power + thrust(gamma_air, model) * model.airspeed / model.thrust_power_coefficient
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Distance,
    Time,
    Energy,
}

impl Objective {
    pub const ALL: [Objective; 3] = [Objective::Distance, Objective::Time, Objective::Energy];

    pub fn name(self) -> &'static str {
        match self {
            Objective::Distance => "distance",
            Objective::Time => "time",
            Objective::Energy => "energy",
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "distance" => Ok(Objective::Distance),
            "time" => Ok(Objective::Time),
            "energy" => Ok(Objective::Energy),
            other => Err(Error::invalid(format!("unknown objective '{other}'"))),
        }
    }
}

/// One row of a path trace, recorded at the start of every integration step
/// and once more at the path end.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub s: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub heading: f64,
    pub wx: f64,
    pub wy: f64,
    pub wz: f64,
    #[serde(rename = "V_ground")]
    pub ground_speed: f64,
    pub gamma_air_deg: f64,
    #[serde(rename = "power_W")]
    pub power: f64,
    pub cum_time_s: f64,
    #[serde(rename = "cum_energy_J")]
    pub cum_energy_j: f64,
}

/// Integrated cost of one motion.
#[derive(Debug, Clone, PartialEq)]
pub struct CostReport {
    pub objective: Objective,
    /// Objective value in m, s or J; `+∞` when infeasible.
    pub value: f64,
    /// s
    pub flight_time: f64,
    /// J
    pub energy: f64,
    /// m
    pub length: f64,
    pub feasible: bool,
    pub trace: Option<Vec<TraceRow>>,
}

impl CostReport {
    pub fn zero(objective: Objective) -> Self {
        CostReport {
            objective,
            value: 0.0,
            flight_time: 0.0,
            energy: 0.0,
            length: 0.0,
            feasible: true,
            trace: None,
        }
    }

    pub fn infeasible(objective: Objective) -> Self {
        CostReport {
            objective,
            value: f64::INFINITY,
            flight_time: f64::INFINITY,
            energy: f64::INFINITY,
            length: f64::INFINITY,
            feasible: false,
            trace: None,
        }
    }

    /// Cost of flying `self` and then `other`.
    pub fn then(&self, other: &CostReport) -> CostReport {
        let feasible = self.feasible && other.feasible;
        CostReport {
            objective: self.objective,
            value: if feasible { self.value + other.value } else { f64::INFINITY },
            flight_time: self.flight_time + other.flight_time,
            energy: self.energy + other.energy,
            length: self.length + other.length,
            feasible,
            trace: None,
        }
    }
}

/// Cost of flying `path` through `field`, Euler-forward over steps of
/// `step` meters of arc length (the last step may be shorter).
///
/// Time and energy objectives sample the wind once at the start of every
/// step and return `+∞` as soon as a step is wind-infeasible. The distance
/// objective is the path length and never looks at the wind; its time and
/// energy fields hold nominal still-air level-flight values.
pub fn integrate_cost(
    path: &DubinsAirplanePath,
    field: &WindField,
    model: &VehicleModel,
    objective: Objective,
    step: f64,
) -> CostReport {
    integrate_cost_with(path, field, model, objective, step, false, |_| true)
}

/// Like [`integrate_cost`] but also records a per-step [`TraceRow`] list.
pub fn integrate_cost_traced(
    path: &DubinsAirplanePath,
    field: &WindField,
    model: &VehicleModel,
    objective: Objective,
    step: f64,
) -> CostReport {
    integrate_cost_with(path, field, model, objective, step, true, |_| true)
}

/// Cost integration with a per-sample visitor; the visitor sees every step
/// start and the path end and may abort the pass by returning `false`, in
/// which case `None` is returned.
pub(crate) fn integrate_cost_visiting(
    path: &DubinsAirplanePath,
    field: &WindField,
    model: &VehicleModel,
    objective: Objective,
    step: f64,
    visit: impl FnMut(&PathSample) -> bool,
) -> Option<CostReport> {
    let mut aborted = false;
    let mut visit = visit;
    let report = integrate_cost_with(path, field, model, objective, step, false, |s| {
        let ok = visit(s);
        aborted |= !ok;
        ok
    });
    (!aborted).then_some(report)
}

fn integrate_cost_with(
    path: &DubinsAirplanePath,
    field: &WindField,
    model: &VehicleModel,
    objective: Objective,
    step: f64,
    traced: bool,
    mut visit: impl FnMut(&PathSample) -> bool,
) -> CostReport {
    assert!(step > 0.0, "integration step must be positive");
    let total = path.length();

    if objective == Objective::Distance {
        for s in sample_offsets(total, step) {
            if !visit(&path.sample_at(s)) {
                return CostReport::infeasible(objective);
            }
        }
        let time = total / model.airspeed;
        return CostReport {
            objective,
            value: total,
            flight_time: time,
            energy: power(0.0, model) * time,
            length: total,
            feasible: true,
            trace: None,
        };
    }

    let mut report = CostReport::zero(objective);
    let mut trace = traced.then(Vec::new);
    let mut offsets = sample_offsets(total, step).peekable();
    while let Some(s) = offsets.next() {
        let sample = path.sample_at(s);
        if !visit(&sample) {
            return CostReport::infeasible(objective);
        }
        let wind = field.sample(&sample.state.position());
        let tri = solve_unchecked(&sample.tangent, &wind, model);
        let p = if tri.feasible { power(tri.gamma_air, model) } else { f64::NAN };
        if let Some(rows) = trace.as_mut() {
            rows.push(TraceRow {
                s,
                x: sample.state.x,
                y: sample.state.y,
                z: sample.state.z,
                heading: sample.state.heading,
                wx: wind.wx,
                wy: wind.wy,
                wz: wind.wz,
                ground_speed: tri.ground_speed,
                gamma_air_deg: tri.gamma_air.to_degrees(),
                power: p,
                cum_time_s: report.flight_time,
                cum_energy_j: report.energy,
            });
        }
        if !tri.feasible {
            let mut bad = CostReport::infeasible(objective);
            bad.trace = trace;
            return bad;
        }
        let Some(&next) = offsets.peek() else {
            break;
        };
        let dl = next - s;
        let dt = dl / tri.ground_speed;
        report.flight_time += dt;
        report.energy += p * dt;
        report.length += dl;
    }
    report.value = match objective {
        Objective::Time => report.flight_time,
        Objective::Energy => report.energy,
        Objective::Distance => unreachable!(),
    };
    report.trace = trace;
    report
}

/// Writes trace rows as comma-separated text with a header line.
pub fn write_trace<W: Write>(rows: &[TraceRow], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    if rows.is_empty() {
        w.write_record([
            "s", "x", "y", "z", "heading", "wx", "wy", "wz", "V_ground", "gamma_air_deg", "power_W",
            "cum_time_s", "cum_energy_J",
        ])?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| Error::io("trace", e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dubins::{dubins_airplane_connect, State};
    use crate::windfields::{AnalyticWindField, WindVector};

    fn model() -> VehicleModel {
        VehicleModel::default()
    }

    fn uniform(wx: f64, wy: f64, wz: f64) -> WindField {
        AnalyticWindField::Uniform {
            wind: WindVector::new(wx, wy, wz),
        }
        .into()
    }

    fn straight(len: f64) -> DubinsAirplanePath {
        dubins_airplane_connect(&State::new(0.0, 0.0, 100.0, 0.0), &State::new(len, 0.0, 100.0, 0.0), &model())
    }

    #[test]
    fn thrust_values() {
        let m = model();
        assert_eq!(thrust(0.0, &m), 5.0);
        let t20 = thrust(20f64.to_radians(), &m);
        assert!((t20 - (5.0 + 5.0 * 9.80665 * 20f64.to_radians().sin())).abs() < 1e-12);
        assert!((t20 - 21.77).abs() < 0.01);
        assert_eq!(thrust(-10f64.to_radians(), &m), 0.0);
    }

    #[test]
    fn power_values() {
        let m = model();
        assert!((power(0.0, &m) - 310.0).abs() < 1e-12);
        assert_eq!(power(-30f64.to_radians(), &m), 60.0);
        let p20 = power(20f64.to_radians(), &m);
        assert!((p20 - (60.0 + thrust(20f64.to_radians(), &m) * 50.0)).abs() < 1e-9);
        assert!((p20 - 1148.5).abs() < 0.5);
    }

    #[test]
    fn straight_calm_energy() {
        let r = integrate_cost(&straight(1500.0), &WindField::calm(), &model(), Objective::Energy, 10.0);
        assert!(r.feasible);
        assert!((r.flight_time - 100.0).abs() < 1e-9);
        assert!((r.energy - 31_000.0).abs() < 1e-6);
        assert_eq!(r.value, r.energy);
        assert!((r.length - 1500.0).abs() < 1e-9);
    }

    #[test]
    fn headwind_equal_to_airspeed_is_infinite() {
        let r = integrate_cost(&straight(1500.0), &uniform(-15.0, 0.0, 0.0), &model(), Objective::Energy, 10.0);
        assert!(!r.feasible);
        assert_eq!(r.value, f64::INFINITY);
    }

    #[test]
    fn distance_ignores_wind() {
        let path = dubins_airplane_connect(
            &State::new(0.0, 0.0, 0.0, 1.0),
            &State::new(-300.0, 500.0, 80.0, 4.0),
            &model(),
        );
        let r = integrate_cost(&path, &uniform(-40.0, 0.0, 0.0), &model(), Objective::Distance, 10.0);
        assert!(r.feasible);
        assert_eq!(r.value, path.length());
    }

    #[test]
    fn tailwind_time_and_energy() {
        let s = 1234.0;
        let r = integrate_cost(&straight(s), &uniform(5.0, 0.0, 0.0), &model(), Objective::Time, 10.0);
        assert!((r.flight_time - s / 20.0).abs() < 1e-9);
        assert!((r.energy - 310.0 * s / 20.0).abs() < 1e-6);
    }

    #[test]
    fn trace_rows_follow_path() {
        let r = integrate_cost_traced(&straight(95.0), &uniform(5.0, 0.0, 0.0), &model(), Objective::Energy, 10.0);
        let rows = r.trace.unwrap();
        assert_eq!(rows.len(), 11);
        assert_eq!(rows.last().unwrap().s, 95.0);
        assert!((rows.last().unwrap().cum_energy_j - r.energy).abs() < 1e-9);
        let mut buf = Vec::new();
        write_trace(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("s,x,y,z,heading,wx,wy,wz,V_ground,gamma_air_deg,power_W,cum_time_s,cum_energy_J"));
        assert_eq!(text.lines().count(), 12);
    }

    #[test]
    fn zero_length_path_costs_nothing() {
        let s = State::new(0.0, 0.0, 0.0, 0.0);
        let path = dubins_airplane_connect(&s, &s, &model());
        let r = integrate_cost(&path, &WindField::calm(), &model(), Objective::Energy, 10.0);
        assert_eq!(r.value, 0.0);
        assert!(r.feasible);
    }
}
