//! Wind triangle along a ground-relative path direction.

use serde::{Deserialize, Serialize};

use crate::{Error, Result, Vec3, WindVector};

/// Standard gravity, m/s².
pub const GRAVITY: f64 = 9.80665;

/// Kinematic and energetic parameters of the fixed-wing vehicle.
///
/// The defaults are a small (5 kg) fixed-wing UAV flying at 15 m/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VehicleModel {
    /// kg
    pub mass: f64,
    /// Maximum horizontal curvature, 1/m.
    pub kappa_max: f64,
    /// Thrust power coefficient (propulsive efficiency).
    pub thrust_power_coefficient: f64,
    /// Constant airspeed magnitude, m/s.
    pub airspeed: f64,
    /// Ground-relative flight path angle limit, rad.
    pub gamma_ground_max: f64,
    /// Air-relative flight path angle limit, rad.
    pub gamma_air_max: f64,
    /// Drag at the trim airspeed, N.
    pub drag: f64,
    /// Avionics power, W.
    pub avionics_power: f64,
    pub gravity: f64,
}

impl Default for VehicleModel {
    fn default() -> Self {
        VehicleModel {
            mass: 5.0,
            kappa_max: 0.02,
            thrust_power_coefficient: 0.3,
            airspeed: 15.0,
            gamma_ground_max: 10f64.to_radians(),
            gamma_air_max: 20f64.to_radians(),
            drag: 5.0,
            avionics_power: 60.0,
            gravity: GRAVITY,
        }
    }
}

impl VehicleModel {
    pub fn turn_radius(&self) -> f64 {
        1.0 / self.kappa_max
    }

    /// Checks positivity and the `2·γG_max ≤ γA_max` sizing rule, which
    /// leaves room for a tailwind equal to the airspeed.
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("mass", self.mass),
            ("kappa_max", self.kappa_max),
            ("thrust_power_coefficient", self.thrust_power_coefficient),
            ("airspeed", self.airspeed),
            ("gamma_ground_max", self.gamma_ground_max),
            ("gamma_air_max", self.gamma_air_max),
            ("drag", self.drag),
            ("avionics_power", self.avionics_power),
            ("gravity", self.gravity),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(format!("vehicle {name} must be positive and finite, got {v}")));
            }
        }
        if self.gamma_air_max >= std::f64::consts::FRAC_PI_2 {
            return Err(Error::invalid("vehicle gamma_air_max must be below 90°"));
        }
        if 2.0 * self.gamma_ground_max > self.gamma_air_max * (1.0 + 1e-12) {
            return Err(Error::invalid(format!(
                "vehicle climb limits violate 2·gamma_ground_max ≤ gamma_air_max ({} vs {})",
                self.gamma_ground_max, self.gamma_air_max
            )));
        }
        Ok(())
    }
}

/// Resolution of `V_G·u = V_A + W` for a fixed path tangent `u`.
///
/// Quantities that have no value for an infeasible case (no real root) are
/// `NaN`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindTriangleSolution {
    pub ground_speed: f64,
    /// Airspeed component along the path.
    pub airspeed_parallel: f64,
    /// Magnitude of the wind component normal to the path.
    pub wind_perpendicular: f64,
    /// Signed wind component along the path.
    pub wind_parallel: f64,
    /// Air-relative flight path angle, rad.
    pub gamma_air: f64,
    pub feasible: bool,
}

impl WindTriangleSolution {
    /// Air-relative velocity `V_G·u − W`.
    pub fn air_velocity(&self, tangent: &Vec3, wind: &WindVector) -> Vec3 {
        tangent * self.ground_speed - wind.as_vec()
    }
}

/// Solves the wind triangle along unit tangent `tangent`.
///
/// The perpendicular wind must be cancelled by the airspeed, leaving
/// `V_A∥ = +√(V̄² − W⊥²)` (the larger root) and `V_G = V_A∥ + W∥`. The motion is
/// infeasible when `W⊥ ≥ V̄`, when `V_G ≤ 0`, or when the resulting
/// air-relative flight path angle exceeds the vehicle limit.
pub fn solve_wind_triangle(tangent: &Vec3, wind: &WindVector, model: &VehicleModel) -> Result<WindTriangleSolution> {
    let norm = tangent.norm();
    if !((norm - 1.0).abs() <= 1e-9) {
        return Err(Error::Contract(format!("path tangent must be a unit vector, |u| = {norm}")));
    }
    Ok(solve_unchecked(tangent, wind, model))
}

pub(crate) fn solve_unchecked(tangent: &Vec3, wind: &WindVector, model: &VehicleModel) -> WindTriangleSolution {
    let w = wind.as_vec();
    let va = model.airspeed;
    let w_par = w.dot(tangent);
    let w_perp = (w - tangent * w_par).norm();
    if w_perp >= va {
        return WindTriangleSolution {
            ground_speed: f64::NAN,
            airspeed_parallel: f64::NAN,
            wind_perpendicular: w_perp,
            wind_parallel: w_par,
            gamma_air: f64::NAN,
            feasible: false,
        };
    }
    let va_par = (va * va - w_perp * w_perp).sqrt();
    let vg = va_par + w_par;
    if vg <= 0.0 {
        return WindTriangleSolution {
            ground_speed: vg,
            airspeed_parallel: va_par,
            wind_perpendicular: w_perp,
            wind_parallel: w_par,
            gamma_air: f64::NAN,
            feasible: false,
        };
    }
    let vz_air = vg * tangent.z - w.z;
    let gamma_air = (vz_air / va).clamp(-1.0, 1.0).asin();
    WindTriangleSolution {
        ground_speed: vg,
        airspeed_parallel: va_par,
        wind_perpendicular: w_perp,
        wind_parallel: w_par,
        gamma_air,
        feasible: gamma_air.abs() <= model.gamma_air_max,
    }
}

/// Membership of a pose (given by its path tangent) in the wind-feasible set.
pub fn feasible_state(tangent: &Vec3, wind: &WindVector, model: &VehicleModel) -> bool {
    solve_wind_triangle(tangent, wind, model).is_ok_and(|s| s.feasible)
}
