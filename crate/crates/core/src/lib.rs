//! Wind-aware fixed-wing path planning.
//!
//! Paths are ground-relative Dubins airplane paths. Along a path the wind
//! triangle is solved for the airspeed that keeps the ground track on the
//! path, and the resulting thrust and power give the time and energy cost
//! of a motion. An anytime RRT* planner searches over these paths through
//! analytic or gridded wind fields and optional 2.5D terrain, and a small
//! benchmark harness compares cost objectives and path frames.
//!
//! ```
//! use windplan::{dubins_airplane_connect, integrate_cost, Objective, State, VehicleModel, WindField};
//!
//! let model = VehicleModel::default();
//! let start = State::new(0.0, 0.0, 100.0, 0.0);
//! let goal = State::new(1500.0, 0.0, 100.0, 0.0);
//! let path = dubins_airplane_connect(&start, &goal, &model);
//! let report = integrate_cost(&path, &WindField::calm(), &model, Objective::Energy, 10.0);
//! assert!((report.flight_time - 100.0).abs() < 1e-9);
//! assert!((report.energy - 31_000.0).abs() < 1e-6);
//! ```

pub mod airrel;
pub mod bench;
pub mod dubins;
pub mod energy;
mod error;
pub mod kinematics;
pub mod planner;
pub mod terrain;
pub mod windfields;

pub use airrel::{connect_air_relative, cost_air_relative, AirRelativeConfig, AirRelativePath};
pub use dubins::{
    dubins_2d_shortest, dubins_airplane_connect, sample_path, DubinsAirplanePath, PathSample,
    PlanarPath, Segment, SegmentKind, State, WordClass,
};
pub use energy::{integrate_cost, power, thrust, CostReport, Objective, TraceRow};
pub use error::{Error, Result};
pub use kinematics::{feasible_state, solve_wind_triangle, VehicleModel, WindTriangleSolution};
pub use planner::{plan, steer, validate_solution, Bounds, Motion, PathFrame, PlanResult, PlannerConfig};
pub use terrain::{elevation_at, motion_clear, ElevationMap};
pub use windfields::{AnalyticWindField, GriddedWindField, WindField, WindVector};

/// 3-vector used for positions, tangents and winds.
pub type Vec3 = nalgebra::Vector3<f64>;
