//! C ABI for the `windplan` library.
//!
//! Objects cross the boundary as opaque handles created by `wp_*_new`,
//! `wp_*_load` or `wp_*_connect` functions and released with the matching
//! `wp_*_free`. Every fallible function returns a [`WpStatus`] and writes
//! its result through an out-pointer; on failure
//! [`wp_last_error_message`] describes the error. Panics never unwind into
//! the caller; they surface as [`WpStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use windplan::bench::{run_once, Scenario};
use windplan::windfields::{read_wind_grid, ShearAxis};
use windplan::{
    dubins_airplane_connect, integrate_cost, solve_wind_triangle, AnalyticWindField, DubinsAirplanePath, ElevationMap,
    Error, Objective, PathFrame, State, Vec3, VehicleModel, WindField, WindVector,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Io = 3,
    Parse = 4,
    /// The planner finished without a solution; metrics are still written.
    NoSolution = 5,
    Panic = 6,
}

/// Cost objective codes accepted as `uint32_t` arguments.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WpObjective {
    Distance = 0,
    Time = 1,
    Energy = 2,
}

/// Path frame codes accepted as `uint32_t` arguments.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WpFrame {
    Ground = 0,
    Air = 1,
}

/// Shear axis codes accepted as `uint32_t` arguments.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WpShearAxis {
    X = 0,
    Y = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WpVec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Position and heading (rad, counter-clockwise from +x).
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WpState {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub heading: f64,
}

/// Vehicle parameters; angles in radians.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WpVehicleModel {
    pub mass: f64,
    pub kappa_max: f64,
    pub thrust_power_coefficient: f64,
    pub airspeed: f64,
    pub gamma_ground_max: f64,
    pub gamma_air_max: f64,
    pub drag: f64,
    pub avionics_power: f64,
    pub gravity: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WpWindTriangle {
    pub ground_speed: f64,
    pub airspeed_parallel: f64,
    pub wind_perpendicular: f64,
    pub wind_parallel: f64,
    pub gamma_air: f64,
    pub feasible: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WpPathSample {
    pub s: f64,
    pub state: WpState,
    pub tangent: WpVec3,
    pub curvature: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WpCostReport {
    pub value: f64,
    pub flight_time: f64,
    pub energy: f64,
    pub length: f64,
    pub feasible: bool,
}

/// Per-run metrics; `t_first_solution_s` is negative when no solution was
/// found.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WpPlanMetrics {
    pub success: bool,
    pub graph_states: u64,
    pub iterations: u64,
    pub t_first_solution_s: f64,
    pub planning_time_s: f64,
    pub flight_time_s: f64,
    pub energy_j: f64,
    pub length_m: f64,
}

pub struct WpWindField {
    inner: WindField,
}

pub struct WpTerrain {
    inner: ElevationMap,
}

pub struct WpPath {
    inner: DubinsAirplanePath,
}

pub struct WpScenario {
    inner: Scenario,
}

/// Waypoints of a planned solution.
pub struct WpSolution {
    states: Vec<State>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("nul bytes removed"));
}

fn status_of(err: &Error) -> WpStatus {
    match err {
        Error::InvalidInput(_) | Error::Contract(_) => WpStatus::InvalidArgument,
        Error::Io { .. } => WpStatus::Io,
        Error::Parse { .. } | Error::Csv(_) => WpStatus::Parse,
    }
}

struct Fail(WpStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(WpStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: impl Into<String>) -> Fail {
    Fail(WpStatus::InvalidArgument, msg.into())
}

/// Runs `body`, converting errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<WpStatus, Fail>) -> WpStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => {
            if status == WpStatus::Ok {
                set_error("");
            }
            status
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal panic: {msg}"));
            WpStatus::Panic
        }
    }
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn path_arg(p: *const c_char) -> Result<String, Fail> {
    if p.is_null() {
        return Err(null("path"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map(str::to_owned)
        .map_err(|_| invalid("path is not valid UTF-8"))
}

fn model_of(m: &WpVehicleModel) -> Result<VehicleModel, Fail> {
    let model = VehicleModel {
        mass: m.mass,
        kappa_max: m.kappa_max,
        thrust_power_coefficient: m.thrust_power_coefficient,
        airspeed: m.airspeed,
        gamma_ground_max: m.gamma_ground_max,
        gamma_air_max: m.gamma_air_max,
        drag: m.drag,
        avionics_power: m.avionics_power,
        gravity: m.gravity,
    };
    model.validate()?;
    Ok(model)
}

fn state_of(s: WpState) -> Result<State, Fail> {
    let st = State::new(s.x, s.y, s.z, s.heading);
    if !st.is_finite() {
        return Err(invalid("state must be finite"));
    }
    Ok(st)
}

fn wp_state(s: &State) -> WpState {
    WpState {
        x: s.x,
        y: s.y,
        z: s.z,
        heading: s.heading,
    }
}

fn objective_of(code: u32) -> Result<Objective, Fail> {
    Objective::ALL
        .get(code as usize)
        .copied()
        .ok_or_else(|| invalid(format!("unknown objective code {code}")))
}

fn frame_of(code: u32) -> Result<PathFrame, Fail> {
    PathFrame::ALL
        .get(code as usize)
        .copied()
        .ok_or_else(|| invalid(format!("unknown frame code {code}")))
}

unsafe fn boxed<T>(out: *mut *mut T, value: T) -> Result<WpStatus, Fail> {
    write(out, Box::into_raw(Box::new(value)))?;
    Ok(WpStatus::Ok)
}

/// Message of the last failed call on this thread; empty after a
/// successful call. The pointer stays valid until the next `wp_` call on
/// the same thread.
#[no_mangle]
pub extern "C" fn wp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn wp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Default vehicle parameters.
#[no_mangle]
pub extern "C" fn wp_vehicle_default() -> WpVehicleModel {
    let m = VehicleModel::default();
    WpVehicleModel {
        mass: m.mass,
        kappa_max: m.kappa_max,
        thrust_power_coefficient: m.thrust_power_coefficient,
        airspeed: m.airspeed,
        gamma_ground_max: m.gamma_ground_max,
        gamma_air_max: m.gamma_air_max,
        drag: m.drag,
        avionics_power: m.avionics_power,
        gravity: m.gravity,
    }
}

fn analytic(out: *mut *mut WpWindField, spec: AnalyticWindField) -> WpStatus {
    guard(|| unsafe {
        spec.validate()?;
        boxed(out, WpWindField { inner: spec.into() })
    })
}

/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wp_wind_field_uniform(wx: f64, wy: f64, wz: f64, out: *mut *mut WpWindField) -> WpStatus {
    analytic(
        out,
        AnalyticWindField::Uniform {
            wind: WindVector::new(wx, wy, wz),
        },
    )
}

/// `axis` is a [`WpShearAxis`] code.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wp_wind_field_shear(boundary: f64, magnitude: f64, axis: u32, out: *mut *mut WpWindField) -> WpStatus {
    let axis = match axis {
        0 => ShearAxis::X,
        1 => ShearAxis::Y,
        other => {
            set_error(format!("unknown shear axis code {other}"));
            return WpStatus::InvalidArgument;
        }
    };
    analytic(
        out,
        AnalyticWindField::Shear {
            boundary,
            magnitude,
            axis,
        },
    )
}

/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wp_wind_field_updraft(
    center_x: f64,
    center_y: f64,
    radius: f64,
    strength: f64,
    out: *mut *mut WpWindField,
) -> WpStatus {
    analytic(
        out,
        AnalyticWindField::Updraft {
            center: [center_x, center_y],
            radius,
            strength,
        },
    )
}

/// Loads a gridded wind field file.
///
/// # Safety
/// `path` must be null or a NUL-terminated string; `out` must be null or
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wp_wind_field_load_grid(path: *const c_char, out: *mut *mut WpWindField) -> WpStatus {
    guard(|| {
        let grid = read_wind_grid(path_arg(path)?)?;
        boxed(out, WpWindField { inner: grid.into() })
    })
}

/// # Safety
/// `field` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn wp_wind_field_free(field: *mut WpWindField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// # Safety
/// `field` must be a live handle or null; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wp_wind_field_sample(field: *const WpWindField, position: WpVec3, out: *mut WpVec3) -> WpStatus {
    guard(|| {
        let f = deref(field, "wind field")?;
        let w = f.inner.sample(&Vec3::new(position.x, position.y, position.z));
        write(out, WpVec3 { x: w.wx, y: w.wy, z: w.wz })?;
        Ok(WpStatus::Ok)
    })
}

/// Solves the wind triangle for a unit ground-track tangent.
///
/// # Safety
/// `model` must be null or valid for reads; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wp_solve_wind_triangle(
    tangent: WpVec3,
    wind: WpVec3,
    model: *const WpVehicleModel,
    out: *mut WpWindTriangle,
) -> WpStatus {
    guard(|| {
        let m = model_of(deref(model, "vehicle model")?)?;
        let sol = solve_wind_triangle(
            &Vec3::new(tangent.x, tangent.y, tangent.z),
            &WindVector::new(wind.x, wind.y, wind.z),
            &m,
        )?;
        write(
            out,
            WpWindTriangle {
                ground_speed: sol.ground_speed,
                airspeed_parallel: sol.airspeed_parallel,
                wind_perpendicular: sol.wind_perpendicular,
                wind_parallel: sol.wind_parallel,
                gamma_air: sol.gamma_air,
                feasible: sol.feasible,
            },
        )?;
        Ok(WpStatus::Ok)
    })
}

/// Loads an elevation map file.
///
/// # Safety
/// `path` must be null or a NUL-terminated string; `out` null or valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn wp_terrain_load(path: *const c_char, out: *mut *mut WpTerrain) -> WpStatus {
    guard(|| {
        let map = windplan::terrain::read_elevation_map(path_arg(path)?)?;
        boxed(out, WpTerrain { inner: map })
    })
}

/// # Safety
/// `terrain` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn wp_terrain_free(terrain: *mut WpTerrain) {
    if !terrain.is_null() {
        drop(Box::from_raw(terrain));
    }
}

/// Terrain height at (x, y); `-inf` outside a non-strict map, `+inf` at
/// nodata or outside a strict map.
///
/// # Safety
/// `terrain` must be a live handle or null; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wp_terrain_elevation(terrain: *const WpTerrain, x: f64, y: f64, out: *mut f64) -> WpStatus {
    guard(|| {
        let t = deref(terrain, "terrain")?;
        write(out, t.inner.elevation_at(x, y))?;
        Ok(WpStatus::Ok)
    })
}

/// Shortest Dubins airplane path between two states.
///
/// # Safety
/// `model` must be null or valid for reads; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wp_path_connect(
    start: WpState,
    goal: WpState,
    model: *const WpVehicleModel,
    out: *mut *mut WpPath,
) -> WpStatus {
    guard(|| {
        let m = model_of(deref(model, "vehicle model")?)?;
        let path = dubins_airplane_connect(&state_of(start)?, &state_of(goal)?, &m);
        boxed(out, WpPath { inner: path })
    })
}

/// # Safety
/// `path` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn wp_path_free(path: *mut WpPath) {
    if !path.is_null() {
        drop(Box::from_raw(path));
    }
}

/// Total 3D length, m.
///
/// # Safety
/// `path` must be a live handle or null; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wp_path_length(path: *const WpPath, out: *mut f64) -> WpStatus {
    guard(|| {
        write(out, deref(path, "path")?.inner.length())?;
        Ok(WpStatus::Ok)
    })
}

/// Flight path angle of the path, rad.
///
/// # Safety
/// `path` must be a live handle or null; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wp_path_gamma(path: *const WpPath, out: *mut f64) -> WpStatus {
    guard(|| {
        write(out, deref(path, "path")?.inner.gamma())?;
        Ok(WpStatus::Ok)
    })
}

/// Pose at arc length `s`, clamped to the path.
///
/// # Safety
/// `path` must be a live handle or null; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wp_path_sample(path: *const WpPath, s: f64, out: *mut WpPathSample) -> WpStatus {
    guard(|| {
        let p = deref(path, "path")?;
        if !s.is_finite() {
            return Err(invalid("arc length must be finite"));
        }
        let smp = p.inner.sample_at(s);
        write(
            out,
            WpPathSample {
                s: smp.s,
                state: wp_state(&smp.state),
                tangent: WpVec3 {
                    x: smp.tangent.x,
                    y: smp.tangent.y,
                    z: smp.tangent.z,
                },
                curvature: smp.curvature,
            },
        )?;
        Ok(WpStatus::Ok)
    })
}

/// Integrates the cost of a path through a wind field; `objective` is a
/// [`WpObjective`] code and `step` the integration step in meters.
///
/// # Safety
/// Handles must be live or null; `model` null or valid for reads; `out`
/// null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wp_path_cost(
    path: *const WpPath,
    field: *const WpWindField,
    model: *const WpVehicleModel,
    objective: u32,
    step: f64,
    out: *mut WpCostReport,
) -> WpStatus {
    guard(|| {
        let p = deref(path, "path")?;
        let f = deref(field, "wind field")?;
        let m = model_of(deref(model, "vehicle model")?)?;
        let objective = objective_of(objective)?;
        if !(step > 0.0) {
            return Err(invalid("integration step must be positive"));
        }
        let r = integrate_cost(&p.inner, &f.inner, &m, objective, step);
        write(
            out,
            WpCostReport {
                value: r.value,
                flight_time: r.flight_time,
                energy: r.energy,
                length: r.length,
                feasible: r.feasible,
            },
        )?;
        Ok(WpStatus::Ok)
    })
}

/// Loads a scenario file and every file it references.
///
/// # Safety
/// `path` must be null or a NUL-terminated string; `out` null or valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn wp_scenario_load(path: *const c_char, out: *mut *mut WpScenario) -> WpStatus {
    guard(|| {
        let s = Scenario::load(path_arg(path)?)?;
        boxed(out, WpScenario { inner: s })
    })
}

/// # Safety
/// `scenario` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn wp_scenario_free(scenario: *mut WpScenario) {
    if !scenario.is_null() {
        drop(Box::from_raw(scenario));
    }
}

/// Plans one configuration of a scenario. `budget_s <= 0` keeps the
/// scenario budget and `max_iterations == 0` means no iteration cap.
/// Metrics are written whenever planning ran, including when it returns
/// [`WpStatus::NoSolution`]; `out` receives a solution handle only on
/// success and null otherwise.
///
/// # Safety
/// `scenario` must be a live handle or null; `metrics` and `out` null or
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wp_scenario_plan(
    scenario: *const WpScenario,
    objective: u32,
    frame: u32,
    seed: u64,
    budget_s: f64,
    max_iterations: u64,
    metrics: *mut WpPlanMetrics,
    out: *mut *mut WpSolution,
) -> WpStatus {
    guard(|| {
        let sc = deref(scenario, "scenario")?;
        if metrics.is_null() || out.is_null() {
            return Err(null("output pointer"));
        }
        out.write(ptr::null_mut());
        let objective = objective_of(objective)?;
        let frame = frame_of(frame)?;
        let mut sc = sc.inner.clone();
        if budget_s > 0.0 {
            sc.budget_s = budget_s;
        }
        if max_iterations > 0 {
            sc.planner.max_iterations = Some(max_iterations);
        }
        let (record, result) = run_once(&sc, objective, frame, seed)?;
        metrics.write(WpPlanMetrics {
            success: record.success,
            graph_states: record.graph_states as u64,
            iterations: record.iterations,
            t_first_solution_s: record.t_first_solution_s.unwrap_or(-1.0),
            planning_time_s: record.planning_time_s,
            flight_time_s: record.flight_time_s,
            energy_j: record.energy_j,
            length_m: record.length_m,
        });
        if !result.success {
            return Err(Fail(WpStatus::NoSolution, "no solution within the budget".into()));
        }
        out.write(Box::into_raw(Box::new(WpSolution { states: result.states })));
        Ok(WpStatus::Ok)
    })
}

/// # Safety
/// `solution` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn wp_solution_free(solution: *mut WpSolution) {
    if !solution.is_null() {
        drop(Box::from_raw(solution));
    }
}

/// Number of waypoints, start and goal included.
///
/// # Safety
/// `solution` must be a live handle or null; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn wp_solution_waypoint_count(solution: *const WpSolution, out: *mut usize) -> WpStatus {
    guard(|| {
        write(out, deref(solution, "solution")?.states.len())?;
        Ok(WpStatus::Ok)
    })
}

/// Copies up to `capacity` waypoints into `buffer` and the number copied
/// into `written`.
///
/// # Safety
/// `buffer` must be valid for `capacity` writes; `written` null or valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn wp_solution_waypoints(
    solution: *const WpSolution,
    buffer: *mut WpState,
    capacity: usize,
    written: *mut usize,
) -> WpStatus {
    guard(|| {
        let s = deref(solution, "solution")?;
        if buffer.is_null() && capacity > 0 {
            return Err(null("buffer"));
        }
        let n = s.states.len().min(capacity);
        for (i, st) in s.states.iter().take(n).enumerate() {
            buffer.add(i).write(wp_state(st));
        }
        write(written, n)?;
        Ok(WpStatus::Ok)
    })
}
