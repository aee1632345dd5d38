//! Scenario files, repeated benchmark runs and their reports.

mod report;
mod scenario;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

pub use report::{emit_report, parse_report, BenchmarkReport, ConfigAggregate, ReportFormat, RunRecord, Stat};
pub use scenario::{PlannerOverrides, Scenario, ScenarioFile, StateSpec, WindSpec};

use crate::energy::{integrate_cost, integrate_cost_traced, power, Objective, TraceRow};
use crate::planner::{Motion, PathFrame, PlanResult};
use crate::{Error, Result};

pub const DEFAULT_RUNS: usize = 10;

/// Seeds `0..runs`.
pub fn default_seeds(runs: usize) -> Vec<u64> {
    (0..runs as u64).collect()
}

/// Time, energy and length of a solution as the benchmark reports them.
/// Distance-objective ground paths are re-evaluated through the wind with
/// the energy integrator, so a path that crosses infeasible wind reports
/// `+∞`.
pub fn evaluate_solution(scenario: &Scenario, result: &PlanResult, objective: Objective, step: f64) -> (f64, f64, f64) {
    if !result.success {
        return (f64::INFINITY, f64::INFINITY, f64::INFINITY);
    }
    if objective != Objective::Distance {
        return (result.flight_time, result.energy, result.length);
    }
    let (mut time, mut energy) = (0.0, 0.0);
    for edge in &result.edges {
        match &edge.motion {
            Motion::Ground(path) => {
                let r = integrate_cost(path, &scenario.wind, &scenario.vehicle, Objective::Energy, step);
                time += r.flight_time;
                energy += r.energy;
            }
            Motion::Air(_) => {
                time += edge.cost.flight_time;
                energy += edge.cost.energy;
            }
        }
    }
    (time, energy, result.length)
}

/// Per-step trace of a whole solution with arc length, time and energy
/// accumulated across motions. Ground motions use the energy integrator;
/// air motions report the simulated ground track.
pub fn solution_trace(scenario: &Scenario, result: &PlanResult, step: f64) -> Vec<TraceRow> {
    let model = &scenario.vehicle;
    let mut rows: Vec<TraceRow> = Vec::new();
    let (mut s0, mut t0, mut e0) = (0.0, 0.0, 0.0);
    for edge in &result.edges {
        match &edge.motion {
            Motion::Ground(path) => {
                let r = integrate_cost_traced(path, &scenario.wind, model, Objective::Energy, step);
                for mut row in r.trace.unwrap_or_default() {
                    row.s += s0;
                    row.cum_time_s += t0;
                    row.cum_energy_j += e0;
                    rows.push(row);
                }
                s0 += path.length();
                t0 += r.flight_time;
                e0 += r.energy;
            }
            Motion::Air(air) => {
                let mut prev: Option<(f64, f64)> = None;
                for (&s, p) in air.track_offsets.iter().zip(&air.ground_track) {
                    let sample = air.air_path.sample_at(s);
                    let wind = scenario.wind.sample(p);
                    let gamma = sample.tangent.z.clamp(-1.0, 1.0).asin();
                    let pw = power(gamma, model);
                    if let Some((ps, pp)) = prev {
                        t0 += (s - ps) / model.airspeed;
                        e0 += pp * (s - ps) / model.airspeed;
                    }
                    prev = Some((s, pw));
                    rows.push(TraceRow {
                        s: s0 + s,
                        x: p.x,
                        y: p.y,
                        z: p.z,
                        heading: sample.state.heading,
                        wx: wind.wx,
                        wy: wind.wy,
                        wz: wind.wz,
                        ground_speed: (sample.tangent * model.airspeed + wind.as_vec()).norm(),
                        gamma_air_deg: gamma.to_degrees(),
                        power: pw,
                        cum_time_s: t0,
                        cum_energy_j: e0,
                    });
                }
                s0 += air.air_path.length();
            }
        }
    }
    rows
}

/// Runs one configuration with one seed.
pub fn run_once(scenario: &Scenario, objective: Objective, frame: PathFrame, seed: u64) -> Result<(RunRecord, PlanResult)> {
    let config = scenario.planner_config(objective, frame, seed);
    let result = scenario.plan(&config)?;
    let (flight_time_s, energy_j, length_m) = evaluate_solution(scenario, &result, objective, config.step);
    let record = RunRecord {
        scenario: scenario.name.clone(),
        objective,
        frame,
        seed,
        graph_states: result.graph_states,
        iterations: result.iterations,
        t_first_solution_s: result.t_first_solution,
        planning_time_s: result.planning_time,
        flight_time_s,
        energy_j,
        length_m,
        success: result.success && energy_j.is_finite(),
    };
    Ok((record, result))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchOptions {
    /// Planner runs executed concurrently. Wall-clock budgets are shared
    /// by concurrent runs, so more jobs than cores lowers throughput per run.
    pub jobs: usize,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions { jobs: 1 }
    }
}

/// Runs every objective × frame configuration of `scenario` once per seed.
/// Seeds default to `0..runs`; the same seed list is used for every
/// configuration. `progress` sees each finished run.
pub fn run_benchmark(
    scenario: &Scenario,
    runs: usize,
    seeds: Option<&[u64]>,
    options: BenchOptions,
    progress: &(dyn Fn(&RunRecord) + Sync),
) -> Result<BenchmarkReport> {
    if runs == 0 {
        return Err(Error::invalid("runs must be at least 1"));
    }
    let seeds = match seeds {
        Some(s) if s.len() != runs => {
            return Err(Error::invalid(format!("expected {runs} seeds, got {}", s.len())));
        }
        Some(s) => s.to_vec(),
        None => default_seeds(runs),
    };
    scenario.validate()?;
    let mut jobs = Vec::new();
    for &objective in &scenario.objectives {
        for &frame in &scenario.frames {
            for &seed in &seeds {
                jobs.push((objective, frame, seed));
            }
        }
    }
    let slots: Vec<Mutex<Option<Result<RunRecord>>>> = jobs.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let worker = || loop {
        let i = next.fetch_add(1, Ordering::Relaxed);
        let Some(&(objective, frame, seed)) = jobs.get(i) else {
            break;
        };
        let outcome = run_once(scenario, objective, frame, seed).map(|(r, _)| r);
        if let Ok(r) = &outcome {
            progress(r);
        }
        *slots[i].lock().expect("slot lock") = Some(outcome);
    };
    std::thread::scope(|s| {
        for _ in 1..options.jobs.max(1) {
            s.spawn(worker);
        }
        worker();
    });
    let rows = slots
        .into_iter()
        .map(|m| m.into_inner().expect("slot lock").expect("every job ran"))
        .collect::<Result<Vec<_>>>()?;
    Ok(BenchmarkReport::from_rows(rows))
}
