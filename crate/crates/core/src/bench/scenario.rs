use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::energy::Objective;
use crate::planner::{plan, Bounds, PathFrame, PlanResult, PlannerConfig};
use crate::terrain::{read_elevation_map, ElevationMap};
use crate::windfields::{read_wind_grid, AnalyticWindField, WindField};
use crate::{Error, Result, State, VehicleModel};

/// A pose as written in scenario files: heading in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpec {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub heading_deg: f64,
}

impl StateSpec {
    pub fn to_state(self) -> State {
        State::new(self.x, self.y, self.z, self.heading_deg.to_radians())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WindSpec {
    /// Gridded field file, relative to the scenario file.
    Grid { grid: PathBuf },
    Analytic(AnalyticWindField),
}

/// Optional planner settings; unset fields keep the planner defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlannerOverrides {
    pub goal_bias: Option<f64>,
    pub rewire_constant: Option<f64>,
    pub step: Option<f64>,
    pub range: Option<f64>,
    pub clearance: Option<f64>,
    pub max_goal_distance: Option<f64>,
    pub max_iterations: Option<u64>,
    pub cost_threshold: Option<f64>,
}

/// Scenario document layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub name: String,
    #[serde(default)]
    pub vehicle: VehicleModel,
    pub wind: WindSpec,
    #[serde(default)]
    pub terrain: Option<PathBuf>,
    pub start: StateSpec,
    pub goal: StateSpec,
    pub bounds: Bounds,
    pub budget_s: f64,
    #[serde(default = "all_objectives")]
    pub objectives: Vec<Objective>,
    #[serde(default = "all_frames")]
    pub frames: Vec<PathFrame>,
    #[serde(default)]
    pub planner: PlannerOverrides,
}

fn all_objectives() -> Vec<Objective> {
    Objective::ALL.to_vec()
}

fn all_frames() -> Vec<PathFrame> {
    PathFrame::ALL.to_vec()
}

/// A loaded scenario with every referenced file resolved.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub vehicle: VehicleModel,
    pub wind: WindField,
    pub terrain: Option<ElevationMap>,
    pub start: State,
    pub goal: State,
    pub bounds: Bounds,
    pub budget_s: f64,
    pub objectives: Vec<Objective>,
    pub frames: Vec<PathFrame>,
    pub planner: PlannerOverrides,
}

impl Scenario {
    /// Reads a scenario file; grid and terrain paths resolve against the
    /// file's directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Scenario> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Scenario::from_document(&text, base).map_err(|e| match e {
            Error::Parse { location, message } => Error::parse(format!("{}: {location}", path.display()), message),
            other => other,
        })
    }

    pub fn from_document(document: &str, base_dir: &Path) -> Result<Scenario> {
        let file: ScenarioFile = serde_json::from_str(document)
            .map_err(|e| Error::parse(format!("scenario line {} column {}", e.line(), e.column()), e.to_string()))?;
        Scenario::from_file(file, base_dir)
    }

    pub fn from_file(file: ScenarioFile, base_dir: &Path) -> Result<Scenario> {
        let wind = match file.wind {
            WindSpec::Grid { grid } => WindField::Gridded(read_wind_grid(base_dir.join(grid))?),
            WindSpec::Analytic(a) => {
                a.validate()?;
                WindField::Analytic(a)
            }
        };
        let terrain = file
            .terrain
            .map(|p| read_elevation_map(base_dir.join(p)))
            .transpose()?;
        let scenario = Scenario {
            name: file.name,
            vehicle: file.vehicle,
            wind,
            terrain,
            start: file.start.to_state(),
            goal: file.goal.to_state(),
            bounds: file.bounds,
            budget_s: file.budget_s,
            objectives: file.objectives,
            frames: file.frames,
            planner: file.planner,
        };
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn validate(&self) -> Result<()> {
        self.vehicle.validate()?;
        self.bounds.validate()?;
        if !(self.budget_s > 0.0) {
            return Err(Error::invalid("scenario budget must be positive"));
        }
        if !self.bounds.contains(&self.start) || !self.bounds.contains(&self.goal) {
            return Err(Error::invalid("start and goal must lie inside the sampling bounds"));
        }
        if self.objectives.is_empty() || self.frames.is_empty() {
            return Err(Error::invalid("scenario needs at least one objective and one frame"));
        }
        Ok(())
    }

    pub fn planner_config(&self, objective: Objective, frame: PathFrame, seed: u64) -> PlannerConfig {
        let mut c = PlannerConfig::new(self.bounds, objective);
        c.time_budget = self.budget_s;
        c.seed = seed;
        c.frame = frame;
        let o = &self.planner;
        if let Some(v) = o.goal_bias {
            c.goal_bias = v;
        }
        if let Some(v) = o.step {
            c.step = v;
            c.air.step = v;
        }
        if let Some(v) = o.clearance {
            c.clearance = v;
        }
        c.rewire_constant = o.rewire_constant.or(c.rewire_constant);
        c.range = o.range.or(c.range);
        c.max_goal_distance = o.max_goal_distance.or(c.max_goal_distance);
        c.max_iterations = o.max_iterations.or(c.max_iterations);
        c.cost_threshold = o.cost_threshold.or(c.cost_threshold);
        c
    }

    pub fn plan(&self, config: &PlannerConfig) -> Result<PlanResult> {
        plan(&self.start, &self.goal, &self.wind, self.terrain.as_ref(), &self.vehicle, config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DOC: &str = r#"{
        "name": "t",
        "wind": {"kind": "uniform", "wind": {"wx": 1, "wy": 0, "wz": 0}},
        "start": {"x": 0, "y": 0, "z": 100, "heading_deg": 90},
        "goal": {"x": 1000, "y": 0, "z": 100, "heading_deg": 0},
        "bounds": {"min": [-100, -100, 0], "max": [1100, 100, 200]},
        "budget_s": 2,
        "planner": {"max_iterations": 7}
    }"#;

    #[test]
    fn parses_with_defaults() {
        let s = Scenario::from_document(DOC, Path::new(".")).unwrap();
        assert_eq!(s.objectives, Objective::ALL.to_vec());
        assert_eq!(s.frames, PathFrame::ALL.to_vec());
        assert!((s.start.heading - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        let c = s.planner_config(Objective::Time, PathFrame::Air, 9);
        assert_eq!(c.max_iterations, Some(7));
        assert_eq!(c.seed, 9);
        assert_eq!(c.time_budget, 2.0);
    }

    #[test]
    fn rejects_goal_outside_bounds_and_unknown_fields() {
        let bad = DOC.replace("\"x\": 1000", "\"x\": 5000");
        assert!(matches!(Scenario::from_document(&bad, Path::new(".")), Err(Error::InvalidInput(_))));
        let bad = DOC.replace("\"budget_s\"", "\"budget\"");
        assert!(matches!(Scenario::from_document(&bad, Path::new(".")), Err(Error::Parse { .. })));
    }

    #[test]
    fn missing_grid_file_is_io_error() {
        let bad = DOC.replace(
            r#"{"kind": "uniform", "wind": {"wx": 1, "wy": 0, "wz": 0}}"#,
            r#"{"grid": "does-not-exist.json"}"#,
        );
        assert!(matches!(Scenario::from_document(&bad, Path::new(".")), Err(Error::Io { .. })));
    }
}
