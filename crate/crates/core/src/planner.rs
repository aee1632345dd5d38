//! Anytime RRT* over the Dubins airplane state space.
//!
//! Nearest and near queries use the proxy metric
//! `‖Δp‖ + r_turn·|Δθ|` on an R-tree of node positions; every connection is
//! an exact Dubins airplane path whose cost is integrated through the wind
//! field. A motion is valid only if it clears the terrain and has finite
//! cost. The goal is a tree node that is re-parented whenever a cheaper
//! direct connection appears, so rewiring lowers the solution cost in place.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rstar::primitives::GeomWithData;
use rstar::RTree;
use serde::{Deserialize, Serialize};

use crate::airrel::{connect_air_relative, cost_air_relative, AirRelativeConfig, AirRelativePath};
use crate::dubins::{dubins_airplane_connect, heading_difference, DubinsAirplanePath, State};
use crate::energy::{integrate_cost, integrate_cost_visiting, CostReport, Objective, DEFAULT_STEP};
use crate::kinematics::feasible_state;
use crate::terrain::{motion_clear, ElevationMap};
use crate::{Error, Result, Vec3, VehicleModel, WindField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathFrame {
    /// Ground-relative paths: wind is a disturbance the vehicle compensates.
    Ground,
    /// Air-relative paths advected by the wind.
    Air,
}

impl PathFrame {
    pub const ALL: [PathFrame; 2] = [PathFrame::Ground, PathFrame::Air];

    pub fn name(self) -> &'static str {
        match self {
            PathFrame::Ground => "ground",
            PathFrame::Air => "air",
        }
    }
}

impl fmt::Display for PathFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PathFrame {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ground" => Ok(PathFrame::Ground),
            "air" => Ok(PathFrame::Air),
            other => Err(Error::invalid(format!("unknown path frame '{other}'"))),
        }
    }
}

/// Axis-aligned sampling box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub min: [f64; 3],
    pub max: [f64; 3],
}

impl Bounds {
    pub fn validate(&self) -> Result<()> {
        for i in 0..3 {
            if !(self.min[i].is_finite() && self.max[i].is_finite() && self.max[i] > self.min[i]) {
                return Err(Error::invalid(format!(
                    "sampling bounds are degenerate along axis {i}: [{}, {}]",
                    self.min[i], self.max[i]
                )));
            }
        }
        Ok(())
    }

    pub fn contains(&self, s: &State) -> bool {
        let p = [s.x, s.y, s.z];
        (0..3).all(|i| p[i] >= self.min[i] && p[i] <= self.max[i])
    }

    pub fn diagonal(&self) -> f64 {
        Vec3::from(self.max).metric_distance(&Vec3::from(self.min))
    }

    pub fn volume(&self) -> f64 {
        (0..3).map(|i| self.max[i] - self.min[i]).product()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlannerConfig {
    /// Wall-clock budget, s.
    pub time_budget: f64,
    /// Optional iteration cap. With a generous time budget this makes runs
    /// reproducible bit-for-bit.
    pub max_iterations: Option<u64>,
    pub seed: u64,
    pub bounds: Bounds,
    /// Probability of sampling the goal state.
    pub goal_bias: f64,
    /// Shrinking-ball constant; `None` picks one that covers about ten
    /// expected neighbours at 500 nodes.
    pub rewire_constant: Option<f64>,
    /// Integration and collision sampling step, m.
    pub step: f64,
    pub objective: Objective,
    pub frame: PathFrame,
    /// Maximum distance for direct goal connections; `None` always tries.
    pub max_goal_distance: Option<f64>,
    /// Maximum extension length per iteration; `None` uses 20 % of the
    /// sampling-box diagonal.
    pub range: Option<f64>,
    /// Required height above terrain, m.
    pub clearance: f64,
    /// Stop as soon as the solution cost is at or below this value.
    pub cost_threshold: Option<f64>,
    pub air: AirRelativeConfig,
}

impl PlannerConfig {
    pub fn new(bounds: Bounds, objective: Objective) -> Self {
        PlannerConfig {
            time_budget: 30.0,
            max_iterations: None,
            seed: 0,
            bounds,
            goal_bias: 0.05,
            rewire_constant: None,
            step: DEFAULT_STEP,
            objective,
            frame: PathFrame::Ground,
            max_goal_distance: None,
            range: None,
            clearance: 0.0,
            cost_threshold: None,
            air: AirRelativeConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.bounds.validate()?;
        if !(self.time_budget > 0.0) {
            return Err(Error::invalid("time budget must be positive"));
        }
        if !(0.0..1.0).contains(&self.goal_bias) {
            return Err(Error::invalid("goal bias must lie in [0, 1)"));
        }
        if !(self.step > 0.0) {
            return Err(Error::invalid("integration step must be positive"));
        }
        if !(self.clearance >= 0.0) {
            return Err(Error::invalid("clearance must be non-negative"));
        }
        if self.range.is_some_and(|r| !(r > 0.0)) {
            return Err(Error::invalid("range must be positive"));
        }
        Ok(())
    }

    fn range(&self) -> f64 {
        self.range.unwrap_or(0.2 * self.bounds.diagonal())
    }

    fn rewire_constant(&self, turn_radius: f64) -> f64 {
        // Proxy-metric ball of radius r has volume (2π/3)·r⁴/r_turn in the
        // 4D space of volume 2π·V_box, so E[neighbours] = n·r⁴ / (3·r_turn·V_box).
        self.rewire_constant
            .unwrap_or_else(|| (30.0 * turn_radius * self.bounds.volume() / 500f64.ln()).powf(0.25))
    }
}

/// Geometry of one tree edge.
#[derive(Debug, Clone, PartialEq)]
pub enum Motion {
    Ground(DubinsAirplanePath),
    Air(AirRelativePath),
}

impl Motion {
    /// Ground positions along the motion at roughly `step` spacing.
    pub fn ground_points(&self, step: f64) -> Vec<Vec3> {
        match self {
            Motion::Ground(p) => crate::dubins::sample_path(p, step)
                .into_iter()
                .map(|s| s.state.position())
                .collect(),
            Motion::Air(a) => a.ground_track.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub motion: Motion,
    pub cost: CostReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostTracePoint {
    pub time: f64,
    pub iteration: u64,
    pub cost: f64,
}

/// Outcome of a planning run. A run without a solution is a normal result
/// with `success == false`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanResult {
    pub success: bool,
    /// Waypoints from start to goal.
    pub states: Vec<State>,
    pub edges: Vec<Edge>,
    /// Objective value of the solution; `+∞` without one.
    pub cost: f64,
    pub flight_time: f64,
    pub energy: f64,
    pub length: f64,
    /// Retained tree nodes (start and goal included).
    pub graph_states: usize,
    pub iterations: u64,
    pub t_first_solution: Option<f64>,
    pub planning_time: f64,
    /// Every improvement of the best cost.
    pub cost_trace: Vec<CostTracePoint>,
}

/// Exact steering: the Dubins airplane connection between two states.
pub fn steer(from: &State, to: &State, model: &VehicleModel) -> DubinsAirplanePath {
    dubins_airplane_connect(from, to, model)
}

struct Node {
    state: State,
    parent: Option<usize>,
    cost: f64,
    edge: Option<Edge>,
    children: Vec<usize>,
}

type Indexed = GeomWithData<[f64; 3], usize>;

struct Search<'a> {
    start: State,
    goal: State,
    field: &'a WindField,
    terrain: Option<&'a ElevationMap>,
    model: &'a VehicleModel,
    config: &'a PlannerConfig,
    turn_radius: f64,
    nodes: Vec<Node>,
    index: RTree<Indexed>,
    goal_node: Option<usize>,
}

impl<'a> Search<'a> {
    fn proxy_distance(&self, a: &State, b: &State) -> f64 {
        (a.position() - b.position()).norm() + self.turn_radius * heading_difference(a.heading, b.heading)
    }

    fn insert(&mut self, state: State, parent: Option<usize>, edge: Option<Edge>) -> usize {
        let id = self.nodes.len();
        let cost = match (&edge, parent) {
            (Some(e), Some(p)) => self.nodes[p].cost + e.cost.value,
            _ => 0.0,
        };
        self.nodes.push(Node {
            state,
            parent,
            cost,
            edge,
            children: Vec::new(),
        });
        if let Some(p) = parent {
            self.nodes[p].children.push(id);
        }
        id
    }

    fn index_node(&mut self, id: usize) {
        let s = self.nodes[id].state;
        self.index.insert(GeomWithData::new([s.x, s.y, s.z], id));
    }

    fn nearest(&self, target: &State) -> usize {
        let mut best = (f64::INFINITY, 0);
        for (item, d2) in self
            .index
            .nearest_neighbor_iter_with_distance_2(&[target.x, target.y, target.z])
        {
            if d2.sqrt() >= best.0 {
                break;
            }
            let d = self.proxy_distance(&self.nodes[item.data].state, target);
            if d < best.0 || (d == best.0 && item.data < best.1) {
                best = (d, item.data);
            }
        }
        best.1
    }

    fn near(&self, target: &State, radius: f64) -> Vec<usize> {
        let mut ids: Vec<usize> = self
            .index
            .locate_within_distance([target.x, target.y, target.z], radius * radius)
            .map(|item| item.data)
            .filter(|&id| self.proxy_distance(&self.nodes[id].state, target) <= radius)
            .collect();
        ids.sort_unstable();
        ids
    }

    /// Validity check and cost of the exact connection `from → to`.
    fn connect(&self, from: &State, to: &State) -> Option<Edge> {
        let cfg = self.config;
        match cfg.frame {
            PathFrame::Ground => {
                let path = steer(from, to, self.model);
                let cost = match self.terrain {
                    Some(map) => integrate_cost_visiting(&path, self.field, self.model, cfg.objective, cfg.step, |s| {
                        map.is_clear(&s.state.position(), cfg.clearance)
                    })?,
                    None => integrate_cost(&path, self.field, self.model, cfg.objective, cfg.step),
                };
                cost.feasible.then(|| Edge {
                    motion: Motion::Ground(path),
                    cost,
                })
            }
            PathFrame::Air => {
                let path = connect_air_relative(from, to, self.field, self.model, &cfg.air);
                if !path.converged {
                    return None;
                }
                if let Some(map) = self.terrain {
                    if !path.ground_track.iter().all(|p| map.is_clear(p, cfg.clearance)) {
                        return None;
                    }
                }
                let cost = cost_air_relative(&path, self.model, cfg.objective);
                cost.feasible.then(|| Edge {
                    motion: Motion::Air(path),
                    cost,
                })
            }
        }
    }

    fn is_ancestor(&self, candidate: usize, mut node: usize) -> bool {
        loop {
            if node == candidate {
                return true;
            }
            match self.nodes[node].parent {
                Some(p) => node = p,
                None => return false,
            }
        }
    }

    fn reparent(&mut self, child: usize, parent: usize, edge: Edge) {
        if let Some(old) = self.nodes[child].parent {
            self.nodes[old].children.retain(|&c| c != child);
        }
        self.nodes[parent].children.push(child);
        let node = &mut self.nodes[child];
        node.parent = Some(parent);
        node.edge = Some(edge);
        let mut stack = vec![child];
        while let Some(id) = stack.pop() {
            let p = self.nodes[id].parent.expect("non-root");
            let c = self.nodes[p].cost + self.nodes[id].edge.as_ref().expect("non-root").cost.value;
            self.nodes[id].cost = c;
            stack.extend_from_slice(&self.nodes[id].children);
        }
    }

    fn best_cost(&self) -> f64 {
        self.goal_node.map_or(f64::INFINITY, |g| self.nodes[g].cost)
    }

    fn try_goal(&mut self, from: usize) {
        if let Some(limit) = self.config.max_goal_distance {
            if self.nodes[from].state.position().metric_distance(&self.goal.position()) > limit {
                return;
            }
        }
        if self.nodes[from].cost >= self.best_cost() {
            return;
        }
        let from_state = self.nodes[from].state;
        let Some(edge) = self.connect(&from_state, &self.goal) else {
            return;
        };
        let cost = self.nodes[from].cost + edge.cost.value;
        match self.goal_node {
            None => {
                let id = self.insert(self.goal, Some(from), Some(edge));
                self.goal_node = Some(id);
            }
            Some(g) if cost < self.nodes[g].cost => self.reparent(g, from, edge),
            Some(_) => {}
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> State {
        if rng.random::<f64>() < self.config.goal_bias {
            return self.goal;
        }
        let b = &self.config.bounds;
        let x = rng.random_range(b.min[0]..b.max[0]);
        let y = rng.random_range(b.min[1]..b.max[1]);
        let z = rng.random_range(b.min[2]..b.max[2]);
        let h = rng.random_range(0.0..TAU);
        State::new(x, y, z, h)
    }

    fn into_result(self, iterations: u64, t_first: Option<f64>, elapsed: f64, trace: Vec<CostTracePoint>) -> PlanResult {
        let graph_states = self.nodes.len();
        let Some(goal) = self.goal_node else {
            return PlanResult {
                success: false,
                states: Vec::new(),
                edges: Vec::new(),
                cost: f64::INFINITY,
                flight_time: f64::INFINITY,
                energy: f64::INFINITY,
                length: f64::INFINITY,
                graph_states,
                iterations,
                t_first_solution: None,
                planning_time: elapsed,
                cost_trace: trace,
            };
        };
        let mut chain = vec![goal];
        while let Some(p) = self.nodes[*chain.last().unwrap()].parent {
            chain.push(p);
        }
        chain.reverse();
        let states: Vec<State> = chain.iter().map(|&i| self.nodes[i].state).collect();
        let cost = self.nodes[goal].cost;
        let mut nodes = self.nodes;
        let edges: Vec<Edge> = chain[1..].iter().map(|&i| nodes[i].edge.take().expect("edge")).collect();
        let (mut flight_time, mut energy, mut length) = (0.0, 0.0, 0.0);
        for e in &edges {
            flight_time += e.cost.flight_time;
            energy += e.cost.energy;
            length += e.cost.length;
        }
        PlanResult {
            success: true,
            states,
            edges,
            cost,
            flight_time,
            energy,
            length,
            graph_states,
            iterations,
            t_first_solution: t_first,
            planning_time: elapsed,
            cost_trace: trace,
        }
    }
}

/// Runs anytime RRT* from `start` to `goal` until the time budget, the
/// iteration cap or the cost threshold is reached.
pub fn plan(
    start: &State,
    goal: &State,
    field: &WindField,
    terrain: Option<&ElevationMap>,
    model: &VehicleModel,
    config: &PlannerConfig,
) -> Result<PlanResult> {
    config.validate()?;
    model.validate()?;
    if !start.is_finite() || !goal.is_finite() {
        return Err(Error::invalid("start and goal must be finite"));
    }
    if let Some(map) = terrain {
        if !map.is_clear(&start.position(), config.clearance) {
            return Err(Error::invalid("start state is below the terrain clearance"));
        }
    }
    let level = Vec3::new(start.heading.cos(), start.heading.sin(), 0.0);
    if config.frame == PathFrame::Ground
        && config.objective != Objective::Distance
        && !feasible_state(&level, &field.sample(&start.position()), model)
    {
        return Err(Error::invalid("start state is not wind-feasible"));
    }

    let clock = Instant::now();
    let turn_radius = model.turn_radius();
    let mut search = Search {
        start: *start,
        goal: *goal,
        field,
        terrain,
        model,
        config,
        turn_radius,
        nodes: Vec::new(),
        index: RTree::new(),
        goal_node: None,
    };
    let root = search.insert(search.start, None, None);
    search.index_node(root);

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let range = config.range();
    let rewire_constant = config.rewire_constant(turn_radius);
    let mut trace = Vec::new();
    let mut t_first = None;
    let mut best = f64::INFINITY;
    let mut iterations = 0u64;

    let mut record = |search: &Search, iterations: u64, best: &mut f64, t_first: &mut Option<f64>| {
        let c = search.best_cost();
        if c < *best {
            let t = clock.elapsed().as_secs_f64();
            t_first.get_or_insert(t);
            *best = c;
            trace.push(CostTracePoint {
                time: t,
                iteration: iterations,
                cost: c,
            });
        }
    };

    search.try_goal(root);
    record(&search, 0, &mut best, &mut t_first);

    loop {
        if config.cost_threshold.is_some_and(|t| best <= t) {
            break;
        }
        if config.max_iterations.is_some_and(|m| iterations >= m) {
            break;
        }
        if clock.elapsed().as_secs_f64() >= config.time_budget {
            break;
        }
        iterations += 1;

        let sample = search.sample(&mut rng);
        let nearest = search.nearest(&sample);
        let from = search.nodes[nearest].state;
        let reach = steer(&from, &sample, model);
        let target = if reach.length() > range {
            reach.sample_at(range).state
        } else {
            sample
        };

        let n = search.index.size() as f64;
        let radius = (rewire_constant * ((n + 1.0).ln() / (n + 1.0)).powf(0.25)).min(range);
        let mut near = search.near(&target, radius);
        if !near.contains(&nearest) {
            near.push(nearest);
        }

        // choose parent
        let mut parent: Option<(usize, Edge, f64)> = None;
        for &id in &near {
            let base = search.nodes[id].cost;
            // edge costs are non-negative, so this candidate cannot win
            if parent.as_ref().is_some_and(|(_, _, c)| base >= *c) {
                continue;
            }
            if let Some(edge) = search.connect(&search.nodes[id].state, &target) {
                let c = base + edge.cost.value;
                if parent.as_ref().is_none_or(|(_, _, pc)| c < *pc) {
                    parent = Some((id, edge, c));
                }
            }
        }
        let Some((parent_id, edge, new_cost)) = parent else {
            continue;
        };
        let new_id = search.insert(target, Some(parent_id), Some(edge));
        search.index_node(new_id);

        // rewire
        for &id in &near {
            if id == parent_id || new_cost >= search.nodes[id].cost {
                continue;
            }
            let Some(edge) = search.connect(&target, &search.nodes[id].state) else {
                continue;
            };
            let c = new_cost + edge.cost.value;
            if c < search.nodes[id].cost - 1e-9 * c.abs().max(1.0) && !search.is_ancestor(id, new_id) {
                search.reparent(id, new_id, edge);
            }
        }

        search.try_goal(new_id);
        record(&search, iterations, &mut best, &mut t_first);
    }

    let elapsed = clock.elapsed().as_secs_f64();
    Ok(search.into_result(iterations, t_first, elapsed, trace))
}

/// Outcome of re-checking a solution from scratch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Validation {
    pub feasible: bool,
    pub cost: f64,
}

/// Re-evaluates every motion of a solution: waypoint chaining, a separate
/// terrain pass and a fresh cost integration.
pub fn validate_solution(
    result: &PlanResult,
    field: &WindField,
    terrain: Option<&ElevationMap>,
    model: &VehicleModel,
    config: &PlannerConfig,
) -> Validation {
    if !result.success || result.states.len() != result.edges.len() + 1 {
        return Validation {
            feasible: false,
            cost: f64::INFINITY,
        };
    }
    let mut total = 0.0;
    let mut feasible = true;
    for (i, edge) in result.edges.iter().enumerate() {
        let (from, to) = (&result.states[i], &result.states[i + 1]);
        let cost = match &edge.motion {
            Motion::Ground(path) => {
                let chained = path.start().position().metric_distance(&from.position()) < 1e-9
                    && path.end().position().metric_distance(&to.position()) < 1e-6;
                let clear = terrain.is_none_or(|m| motion_clear(path, m, config.clearance, config.step));
                feasible &= chained && clear;
                integrate_cost(path, field, model, config.objective, config.step)
            }
            Motion::Air(path) => {
                let fresh = connect_air_relative(from, to, field, model, &config.air);
                let clear = terrain.is_none_or(|m| fresh.ground_track.iter().all(|p| m.is_clear(p, config.clearance)));
                feasible &= clear && fresh.converged;
                debug_assert_eq!(fresh.air_path, path.air_path);
                cost_air_relative(&fresh, model, config.objective)
            }
        };
        feasible &= cost.feasible;
        total += cost.value;
    }
    Validation {
        feasible,
        cost: if feasible { total } else { f64::INFINITY },
    }
}
