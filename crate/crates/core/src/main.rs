use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use windplan::bench::{emit_report, run_benchmark, run_once, solution_trace, BenchOptions, ReportFormat, Scenario, DEFAULT_RUNS};
use windplan::energy::write_trace;
use windplan::windfields::{rasterize, write_wind_grid, ShearAxis};
use windplan::{validate_solution, AnalyticWindField, Error, Objective, PathFrame, WindVector};

#[derive(Parser)]
#[command(name = "windplan", version, about = "Wind-aware fixed-wing path planning")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Plan one path and print its metrics.
    Plan {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, default_value = "energy")]
        objective: Objective,
        #[arg(long, default_value = "ground")]
        frame: PathFrame,
        /// Planning budget in seconds (defaults to the scenario's).
        #[arg(long)]
        budget: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Stop after this many iterations.
        #[arg(long)]
        max_iterations: Option<u64>,
        /// Write the per-step solution trace as CSV.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Run every objective and frame of a scenario over several seeds.
    Bench {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, default_value_t = DEFAULT_RUNS)]
        runs: usize,
        /// Per-run rows as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        budget: Option<f64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Rasterize a synthetic wind field to a grid file.
    Windgen {
        #[arg(long)]
        kind: Kind,
        /// Uniform wind vector.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [0.0, 0.0, 0.0])]
        wind: Vec<f64>,
        /// Shear boundary coordinate, m.
        #[arg(long, default_value_t = 0.0)]
        boundary: f64,
        /// Shear wind speed or updraft strength, m/s.
        #[arg(long, default_value_t = 5.0)]
        magnitude: f64,
        #[arg(long, default_value = "x")]
        axis: Axis,
        /// Updraft center (x,y).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [0.0, 0.0])]
        center: Vec<f64>,
        /// Updraft radius, m.
        #[arg(long, default_value_t = 300.0)]
        radius: f64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [-1000.0, -1000.0, 0.0])]
        origin: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [50.0, 50.0, 50.0])]
        spacing: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [81, 81, 25])]
        counts: Vec<usize>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Uniform,
    Shear,
    Updraft,
}

#[derive(Clone, Copy, ValueEnum)]
enum Axis {
    X,
    Y,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Plan {
            scenario,
            objective,
            frame,
            budget,
            seed,
            max_iterations,
            trace,
        } => {
            let mut sc = Scenario::load(&scenario)?;
            if let Some(b) = budget {
                sc.budget_s = b;
            }
            sc.planner.max_iterations = max_iterations.or(sc.planner.max_iterations);
            sc.validate()?;
            let config = sc.planner_config(objective, frame, seed);
            let (record, result) = run_once(&sc, objective, frame, seed)?;
            let check = validate_solution(&result, &sc.wind, sc.terrain.as_ref(), &sc.vehicle, &config);
            println!("scenario           {}", record.scenario);
            println!("configuration      {objective}/{frame} seed {seed}");
            println!("solution           {}", if result.success { "found" } else { "none" });
            println!("graph_states       {}", record.graph_states);
            println!("iterations         {}", record.iterations);
            match record.t_first_solution_s {
                Some(t) => println!("t_first_solution_s {t:.3}"),
                None => println!("t_first_solution_s -"),
            }
            println!("planning_time_s    {:.3}", record.planning_time_s);
            println!("cost               {}", result.cost);
            println!("flight_time_s      {}", record.flight_time_s);
            println!("energy_J           {}", record.energy_j);
            println!("length_m           {}", record.length_m);
            println!("validated          {}", check.feasible);
            if let Some(path) = trace {
                let rows = solution_trace(&sc, &result, config.step);
                let file = std::fs::File::create(&path).map_err(|e| Error::Io { path: path.clone(), source: e })?;
                write_trace(&rows, file)?;
            }
            Ok(if result.success { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Bench {
            scenario,
            runs,
            out,
            budget,
            jobs,
        } => {
            let mut sc = Scenario::load(&scenario)?;
            if let Some(b) = budget {
                sc.budget_s = b;
            }
            let report = run_benchmark(&sc, runs, None, BenchOptions { jobs }, &|r| {
                eprintln!(
                    "{} {}/{} seed {}: {} ({} states)",
                    r.scenario,
                    r.objective,
                    r.frame,
                    r.seed,
                    if r.success { format!("{:.0} J", r.energy_j) } else { "fail".into() },
                    r.graph_states
                );
            })?;
            print!("{}", emit_report(&report, ReportFormat::Table));
            if let Some(path) = out {
                std::fs::write(&path, emit_report(&report, ReportFormat::Delimited))
                    .map_err(|e| Error::Io { path: path.clone(), source: e })?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Windgen {
            kind,
            wind,
            boundary,
            magnitude,
            axis,
            center,
            radius,
            origin,
            spacing,
            counts,
            out,
        } => {
            for (name, v, n) in [
                ("wind", wind.len(), 3),
                ("center", center.len(), 2),
                ("origin", origin.len(), 3),
                ("spacing", spacing.len(), 3),
                ("counts", counts.len(), 3),
            ] {
                if v != n {
                    return Err(Error::InvalidInput(format!("--{name} takes {n} comma-separated values, got {v}")));
                }
            }
            let spec = match kind {
                Kind::Uniform => AnalyticWindField::Uniform {
                    wind: WindVector::new(wind[0], wind[1], wind[2]),
                },
                Kind::Shear => AnalyticWindField::Shear {
                    boundary,
                    magnitude,
                    axis: match axis {
                        Axis::X => ShearAxis::X,
                        Axis::Y => ShearAxis::Y,
                    },
                },
                Kind::Updraft => AnalyticWindField::Updraft {
                    center: [center[0], center[1]],
                    radius,
                    strength: magnitude,
                },
            };
            let field = windplan::windfields::make_synthetic(spec)?;
            let grid = rasterize(
                &field,
                [counts[0], counts[1], counts[2]],
                [origin[0], origin[1], origin[2]],
                [spacing[0], spacing[1], spacing[2]],
            )?;
            write_wind_grid(&out, &grid)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
