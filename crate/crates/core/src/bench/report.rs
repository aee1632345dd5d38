use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::energy::Objective;
use crate::planner::PathFrame;
use crate::{Error, Result};

/// One planner invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub scenario: String,
    pub objective: Objective,
    pub frame: PathFrame,
    pub seed: u64,
    pub graph_states: usize,
    pub iterations: u64,
    pub t_first_solution_s: Option<f64>,
    pub planning_time_s: f64,
    pub flight_time_s: f64,
    #[serde(rename = "energy_J")]
    pub energy_j: f64,
    pub length_m: f64,
    pub success: bool,
}

/// Mean and sample standard deviation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stat {
    pub mean: f64,
    pub std: f64,
}

impl Stat {
    pub const INFINITE: Stat = Stat {
        mean: f64::INFINITY,
        std: f64::INFINITY,
    };

    /// `None` for an empty sample; infinite if any value is.
    pub fn of(values: &[f64]) -> Option<Stat> {
        if values.is_empty() {
            return None;
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Some(Stat::INFINITE);
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let std = if values.len() < 2 {
            0.0
        } else {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        };
        if mean.is_nan() || std.is_nan() {
            return Some(Stat::INFINITE);
        }
        Some(Stat { mean, std })
    }
}

/// Aggregates of one objective/frame configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigAggregate {
    pub scenario: String,
    pub objective: Objective,
    pub frame: PathFrame,
    pub runs: usize,
    pub successes: usize,
    pub graph_states: Stat,
    /// Over runs that found a solution; infinite when none did.
    pub t_first_solution: Stat,
    /// Infinite if any run failed.
    pub flight_time: Stat,
    /// Infinite if any run failed.
    pub energy: Stat,
}

impl ConfigAggregate {
    pub fn success_percent(&self) -> f64 {
        100.0 * self.successes as f64 / self.runs as f64
    }

    /// Short label such as `e_g` (energy objective, ground frame).
    pub fn label(&self) -> String {
        format!("{}_{}", &self.objective.name()[..1], &self.frame.name()[..1])
    }

    fn from_rows(rows: &[&RunRecord]) -> ConfigAggregate {
        let first = rows[0];
        let all = |f: fn(&RunRecord) -> f64| rows.iter().map(|r| f(r)).collect::<Vec<_>>();
        let successes = rows.iter().filter(|r| r.success).count();
        let over_success = |f: fn(&RunRecord) -> f64| {
            if successes == rows.len() {
                Stat::of(&all(f)).expect("non-empty")
            } else {
                Stat::INFINITE
            }
        };
        let firsts: Vec<f64> = rows.iter().filter_map(|r| r.t_first_solution_s).collect();
        ConfigAggregate {
            scenario: first.scenario.clone(),
            objective: first.objective,
            frame: first.frame,
            runs: rows.len(),
            successes,
            graph_states: Stat::of(&all(|r| r.graph_states as f64)).expect("non-empty"),
            t_first_solution: Stat::of(&firsts).unwrap_or(Stat::INFINITE),
            flight_time: over_success(|r| r.flight_time_s),
            energy: over_success(|r| r.energy_j),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BenchmarkReport {
    pub rows: Vec<RunRecord>,
    /// One entry per configuration, in order of first appearance.
    pub aggregates: Vec<ConfigAggregate>,
}

impl BenchmarkReport {
    pub fn from_rows(rows: Vec<RunRecord>) -> BenchmarkReport {
        let mut keys: Vec<(&str, Objective, PathFrame)> = Vec::new();
        for r in &rows {
            let k = (r.scenario.as_str(), r.objective, r.frame);
            if !keys.contains(&k) {
                keys.push(k);
            }
        }
        let aggregates = keys
            .iter()
            .map(|&(s, o, f)| {
                let group: Vec<&RunRecord> = rows
                    .iter()
                    .filter(|r| r.scenario == s && r.objective == o && r.frame == f)
                    .collect();
                ConfigAggregate::from_rows(&group)
            })
            .collect();
        BenchmarkReport { rows, aggregates }
    }

    pub fn aggregate(&self, objective: Objective, frame: PathFrame) -> Option<&ConfigAggregate> {
        self.aggregates
            .iter()
            .find(|a| a.objective == objective && a.frame == frame)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    /// Aligned summary table, one line per configuration.
    Table,
    /// Per-run comma-separated rows; parses back with [`parse_report`].
    Delimited,
}

const COLUMNS: [&str; 12] = [
    "scenario",
    "objective",
    "frame",
    "seed",
    "graph_states",
    "iterations",
    "t_first_solution_s",
    "planning_time_s",
    "flight_time_s",
    "energy_J",
    "length_m",
    "success",
];

fn fmt_stat(s: Stat, precision: usize) -> String {
    if s.mean.is_infinite() {
        "inf ± inf".to_string()
    } else {
        format!("{:.*} ± {:.*}", precision, s.mean, precision, s.std)
    }
}

pub fn emit_report(report: &BenchmarkReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Delimited => {
            let mut w = csv::Writer::from_writer(Vec::new());
            if report.rows.is_empty() {
                w.write_record(COLUMNS).expect("in-memory write");
            }
            for r in &report.rows {
                w.serialize(r).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8")
        }
        ReportFormat::Table => {
            let mut out = String::new();
            let header = [
                "scenario", "config", "runs", "success_%", "graph_states", "t_first_s", "flight_time_s", "energy_J",
            ];
            let mut lines: Vec<[String; 8]> = vec![header.map(String::from)];
            for a in &report.aggregates {
                lines.push([
                    a.scenario.clone(),
                    a.label(),
                    a.runs.to_string(),
                    format!("{:.1}", a.success_percent()),
                    fmt_stat(a.graph_states, 0),
                    fmt_stat(a.t_first_solution, 3),
                    fmt_stat(a.flight_time, 1),
                    fmt_stat(a.energy, 0),
                ]);
            }
            let widths: Vec<usize> = (0..8)
                .map(|c| lines.iter().map(|l| l[c].chars().count()).max().unwrap_or(0))
                .collect();
            for l in &lines {
                let cells: Vec<String> = l
                    .iter()
                    .zip(&widths)
                    .map(|(cell, &w)| format!("{cell:<w$}"))
                    .collect();
                writeln!(out, "{}", cells.join("  ").trim_end()).expect("string write");
            }
            out
        }
    }
}

/// Parses the delimited form and recomputes the aggregates.
pub fn parse_report(document: &str) -> Result<BenchmarkReport> {
    let mut reader = csv::Reader::from_reader(document.as_bytes());
    let header = reader.headers()?.clone();
    if header.iter().ne(COLUMNS) {
        return Err(Error::parse("report header", format!("expected columns {}", COLUMNS.join(","))));
    }
    let rows = reader.deserialize().collect::<std::result::Result<Vec<RunRecord>, _>>()?;
    Ok(BenchmarkReport::from_rows(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn row(objective: Objective, seed: u64, energy: f64) -> RunRecord {
        RunRecord {
            scenario: "s".into(),
            objective,
            frame: PathFrame::Ground,
            seed,
            graph_states: 100 + seed as usize,
            iterations: 1000,
            t_first_solution_s: Some(0.5),
            planning_time_s: 1.0,
            flight_time_s: 200.0,
            energy_j: energy,
            length_m: 3000.0,
            success: energy.is_finite(),
        }
    }

    #[test]
    fn empty_report_is_header_only() {
        let doc = emit_report(&BenchmarkReport::default(), ReportFormat::Delimited);
        assert_eq!(doc.trim_end(), COLUMNS.join(","));
        assert_eq!(parse_report(&doc).unwrap(), BenchmarkReport::default());
    }

    #[test]
    fn inf_cells_and_aggregates() {
        let r = BenchmarkReport::from_rows(vec![row(Objective::Distance, 0, f64::INFINITY), row(Objective::Distance, 1, 5.0)]);
        let doc = emit_report(&r, ReportFormat::Delimited);
        assert!(doc.lines().nth(1).unwrap().contains(",inf,"));
        let a = &r.aggregates[0];
        assert_eq!(a.energy, Stat::INFINITE);
        assert_eq!(a.success_percent(), 50.0);
        let table = emit_report(&r, ReportFormat::Table);
        assert!(table.contains("d_g") && table.contains("inf ± inf"));
    }

    #[test]
    fn stats_match_hand_values() {
        let s = Stat::of(&[2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0]).unwrap();
        assert_eq!(s.mean, 5.0);
        assert!((s.std - (32.0f64 / 7.0).sqrt()).abs() < 1e-15);
        assert_eq!(Stat::of(&[3.0]).unwrap().std, 0.0);
        assert!(Stat::of(&[]).is_none());
    }

    #[test]
    fn wrong_header_rejected() {
        assert!(parse_report("a,b\n1,2\n").is_err());
    }

    fn any_f64() -> impl Strategy<Value = f64> {
        prop_oneof![Just(f64::INFINITY), -1e12f64..1e12, any::<f64>().prop_filter("finite", |v| v.is_finite())]
    }

    proptest! {
        #[test]
        fn delimited_round_trip(rows in proptest::collection::vec(
            (0usize..3, 0usize..2, any::<u64>(), 0usize..100_000, any::<u64>(),
             proptest::option::of(0f64..100.0), 0f64..100.0, any_f64(), any_f64(), any_f64(), any::<bool>(), "[a-z_,\" ]{0,12}"),
            0..12))
        {
            let rows: Vec<RunRecord> = rows.into_iter().map(|(o, f, seed, g, it, tf, pt, ft, e, l, ok, name)| RunRecord {
                scenario: name,
                objective: Objective::ALL[o],
                frame: PathFrame::ALL[f],
                seed,
                graph_states: g,
                iterations: it,
                t_first_solution_s: tf,
                planning_time_s: pt,
                flight_time_s: ft,
                energy_j: e,
                length_m: l,
                success: ok,
            }).collect();
            let report = BenchmarkReport::from_rows(rows);
            let back = parse_report(&emit_report(&report, ReportFormat::Delimited)).unwrap();
            prop_assert_eq!(back, report);
        }
    }
}
