//! Experiment configuration, execution and algorithm comparison.

use std::fmt;
use std::path::PathBuf;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grover::{grover_run, optimal_iterations, GroverParams};
use crate::oracles::{parse_dimacs, OracleSpec};
use crate::reflect::{build_schedule, doubling_run, ScheduleKind};
use crate::report::{write_rows, FinalSummary, RunCounts, RunReport};
use crate::statevec::{BasisIndex, QuantumState};
use crate::trace::{angle_of, sample_measurement, success_probability, OpKind, StepTrace};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleSource {
    /// A single marked string, written as `0b…`, `0x…` or decimal.
    Marked(String),
    /// Path to a DIMACS CNF file.
    Cnf(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Grover,
    Doubling,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Register width. Required for marked oracles; for CNF oracles it
    /// defaults to the variable count and must match it when given.
    pub n: Option<usize>,
    pub oracle_source: OracleSource,
    pub algorithm: Algorithm,
    pub schedule: ScheduleKind,
    /// Grover iterations to run; `None` means `t_opt`. Ignored by doubling.
    pub steps: Option<u64>,
    /// Measurement shots on the final state; 0 disables sampling.
    pub shots: u64,
    pub seed: u64,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(n: Option<usize>, oracle_source: OracleSource, algorithm: Algorithm) -> Self {
        Self {
            n,
            oracle_source,
            algorithm,
            schedule: ScheduleKind::Binary,
            steps: None,
            shots: 0,
            seed: 0,
            format: OutputFormat::Json,
            output: None,
        }
    }

    /// Builds the oracle named by `oracle_source`, reading the CNF file if any.
    pub fn build_oracle(&self) -> Result<OracleSpec> {
        match &self.oracle_source {
            OracleSource::Marked(literal) => {
                let n = self.n.ok_or_else(|| {
                    Error::InvalidArgument("a marked-string oracle needs a register width".into())
                })?;
                OracleSpec::marked(parse_omega_literal(literal, n)?)
            }
            OracleSource::Cnf(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                let formula = parse_dimacs(&text)?;
                if let Some(n) = self.n {
                    if n != formula.num_vars() {
                        return Err(Error::InvalidArgument(format!(
                            "width {n} does not match the formula's {} variables",
                            formula.num_vars()
                        )));
                    }
                }
                OracleSpec::cnf(formula)
            }
        }
    }
}

/// Parses `0b…`, `0x…` or decimal into an index of width `n`.
pub fn parse_omega_literal(literal: &str, n: usize) -> Result<BasisIndex> {
    let s = literal.trim();
    let (digits, radix) = if let Some(rest) = s.strip_prefix("0b").or_else(|| s.strip_prefix("0B"))
    {
        (rest, 2)
    } else if let Some(rest) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        (rest, 16)
    } else {
        (s, 10)
    };
    if digits.is_empty() || digits.starts_with(['+', '-']) {
        return Err(Error::InvalidArgument(format!(
            "invalid marked-string literal {literal:?}"
        )));
    }
    let value = u64::from_str_radix(digits, radix).map_err(|e| {
        Error::InvalidArgument(format!("invalid marked-string literal {literal:?}: {e}"))
    })?;
    BasisIndex::new(value, n)
}

struct Outcome {
    state: QuantumState,
    traces: Vec<StepTrace>,
    emulated_index: u64,
    stored_states: u64,
    peak_registers: u64,
}

fn execute(
    config: &ExperimentConfig,
    oracle: &OracleSpec,
    params: &GroverParams,
) -> Result<Outcome> {
    match config.algorithm {
        Algorithm::Grover => {
            let steps = config.steps.unwrap_or(params.t_opt);
            let (state, traces) = grover_run(oracle, steps)?;
            Ok(Outcome {
                state,
                traces,
                emulated_index: steps,
                stored_states: 1,
                peak_registers: 1,
            })
        }
        Algorithm::Doubling => {
            let schedule = build_schedule(config.schedule, params.t_opt.max(1), params)?;
            let (state, traces) = doubling_run(oracle, &schedule)?;
            Ok(Outcome {
                state,
                traces,
                emulated_index: schedule.emulated_index(),
                stored_states: schedule.stored_states() as u64,
                peak_registers: schedule.peak_registers() as u64,
            })
        }
    }
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<RunReport> {
    let oracle = config.build_oracle()?;
    run_with_oracle(config, &oracle)
}

/// Runs `config` against an already constructed oracle.
pub fn run_with_oracle(config: &ExperimentConfig, oracle: &OracleSpec) -> Result<RunReport> {
    let started = Instant::now();
    let omega = oracle.unique_solution()?;
    let params = optimal_iterations(oracle.n())?;
    let calls_before = oracle.call_count();

    let outcome = execute(config, oracle, &params)?;
    let count_kind =
        |kind: OpKind| outcome.traces.iter().filter(|t| t.op_kind == kind).count() as u64;
    let counts = RunCounts {
        oracle_calls: oracle.call_count() - calls_before,
        reflections: count_kind(OpKind::Reflect),
        grover_steps: count_kind(OpKind::Grover),
        stored_states: outcome.stored_states,
        peak_registers: outcome.peak_registers,
    };
    let final_state = FinalSummary {
        solution: omega.to_bit_string(),
        success_prob: success_probability(&outcome.state, omega)?,
        angle: angle_of(&outcome.state, omega)?,
        emulated_index: outcome.emulated_index,
    };
    let histogram = match config.shots {
        0 => None,
        shots => Some(sample_measurement(&outcome.state, shots, config.seed)?),
    };

    Ok(RunReport {
        config: config.clone(),
        params,
        traces: outcome.traces,
        final_state,
        counts,
        histogram,
        wall_time_secs: started.elapsed().as_secs_f64(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub algorithm: String,
    /// Classical scan: evaluations until the solution is hit. Quantum rows:
    /// state-level oracle calls.
    pub oracle_queries: u64,
    pub oracle_calls: u64,
    pub reflections: u64,
    /// Grover iterations plus reflections (classical: evaluations).
    pub unit_operations: u64,
    pub success_prob: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub n: usize,
    pub solution: String,
    pub params: GroverParams,
    pub rows: Vec<ComparisonRow>,
}

impl ComparisonTable {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut out = Vec::new();
        write_rows(&mut out, &self.rows)?;
        String::from_utf8(out).map_err(|e| Error::Serialization(e.to_string()))
    }

    pub fn row(&self, algorithm: &str) -> Option<&ComparisonRow> {
        self.rows.iter().find(|r| r.algorithm == algorithm)
    }
}

impl fmt::Display for ComparisonTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<10} {:>10} {:>8} {:>11} {:>8} {:>12}",
            "algorithm", "queries", "calls", "reflections", "ops", "success"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:<10} {:>10} {:>8} {:>11} {:>8} {:>12.6}",
                r.algorithm,
                r.oracle_queries,
                r.oracle_calls,
                r.reflections,
                r.unit_operations,
                r.success_prob
            )?;
        }
        Ok(())
    }
}

/// Classical scan, standard Grover (`t_opt` steps) and the doubling
/// schedule from `config`, side by side on the same oracle.
pub fn compare_algorithms(config: &ExperimentConfig) -> Result<ComparisonTable> {
    let oracle = config.build_oracle()?;
    let omega = oracle.unique_solution()?;

    let mut scanned = 0u64;
    for x in 0..1u64 << oracle.n() {
        scanned += 1;
        if oracle.evaluate(BasisIndex::new(x, oracle.n())?)? {
            break;
        }
    }
    let mut rows = vec![ComparisonRow {
        algorithm: "classical".into(),
        oracle_queries: scanned,
        oracle_calls: scanned,
        reflections: 0,
        unit_operations: scanned,
        success_prob: 1.0,
    }];

    let mut params = None;
    for algorithm in [Algorithm::Grover, Algorithm::Doubling] {
        let cfg = ExperimentConfig {
            algorithm,
            steps: None,
            shots: 0,
            ..config.clone()
        };
        let report = run_with_oracle(&cfg, &oracle)?;
        params = Some(report.params);
        rows.push(ComparisonRow {
            algorithm: match algorithm {
                Algorithm::Grover => "grover".into(),
                Algorithm::Doubling => format!("doubling-{}", config.schedule.as_str()),
            },
            oracle_queries: report.counts.oracle_calls,
            oracle_calls: report.counts.oracle_calls,
            reflections: report.counts.reflections,
            unit_operations: report.counts.grover_steps + report.counts.reflections,
            success_prob: report.final_state.success_prob,
        });
    }

    Ok(ComparisonTable {
        n: oracle.n(),
        solution: omega.to_bit_string(),
        params: params.expect("two quantum rows were run"),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_literals() {
        assert_eq!(parse_omega_literal("0b101", 3).unwrap().value(), 5);
        assert_eq!(parse_omega_literal("0x2A", 8).unwrap().value(), 42);
        assert_eq!(parse_omega_literal("42", 8).unwrap().value(), 42);
        assert_eq!(parse_omega_literal(" 7 ", 3).unwrap().value(), 7);
        assert!(parse_omega_literal("8", 3).is_err());
        assert!(parse_omega_literal("0x", 3).is_err());
        assert!(parse_omega_literal("-1", 3).is_err());
        assert!(parse_omega_literal("0b+1", 3).is_err());
        assert!(parse_omega_literal("0b102", 3).is_err());
        assert!(parse_omega_literal("", 3).is_err());
    }

    #[test]
    fn marked_needs_width() {
        let cfg = ExperimentConfig::new(None, OracleSource::Marked("1".into()), Algorithm::Grover);
        assert!(matches!(
            run_experiment(&cfg),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn missing_cnf_file_is_io_error() {
        let cfg = ExperimentConfig::new(
            None,
            OracleSource::Cnf("/nonexistent/formula.cnf".into()),
            Algorithm::Grover,
        );
        assert!(matches!(run_experiment(&cfg), Err(Error::Io(_))));
    }

    #[test]
    fn grover_report_counts() {
        let mut cfg = ExperimentConfig::new(
            Some(8),
            OracleSource::Marked("0x2A".into()),
            Algorithm::Grover,
        );
        cfg.steps = Some(12);
        let r = run_experiment(&cfg).unwrap();
        assert_eq!(r.counts.oracle_calls, 12);
        assert_eq!(r.counts.grover_steps, 12);
        assert_eq!(r.counts.reflections, 0);
        assert_eq!(r.final_state.solution, "00101010");
        assert!((r.final_state.success_prob - 0.999_947_042_103_273_6).abs() < 1e-10);
        assert!(r.histogram.is_none());
    }

    #[test]
    fn doubling_report_counts() {
        let mut cfg = ExperimentConfig::new(
            Some(8),
            OracleSource::Marked("0x2A".into()),
            Algorithm::Doubling,
        );
        cfg.shots = 100;
        cfg.seed = 3;
        let r = run_experiment(&cfg).unwrap();
        assert_eq!(r.counts.oracle_calls, 1);
        assert_eq!(r.counts.reflections, 4);
        assert_eq!(r.final_state.emulated_index, 12);
        assert!((r.final_state.success_prob - 0.999_947_042_103_273_6).abs() < 1e-10);
        assert_eq!(r.histogram.as_ref().unwrap().shots, 100);
        assert_eq!(r.traces.last().unwrap().cumulative_oracle_calls, 1);
    }
}
