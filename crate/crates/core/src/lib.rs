//! State-vector simulation of Grover search and of the state-as-operator
//! search model.
//!
//! In the state-as-operator model a stored register state `φ` may be applied
//! to another register as the reflection `2|φ⟩⟨φ| − 1`. With that primitive,
//! one oracle call (a single Grover iteration) followed by a logarithmic chain
//! of reflections reproduces the state of `T` Grover iterations. This crate
//! simulates both procedures on dense state vectors and records the plane
//! geometry, success probabilities and oracle-call accounting of every step.
//!
//! * [`statevec`]: dense complex state vectors.
//! * [`oracles`]: marked-string and CNF decision functions, DIMACS input.
//! * [`grover`]: oracle forms, diffusion, Grover iteration and runner.
//! * [`reflect`]: reflection about a stored state and doubling schedules.
//! * [`trace`]: plane angles, Born-rule sampling, per-step records.
//! * [`experiment`] / [`report`]: configured runs, comparisons, JSON/CSV output.

pub mod error;
pub mod experiment;
pub mod grover;
pub mod oracles;
pub mod reflect;
pub mod report;
pub mod rng;
pub mod statevec;
pub mod trace;

pub use error::{Error, Result};
pub use experiment::{
    compare_algorithms, parse_omega_literal, run_experiment, run_with_oracle, Algorithm,
    ComparisonRow, ComparisonTable, ExperimentConfig, OracleSource, OutputFormat,
};
pub use grover::{
    diffusion_apply, grover_iteration, grover_run, optimal_iterations, phase_oracle_apply,
    xor_oracle_apply, GroverParams,
};
pub use oracles::{parse_dimacs, CnfFormula, OracleSpec, Predicate};
pub use reflect::{
    build_schedule, doubling_run, reflect_about, reflection_count, ReflectionSchedule,
    ScheduleKind, ScheduleStep,
};
pub use report::{parse_trace_csv, traces_to_csv, RunCounts, RunReport, TraceRow};
pub use rng::SimRng;
pub use statevec::{inner_product, state_distance, BasisIndex, QuantumState, MAX_QUBITS};
pub use trace::{angle_of, sample_measurement, success_probability, Histogram, OpKind, StepTrace};
