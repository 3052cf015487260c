//! Reflection about a stored state, and schedules built on it.
//!
//! Writing `s_k` for the state after `k` Grover iterations, every `s_k` lies
//! in the Grover plane at angle `(2k + 1)θ`. Reflecting `s_j` about `s_k`
//! lands at angle `2(2k + 1)θ − (2j + 1)θ`, which is exactly `s_{2k − j}`.
//! One oracle call produces `s_1`; from `s_0` and `s_1` every other index is
//! reachable through reflections alone.
//!
//! Two schedule shapes are provided:
//!
//! * [`ScheduleKind::Power2`] only ever reflects a fresh `s_0` about the
//!   newest state, doubling the index each time: `1 → 2 → 4 → …`.
//! * [`ScheduleKind::Binary`] doubles up to the largest power of two not
//!   above the target, then closes the gap with `s_T = reflect(s_m, s_{2m−T})`,
//!   recursing on `2m − T` until it hits a stored power of two.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grover::{grover_iteration, GroverParams};
use crate::oracles::OracleSpec;
use crate::statevec::{inner_product, QuantumState};
use crate::trace::{OpKind, StepTrace};

/// Largest target index a schedule may emulate.
pub const MAX_TARGET_INDEX: u64 = 1 << 62;

/// `2⟨m|ψ⟩ m − ψ`: reflection of `input` about `mirror`. Uses no oracle calls.
///
/// Evaluated as `(2|m⟩⟨m| / ⟨m|m⟩ − 1) ψ`. The two agree for a normalized
/// mirror, but the projector form keeps `‖out‖ = ‖ψ‖` when `m` carries
/// rounding error; without it, norm error grows fourfold per level of a
/// doubling chain.
pub fn reflect_about(mirror: &QuantumState, input: &QuantumState) -> Result<QuantumState> {
    let mirror_norm_sqr = inner_product(mirror, mirror)?.re;
    let overlap = inner_product(mirror, input)? * (2.0 / mirror_norm_sqr);
    let amplitudes = mirror
        .amplitudes()
        .iter()
        .zip(input.amplitudes())
        .map(|(m, x)| overlap * m - x)
        .collect();
    QuantumState::from_amplitudes(amplitudes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScheduleKind {
    Power2,
    Binary,
}

impl ScheduleKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ScheduleKind::Power2 => "power2",
            ScheduleKind::Binary => "binary",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum ScheduleStep {
    /// `s_1 = U_grov s_0`; the schedule's only oracle call.
    Grover,
    /// `s_result = reflect_about(s_mirror, s_input)`.
    Reflect {
        mirror: u64,
        input: u64,
        result: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflectionSchedule {
    kind: ScheduleKind,
    target_index: u64,
    steps: Vec<ScheduleStep>,
}

impl ReflectionSchedule {
    /// Wraps a hand-written step list. Each reflect step must satisfy
    /// `result == 2·mirror − input`; whether its operands exist is only
    /// checked when the schedule runs.
    pub fn from_steps(
        kind: ScheduleKind,
        target_index: u64,
        steps: Vec<ScheduleStep>,
    ) -> Result<Self> {
        for step in &steps {
            if let ScheduleStep::Reflect {
                mirror,
                input,
                result,
            } = *step
            {
                let expected = mirror.checked_mul(2).and_then(|m2| m2.checked_sub(input));
                if expected != Some(result) {
                    return Err(Error::Schedule(format!(
                        "reflecting s_{input} about s_{mirror} cannot produce s_{result}"
                    )));
                }
            }
        }
        Ok(Self {
            kind,
            target_index,
            steps,
        })
    }

    pub fn kind(&self) -> ScheduleKind {
        self.kind
    }

    pub fn target_index(&self) -> u64 {
        self.target_index
    }

    pub fn steps(&self) -> &[ScheduleStep] {
        &self.steps
    }

    /// Grover index of the state left by the last step.
    pub fn emulated_index(&self) -> u64 {
        match self.steps.last() {
            Some(ScheduleStep::Reflect { result, .. }) => *result,
            Some(ScheduleStep::Grover) => 1,
            None => 0,
        }
    }

    pub fn reflection_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, ScheduleStep::Reflect { .. }))
            .count()
    }

    pub fn grover_count(&self) -> usize {
        self.steps.len() - self.reflection_count()
    }

    /// Distinct states held by the store once the schedule finishes, `s_0` included.
    pub fn stored_states(&self) -> usize {
        let mut held: BTreeSet<u64> = BTreeSet::from([0]);
        for step in &self.steps {
            held.insert(match step {
                ScheduleStep::Grover => 1,
                ScheduleStep::Reflect { result, .. } => *result,
            });
        }
        held.len()
    }

    /// Most registers simultaneously occupied if a state is kept only while a
    /// later step still reads it and `s_0` is re-prepared on demand.
    ///
    /// The output of a step overwrites its input register. Power-of-two
    /// schedules need two registers throughout.
    pub fn peak_registers(&self) -> usize {
        let operands = |step: &ScheduleStep| -> Vec<u64> {
            match *step {
                ScheduleStep::Grover => vec![0],
                ScheduleStep::Reflect { mirror, input, .. } => vec![mirror, input],
            }
        };
        let mut stored: BTreeSet<u64> = BTreeSet::new();
        let mut peak = 0;
        for (t, step) in self.steps.iter().enumerate() {
            let later: BTreeSet<u64> = self.steps[t + 1..]
                .iter()
                .flat_map(operands)
                .filter(|&i| i != 0)
                .collect();
            let mut busy: BTreeSet<u64> = operands(step).into_iter().collect();
            busy.extend(stored.intersection(&later).copied());
            peak = peak.max(busy.len());
            stored.insert(match step {
                ScheduleStep::Grover => 1,
                ScheduleStep::Reflect { result, .. } => *result,
            });
        }
        peak
    }
}

/// Plans a reflection chain towards `target_index`.
///
/// `params` supplies θ for the power-of-two endpoint choice: among `2^m` up to
/// the first power of two ≥ `target_index`, the one whose success probability
/// `sin²((2·2^m + 1)θ)` is closest to 1 wins, ties going to the smaller index.
pub fn build_schedule(
    kind: ScheduleKind,
    target_index: u64,
    params: &GroverParams,
) -> Result<ReflectionSchedule> {
    if target_index == 0 || target_index > MAX_TARGET_INDEX {
        return Err(Error::InvalidArgument(format!(
            "target index must be in 1..={MAX_TARGET_INDEX}, got {target_index}"
        )));
    }
    let steps = match kind {
        ScheduleKind::Power2 => {
            let top = target_index.next_power_of_two().trailing_zeros();
            let mut best = 0;
            let mut best_gap = f64::INFINITY;
            for m in 0..=top {
                let k = (1u64 << m) as f64;
                let gap = 1.0 - ((2.0 * k + 1.0) * params.theta).sin().powi(2);
                if gap < best_gap {
                    best = m;
                    best_gap = gap;
                }
            }
            doubling_prefix(best)
        }
        ScheduleKind::Binary => {
            let p = 63 - target_index.leading_zeros();
            let mut steps = doubling_prefix(p);
            let mut tail = Vec::new();
            let mut t = target_index;
            while !t.is_power_of_two() {
                let mirror = 1u64 << (63 - t.leading_zeros());
                let input = 2 * mirror - t;
                tail.push(ScheduleStep::Reflect {
                    mirror,
                    input,
                    result: t,
                });
                t = input;
            }
            steps.extend(tail.into_iter().rev());
            steps
        }
    };
    ReflectionSchedule::from_steps(kind, target_index, steps)
}

fn doubling_prefix(doublings: u32) -> Vec<ScheduleStep> {
    std::iter::once(ScheduleStep::Grover)
        .chain((0..doublings).map(|i| ScheduleStep::Reflect {
            mirror: 1 << i,
            input: 0,
            result: 1 << (i + 1),
        }))
        .collect()
}

pub fn reflection_count(schedule: &ReflectionSchedule) -> usize {
    schedule.reflection_count()
}

/// Executes `schedule`, keeping every intermediate `s_i` in a store.
///
/// `s_0` is always available. A `prepare` record is traced each time a step
/// consumes a fresh `s_0`. The run refuses non-unique oracles and uses
/// exactly one oracle call per Grover step.
pub fn doubling_run(
    oracle: &OracleSpec,
    schedule: &ReflectionSchedule,
) -> Result<(QuantumState, Vec<StepTrace>)> {
    let omega = oracle.unique_solution()?;
    let uniform = QuantumState::prepare_uniform(oracle.n())?;
    let mut store: BTreeMap<u64, QuantumState> = BTreeMap::new();
    store.insert(0, uniform.clone());

    let mut traces = Vec::new();
    let mut calls = 0u64;
    let mut current = uniform.clone();
    let mut trace = |kind: OpKind, index: u64, state: &QuantumState, calls: u64| -> Result<()> {
        let step = traces.len() as u64;
        traces.push(StepTrace::observe(
            step,
            kind,
            Some(index),
            state,
            omega,
            calls,
        )?);
        Ok(())
    };

    for step in schedule.steps() {
        let (result, state) = match *step {
            ScheduleStep::Grover => {
                trace(OpKind::Prepare, 0, &uniform, calls)?;
                let state = grover_iteration(oracle, &uniform)?;
                calls += 1;
                trace(OpKind::Grover, 1, &state, calls)?;
                (1, state)
            }
            ScheduleStep::Reflect {
                mirror,
                input,
                result,
            } => {
                let lookup = |i: u64| {
                    store.get(&i).ok_or_else(|| {
                        Error::Schedule(format!("s_{i} is used before it is stored"))
                    })
                };
                let m = lookup(mirror)?;
                let x = lookup(input)?;
                if input == 0 {
                    trace(OpKind::Prepare, 0, x, calls)?;
                }
                let state = reflect_about(m, x)?;
                trace(OpKind::Reflect, result, &state, calls)?;
                (result, state)
            }
        };
        current = state.clone();
        store.insert(result, state);
    }
    Ok((current, traces))
}
