//! Standard Grover search: the two oracle forms, the diffusion operator and
//! the iteration `U_grov = U_s U_ω`.
//!
//! All operators run in `O(N)` on the dense vector; none of them builds a
//! matrix.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracles::{OracleSpec, Predicate};
use crate::statevec::{check_width, compensated_complex_sum, QuantumState};
use crate::trace::{OpKind, StepTrace};

/// Slack added before flooring `π/(4θ)` so exact integers (n = 1) don't round down.
const FLOOR_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroverParams {
    pub n: usize,
    /// Half the rotation angle per iteration: `sin θ = 1/√N`.
    pub theta: f64,
    /// `floor(π / 4θ)`.
    pub t_opt: u64,
    /// The closed-form estimate `π √N / 4`.
    pub approx_iterations: f64,
}

pub fn optimal_iterations(n: usize) -> Result<GroverParams> {
    check_width(n)?;
    let theta = (-(n as f64) / 2.0).exp2().asin();
    let t_opt = (PI / (4.0 * theta) + FLOOR_SLACK).floor() as u64;
    Ok(GroverParams {
        n,
        theta,
        t_opt,
        approx_iterations: PI * ((1u64 << n) as f64).sqrt() / 4.0,
    })
}

fn check_oracle_width(oracle: &OracleSpec, psi: &QuantumState) -> Result<()> {
    if oracle.n() != psi.n() {
        return Err(Error::DimensionMismatch {
            expected: oracle.n(),
            found: psi.n(),
        });
    }
    Ok(())
}

/// `U_ω = 1 − 2 Σ_{f(x)=1} |x⟩⟨x|`. Counts one oracle call.
pub fn phase_oracle_apply(oracle: &OracleSpec, psi: &QuantumState) -> Result<QuantumState> {
    check_oracle_width(oracle, psi)?;
    let mut out = psi.clone();
    let amps = out.amplitudes_mut();
    match oracle.predicate() {
        Predicate::Marked(omega) => {
            let w = omega.value() as usize;
            amps[w] = -amps[w];
        }
        Predicate::Cnf(_) => {
            for (x, a) in amps.iter_mut().enumerate() {
                if oracle.eval_raw(x as u64) {
                    *a = -*a;
                }
            }
        }
    }
    oracle.record_call();
    Ok(out)
}

/// `|x⟩|y⟩ → |x⟩|y ⊕ f(x)⟩` on `n + 1` qubits, ancilla in the least significant
/// bit. Counts one oracle call.
pub fn xor_oracle_apply(oracle: &OracleSpec, psi_extended: &QuantumState) -> Result<QuantumState> {
    if psi_extended.n() != oracle.n() + 1 {
        return Err(Error::DimensionMismatch {
            expected: oracle.n() + 1,
            found: psi_extended.n(),
        });
    }
    let mut out = psi_extended.clone();
    let amps = out.amplitudes_mut();
    for x in 0..1usize << oracle.n() {
        if oracle.eval_raw(x as u64) {
            amps.swap(2 * x, 2 * x + 1);
        }
    }
    oracle.record_call();
    Ok(out)
}

/// `U_s = 2|s⟩⟨s| − 1` with `|s⟩` the uniform superposition.
pub fn diffusion_apply(psi: &QuantumState) -> Result<QuantumState> {
    let mut out = psi.clone();
    let amps = out.amplitudes_mut();
    // 2⟨s|ψ⟩ s_x = 2 (Σψ) / N
    let twice_mean: Complex64 =
        compensated_complex_sum(amps.iter().copied()) * (2.0 / amps.len() as f64);
    for a in amps.iter_mut() {
        *a = twice_mean - *a;
    }
    Ok(out)
}

/// One Grover iteration `U_s U_ω`; exactly one oracle call.
pub fn grover_iteration(oracle: &OracleSpec, psi: &QuantumState) -> Result<QuantumState> {
    diffusion_apply(&phase_oracle_apply(oracle, psi)?)
}

/// Runs `steps` Grover iterations from the uniform superposition.
///
/// Refuses oracles without exactly one solution. Step `k` of the trace holds
/// the state after `k` iterations; `cumulative_oracle_calls` counts calls made
/// by this run only.
pub fn grover_run(oracle: &OracleSpec, steps: u64) -> Result<(QuantumState, Vec<StepTrace>)> {
    let omega = oracle.unique_solution()?;
    let mut state = QuantumState::prepare_uniform(oracle.n())?;
    let mut traces = Vec::with_capacity(steps as usize);
    for k in 1..=steps {
        state = grover_iteration(oracle, &state)?;
        traces.push(StepTrace::observe(
            k,
            OpKind::Grover,
            Some(k),
            &state,
            omega,
            k,
        )?);
    }
    Ok((state, traces))
}
