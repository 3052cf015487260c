//! Plane geometry, Born-rule measurement and per-step run records.
//!
//! Every state produced by the runners lies in the real plane spanned by
//! `|ω⟩` and the uniform superposition of the other `N − 1` strings. Inside
//! that plane a state is `sin α |ω⟩ + cos α |r⟩`, and `α` is the angle the
//! traces report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::SimRng;
use crate::statevec::{BasisIndex, QuantumState};

/// Maximum spread allowed among the non-solution amplitudes of an in-plane state.
pub const PLANE_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OpKind {
    Prepare,
    Grover,
    Reflect,
}

impl OpKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            OpKind::Prepare => "prepare",
            OpKind::Grover => "grover",
            OpKind::Reflect => "reflect",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "prepare" => Some(OpKind::Prepare),
            "grover" => Some(OpKind::Grover),
            "reflect" => Some(OpKind::Reflect),
            _ => None,
        }
    }
}

/// One row of a run trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepTrace {
    pub step_index: u64,
    pub op_kind: OpKind,
    /// Number of plain Grover iterations whose state this step produced.
    pub emulated_index: Option<u64>,
    pub angle: f64,
    pub success_prob: f64,
    pub cumulative_oracle_calls: u64,
    pub max_imag: f64,
}

impl StepTrace {
    pub(crate) fn observe(
        step_index: u64,
        op_kind: OpKind,
        emulated_index: Option<u64>,
        state: &QuantumState,
        omega: BasisIndex,
        cumulative_oracle_calls: u64,
    ) -> Result<Self> {
        Ok(Self {
            step_index,
            op_kind,
            emulated_index,
            angle: angle_of(state, omega)?,
            success_prob: success_probability(state, omega)?,
            cumulative_oracle_calls,
            max_imag: state.max_imag(),
        })
    }
}

/// Signed angle of `ψ` from the non-solution axis toward `|ω⟩`, in `(−π, π]`.
pub fn angle_of(psi: &QuantumState, omega: BasisIndex) -> Result<f64> {
    psi.check_index(omega)?;
    let w = omega.value() as usize;
    let amps = psi.amplitudes();
    let rest = amps.len() - 1;

    let mut sum = 0.0;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (i, a) in amps.iter().enumerate() {
        if a.im.abs() > PLANE_TOLERANCE {
            return Err(Error::Geometry(format!(
                "amplitude {i} has imaginary part {}",
                a.im
            )));
        }
        if i != w {
            sum += a.re;
            lo = lo.min(a.re);
            hi = hi.max(a.re);
        }
    }
    if hi - lo > PLANE_TOLERANCE {
        return Err(Error::Geometry(format!(
            "non-solution amplitudes spread over {}",
            hi - lo
        )));
    }
    let common = sum / rest as f64;
    let sin = amps[w].re;
    let cos = (rest as f64).sqrt() * common;
    let angle = sin.atan2(cos);
    // atan2 returns −π for (−0, negative); fold it onto π.
    Ok(if angle <= -std::f64::consts::PI {
        std::f64::consts::PI
    } else {
        angle
    })
}

/// `|⟨ω|ψ⟩|²`.
pub fn success_probability(psi: &QuantumState, omega: BasisIndex) -> Result<f64> {
    Ok(psi.amplitude(omega)?.norm_sqr().min(1.0))
}

/// Outcome counts of repeated computational-basis measurements.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Histogram {
    pub width: usize,
    pub shots: u64,
    /// Basis index value → number of times observed. Zero counts are omitted.
    pub counts: BTreeMap<u64, u64>,
}

impl Histogram {
    pub fn count(&self, index: u64) -> u64 {
        self.counts.get(&index).copied().unwrap_or(0)
    }

    pub fn frequency(&self, index: u64) -> f64 {
        self.count(index) as f64 / self.shots as f64
    }

    /// Most frequent outcome; ties resolve to the smallest index.
    pub fn mode(&self) -> Option<BasisIndex> {
        let mut best: Option<(u64, u64)> = None;
        for (&index, &count) in &self.counts {
            if best.is_none_or(|(_, c)| count > c) {
                best = Some((index, count));
            }
        }
        best.and_then(|(index, _)| BasisIndex::new(index, self.width).ok())
    }
}

/// Draws `shots` independent outcomes from the Born distribution of `ψ`.
///
/// Sampling is sequential inverse-CDF over the cumulative probabilities in
/// index order, driven by [`SimRng`], so identical `(ψ, shots, seed)` always
/// give the identical histogram.
pub fn sample_measurement(psi: &QuantumState, shots: u64, seed: u64) -> Result<Histogram> {
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be at least 1".into()));
    }
    let mut cumulative = Vec::with_capacity(psi.dim());
    let mut acc = 0.0;
    for a in psi.amplitudes() {
        acc += a.norm_sqr();
        cumulative.push(acc);
    }
    let total = acc;
    let last_nonzero = psi
        .amplitudes()
        .iter()
        .rposition(|a| a.norm_sqr() > 0.0)
        .unwrap_or(0);

    let mut rng = SimRng::new(seed);
    let mut counts = BTreeMap::new();
    for _ in 0..shots {
        let u = rng.next_f64() * total;
        let i = cumulative.partition_point(|&c| c <= u).min(last_nonzero);
        *counts.entry(i as u64).or_insert(0) += 1;
    }
    Ok(Histogram {
        width: psi.n(),
        shots,
        counts,
    })
}
