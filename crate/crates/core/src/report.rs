//! Serialized run output.
//!
//! JSON is the canonical encoding of a [`RunReport`]. CSV carries only the
//! per-step trace table, with the columns
//! `step_index,op_kind,emulated_index,angle,success_prob,cumulative_oracle_calls`.
//! Floats are written in shortest round-trip form in both encodings.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiment::ExperimentConfig;
use crate::grover::GroverParams;
use crate::trace::{Histogram, OpKind, StepTrace};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FinalSummary {
    pub solution: String,
    pub success_prob: f64,
    pub angle: f64,
    pub emulated_index: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunCounts {
    pub oracle_calls: u64,
    pub reflections: u64,
    pub grover_steps: u64,
    /// States retained by the run's store, `s_0` included.
    pub stored_states: u64,
    /// Registers that must coexist if states are dropped once no longer read.
    pub peak_registers: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: ExperimentConfig,
    pub params: GroverParams,
    pub traces: Vec<StepTrace>,
    #[serde(rename = "final")]
    pub final_state: FinalSummary,
    pub counts: RunCounts,
    pub histogram: Option<Histogram>,
    pub wall_time_secs: f64,
}

impl RunReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn trace_csv(&self) -> Result<String> {
        traces_to_csv(&self.traces)
    }
}

/// One row of the flat CSV trace table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub step_index: u64,
    pub op_kind: OpKind,
    pub emulated_index: Option<u64>,
    pub angle: f64,
    pub success_prob: f64,
    pub cumulative_oracle_calls: u64,
}

impl From<&StepTrace> for TraceRow {
    fn from(t: &StepTrace) -> Self {
        Self {
            step_index: t.step_index,
            op_kind: t.op_kind,
            emulated_index: t.emulated_index,
            angle: t.angle,
            success_prob: t.success_prob,
            cumulative_oracle_calls: t.cumulative_oracle_calls,
        }
    }
}

pub fn traces_to_csv(traces: &[StepTrace]) -> Result<String> {
    let mut out = Vec::new();
    write_rows(&mut out, traces.iter().map(TraceRow::from))?;
    String::from_utf8(out).map_err(|e| Error::Serialization(e.to_string()))
}

pub(crate) fn write_rows<W: Write, T: Serialize>(
    sink: W,
    rows: impl IntoIterator<Item = T>,
) -> Result<()> {
    let mut writer = csv::Writer::from_writer(sink);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

/// Reads a trace table written by [`traces_to_csv`].
pub fn parse_trace_csv(text: &str) -> Result<Vec<TraceRow>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    let expected = [
        "step_index",
        "op_kind",
        "emulated_index",
        "angle",
        "success_prob",
        "cumulative_oracle_calls",
    ];
    if headers.iter().ne(expected) {
        return Err(Error::Serialization(format!(
            "unexpected trace header {:?}",
            headers.iter().collect::<Vec<_>>()
        )));
    }
    reader
        .deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_traces() -> Vec<StepTrace> {
        vec![
            StepTrace {
                step_index: 0,
                op_kind: OpKind::Prepare,
                emulated_index: Some(0),
                angle: 0.0625,
                success_prob: 1.0 / 256.0,
                cumulative_oracle_calls: 0,
                max_imag: 0.0,
            },
            StepTrace {
                step_index: 1,
                op_kind: OpKind::Reflect,
                emulated_index: None,
                angle: -0.1 / 3.0,
                success_prob: 0.123_456_789_012_345_67,
                cumulative_oracle_calls: 1,
                max_imag: 0.0,
            },
        ]
    }

    #[test]
    fn csv_layout() {
        let text = traces_to_csv(&sample_traces()).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "step_index,op_kind,emulated_index,angle,success_prob,cumulative_oracle_calls"
        );
        assert_eq!(lines.next().unwrap(), "0,prepare,0,0.0625,0.00390625,0");
        assert!(lines.next().unwrap().starts_with("1,reflect,,"));
    }

    #[test]
    fn csv_parses_back_exactly() {
        let traces = sample_traces();
        let rows = parse_trace_csv(&traces_to_csv(&traces).unwrap()).unwrap();
        let expected: Vec<TraceRow> = traces.iter().map(TraceRow::from).collect();
        assert_eq!(rows, expected);
    }

    #[test]
    fn csv_rejects_foreign_tables() {
        assert!(parse_trace_csv("a,b\n1,2\n").is_err());
        assert!(parse_trace_csv(
            "step_index,op_kind,emulated_index,angle,success_prob,cumulative_oracle_calls\n0,measure,0,0,0,0\n"
        )
        .is_err());
    }

    #[test]
    fn json_rejects_garbage() {
        assert!(matches!(
            RunReport::from_json("{\"config\": 3}"),
            Err(Error::Serialization(_))
        ));
    }
}
