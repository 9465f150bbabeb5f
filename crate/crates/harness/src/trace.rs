//! Per-generation trace files.

use std::io::{Read, Write};

use nsga3_core::GenerationMetrics;
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

pub const TRACE_HEADER: &str =
    "t,beta,covered,coverage_fraction,max_ones,min_ones,distinct_fitness";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub t: u64,
    pub beta: usize,
    pub covered: usize,
    pub coverage_fraction: f64,
    pub max_ones: usize,
    pub min_ones: usize,
    pub distinct_fitness: usize,
}

impl From<&GenerationMetrics> for TraceRow {
    fn from(m: &GenerationMetrics) -> Self {
        Self {
            t: m.t,
            beta: m.beta,
            covered: m.covered,
            coverage_fraction: m.coverage_fraction(),
            max_ones: m.max_ones,
            min_ones: m.min_ones,
            distinct_fitness: m.distinct_fitness,
        }
    }
}

pub fn write_trace<W: Write>(trace: &[GenerationMetrics], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for metrics in trace {
        writer.serialize(TraceRow::from(metrics))?;
    }
    if trace.is_empty() {
        writer.write_record(TRACE_HEADER.split(','))?;
    }
    writer
        .flush()
        .map_err(|e| HarnessError::io("<trace output>", e))
}

pub fn read_trace<R: Read>(input: R) -> Result<Vec<TraceRow>> {
    let rows = csv::Reader::from_reader(input)
        .deserialize()
        .collect::<std::result::Result<Vec<TraceRow>, _>>()?;
    if rows.is_empty() {
        return Err(HarnessError::EmptyTable);
    }
    Ok(rows)
}
