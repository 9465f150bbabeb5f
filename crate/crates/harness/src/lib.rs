//! Orchestration for m-OMM runtime experiments: single runs, seeded
//! experiment grids, CSV and JSON persistence, scaling fits and SVG plots.

pub mod config;
pub mod error;
pub mod experiment;
pub mod fit;
pub mod plot;
pub mod run;
pub mod trace;

pub use config::{ExperimentConfig, GridBlock, MuSpec, OneOrMany, RunConfig};
pub use error::{HarnessError, Result};
pub use experiment::{
    read_experiment_csv, run_experiment, summarize, ExperimentOptions, ExperimentRow, GroupSummary,
};
pub use fit::{fit_experiment, fit_points, FitModel, ScalingFit};
pub use plot::{beta_trace_svg, coverage_trace_svg, scaling_svg, PlotKind};
pub use run::{run_single, InvariantRecord, RunResult};
pub use trace::{read_trace, write_trace, TraceRow};
