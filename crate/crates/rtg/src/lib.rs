//! Toolkit around [`rtg_core`]: text and JSON file formats for sequences
//! and graphs, reproducible experiments, and the report shapes the `rtg`
//! command-line tool emits.

pub mod experiments;
pub mod format;
pub mod report;
pub mod stats;

pub use experiments::{run_report, ExperimentReport, ExperimentSpec};
pub use format::{
    parse_rtg, parse_rtg_auto, parse_rts, parse_rts_auto, write_rtg, write_rtg_json, write_rts,
    write_rts_json, ParseError,
};
pub use report::{BoundReportJson, PartitionJson, RationalJson};

use thiserror::Error;

/// Toolkit-level errors, wrapping the core error type.
#[derive(Debug, Error)]
pub enum RtgError {
    #[error(transparent)]
    Core(#[from] rtg_core::Error),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown experiment: {0}")]
    UnknownExperiment(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, RtgError>;
