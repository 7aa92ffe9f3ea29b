//! Catalog ingestion: external formats in, daily state snapshots out.
//!
//! Parsers never abort a file on a bad row; every rejected line or row
//! turns into a [`Diagnostic`] so a corrupt record in a multi-megabyte
//! catalog costs one row, not the run.

mod daily;
mod store;
mod tables;
mod tle;

pub use daily::{build_daily_states, DailyRow, DailyStateTable};
pub use store::SnapshotStore;
pub use tables::{
    parse_conjunctions, parse_satcat, ConjunctionColumns, ConjunctionEvent, SatCatColumns,
    SatCatEntry,
};
pub use tle::{checksum, parse_tle, TleRecord};

use thiserror::Error;

/// Accepted LEO mean-motion band; records outside are kept but flagged.
pub const LEO_MEAN_MOTION_REV_DAY: (f64, f64) = (10.0, 17.0);

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("missing required column '{0}' in header")]
    MissingColumn(String),
    #[error("snapshot store path {0} is not a directory")]
    NotADirectory(String),
    #[error("malformed snapshot file {file}: {reason}")]
    MalformedSnapshot { file: String, reason: String },
}

/// One skipped or suspect input element, tied back to its source location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    /// 1-based line (or row) number in the source stream.
    pub line: usize,
    pub reason: String,
    /// Warnings keep the record; rejections drop it.
    pub rejected: bool,
}

impl Diagnostic {
    pub fn reject(line: usize, reason: impl Into<String>) -> Self {
        Self {
            line,
            reason: reason.into(),
            rejected: true,
        }
    }

    pub fn warn(line: usize, reason: impl Into<String>) -> Self {
        Self {
            line,
            reason: reason.into(),
            rejected: false,
        }
    }
}

/// Parser output: the survivors plus what was dropped and why.
#[derive(Debug, Clone)]
pub struct ParseReport<T> {
    pub items: Vec<T>,
    pub diagnostics: Vec<Diagnostic>,
}

impl<T> Default for ParseReport<T> {
    fn default() -> Self {
        Self {
            items: Vec::new(),
            diagnostics: Vec::new(),
        }
    }
}

impl<T> ParseReport<T> {
    pub fn rejected_count(&self) -> usize {
        self.diagnostics.iter().filter(|d| d.rejected).count()
    }
}
