//! User surface: run configuration, field snapshots, trajectory output and
//! the verification suite.

pub mod checks;
pub mod config;
pub mod snapshot;
pub mod suite;

use std::fs;
use std::path::Path;

pub use config::{RunConfig, SuiteSelection, CONFIG_KEYS};
pub use snapshot::{read_snapshot, write_snapshot, FieldSnapshot};
pub use suite::{catalogue, find_check, run_check, run_suite, Check, CheckOutcome, Measurement, SuiteReport};

use crate::dynamics::TrajectoryRecord;
use crate::error::Result;

pub fn load_config(path: &Path) -> Result<RunConfig> {
    RunConfig::load(path)
}

/// Writes a trajectory as CSV, creating parent directories.
pub fn write_csv(path: &Path, record: &TrajectoryRecord) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, record.to_csv())?;
    Ok(())
}
