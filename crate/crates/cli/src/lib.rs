//! Scenario orchestration for `skyrmelab`: configuration, runs, sweeps,
//! verification suites and all file I/O.

pub mod config;
pub mod error;
pub mod io;
pub mod norms;
pub mod report;
pub mod run;
pub mod sweep;
pub mod verify;

pub use config::{RawConfig, RunConfig};
pub use error::{ConfigIssue, LabError, LabResult};
pub use report::{Criterion, ScenarioReport};
pub use run::{run, RunOutcome};
pub use sweep::{sweep, SweepAxis, SweepReport};
pub use verify::verify;
