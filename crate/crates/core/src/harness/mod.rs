//! Command-line orchestration: run configuration, check suites, simulation
//! runs, and CSV/JSON outputs.

pub mod checks;
pub mod config;
pub mod report;
pub mod simulate;

pub use checks::{run_check_algebra, run_check_bilinears, run_check_lorentz};
pub use config::{GridConfig, HarnessError, Mode, RunConfig, Tolerances};
pub use report::{CheckItem, Report};
pub use simulate::{run_simulate, CSV_HEADER};
