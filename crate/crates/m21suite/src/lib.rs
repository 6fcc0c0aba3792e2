//! Declarative verification scenarios for Chow ring presentations: loading, running,
//! and reporting.

pub mod error;
pub mod glob;
pub mod report;
pub mod run;
pub mod scenario;

pub use error::LoadError;
pub use report::{CheckResult, Report, Status, Summary};
pub use run::{run_check, run_checks};
pub use scenario::{load_scenario, parse_scenario, Check, CheckKind, Scenario};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
