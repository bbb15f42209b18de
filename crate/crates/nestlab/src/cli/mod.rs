//! Command-line front end: instance documents, deterministic reports, and
//! the command dispatcher. The binary is a thin argument parser over
//! [`run_command`]; everything testable lives here.

mod instance;
mod report;
mod runner;

pub use instance::{parse_instance, Instance};
pub use report::{ClaimVerdict, Report, REPORT_SCHEMA_VERSION};
pub use runner::{
    run_command, run_on_text, verify_report_witnesses, RunOptions, COMMANDS, DEFAULT_SEED,
};
