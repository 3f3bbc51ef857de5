//! Problem files, subcommand reports and the acceptance suite behind the
//! `multilog` binary.

pub mod corpus;
pub mod problem;
pub mod report;
pub mod suite;

pub use problem::{Diagnostic, Problem, ProblemFile};
pub use report::{run, Command, Report, RunError, Settings, Target};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const CHECK_FAILED: i32 = 1;
    pub const PARSE_ERROR: i32 = 2;
    pub const ENGINE_ERROR: i32 = 3;
}
