//! Report building and command plumbing behind the `cycloprime` binary.

pub mod report;
pub mod runner;

pub use report::{engine_report, Report};
pub use runner::{run_engine, search, verify, RunMode, VerifyRow};
