//! Configuration, suite execution, tables, single evaluations and reports
//! for the command-line driver.

pub mod compute;
pub mod config;
pub mod report;
pub mod suites;
pub mod tables;

pub use compute::evaluate;
pub use config::SuiteConfig;
pub use report::{CheckRecord, Checker, Report, Summary, Verdict, Witness};
pub use suites::{run_suite, suite, Case, Suite, SUITES};
pub use tables::{table, Table, TableKind};
