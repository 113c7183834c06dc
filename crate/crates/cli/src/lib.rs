//! Scenario runner and report model behind the `gpi` binary.

pub mod ops;
pub mod report;
pub mod scenarios;

pub use report::Report;
pub use scenarios::{RunOptions, Scenario};
