//! Command-line driver, serialization and property harness for hocat.

pub mod commands;
pub mod format;
pub mod random;
pub mod report;
pub mod suites;
