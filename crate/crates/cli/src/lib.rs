//! Command-line front end: module file formats, reports and the acceptance
//! suite.

pub mod commands;
pub mod format;
pub mod report;
pub mod suite;

pub use commands::{run, Outcome};
