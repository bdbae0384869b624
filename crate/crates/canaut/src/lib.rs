//! Command-line front end and JSON formats for `canaut-core`.

pub mod batch;
pub mod cli;
pub mod report;

pub use cli::run;
