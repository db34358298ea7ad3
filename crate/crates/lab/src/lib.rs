//! Command-line front end for `monotone-core`: state files, figure tables
//! and seeded property suites.

pub mod args;
pub mod commands;
pub mod error;
pub mod numfmt;
pub mod statefile;

pub use args::Cli;
pub use commands::run;
pub use error::{LabError, Result};
