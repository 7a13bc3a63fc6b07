//! Experiment runner for the `weno-dp` solvers: declarative TOML configs, a
//! built-in catalog, CSV fields and convergence tables.

pub mod catalog;
pub mod config;
pub mod error;
pub mod runner;

pub use config::RunConfig;
pub use error::CliError;
pub use runner::{output_root, run, RunSummary, OUTPUT_ENV};
