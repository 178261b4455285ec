//! Command-line front-end for `mvt-core`: configuration, orchestration,
//! text/JSON reports and plot CSV.

pub mod args;
pub mod config;
pub mod plot;
pub mod report;
pub mod run;

pub use args::{execute, SCHEMA};
pub use config::{InputError, OutputFormat, RunConfig};
pub use plot::emit_plot_csv;
pub use report::{exit, RunReport};
pub use run::{check, run, run_batch, verify};
