//! Command implementations behind the `coulomb-zeros` binary. Each command
//! returns its rendered text so it can be tested without spawning a process.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod render;

pub use commands::{
    cmd_abramowitz_table, cmd_eps, cmd_study_min_n, cmd_zeros, compute_rows, Output,
};
pub use config::{CliError, Format, IndexRange, Method, RealRange, RunConfig};
pub use render::{parse_json_rows, render_rows, Row};
