// Copyright 2026 The cpb Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end: `simulate`, `sweep`, `mems`, `esd`.
//!
//! Data goes to `--out` or standard output as CSV; diagnostics go to
//! standard error. Output is a pure function of the configuration.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod svg;

pub use args::{Cli, Command};
pub use error::{CliError, Result};

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Simulate(a) => commands::run_simulate(a),
        Command::Sweep(a) => commands::run_sweep(a),
        Command::Mems(a) => commands::run_mems(a),
        Command::Esd(a) => commands::run_esd(a),
    }
}
