// Copyright 2026 The cpb Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line surface. Every option is optional here; defaults and the
//! config-file layer are applied in [`crate::config`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "cpb",
    version,
    about = "Coupled Cooper-pair-box qubits under intrinsic decoherence"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Time series of populations, ζ, concurrence and purity.
    Simulate(SimulateArgs),
    /// One summary row per value of a swept parameter.
    Sweep(SweepArgs),
    /// Predicted against detected MEMS times.
    Mems(MemsArgs),
    /// Sudden-death intervals of the concurrence.
    Esd(EsdArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// key=value file; flags given on the command line take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    pub ej1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub ej2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub em: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub ec1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub ec2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub ng1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub ng2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// λ; the Hamiltonian is divided by it and times are λt.
    #[arg(long, allow_negative_numbers = true)]
    pub time_scale: Option<f64>,
    /// Basis label (00, 01, 10, 11) or path to a 4×4 matrix file.
    #[arg(long)]
    pub initial_state: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub t_start: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub t_end: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    /// Output CSV path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct DetectorArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub dev_tol: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub zeta_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub zero_tol: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// SVG line chart of the selected columns.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Columns to plot, comma separated (default: all but `t`).
    #[arg(long)]
    pub columns: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub detector: DetectorArgs,
    /// One of ej1, ej2, em, gamma.
    #[arg(long)]
    pub axis: Option<String>,
    /// Comma-separated axis values.
    #[arg(long, allow_hyphen_values = true)]
    pub values: Option<String>,
    /// SVG chart of the concurrence for every value.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Directory for one full series CSV per value.
    #[arg(long)]
    pub series_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct MemsArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub detector: DetectorArgs,
    /// Number of predicted times (default: all up to the grid end).
    #[arg(long)]
    pub n_max: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct EsdArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub detector: DetectorArgs,
    /// SVG chart of the concurrence.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}
