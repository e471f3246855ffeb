// Copyright 2026 The cpb Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors produced by the simulator core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("degenerate capacitance matrix: csum1*csum2 - cm^2 = {determinant} (must be > 0)")]
    DegenerateCapacitance { determinant: f64 },

    #[error("matrix is not Hermitian: max |a_ij - conj(a_ji)| = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue:e}")]
    NotPsd { min_eigenvalue: f64 },

    #[error("matrix has a non-finite entry")]
    NonFinite,

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("negative evolution time {0}")]
    NegativeTime(f64),

    #[error("integration step too large: dt*|H| = {product} exceeds {limit}")]
    StepTooLarge { product: f64, limit: f64 },

    #[error(
        "Kraus series truncated at m_max = {m_max}: Poisson tail bound {tail:e} exceeds {limit:e}"
    )]
    KrausTruncation { m_max: usize, tail: f64, limit: f64 },

    #[error("MEMS time prediction is degenerate (E_J1 * E_J2 = 0)")]
    DegeneratePrediction,

    #[error("invalid sweep axis `{0}` (expected one of ej1, ej2, em, gamma)")]
    InvalidAxis(String),

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
