// Copyright 2026 The cpb Authors
// SPDX-License-Identifier: Apache-2.0

//! Numerical tolerances shared by every module.
//!
//! All thresholds live in [`Tolerances`]; [`TOL`] holds the defaults used by
//! the free functions of this crate.

/// Tolerance record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Hermitian constructor: entries asymmetric above this are rejected.
    pub hermitian_reject: f64,
    /// Density matrix: Hermiticity and unit-trace check.
    pub density_check: f64,
    /// Density matrix: smallest admissible eigenvalue.
    pub density_min_eigenvalue: f64,
    /// Jacobi stop: off-diagonal Frobenius norm relative to `|H|_F`.
    pub jacobi_relative: f64,
    pub jacobi_max_sweeps: usize,
    /// Eigenvalues down to `-psd_clamp` are treated as roundoff and clamped to zero.
    pub psd_clamp: f64,
    /// Eigenvalues with magnitude below `psd_rank_floor * max(1, max|e|)` are
    /// exact zeros for square roots. Without it a pure state carries ~1e-17
    /// spurious eigenvalues whose square roots (~3e-9) leak into concurrence.
    pub psd_rank_floor: f64,
    /// Largest admissible Poisson tail of a truncated Kraus sum.
    pub kraus_tail: f64,
    /// RK4 stability guard on `dt * |H|_F`.
    pub rk4_step_limit: f64,
}

pub const TOL: Tolerances = Tolerances {
    hermitian_reject: 1e-9,
    density_check: 1e-10,
    density_min_eigenvalue: -1e-9,
    jacobi_relative: 1e-13,
    jacobi_max_sweeps: 100,
    psd_clamp: 1e-10,
    psd_rank_floor: 1e-14,
    kraus_tail: 1e-12,
    rk4_step_limit: 0.1,
};

impl Default for Tolerances {
    fn default() -> Self {
        TOL
    }
}
