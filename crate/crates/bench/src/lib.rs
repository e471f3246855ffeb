// Copyright 2026 The cpb Authors
// SPDX-License-Identifier: Apache-2.0

//! Shared fixtures for the benchmarks in `benches/`.

use cpb_core::{CircuitParams, DensityMatrix, HermitianMatrix4, TimeGrid};

/// Strong-coupling, moderately damped circuit.
pub fn params() -> CircuitParams {
    CircuitParams::with_energies(30.0, 5.0, 200.0).with_gamma(0.1)
}

pub fn hamiltonian() -> HermitianMatrix4 {
    params().scaled_hamiltonian()
}

pub fn ground() -> DensityMatrix {
    DensityMatrix::basis_state(0)
}

pub fn reference_grid() -> TimeGrid {
    TimeGrid::new(0.0, 20.0, 4001).expect("valid grid")
}
