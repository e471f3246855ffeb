// Copyright 2026 The cpb Authors
// SPDX-License-Identifier: Apache-2.0

//! Two capacitively coupled Cooper-pair-box charge qubits evolving under
//! intrinsic phase decoherence.
//!
//! * [`circuit`]: parameters and the four-level charge-basis Hamiltonian.
//! * [`spectral`]: 4×4 complex kernel, Jacobi eigensolver, PSD square root.
//! * [`dynamics`]: density matrices and the closed-form, Kraus and RK4 engines.
//! * [`entanglement`]: concurrence, purity, MEMS template distance.
//! * [`analysis`]: time series, MEMS/ESD detection, predictions, sweeps.
//!
//! All values are immutable after construction and all operations are pure.

pub mod analysis;
pub mod circuit;
pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod spectral;
pub mod tolerance;

pub use analysis::{
    concurrence_peaks, detect_esd_intervals, detect_mems_events, predict_mems_times, simulate_plan,
    simulate_series, summarize, sweep, ConcurrencePeak, DetectorSettings, EsdInterval, MemsEvent,
    SeriesRecord, SweepAxis, SweepPoint, SweepSummary, TimeGrid, TimeSeries,
};
pub use circuit::{
    build_hamiltonian, charging_offset, energies_from_capacitances, Capacitances, ChargingEnergies,
    CircuitParams, BASIS_LABELS,
};
pub use dynamics::{
    evolve_closed_form, evolve_integrator, evolve_kraus, kraus_order_for, populations,
    DensityMatrix, EvolutionPlan, DEFAULT_KRAUS_ORDER,
};
pub use entanglement::{concurrence, mems_measure, purity, EntanglementRecord};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use spectral::{eig_hermitian, sqrt_psd, ComplexMatrix4, HermitianMatrix4, Spectrum};
pub use tolerance::{Tolerances, TOL};
