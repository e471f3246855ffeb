// Copyright 2026 The cpb Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense 4×4 complex linear algebra: matrix kernel, Hermitian
//! eigendecomposition and the positive-semidefinite square root.

mod jacobi;
mod matrix;

use num_complex::Complex64;

pub use jacobi::{eig_hermitian, Spectrum};
pub use matrix::{ComplexMatrix4, HermitianMatrix4, DIM};

use crate::error::{Error, Result};
use crate::tolerance::TOL;

/// Spectrum of a PSD matrix with roundoff eigenvalues zeroed.
#[derive(Debug, Clone, Copy)]
pub struct PsdSpectrum {
    pub spectrum: Spectrum,
    /// Eigenvalues after clamping; nonnegative, ascending.
    pub clamped: [f64; DIM],
}

impl PsdSpectrum {
    pub fn new(m: &HermitianMatrix4) -> Result<Self> {
        let spectrum = eig_hermitian(m)?;
        let min = spectrum.eigenvalues[0];
        if min < -TOL.psd_clamp {
            return Err(Error::NotPsd {
                min_eigenvalue: min,
            });
        }
        let floor = TOL.psd_rank_floor * spectrum.spectral_radius().max(1.0);
        let clamped = spectrum
            .eigenvalues
            .map(|e| if e <= floor { 0.0 } else { e });
        Ok(Self { spectrum, clamped })
    }

    pub fn sqrt_eigenvalues(&self) -> [f64; DIM] {
        self.clamped.map(f64::sqrt)
    }
}

/// Principal square root of a PSD Hermitian matrix.
///
/// Eigenvalues in `[-1e-10, 0)` are clamped to zero; anything more negative
/// is a [`Error::NotPsd`].
pub fn sqrt_psd(m: &HermitianMatrix4) -> Result<HermitianMatrix4> {
    let psd = PsdSpectrum::new(m)?;
    let roots = psd.sqrt_eigenvalues();
    let diag = ComplexMatrix4::from_diagonal(roots.map(|r| Complex64::new(r, 0.0)));
    let r = psd.spectrum.from_eigenbasis(&diag);
    HermitianMatrix4::new(r.hermitian_part())
}
