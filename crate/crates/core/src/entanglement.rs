// Copyright 2026 The cpb Authors
// SPDX-License-Identifier: Apache-2.0

//! Concurrence, purity and distance to the MEMS template.

use num_complex::Complex64;

use crate::dynamics::{mems_template, DensityMatrix};
use crate::error::{Error, Result};
use crate::spectral::{eig_hermitian, ComplexMatrix4, HermitianMatrix4, PsdSpectrum, DIM};
use crate::tolerance::TOL;

/// `σ_y ⊗ σ_y` in the basis `|00⟩, |01⟩, |10⟩, |11⟩` (real).
pub const SIGMA_YY: [[f64; DIM]; DIM] = [
    [0.0, 0.0, 0.0, -1.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0],
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementRecord {
    pub concurrence: f64,
    pub purity: f64,
    /// `|⟨00|ρ|11⟩|`.
    pub zeta: f64,
    pub mems_deviation: f64,
}

/// Spin-flipped state `(σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`.
pub fn spin_flip(rho: &DensityMatrix) -> ComplexMatrix4 {
    let yy = ComplexMatrix4::from_real(SIGMA_YY);
    yy * rho.as_matrix().conj() * yy
}

/// Wootters concurrence `max(0, λ1 - λ2 - λ3 - λ4)`.
///
/// The `λ_i` are the square roots of the eigenvalues of `√ρ ρ̃ √ρ`, which is
/// Hermitian and shares its spectrum with `ρ ρ̃`. The product is formed in
/// the eigenbasis of `ρ`, where it reads `τ τ†` with
/// `τ = √D (V† (σ_y⊗σ_y) V*) √D`; rows and columns of clamped zero
/// eigenvalues are then exactly zero, so pure states carry no roundoff
/// floor into the square roots.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    let psd = PsdSpectrum::new(&rho.to_hermitian())?;
    let v = psd.spectrum.eigenvectors;
    let sqrt_d = psd.sqrt_eigenvalues();
    let yy = ComplexMatrix4::from_real(SIGMA_YY);
    let a = v.adjoint() * yy * v.conj();
    let tau = ComplexMatrix4::from_fn(|i, j| a[(i, j)] * (sqrt_d[i] * sqrt_d[j]));
    let m = HermitianMatrix4::new_unchecked((tau * tau.adjoint()).hermitian_part());

    let spec = eig_hermitian(&m)?;
    let mut lambdas = [0.0; DIM];
    for (l, &mu) in lambdas.iter_mut().zip(spec.eigenvalues.iter()) {
        if mu < -TOL.psd_clamp {
            return Err(Error::NotPsd { min_eigenvalue: mu });
        }
        *l = mu.max(0.0).sqrt();
    }
    // Ascending from the eigensolver; λ1 is the last.
    let c = lambdas[3] - lambdas[2] - lambdas[1] - lambdas[0];
    Ok(c.clamp(0.0, 1.0))
}

/// `Tr ρ²`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    let m = rho.as_matrix();
    let tr = (*m * *m).trace();
    debug_assert!(tr.im.abs() < 1e-12);
    tr.re
}

/// `(ζ, deviation)` where `ζ = |⟨00|ρ|11⟩|` and `deviation` is the Frobenius
/// distance from `ρ` to the MEMS template carrying the same `⟨00|ρ|11⟩`.
pub fn mems_measure(rho: &DensityMatrix) -> (f64, f64) {
    let c: Complex64 = rho[(0, 3)];
    let deviation = rho.as_matrix().frobenius_distance(&mems_template(c));
    (c.norm(), deviation)
}

pub fn entanglement_record(rho: &DensityMatrix) -> Result<EntanglementRecord> {
    let (zeta, mems_deviation) = mems_measure(rho);
    Ok(EntanglementRecord {
        concurrence: concurrence(rho)?,
        purity: purity(rho),
        zeta,
        mems_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell() -> DensityMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        DensityMatrix::pure(&[
            Complex64::new(s, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(s, 0.0),
        ])
        .unwrap()
    }

    #[test]
    fn sigma_yy_is_kron_of_pauli_y() {
        let sy = [
            [Complex64::new(0.0, 0.0), Complex64::new(0.0, -1.0)],
            [Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)],
        ];
        for i in 0..DIM {
            for j in 0..DIM {
                let k = sy[i >> 1][j >> 1] * sy[i & 1][j & 1];
                assert_eq!(k, Complex64::new(SIGMA_YY[i][j], 0.0), "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn bell_state_is_maximally_entangled() {
        assert!((concurrence(&bell()).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn product_state_has_zero_concurrence() {
        assert_eq!(concurrence(&DensityMatrix::basis_state(0)).unwrap(), 0.0);
    }

    #[test]
    fn mems_state_concurrence_is_twice_zeta() {
        let c = concurrence(&DensityMatrix::mems(0.13).unwrap()).unwrap();
        assert!((c - 0.26).abs() < 1e-10);
    }

    #[test]
    fn werner_half() {
        let c = concurrence(&DensityMatrix::werner(0.5).unwrap()).unwrap();
        assert!((c - 0.25).abs() < 1e-9);
    }

    #[test]
    fn purity_examples() {
        assert!((purity(&bell()) - 1.0).abs() < 1e-15);
        assert_eq!(purity(&DensityMatrix::maximally_mixed()), 0.25);
        let p = purity(&DensityMatrix::mems(0.13).unwrap());
        assert!((p - 0.5338).abs() < 1e-12);
    }

    #[test]
    fn mems_measure_examples() {
        let (z, d) = mems_measure(&DensityMatrix::mems(0.19).unwrap());
        assert_eq!((z, d), (0.19, 0.0));

        let (z, d) = mems_measure(&DensityMatrix::basis_state(0));
        assert_eq!(z, 0.0);
        assert!((d - 0.5f64.sqrt()).abs() < 1e-15);

        let (z, d) = mems_measure(&DensityMatrix::maximally_mixed());
        assert_eq!(z, 0.0);
        assert!((d - 0.5).abs() < 1e-15);
    }

    #[test]
    fn mems_measure_keeps_coherence_phase() {
        let rho = DensityMatrix::mems_with_coherence(Complex64::from_polar(0.2, 1.1)).unwrap();
        let (z, d) = mems_measure(&rho);
        assert!((z - 0.2).abs() < 1e-15);
        assert_eq!(d, 0.0);
    }

    #[test]
    fn non_psd_input_is_an_error() {
        // Bypass validation to feed an indefinite matrix.
        let m = ComplexMatrix4::from_real_diagonal([0.7, 0.5, -0.2, 0.0]);
        let rho = DensityMatrix::from_evolved(m);
        assert!(matches!(concurrence(&rho), Err(Error::NotPsd { .. })));
    }
}
