// Copyright 2026 The cpb Authors
// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use cpb_core::{CircuitParams, Complex64, ComplexMatrix4, DensityMatrix, HermitianMatrix4};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn complex(rng: &mut TestRng, scale: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

/// Hermitian matrix with entries of magnitude up to `scale`.
pub fn random_hermitian(rng: &mut TestRng, scale: f64) -> HermitianMatrix4 {
    let mut m = ComplexMatrix4::zeros();
    for i in 0..4 {
        m[(i, i)] = Complex64::new(rng.gen_range(-scale..scale), 0.0);
        for j in i + 1..4 {
            let z = complex(rng, scale);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    HermitianMatrix4::new(m).unwrap()
}

/// Full-rank mixed state `A A† / Tr(A A†)`, or a pure state when `pure`.
pub fn random_state(rng: &mut TestRng, pure: bool) -> DensityMatrix {
    if pure {
        let psi: [Complex64; 4] = std::array::from_fn(|_| complex(rng, 1.0));
        return DensityMatrix::pure(&psi).unwrap();
    }
    let a = ComplexMatrix4::from_fn(|_, _| complex(rng, 1.0));
    let m = a * a.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(m.scale_real(1.0 / tr)).unwrap()
}

/// Random 2×2 unitary `e^{iφ} [[a, -b*], [b, a*]]`.
pub fn random_unitary2(rng: &mut TestRng) -> [[Complex64; 2]; 2] {
    let a = complex(rng, 1.0);
    let b = complex(rng, 1.0);
    let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let (a, b) = (a / n, b / n);
    let phase = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
    [
        [a * phase, -b.conj() * phase],
        [b * phase, a.conj() * phase],
    ]
}

pub fn kron2(u: &[[Complex64; 2]; 2], v: &[[Complex64; 2]; 2]) -> ComplexMatrix4 {
    ComplexMatrix4::from_fn(|i, j| u[i >> 1][j >> 1] * v[i & 1][j & 1])
}

/// Reference parameter sets: populations (γ = 0), coupling sweeps at
/// E_J2 = 2 and 5, and the decoherence sweep at E_m = 200.
pub fn reference_parameters() -> Vec<CircuitParams> {
    let mut out = vec![
        CircuitParams::with_energies(30.0, 30.0, 6.0),
        CircuitParams::with_energies(30.0, 5.0, 6.0),
        CircuitParams::with_energies(30.0, 1.0, 60.0),
        CircuitParams::with_energies(30.0, 6.0, 60.0),
    ];
    for ej2 in [2.0, 5.0] {
        for em in [200.0, 60.0, 5.0, 0.0] {
            out.push(CircuitParams::with_energies(30.0, ej2, em));
        }
    }
    for gamma in [0.01, 0.1, 0.8] {
        out.push(CircuitParams::with_energies(30.0, 5.0, 200.0).with_gamma(gamma));
    }
    out
}
