// Copyright 2026 The cpb Authors
// SPDX-License-Identifier: Apache-2.0

//! Time evolution under the intrinsic-decoherence master equation
//!
//! ```text
//! dρ/dt = -i[H, ρ] - (γ/2)[H, [H, ρ]]        (ħ = 1)
//! ```
//!
//! by three independent engines:
//!
//! * [`evolve_closed_form`]: exact eigenbasis solution,
//!   `ρ_kl(t) = ρ_kl(0) exp(-i ω_kl t - γ ω_kl² t / 2)`.
//! * [`evolve_kraus`]: the truncated Kraus sum
//!   `Σ_m (γt)^m/m! M_m ρ(0) M_m†` with `M_m = H^m exp(-iHt) exp(-γtH²/2)`.
//! * [`evolve_integrator`]: fixed-step RK4 on the master equation itself.
//!
//! `H` here is always the scaled generator (`H/λ`) and `t` the scaled time.

use num_complex::Complex64;

use crate::circuit::BASIS_LABELS;
use crate::error::{Error, Result};
use crate::spectral::{eig_hermitian, ComplexMatrix4, HermitianMatrix4, Spectrum, DIM};
use crate::tolerance::TOL;

/// Kraus truncation order used when the caller has no better estimate.
pub const DEFAULT_KRAUS_ORDER: usize = 40;

/// Unit-trace positive-semidefinite Hermitian 4×4 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(ComplexMatrix4);

impl DensityMatrix {
    /// Validates Hermiticity and unit trace (1e-10) and PSD (min eigenvalue
    /// ≥ -1e-9). The stored matrix is the Hermitian part of `m`.
    pub fn new(m: ComplexMatrix4) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let defect = m.hermiticity_defect();
        if defect > TOL.density_check {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (defect {defect:e})"
            )));
        }
        let m = m.hermitian_part();
        let tr = m.trace();
        if (tr.re - 1.0).abs() > TOL.density_check || tr.im.abs() > TOL.density_check {
            return Err(Error::InvalidDensityMatrix(format!(
                "trace is {tr}, expected 1"
            )));
        }
        let spec = eig_hermitian(&HermitianMatrix4::new_unchecked(m))?;
        if spec.eigenvalues[0] < TOL.density_min_eigenvalue {
            return Err(Error::InvalidDensityMatrix(format!(
                "smallest eigenvalue {:e} is negative",
                spec.eigenvalues[0]
            )));
        }
        Ok(Self(m))
    }

    /// Result of an evolution engine: Hermitized, not re-validated.
    pub(crate) fn from_evolved(m: ComplexMatrix4) -> Self {
        Self(m.hermitian_part())
    }

    /// `|i⟩⟨i|` for a basis index in `0..4`.
    pub fn basis_state(index: usize) -> Self {
        assert!(index < DIM, "basis index {index} out of range");
        let mut m = ComplexMatrix4::zeros();
        m[(index, index)] = Complex64::new(1.0, 0.0);
        Self(m)
    }

    /// Basis projector from a label `"00" | "01" | "10" | "11"`.
    pub fn from_label(label: &str) -> Option<Self> {
        BASIS_LABELS
            .iter()
            .position(|l| *l == label)
            .map(Self::basis_state)
    }

    /// `|ψ⟩⟨ψ|/⟨ψ|ψ⟩`.
    pub fn pure(psi: &[Complex64; DIM]) -> Result<Self> {
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if !(norm2 > 0.0 && norm2.is_finite()) {
            return Err(Error::InvalidDensityMatrix(
                "zero or non-finite state vector".into(),
            ));
        }
        Ok(Self(
            ComplexMatrix4::outer(psi, psi).scale_real(1.0 / norm2),
        ))
    }

    pub fn maximally_mixed() -> Self {
        Self(ComplexMatrix4::from_real_diagonal([0.25; DIM]))
    }

    /// `½|00⟩⟨00| + ζ(|00⟩⟨11| + |11⟩⟨00|) + ½|11⟩⟨11|` for `ζ ∈ [0, ½]`.
    pub fn mems(zeta: f64) -> Result<Self> {
        Self::mems_with_coherence(Complex64::new(zeta, 0.0))
    }

    /// MEMS template with a complex `⟨00|ρ|11⟩`.
    pub fn mems_with_coherence(c: Complex64) -> Result<Self> {
        if c.norm().is_nan() || c.norm() > 0.5 {
            return Err(Error::InvalidDensityMatrix(format!(
                "|zeta| = {} exceeds 1/2",
                c.norm()
            )));
        }
        Ok(Self(mems_template(c)))
    }

    /// `p|Φ+⟩⟨Φ+| + (1-p) I/4`.
    pub fn werner(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidDensityMatrix(format!(
                "Werner weight {p} outside [0, 1]"
            )));
        }
        let mut m = ComplexMatrix4::from_real_diagonal([(1.0 - p) / 4.0; DIM]);
        m[(0, 0)] += 0.5 * p;
        m[(3, 3)] += 0.5 * p;
        m[(0, 3)] += 0.5 * p;
        m[(3, 0)] += 0.5 * p;
        Ok(Self(m))
    }

    pub fn as_matrix(&self) -> &ComplexMatrix4 {
        &self.0
    }

    pub fn to_hermitian(&self) -> HermitianMatrix4 {
        HermitianMatrix4::new_unchecked(self.0)
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        self.0.frobenius_distance(&other.0)
    }

    /// `U ρ U†`.
    pub fn transformed(&self, u: &ComplexMatrix4) -> Self {
        Self::from_evolved(self.0.rotate_back(u))
    }
}

impl std::ops::Index<(usize, usize)> for DensityMatrix {
    type Output = Complex64;
    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.0[idx]
    }
}

pub(crate) fn mems_template(c: Complex64) -> ComplexMatrix4 {
    let mut m = ComplexMatrix4::zeros();
    m[(0, 0)] = Complex64::new(0.5, 0.0);
    m[(3, 3)] = Complex64::new(0.5, 0.0);
    m[(0, 3)] = c;
    m[(3, 0)] = c.conj();
    m
}

/// Diagonal of `ρ` in basis order; sums to one.
pub fn populations(rho: &DensityMatrix) -> [f64; DIM] {
    let d = rho.0.diagonal();
    debug_assert!(d.iter().all(|z| z.im.abs() < 1e-12));
    d.map(|z| z.re)
}

fn check_time(t: f64) -> Result<()> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    if !t.is_finite() {
        return Err(Error::InvalidParameter {
            name: "t",
            reason: format!("{t} is not finite"),
        });
    }
    Ok(())
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma.is_finite() && gamma >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "gamma",
            reason: format!("{gamma} must be finite and >= 0"),
        })
    }
}

/// Precomputed eigenbasis data for repeated closed-form evaluation.
///
/// Only gaps `E_k - E_l` enter the solution, so the spectrum is taken of the
/// traceless part `H - (Tr H / 4) I`; `energy_offset` holds the removed
/// `Tr H / 4`. Large identity shifts (the charging energies at `n_g = 0.5`)
/// then cost no phase accuracy.
///
/// Immutable; evaluate at any number of times, from any number of threads.
#[derive(Debug, Clone, Copy)]
pub struct EvolutionPlan {
    pub spectrum: Spectrum,
    pub energy_offset: f64,
    pub rho0: DensityMatrix,
    /// `U† ρ(0) U`.
    pub rho0_eigenbasis: ComplexMatrix4,
    pub gamma: f64,
}

impl EvolutionPlan {
    pub fn new(h: &HermitianMatrix4, rho0: &DensityMatrix, gamma: f64) -> Result<Self> {
        check_gamma(gamma)?;
        let energy_offset = h.as_matrix().trace().re / DIM as f64;
        let spectrum = eig_hermitian(&h.shifted(-energy_offset))?;
        let rho0_eigenbasis = spectrum.to_eigenbasis(rho0.as_matrix()).hermitian_part();
        Ok(Self {
            spectrum,
            energy_offset,
            rho0: *rho0,
            rho0_eigenbasis,
            gamma,
        })
    }

    /// Eigenvalues of `H` itself, ascending.
    pub fn energies(&self) -> [f64; DIM] {
        self.spectrum.eigenvalues.map(|e| e + self.energy_offset)
    }

    /// `ρ(t)` in the eigenbasis of `H`.
    pub fn evolve_eigenbasis(&self, t: f64) -> Result<ComplexMatrix4> {
        check_time(t)?;
        let e = &self.spectrum.eigenvalues;
        let mut out = self.rho0_eigenbasis;
        for k in 0..DIM {
            for l in 0..DIM {
                if k == l {
                    continue;
                }
                let w = e[k] - e[l];
                let factor = Complex64::from_polar((-0.5 * self.gamma * w * w * t).exp(), -w * t);
                out[(k, l)] *= factor;
            }
        }
        Ok(out)
    }

    /// `ρ(t)`; `t = 0` returns the stored initial state bit-exactly.
    pub fn evolve(&self, t: f64) -> Result<DensityMatrix> {
        if t == 0.0 {
            return Ok(self.rho0);
        }
        let eb = self.evolve_eigenbasis(t)?;
        Ok(DensityMatrix::from_evolved(
            self.spectrum.from_eigenbasis(&eb),
        ))
    }

    /// Smallest nonzero gap `|E_k - E_l|`, if any.
    pub fn smallest_gap(&self) -> Option<f64> {
        let e = &self.spectrum.eigenvalues;
        let scale = self.spectrum.spectral_radius().max(1.0);
        let mut best: Option<f64> = None;
        for k in 0..DIM {
            for l in k + 1..DIM {
                let w = (e[k] - e[l]).abs();
                if w > 1e-12 * scale {
                    best = Some(best.map_or(w, |b| b.min(w)));
                }
            }
        }
        best
    }
}

/// Exact solution at time `t` from a precomputed plan.
pub fn evolve_closed_form(plan: &EvolutionPlan, t: f64) -> Result<DensityMatrix> {
    plan.evolve(t)
}

/// `ln(m!)` for `m = 0..=n`.
fn log_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(0.0);
    let mut acc = 0.0;
    for m in 1..=n {
        acc += (m as f64).ln();
        out.push(acc);
    }
    out
}

/// Poisson tail `Σ_{m > m_max} e^{-x} x^m / m!`.
pub fn poisson_tail(x: f64, m_max: usize) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let ln_x = x.ln();
    if (m_max as f64) < x {
        // Head is the smaller side: 1 - CDF.
        let mut term = (-x).exp();
        let mut log_term = -x;
        let mut cdf = 0.0;
        for m in 0..=m_max {
            if m > 0 {
                log_term += ln_x - (m as f64).ln();
                term = log_term.exp();
            }
            cdf += term;
        }
        return (1.0 - cdf).clamp(0.0, 1.0);
    }
    let lf = log_factorials(m_max + 1);
    let mut log_term = (m_max + 1) as f64 * ln_x - lf[m_max + 1] - x;
    let mut m = m_max + 1;
    let mut tail = 0.0;
    loop {
        let term = log_term.exp();
        tail += term;
        if term <= tail * 1e-17 || term == 0.0 {
            break;
        }
        m += 1;
        log_term += ln_x - (m as f64).ln();
    }
    tail.min(1.0)
}

/// Smallest truncation order whose Poisson tail at `x = γ t max_k E_k²` is
/// below `tol`.
pub fn kraus_order_for(h: &HermitianMatrix4, gamma: f64, t: f64, tol: f64) -> Result<usize> {
    let spectrum = eig_hermitian(h)?;
    let r = spectrum.spectral_radius();
    let x = gamma * t * r * r;
    if x <= 0.0 {
        return Ok(0);
    }
    // Start near the mean and walk up; the tail is monotone in m.
    let mut m = x.floor() as usize;
    while poisson_tail(x, m) >= tol {
        m += 1 + (x.sqrt() / 8.0) as usize;
    }
    while m > 0 && poisson_tail(x, m - 1) < tol {
        m -= 1;
    }
    Ok(m)
}

/// Truncated Kraus sum `Σ_{m=0}^{m_max} (γt)^m/m! M_m ρ(0) M_m†`.
///
/// `M_m` is diagonal in the eigenbasis of `H`. Each weighted factor
/// `sqrt((γt)^m/m!) E_k^m e^{-γtE_k²/2}` is evaluated in log space, so
/// orders far beyond `γtE²` neither overflow nor lose the diagonal terms.
/// Fails with [`Error::KrausTruncation`] when the Poisson tail bound at
/// `x = γ t max_k E_k²` is not below `1e-12`.
pub fn evolve_kraus(
    h: &HermitianMatrix4,
    rho0: &DensityMatrix,
    gamma: f64,
    t: f64,
    m_max: usize,
) -> Result<DensityMatrix> {
    check_time(t)?;
    check_gamma(gamma)?;
    let spectrum = eig_hermitian(h)?;
    let e = spectrum.eigenvalues;
    let r = spectrum.spectral_radius();
    let gt = gamma * t;
    let tail = poisson_tail(gt * r * r, m_max);
    if tail >= TOL.kraus_tail {
        return Err(Error::KrausTruncation {
            m_max,
            tail,
            limit: TOL.kraus_tail,
        });
    }

    let rho_eb = spectrum.to_eigenbasis(rho0.as_matrix());
    let phases = e.map(|ek| Complex64::from_polar(1.0, -ek * t));
    let lf = log_factorials(m_max);
    let ln_gt = gt.ln();

    let mut acc = ComplexMatrix4::zeros();
    for (m, &ln_fact) in lf.iter().enumerate() {
        let d: [Complex64; DIM] = std::array::from_fn(|k| {
            let ek = e[k];
            let decay = -0.5 * gt * ek * ek;
            let magnitude = if m == 0 {
                decay.exp()
            } else if gt == 0.0 || ek == 0.0 {
                0.0
            } else {
                let mf = m as f64;
                (0.5 * (mf * ln_gt - ln_fact) + mf * ek.abs().ln() + decay).exp()
            };
            let sign = if ek < 0.0 && m % 2 == 1 { -1.0 } else { 1.0 };
            phases[k] * (sign * magnitude)
        });
        if m > 0 && d.iter().all(|z| *z == Complex64::new(0.0, 0.0)) {
            continue;
        }
        for k in 0..DIM {
            for l in 0..DIM {
                acc[(k, l)] += d[k] * rho_eb[(k, l)] * d[l].conj();
            }
        }
    }
    Ok(DensityMatrix::from_evolved(spectrum.from_eigenbasis(&acc)))
}

fn master_rhs(h: &ComplexMatrix4, rho: &ComplexMatrix4, gamma: f64) -> ComplexMatrix4 {
    let c = h.commutator(rho);
    let unitary = c.scale(Complex64::new(0.0, -1.0));
    if gamma == 0.0 {
        return unitary;
    }
    unitary - h.commutator(&c).scale_real(0.5 * gamma)
}

/// Fixed-step classical RK4 on the master equation.
///
/// The last step is shortened to land exactly on `t`; `ρ` is re-Hermitized
/// after every step. Requires `dt |H|_F ≤ 0.1`.
pub fn evolve_integrator(
    h: &HermitianMatrix4,
    rho0: &DensityMatrix,
    gamma: f64,
    t: f64,
    dt: f64,
) -> Result<DensityMatrix> {
    check_time(t)?;
    check_gamma(gamma)?;
    if t == 0.0 {
        return Ok(*rho0);
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "dt",
            reason: format!("{dt} must be finite and > 0"),
        });
    }
    if dt > t {
        return Err(Error::InvalidParameter {
            name: "dt",
            reason: format!("step {dt} exceeds the evolution time {t}"),
        });
    }
    let hm = *h.as_matrix();
    let product = dt * hm.frobenius_norm();
    if product > TOL.rk4_step_limit {
        return Err(Error::StepTooLarge {
            product,
            limit: TOL.rk4_step_limit,
        });
    }

    let full_steps = (t / dt).floor() as usize;
    let remainder = t - full_steps as f64 * dt;
    let mut rho = *rho0.as_matrix();
    let step = |rho: &ComplexMatrix4, h_step: f64| -> ComplexMatrix4 {
        let k1 = master_rhs(&hm, rho, gamma);
        let k2 = master_rhs(&hm, &(*rho + k1.scale_real(0.5 * h_step)), gamma);
        let k3 = master_rhs(&hm, &(*rho + k2.scale_real(0.5 * h_step)), gamma);
        let k4 = master_rhs(&hm, &(*rho + k3.scale_real(h_step)), gamma);
        let incr = (k1 + k2.scale_real(2.0) + k3.scale_real(2.0) + k4).scale_real(h_step / 6.0);
        (*rho + incr).hermitian_part()
    };
    for _ in 0..full_steps {
        rho = step(&rho, dt);
    }
    if remainder > 1e-12 * dt {
        rho = step(&rho, remainder);
    }
    Ok(DensityMatrix::from_evolved(rho))
}
