// Copyright 2026 The cpb Authors
// SPDX-License-Identifier: Apache-2.0

//! Circuit parameters and the four-level charge-basis Hamiltonian of two
//! capacitively coupled Cooper pair boxes.
//!
//! Basis order is `|00⟩, |01⟩, |10⟩, |11⟩` with `|n1 n2⟩` the excess Cooper
//! pair numbers of box 1 and box 2. Energies are in μeV and ħ = 1. Times are
//! reported as the dimensionless `λt` where `λ = time_scale`; the Hamiltonian
//! handed to the evolution engines is `H / λ`.

use crate::error::{Error, Result};
use crate::spectral::HermitianMatrix4;

pub const BASIS_LABELS: [&str; 4] = ["00", "01", "10", "11"];

/// Index of `|n1 n2⟩` in the fixed basis order.
pub fn basis_index(n1: u8, n2: u8) -> usize {
    debug_assert!(n1 <= 1 && n2 <= 1);
    2 * n1 as usize + n2 as usize
}

/// `(n1, n2)` occupation of basis state `index`.
pub fn basis_occupation(index: usize) -> (u8, u8) {
    debug_assert!(index < 4);
    ((index >> 1) as u8, (index & 1) as u8)
}

/// Physical knobs of the two-qubit circuit.
///
/// `gamma` is the decoherence rate in the scaled master equation
/// `dρ/d(λt) = -i[h, ρ] - (γ/2)[h, [h, ρ]]` with `h = H/λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircuitParams {
    pub ej1: f64,
    pub ej2: f64,
    pub em: f64,
    pub ec1: f64,
    pub ec2: f64,
    pub ng1: f64,
    pub ng2: f64,
    pub gamma: f64,
    pub time_scale: f64,
}

impl Default for CircuitParams {
    /// Equal junctions with weak coupling
    /// (`E_J1 = E_J2 = 30`, `E_m = 6`), `E_c = 100` μeV, `n_g = 0.5`, no
    /// decoherence, `λ = 1` μeV.
    fn default() -> Self {
        Self {
            ej1: 30.0,
            ej2: 30.0,
            em: 6.0,
            ec1: 100.0,
            ec2: 100.0,
            ng1: 0.5,
            ng2: 0.5,
            gamma: 0.0,
            time_scale: 1.0,
        }
    }
}

fn check(name: &'static str, value: f64, ok: bool, reason: &str) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::InvalidParameter {
            name,
            reason: format!("{value} is not finite"),
        });
    }
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: format!("{value} {reason}"),
        })
    }
}

impl CircuitParams {
    /// Josephson/coupling energies with the remaining fields at their defaults.
    pub fn with_energies(ej1: f64, ej2: f64, em: f64) -> Self {
        Self {
            ej1,
            ej2,
            em,
            ..Self::default()
        }
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check("ej1", self.ej1, self.ej1 >= 0.0, "must be >= 0")?;
        check("ej2", self.ej2, self.ej2 >= 0.0, "must be >= 0")?;
        check("em", self.em, self.em >= 0.0, "must be >= 0")?;
        check("ec1", self.ec1, self.ec1 > 0.0, "must be > 0")?;
        check("ec2", self.ec2, self.ec2 > 0.0, "must be > 0")?;
        check(
            "ng1",
            self.ng1,
            (0.0..=1.0).contains(&self.ng1),
            "must lie in [0, 1]",
        )?;
        check(
            "ng2",
            self.ng2,
            (0.0..=1.0).contains(&self.ng2),
            "must lie in [0, 1]",
        )?;
        check("gamma", self.gamma, self.gamma >= 0.0, "must be >= 0")?;
        check(
            "time_scale",
            self.time_scale,
            self.time_scale > 0.0,
            "must be > 0",
        )?;
        Ok(())
    }

    /// `H / λ`, the generator used by the evolution engines.
    pub fn scaled_hamiltonian(&self) -> HermitianMatrix4 {
        build_hamiltonian(self).scaled(1.0 / self.time_scale)
    }
}

/// Box and coupling capacitances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Capacitances {
    /// Total capacitance of box 1, including `cm`.
    pub csum1: f64,
    pub csum2: f64,
    pub cm: f64,
    /// The `4e²` prefactor expressed in the chosen energy·capacitance units.
    pub charge_unit: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargingEnergies {
    pub ec1: f64,
    pub ec2: f64,
    pub em: f64,
}

/// Charging and coupling energies from the capacitance network.
pub fn energies_from_capacitances(c: &Capacitances) -> Result<ChargingEnergies> {
    check("csum1", c.csum1, c.csum1 > 0.0, "must be > 0")?;
    check("csum2", c.csum2, c.csum2 > 0.0, "must be > 0")?;
    check("cm", c.cm, c.cm >= 0.0, "must be >= 0")?;
    check(
        "charge_unit",
        c.charge_unit,
        c.charge_unit > 0.0,
        "must be > 0",
    )?;
    let determinant = c.csum1 * c.csum2 - c.cm * c.cm;
    if determinant <= 0.0 {
        return Err(Error::DegenerateCapacitance { determinant });
    }
    let q = c.charge_unit;
    Ok(ChargingEnergies {
        ec1: q * c.csum2 / (2.0 * determinant),
        ec2: q * c.csum1 / (2.0 * determinant),
        em: q * c.cm / determinant,
    })
}

/// Electrostatic energy of `|n1 n2⟩`:
/// `E_c1 (n_g1 - n1)² + E_c2 (n_g2 - n2)² + E_m (n_g1 - n1)(n_g2 - n2)`.
pub fn charging_offset(p: &CircuitParams, n1: u8, n2: u8) -> f64 {
    let d1 = p.ng1 - f64::from(n1);
    let d2 = p.ng2 - f64::from(n2);
    p.ec1 * d1 * d1 + p.ec2 * d2 * d2 + p.em * d1 * d2
}

/// Four-level Hamiltonian in μeV.
///
/// Diagonal: charging offsets. States differing only in `n1` are coupled by
/// `-E_J1/2`, states differing only in `n2` by `-E_J2/2`. There is no
/// double-flip element.
pub fn build_hamiltonian(p: &CircuitParams) -> HermitianMatrix4 {
    let mut h = [[0.0; 4]; 4];
    for (i, row) in h.iter_mut().enumerate() {
        let (n1, n2) = basis_occupation(i);
        row[i] = charging_offset(p, n1, n2);
    }
    let flip1 = -p.ej1 / 2.0;
    let flip2 = -p.ej2 / 2.0;
    h[basis_index(0, 0)][basis_index(1, 0)] = flip1;
    h[basis_index(0, 1)][basis_index(1, 1)] = flip1;
    h[basis_index(0, 0)][basis_index(0, 1)] = flip2;
    h[basis_index(1, 0)][basis_index(1, 1)] = flip2;
    HermitianMatrix4::from_real_symmetric(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn caps(csum1: f64, csum2: f64, cm: f64) -> Capacitances {
        Capacitances {
            csum1,
            csum2,
            cm,
            charge_unit: 1.0,
        }
    }

    #[test]
    fn uncoupled_capacitances() {
        let e = energies_from_capacitances(&caps(1.0, 1.0, 0.0)).unwrap();
        assert_eq!((e.ec1, e.ec2, e.em), (0.5, 0.5, 0.0));
    }

    #[test]
    fn coupled_capacitances() {
        let e = energies_from_capacitances(&caps(2.0, 2.0, 1.0)).unwrap();
        for x in [e.ec1, e.ec2, e.em] {
            assert!((x - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn degenerate_capacitances() {
        assert!(matches!(
            energies_from_capacitances(&caps(1.0, 1.0, 1.0)),
            Err(Error::DegenerateCapacitance { .. })
        ));
    }

    #[test]
    fn invalid_capacitance_rejected() {
        assert!(matches!(
            energies_from_capacitances(&caps(0.0, 1.0, 0.0)),
            Err(Error::InvalidParameter { name: "csum1", .. })
        ));
    }

    #[test]
    fn charging_offset_examples() {
        let p = CircuitParams {
            ng1: 0.0,
            ng2: 0.0,
            ..CircuitParams::default()
        };
        assert_eq!(charging_offset(&p, 0, 0), 0.0);

        let p = CircuitParams {
            ec1: 0.0,
            ec2: 0.0,
            em: 4.0,
            ..CircuitParams::default()
        };
        assert_eq!(charging_offset(&p, 0, 0), 1.0);
        assert_eq!(charging_offset(&p, 0, 1), -1.0);
    }

    #[test]
    fn hamiltonian_diagonal_without_tunnelling() {
        let p = CircuitParams {
            ej1: 0.0,
            ej2: 0.0,
            ec1: 0.0,
            ec2: 0.0,
            em: 4.0,
            ..CircuitParams::default()
        };
        let h = build_hamiltonian(&p);
        assert_eq!(
            *h.as_matrix(),
            crate::spectral::ComplexMatrix4::from_real_diagonal([1.0, -1.0, -1.0, 1.0])
        );
    }

    #[test]
    fn hamiltonian_tunnelling_entries() {
        let p = CircuitParams::with_energies(30.0, 5.0, 6.0);
        let h = build_hamiltonian(&p);
        let re = |i, j| h[(i, j)];
        assert_eq!(re(0, 2), Complex64::new(-15.0, 0.0));
        assert_eq!(re(1, 3), Complex64::new(-15.0, 0.0));
        assert_eq!(re(0, 1), Complex64::new(-2.5, 0.0));
        assert_eq!(re(2, 3), Complex64::new(-2.5, 0.0));
        assert_eq!(re(0, 3), Complex64::new(0.0, 0.0));
        assert_eq!(re(1, 2), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn validation_names_offending_field() {
        let p = CircuitParams {
            ng2: 1.5,
            ..CircuitParams::default()
        };
        assert!(matches!(
            p.validate(),
            Err(Error::InvalidParameter { name: "ng2", .. })
        ));
        let p = CircuitParams {
            time_scale: 0.0,
            ..CircuitParams::default()
        };
        assert!(p.validate().is_err());
        assert!(CircuitParams::default().validate().is_ok());
    }

    fn params() -> impl Strategy<Value = CircuitParams> {
        (
            0.0..100.0f64,
            0.0..100.0f64,
            0.0..300.0f64,
            1.0..200.0f64,
            1.0..200.0f64,
            0.0..=1.0f64,
            0.0..=1.0f64,
        )
            .prop_map(|(ej1, ej2, em, ec1, ec2, ng1, ng2)| CircuitParams {
                ej1,
                ej2,
                em,
                ec1,
                ec2,
                ng1,
                ng2,
                ..CircuitParams::default()
            })
    }

    proptest! {
        #[test]
        fn hamiltonian_is_exactly_hermitian(p in params()) {
            let h = build_hamiltonian(&p);
            prop_assert_eq!(h.as_matrix().adjoint(), *h.as_matrix());
        }

        #[test]
        fn degeneracy_point_diagonal(ec1 in 1.0..200.0f64, ec2 in 1.0..200.0f64, em in 0.0..300.0f64) {
            let p = CircuitParams { ec1, ec2, em, ..CircuitParams::default() };
            let d = build_hamiltonian(&p).real_diagonal();
            let c = (ec1 + ec2) / 4.0;
            let signs = [1.0, -1.0, -1.0, 1.0];
            for k in 0..4 {
                prop_assert!((d[k] - (c + em / 4.0 * signs[k])).abs() <= 1e-12 * (1.0 + c + em));
            }
        }

        #[test]
        fn coupling_energy_increases_with_cm(
            csum1 in 1.0..10.0f64, csum2 in 1.0..10.0f64, f1 in 0.0..0.9f64, f2 in 0.0..0.9f64,
        ) {
            let limit = (csum1 * csum2).sqrt();
            let (lo, hi) = if f1 < f2 { (f1, f2) } else { (f2, f1) };
            prop_assume!(hi - lo > 1e-6);
            let a = energies_from_capacitances(&caps(csum1, csum2, lo * limit)).unwrap();
            let b = energies_from_capacitances(&caps(csum1, csum2, hi * limit)).unwrap();
            prop_assert!(b.em > a.em);
        }

        #[test]
        fn charging_offset_label_swap(p in params(), n1 in 0u8..2, n2 in 0u8..2) {
            let swapped = CircuitParams {
                ej1: p.ej2, ej2: p.ej1, ec1: p.ec2, ec2: p.ec1, ng1: p.ng2, ng2: p.ng1, ..p
            };
            let a = charging_offset(&p, n1, n2);
            let b = charging_offset(&swapped, n2, n1);
            prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
        }
    }
}
