// Copyright 2026 The cpb Authors
// SPDX-License-Identifier: Apache-2.0

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance::TOL;

pub const DIM: usize = 4;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense 4×4 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix4 {
    entries: [[Complex64; DIM]; DIM],
}

impl Default for ComplexMatrix4 {
    fn default() -> Self {
        Self::zeros()
    }
}

impl ComplexMatrix4 {
    pub const fn from_array(entries: [[Complex64; DIM]; DIM]) -> Self {
        Self { entries }
    }

    pub fn from_real(entries: [[f64; DIM]; DIM]) -> Self {
        let mut m = Self::zeros();
        for (i, row) in entries.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m.entries[i][j] = Complex64::new(x, 0.0);
            }
        }
        m
    }

    pub const fn zeros() -> Self {
        Self {
            entries: [[ZERO; DIM]; DIM],
        }
    }

    pub fn identity() -> Self {
        Self::from_diagonal([ONE; DIM])
    }

    pub fn from_diagonal(diag: [Complex64; DIM]) -> Self {
        let mut m = Self::zeros();
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i][i] = d;
        }
        m
    }

    pub fn from_real_diagonal(diag: [f64; DIM]) -> Self {
        Self::from_diagonal(diag.map(|x| Complex64::new(x, 0.0)))
    }

    /// `|v⟩⟨w|`.
    pub fn outer(v: &[Complex64; DIM], w: &[Complex64; DIM]) -> Self {
        Self::from_fn(|i, j| v[i] * w[j].conj())
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros();
        for i in 0..DIM {
            for j in 0..DIM {
                m.entries[i][j] = f(i, j);
            }
        }
        m
    }

    pub fn entries(&self) -> &[[Complex64; DIM]; DIM] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> [Complex64; DIM] {
        std::array::from_fn(|i| self.entries[i][j])
    }

    pub fn diagonal(&self) -> [Complex64; DIM] {
        std::array::from_fn(|i| self.entries[i][i])
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_fn(|i, j| self.entries[i][j] * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self::from_fn(|i, j| self.entries[i][j] * s)
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.entries[j][i].conj())
    }

    /// Entrywise complex conjugate (in the fixed computational basis).
    pub fn conj(&self) -> Self {
        Self::from_fn(|i, j| self.entries[i][j].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..DIM).map(|i| self.entries[i][i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        (*self - *other).frobenius_norm()
    }

    /// Largest `|a_ij - conj(a_ji)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..DIM {
            for j in i..DIM {
                worst = worst.max((self.entries[i][j] - self.entries[j][i].conj()).norm());
            }
        }
        worst
    }

    /// `(A + A†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(|i, j| (self.entries[i][j] + self.entries[j][i].conj()) * 0.5)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn is_finite(&self) -> bool {
        self.entries
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `U† A U`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        u.adjoint() * *self * *u
    }

    /// `U A U†`.
    pub fn rotate_back(&self, u: &Self) -> Self {
        *u * *self * u.adjoint()
    }
}

impl Index<(usize, usize)> for ComplexMatrix4 {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i][j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i][j]
    }
}

impl Add for ComplexMatrix4 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.entries[i][j] + rhs.entries[i][j])
    }
}

impl Sub for ComplexMatrix4 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.entries[i][j] - rhs.entries[i][j])
    }
}

impl Neg for ComplexMatrix4 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_fn(|i, j| -self.entries[i][j])
    }
}

impl Mul for ComplexMatrix4 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..DIM {
            for k in 0..DIM {
                let a = self.entries[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..DIM {
                    out.entries[i][j] += a * rhs.entries[k][j];
                }
            }
        }
        out
    }
}

impl Mul<[Complex64; DIM]> for ComplexMatrix4 {
    type Output = [Complex64; DIM];
    fn mul(self, v: [Complex64; DIM]) -> [Complex64; DIM] {
        std::array::from_fn(|i| (0..DIM).map(|k| self.entries[i][k] * v[k]).sum())
    }
}

/// A 4×4 Hermitian matrix.
///
/// Construction symmetrizes the input, so `a_ij == conj(a_ji)` holds
/// bit-exactly afterwards. Inputs whose asymmetry exceeds
/// [`Tolerances::hermitian_reject`](crate::tolerance::Tolerances) are rejected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianMatrix4(ComplexMatrix4);

impl HermitianMatrix4 {
    pub fn new(m: ComplexMatrix4) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let deviation = m.hermiticity_defect();
        if deviation > TOL.hermitian_reject {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self(m.hermitian_part()))
    }

    /// Real symmetric input; only the upper triangle is read.
    pub fn from_real_symmetric(upper: [[f64; DIM]; DIM]) -> Self {
        let mut m = ComplexMatrix4::zeros();
        for i in 0..DIM {
            for j in i..DIM {
                m[(i, j)] = Complex64::new(upper[i][j], 0.0);
                m[(j, i)] = m[(i, j)];
            }
        }
        Self(m)
    }

    pub fn from_real_diagonal(diag: [f64; DIM]) -> Self {
        Self(ComplexMatrix4::from_real_diagonal(diag))
    }

    pub fn identity() -> Self {
        Self(ComplexMatrix4::identity())
    }

    /// Wraps a matrix already known to be exactly Hermitian.
    pub(crate) fn new_unchecked(m: ComplexMatrix4) -> Self {
        debug_assert!(m.hermiticity_defect() <= 1e-9);
        Self(m)
    }

    pub fn as_matrix(&self) -> &ComplexMatrix4 {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix4 {
        self.0
    }

    /// `H + c·I`.
    pub fn shifted(&self, c: f64) -> Self {
        let mut m = self.0;
        for i in 0..DIM {
            m[(i, i)] += c;
        }
        Self(m)
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self(self.0.scale_real(s))
    }

    /// Real diagonal entries.
    pub fn real_diagonal(&self) -> [f64; DIM] {
        std::array::from_fn(|i| self.0[(i, i)].re)
    }
}

impl Index<(usize, usize)> for HermitianMatrix4 {
    type Output = Complex64;
    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.0[idx]
    }
}

impl TryFrom<ComplexMatrix4> for HermitianMatrix4 {
    type Error = Error;
    fn try_from(m: ComplexMatrix4) -> Result<Self> {
        Self::new(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ComplexMatrix4 {
        ComplexMatrix4::from_fn(|i, j| Complex64::new(i as f64 + 0.5, j as f64 - 1.25))
    }

    #[test]
    fn multiply_by_identity() {
        let a = sample();
        assert_eq!(ComplexMatrix4::identity() * a, a);
        assert_eq!(a * ComplexMatrix4::identity(), a);
    }

    #[test]
    fn trace_of_diagonal() {
        let d = ComplexMatrix4::from_real_diagonal([1.0, 2.0, 3.0, 4.0]);
        assert_eq!(d.trace(), Complex64::new(10.0, 0.0));
    }

    #[test]
    fn adjoint_is_involution() {
        let a = sample();
        assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn add_scale_and_distance() {
        let a = sample();
        let b = a + a;
        assert_eq!(b, a.scale_real(2.0));
        assert!((b.frobenius_distance(&a) - a.frobenius_norm()).abs() < 1e-14);
        assert_eq!((b - a), a);
    }

    #[test]
    fn trace_of_hermitian_is_real() {
        let h = HermitianMatrix4::new(sample().hermitian_part()).unwrap();
        assert!(h.as_matrix().trace().im.abs() <= 1e-12);
    }

    #[test]
    fn hermitian_constructor_rejects_asymmetry() {
        let mut m = ComplexMatrix4::identity();
        m[(0, 1)] = Complex64::new(1e-6, 0.0);
        assert!(matches!(
            HermitianMatrix4::new(m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn hermitian_constructor_symmetrizes_small_noise() {
        let mut m = ComplexMatrix4::identity();
        m[(0, 1)] = Complex64::new(0.5, 0.25);
        m[(1, 0)] = Complex64::new(0.5 + 1e-11, -0.25);
        let h = HermitianMatrix4::new(m).unwrap();
        assert_eq!(h[(0, 1)], h[(1, 0)].conj());
    }

    #[test]
    fn hermitian_constructor_rejects_nan() {
        let mut m = ComplexMatrix4::identity();
        m[(2, 2)] = Complex64::new(f64::NAN, 0.0);
        assert_eq!(HermitianMatrix4::new(m), Err(Error::NonFinite));
    }
}
