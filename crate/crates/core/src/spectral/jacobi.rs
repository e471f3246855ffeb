// Copyright 2026 The cpb Authors
// SPDX-License-Identifier: Apache-2.0

//! Cyclic complex Jacobi eigensolver for 4×4 Hermitian matrices.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix4, HermitianMatrix4, DIM};
use crate::error::{Error, Result};
use crate::tolerance::TOL;

/// Eigendecomposition `H = U diag(E) U†`.
///
/// Eigenvalues are ascending; column `k` of `eigenvectors` pairs with
/// `eigenvalues[k]`. Each column is phased so that its largest-magnitude
/// entry (lowest index on ties) is real and positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: [f64; DIM],
    pub eigenvectors: ComplexMatrix4,
}

impl Spectrum {
    /// `U diag(E) U†`.
    pub fn reconstruct(&self) -> ComplexMatrix4 {
        self.map_eigenvalues(|e| Complex64::new(e, 0.0))
    }

    /// Matrix function `U diag(f(E_k)) U†`.
    pub fn map_eigenvalues(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix4 {
        let diag = ComplexMatrix4::from_diagonal(self.eigenvalues.map(f));
        diag.rotate_back(&self.eigenvectors)
    }

    /// `U† A U`.
    pub fn to_eigenbasis(&self, a: &ComplexMatrix4) -> ComplexMatrix4 {
        a.conjugate_by(&self.eigenvectors)
    }

    /// `U A U†`.
    pub fn from_eigenbasis(&self, a: &ComplexMatrix4) -> ComplexMatrix4 {
        a.rotate_back(&self.eigenvectors)
    }

    /// Largest `|E_k|`.
    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0_f64, |m, e| m.max(e.abs()))
    }
}

fn off_diagonal_norm(a: &ComplexMatrix4) -> f64 {
    let mut s = 0.0;
    for i in 0..DIM {
        for j in 0..DIM {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Sweeps visit pairs `(p, q)` in row order; iteration stops once the
/// off-diagonal Frobenius norm falls to `1e-13 * |H|_F`.
pub fn eig_hermitian(h: &HermitianMatrix4) -> Result<Spectrum> {
    let mut a = *h.as_matrix();
    let mut v = ComplexMatrix4::identity();
    let threshold = TOL.jacobi_relative * a.frobenius_norm();

    let mut converged = false;
    for _ in 0..TOL.jacobi_max_sweeps {
        if off_diagonal_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..DIM - 1 {
            for q in p + 1..DIM {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        let off_norm = off_diagonal_norm(&a);
        if off_norm > threshold {
            return Err(Error::NoConvergence {
                sweeps: TOL.jacobi_max_sweeps,
                off_norm,
            });
        }
    }

    let mut order: [usize; DIM] = std::array::from_fn(|i| i);
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));

    let eigenvalues = order.map(|k| a[(k, k)].re);
    let mut eigenvectors = ComplexMatrix4::zeros();
    for (col, &k) in order.iter().enumerate() {
        let mut u = v.column(k);
        fix_phase(&mut u);
        for (row, z) in u.into_iter().enumerate() {
            eigenvectors[(row, col)] = z;
        }
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// One Jacobi rotation annihilating `a_pq`.
///
/// The rotation is `G = D·P` with `D` removing the phase of `a_pq` and `P`
/// the real symmetric Jacobi rotation; `A ← G† A G`, `V ← V G`.
fn rotate(a: &mut ComplexMatrix4, v: &mut ComplexMatrix4, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase_conj = (apq / r).conj();
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let t = 1.0 / (theta.abs() + (theta * theta + 1.0).sqrt());
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = phase_conj * (-s);
    let g_qq = phase_conj * c;

    for k in 0..DIM {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;

        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
    for k in 0..DIM {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;
}

fn fix_phase(u: &mut [Complex64; DIM]) {
    let mut best = 0;
    let mut best_mag = u[0].norm();
    for (i, z) in u.iter().enumerate().skip(1) {
        let mag = z.norm();
        if mag > best_mag * (1.0 + 1e-12) {
            best = i;
            best_mag = mag;
        }
    }
    if best_mag == 0.0 {
        return;
    }
    let phase = (u[best] / best_mag).conj();
    for z in u.iter_mut() {
        *z *= phase;
    }
    u[best] = Complex64::new(u[best].norm(), 0.0);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_spectrum() {
        let s = eig_hermitian(&HermitianMatrix4::identity()).unwrap();
        assert_eq!(s.eigenvalues, [1.0; 4]);
        assert_eq!(s.eigenvectors, ComplexMatrix4::identity());
    }

    #[test]
    fn diagonal_is_sorted_with_permutation_vectors() {
        let h = HermitianMatrix4::from_real_diagonal([3.0, -1.0, 2.0, 0.0]);
        let s = eig_hermitian(&h).unwrap();
        assert_eq!(s.eigenvalues, [-1.0, 0.0, 2.0, 3.0]);
        let expect_rows = [1, 3, 2, 0];
        for (col, &row) in expect_rows.iter().enumerate() {
            for r in 0..DIM {
                let want = if r == row { 1.0 } else { 0.0 };
                assert_eq!(s.eigenvectors[(r, col)], Complex64::new(want, 0.0));
            }
        }
    }

    #[test]
    fn two_by_two_block_gives_plus_minus_fifteen() {
        let h = HermitianMatrix4::from_real_symmetric([
            [0.0, -15.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1e6, 0.0],
            [0.0, 0.0, 0.0, 1e6],
        ]);
        let s = eig_hermitian(&h).unwrap();
        assert!((s.eigenvalues[0] + 15.0).abs() < 1e-9);
        assert!((s.eigenvalues[1] - 15.0).abs() < 1e-9);
    }

    #[test]
    fn zero_matrix() {
        let s = eig_hermitian(&HermitianMatrix4::from_real_diagonal([0.0; 4])).unwrap();
        assert_eq!(s.eigenvalues, [0.0; 4]);
    }

    #[test]
    fn complex_entries_are_diagonalized() {
        let mut m = ComplexMatrix4::from_real_diagonal([1.0, 2.0, -3.0, 0.5]);
        m[(0, 1)] = Complex64::new(0.3, -0.7);
        m[(1, 0)] = m[(0, 1)].conj();
        m[(2, 3)] = Complex64::new(0.0, 2.0);
        m[(3, 2)] = m[(2, 3)].conj();
        m[(0, 3)] = Complex64::new(-1.1, 0.4);
        m[(3, 0)] = m[(0, 3)].conj();
        let h = HermitianMatrix4::new(m).unwrap();
        let s = eig_hermitian(&h).unwrap();
        assert!(s.reconstruct().frobenius_distance(&m) < 1e-12);
        let gram = s.eigenvectors.adjoint() * s.eigenvectors;
        assert!(gram.frobenius_distance(&ComplexMatrix4::identity()) < 1e-12);
        for k in 0..DIM {
            let col = s.eigenvectors.column(k);
            let (imax, _) = col.iter().enumerate().fold((0, 0.0), |(bi, bm), (i, z)| {
                if z.norm() > bm * (1.0 + 1e-12) {
                    (i, z.norm())
                } else {
                    (bi, bm)
                }
            });
            assert_eq!(col[imax].im, 0.0);
            assert!(col[imax].re > 0.0);
        }
    }
}
