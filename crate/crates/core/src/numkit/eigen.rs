use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use super::{ComplexMatrix, Spectrum, HERMITIAN_TOL};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition `M = V·diag(values)·V†` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Eigen {
    /// Eigenvalues, descending.
    pub values: Spectrum,
    /// Orthonormal eigenvectors stored as columns, in the order of `values`.
    pub vectors: ComplexMatrix,
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// The input is symmetrized before iterating. Each eigenvector is rephased so
/// that its largest-magnitude component (first such index on ties) is real
/// and positive, which makes the returned basis reproducible.
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<Eigen> {
    if !m.is_square() {
        return Err(Error::validation(
            "square",
            alloc::format!("{}x{} matrix", m.rows(), m.cols()),
        ));
    }
    if !m.is_hermitian(HERMITIAN_TOL) {
        return Err(Error::validation(
            "hermitian",
            alloc::format!("deviation from adjoint {:e}", m.max_abs_diff(&m.adjoint())),
        ));
    }
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    for i in 0..n {
        a[(i, i)].im = 0.0;
    }

    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum();
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(y, y)].re.total_cmp(&a[(x, x)].re).then(x.cmp(&y)));
    let values: Vec<f64> = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = v.column(src);
        fix_phase(&mut col);
        vectors.set_column(dst, &col);
    }
    Ok(Eigen {
        values: Spectrum::from_sorted_unchecked(values),
        vectors,
    })
}

/// One Jacobi step annihilating `a[p][q]`: `a ← U†aU`, `v ← vU`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let z = a[(p, q)];
    let g = z.norm();
    if g == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let zeta = (aqq - app) / (2.0 * g);
    let t = if zeta.is_finite() {
        zeta.signum() / (zeta.abs() + Float::sqrt(1.0 + zeta * zeta))
    } else {
        0.0
    };
    let c = 1.0 / Float::sqrt(1.0 + t * t);
    let s = c * t;
    let phase = z / g; // e^{iφ}
    let phase_conj = phase.conj();
    // U restricted to (p, q): [[c, s], [-s e^{-iφ}, c e^{-iφ}]]
    let upp = Complex64::new(c, 0.0);
    let upq = Complex64::new(s, 0.0);
    let uqp = phase_conj * (-s);
    let uqq = phase_conj * c;

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * upp + akq * uqp;
        a[(k, q)] = akp * upq + akq * uqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = upp.conj() * apk + uqp.conj() * aqk;
        a[(q, k)] = upq.conj() * apk + uqq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * upp + vkq * uqp;
        v[(k, q)] = vkp * upq + vkq * uqq;
    }
}

/// Rotates `col` so its largest-magnitude entry is real positive.
pub(crate) fn fix_phase(col: &mut [Complex64]) {
    let max = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return;
    }
    let pivot = col.iter().position(|z| z.norm() >= max * (1.0 - 1e-12)).unwrap_or(0);
    let phase = col[pivot].conj() / col[pivot].norm();
    for z in col.iter_mut() {
        *z *= phase;
    }
    col[pivot].im = 0.0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{ginibre, rng_for};

    fn reconstruct(e: &Eigen) -> ComplexMatrix {
        let n = e.vectors.rows();
        let mut m = ComplexMatrix::zeros(n, n);
        for (k, &lambda) in e.values.values().iter().enumerate() {
            m.add_scaled_projector(&e.vectors.column(k), lambda);
        }
        m
    }

    #[test]
    fn identity_spectrum() {
        let e = eig_hermitian(&ComplexMatrix::identity(3)).unwrap();
        assert_eq!(e.values.values(), &[1.0, 1.0, 1.0]);
    }

    #[test]
    fn diagonal_is_sorted() {
        let d = ComplexMatrix::from_real_diagonal(&[1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0]);
        let e = eig_hermitian(&d).unwrap();
        assert_eq!(e.values.values(), &[2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0]);
    }

    #[test]
    fn random_hermitian_reconstructs() {
        let mut rng = rng_for(11, 0);
        for n in 1..=9 {
            let g = ginibre(&mut rng, n, n);
            let h = g.add(&g.adjoint());
            let e = eig_hermitian(&h).unwrap();
            assert!(reconstruct(&e).max_abs_diff(&h) < 1e-9);
            assert!(e.vectors.isometry_defect() < 1e-12);
            for k in 0..n {
                let col = e.vectors.column(k);
                let hv = h.mul_vec(&col);
                for (x, y) in hv.iter().zip(&col) {
                    assert!((x - y * e.values.values()[k]).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn rejects_non_hermitian_and_non_square() {
        let m = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        assert_eq!(eig_hermitian(&m).unwrap_err().invariant(), Some("hermitian"));
        let r = ComplexMatrix::zeros(2, 3);
        assert_eq!(eig_hermitian(&r).unwrap_err().invariant(), Some("square"));
    }

    #[test]
    fn eigenvectors_are_phase_fixed() {
        let mut rng = rng_for(3, 1);
        let g = ginibre(&mut rng, 4, 4);
        let e = eig_hermitian(&g.add(&g.adjoint())).unwrap();
        for k in 0..4 {
            let col = e.vectors.column(k);
            let max = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let pivot = col.iter().find(|z| z.norm() >= max * (1.0 - 1e-12)).unwrap();
            assert_eq!(pivot.im, 0.0);
            assert!(pivot.re > 0.0);
        }
    }
}
