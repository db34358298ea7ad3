//! Seeded random objects: Ginibre matrices, density matrices, Haar
//! isometries and simplex points.
//!
//! Every stream is a ChaCha8 generator keyed by `(seed, stream)`, so work
//! split over indices reproduces bit for bit regardless of evaluation order.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::numkit::ComplexMatrix;

pub type SeededRng = ChaCha8Rng;

/// Generator for stream `stream` under `seed`.
pub fn rng_for(seed: u64, stream: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im)
}

/// Matrix of i.i.d. standard complex Gaussians.
pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols).map(|_| complex_normal(rng)).collect();
    ComplexMatrix::new(rows, cols, data).expect("gaussian samples are finite")
}

/// `G·G† / tr(G·G†)` for a square Ginibre `G` (full rank almost surely).
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, d: usize) -> ComplexMatrix {
    random_density_of_rank(rng, d, d)
}

/// Density matrix of rank `rank` from a d×rank Ginibre factor.
pub fn random_density_of_rank<R: Rng + ?Sized>(rng: &mut R, d: usize, rank: usize) -> ComplexMatrix {
    let g = ginibre(rng, d, rank);
    let m = g.matmul(&g.adjoint());
    let tr = m.trace().re;
    m.scaled(1.0 / tr).hermitian_part()
}

/// Unit vector with Gaussian amplitudes (Haar distributed).
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..n).map(|_| complex_normal(rng)).collect();
    let norm = Float::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>());
    v.into_iter().map(|z| z / norm).collect()
}

/// Haar-random m×r isometry: QR of a Ginibre matrix with the R diagonal
/// made positive.
pub fn haar_isometry<R: Rng + ?Sized>(rng: &mut R, m: usize, r: usize) -> ComplexMatrix {
    assert!(m >= r, "isometry needs m >= r");
    let g = ginibre(rng, m, r);
    let mut q: Vec<Vec<Complex64>> = Vec::with_capacity(r);
    for j in 0..r {
        let mut col = g.column(j);
        // two passes of modified Gram–Schmidt
        for _ in 0..2 {
            for prev in &q {
                let overlap: Complex64 = prev.iter().zip(&col).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in col.iter_mut().zip(prev) {
                    *x -= overlap * y;
                }
            }
        }
        let norm = Float::sqrt(col.iter().map(|z| z.norm_sqr()).sum::<f64>());
        q.push(col.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_columns(m, &q).expect("column lengths agree")
}

/// Uniform point on the probability simplex of dimension `d`.
pub fn simplex_point<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..d).map(|_| Exp1.sample(rng)).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|x| x / s).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: u64 = rng_for(42, 3).random();
        let b: u64 = rng_for(42, 3).random();
        let c: u64 = rng_for(42, 4).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn haar_isometry_is_isometric() {
        let mut rng = rng_for(1, 0);
        for (m, r) in [(2, 2), (5, 3), (8, 4)] {
            assert!(haar_isometry(&mut rng, m, r).isometry_defect() < 1e-12);
        }
    }

    #[test]
    fn simplex_points_sum_to_one() {
        let mut rng = rng_for(2, 0);
        for d in 1..6 {
            let p = simplex_point(&mut rng, d);
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-14);
            assert!(p.iter().all(|&x| x >= 0.0));
        }
    }

    #[test]
    fn random_density_is_valid() {
        let mut rng = rng_for(9, 0);
        let rho = random_density(&mut rng, 4);
        let s = crate::numkit::density_spectrum(&rho).unwrap();
        assert!(s.values().iter().all(|&v| v > 0.0));
    }
}
