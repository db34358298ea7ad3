//! Dense complex linear algebra sized for desk-scale quantum states.
//!
//! Everything here works on small row-major matrices (a few dozen rows at
//! most). The eigensolver and SVD are cyclic Jacobi methods: slow in the
//! asymptotic sense, but accurate to machine precision and free of external
//! LAPACK dependencies, which keeps the crate usable without `std`.

mod eigen;
mod majorization;
mod matrix;
mod svd;

pub use eigen::{eig_hermitian, Eigen};
pub use majorization::majorizes;
pub use matrix::ComplexMatrix;
pub use svd::{svd, Svd};

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Max-abs deviation tolerated between a matrix and its adjoint.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues (or squared Schmidt coefficients) below this count as zero.
pub const RANK_TOL: f64 = 1e-9;
/// Allowed deviation of a trace or probability sum from one.
pub const TRACE_TOL: f64 = 1e-10;
/// Most negative eigenvalue still accepted as positive semidefinite.
pub const PSD_TOL: f64 = 1e-9;

/// Real spectrum sorted in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    /// Sorts `values` descending. Rejects non-finite entries.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::validation("finite", "spectrum has a non-finite entry"));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Spectrum(values))
    }

    /// Like [`Spectrum::new`] but additionally requires a probability vector.
    pub fn probability(values: Vec<f64>) -> Result<Self> {
        let s = Self::new(values)?;
        s.check_probability()?;
        Ok(s)
    }

    pub(crate) fn from_sorted_unchecked(values: Vec<f64>) -> Self {
        Spectrum(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Largest entry, or zero for an empty spectrum.
    pub fn max(&self) -> f64 {
        self.0.first().copied().unwrap_or(0.0)
    }

    /// Number of entries above [`RANK_TOL`].
    pub fn numerical_rank(&self) -> usize {
        self.0.iter().filter(|&&v| v > RANK_TOL).count()
    }

    /// Smallest entry above [`RANK_TOL`].
    pub fn min_positive(&self) -> Option<f64> {
        self.0.iter().rev().copied().find(|&v| v > RANK_TOL)
    }

    /// Zero-pads to `len` entries (never truncates).
    pub fn padded(&self, len: usize) -> Spectrum {
        let mut v = self.0.clone();
        if v.len() < len {
            v.resize(len, 0.0);
        }
        Spectrum(v)
    }

    /// Entrywise `t·self + (1−t)·other` of the sorted vectors, zero padded.
    pub fn mix(&self, other: &Spectrum, t: f64) -> Spectrum {
        let n = self.len().max(other.len());
        let a = self.padded(n);
        let b = other.padded(n);
        Spectrum(a.0.iter().zip(&b.0).map(|(x, y)| t * x + (1.0 - t) * y).collect())
    }

    pub fn check_probability(&self) -> Result<()> {
        if let Some(&v) = self.0.last() {
            if v < -PSD_TOL {
                return Err(Error::validation(
                    "nonnegative",
                    alloc::format!("probability vector has entry {v:e}"),
                ));
            }
        }
        let sum = self.sum();
        if (sum - 1.0).abs() > TRACE_TOL {
            return Err(Error::validation(
                "unit_sum",
                alloc::format!("probability vector sums to {sum}"),
            ));
        }
        Ok(())
    }
}

/// Largest singular value.
pub fn operator_norm(m: &ComplexMatrix) -> Result<f64> {
    if m.is_square() && m.is_hermitian(HERMITIAN_TOL) {
        let e = eig_hermitian(m)?;
        let v = e.values.values();
        let top = v.first().copied().unwrap_or(0.0).abs();
        let bottom = v.last().copied().unwrap_or(0.0).abs();
        return Ok(top.max(bottom));
    }
    Ok(svd(m)?.singular_values.first().copied().unwrap_or(0.0))
}

/// Smallest strictly positive eigenvalue of a density matrix, or zero when
/// the matrix is (numerically) a pure state.
pub fn min_norm(rho: &ComplexMatrix) -> Result<f64> {
    let spectrum = density_spectrum(rho)?;
    Ok(min_norm_of_spectrum(&spectrum))
}

/// [`min_norm`] evaluated on an already computed spectrum.
pub fn min_norm_of_spectrum(spectrum: &Spectrum) -> f64 {
    match spectrum.min_positive() {
        Some(v) if v < 1.0 - RANK_TOL => v,
        _ => 0.0,
    }
}

/// Validates a density matrix and returns its spectrum.
pub fn density_spectrum(rho: &ComplexMatrix) -> Result<Spectrum> {
    let e = eig_hermitian(rho)?;
    let tr = e.values.sum();
    if (tr - 1.0).abs() > TRACE_TOL {
        return Err(Error::validation("unit_trace", alloc::format!("trace is {tr}")));
    }
    if let Some(&low) = e.values.values().last() {
        if low < -PSD_TOL {
            return Err(Error::validation(
                "positive_semidefinite",
                alloc::format!("minimum eigenvalue {low:e}"),
            ));
        }
    }
    Ok(e.values)
}

/// Negative part `Σ_{δ<0} (−δ)|v⟩⟨v|` of a Hermitian matrix, returned as a
/// positive semidefinite matrix. Eigenvalues within [`RANK_TOL`] of zero are
/// ignored.
pub fn negative_part(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    let e = eig_hermitian(h)?;
    let n = h.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    for (k, &lambda) in e.values.values().iter().enumerate() {
        if lambda < -RANK_TOL {
            out.add_scaled_projector(&e.vectors.column(k), -lambda);
        }
    }
    Ok(out)
}

/// Eigenvalues of the negative part, descending (i.e. `|δ|` for each
/// negative eigenvalue δ, largest magnitude first).
pub fn negative_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    let e = eig_hermitian(h)?;
    let mut neg: Vec<f64> = e
        .values
        .values()
        .iter()
        .filter(|&&v| v < -RANK_TOL)
        .map(|v| -v)
        .collect();
    neg.sort_by(|a, b| b.total_cmp(a));
    Ok(neg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn operator_norm_examples() {
        let d = ComplexMatrix::from_real_diagonal(&[2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0]);
        assert!((operator_norm(&d).unwrap() - 2.0 / 3.0).abs() < 1e-14);
        let mixed = ComplexMatrix::identity(3).scaled(1.0 / 3.0);
        assert!((operator_norm(&mixed).unwrap() - 1.0 / 3.0).abs() < 1e-14);
        let pure = ComplexMatrix::projector(&[
            num_complex::Complex64::new(0.6, 0.0),
            num_complex::Complex64::new(0.0, 0.8),
        ]);
        assert!((operator_norm(&pure).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn operator_norm_of_nonsquare_uses_singular_values() {
        let m = ComplexMatrix::from_real(2, 3, &[3.0, 0.0, 0.0, 0.0, 4.0, 0.0]).unwrap();
        assert!((operator_norm(&m).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn min_norm_examples() {
        let d = ComplexMatrix::from_real_diagonal(&[2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0]);
        assert!((min_norm(&d).unwrap() - 1.0 / 6.0).abs() < 1e-14);
        let pure = ComplexMatrix::from_real_diagonal(&[1.0, 0.0, 0.0]);
        assert_eq!(min_norm(&pure).unwrap(), 0.0);
        let rank2 = ComplexMatrix::from_real_diagonal(&[0.6, 0.4, 0.0]);
        assert!((min_norm(&rank2).unwrap() - 0.4).abs() < 1e-14);
    }

    #[test]
    fn min_norm_rejects_non_density() {
        let bad = ComplexMatrix::from_real_diagonal(&[0.7, 0.7]);
        assert_eq!(min_norm(&bad).unwrap_err().invariant(), Some("unit_trace"));
        let neg = ComplexMatrix::from_real_diagonal(&[1.5, -0.5]);
        assert_eq!(min_norm(&neg).unwrap_err().invariant(), Some("positive_semidefinite"));
    }

    #[test]
    fn negative_part_examples() {
        let psd = ComplexMatrix::from_real_diagonal(&[0.3, 0.7]);
        assert!(negative_part(&psd).unwrap().max_abs() < 1e-15);
        let split = ComplexMatrix::from_real_diagonal(&[0.5, -0.5]);
        let n = negative_part(&split).unwrap();
        let want = ComplexMatrix::from_real_diagonal(&[0.0, 0.5]);
        assert!(n.max_abs_diff(&want) < 1e-14);
    }

    #[test]
    fn spectrum_helpers() {
        let s = Spectrum::probability(vec![0.2, 0.5, 0.3, 0.0]).unwrap();
        assert_eq!(s.values(), &[0.5, 0.3, 0.2, 0.0]);
        assert_eq!(s.numerical_rank(), 3);
        assert_eq!(s.min_positive(), Some(0.2));
        assert!(Spectrum::probability(vec![0.5, 0.6]).is_err());
        assert!(Spectrum::new(vec![f64::NAN]).is_err());
    }
}
