use alloc::vec::Vec;

use num_complex::Complex64;

use super::{join_index, normalize_keep, split_index, DensityMatrix, DimSignature, PureState};
use crate::error::Result;
use crate::numkit::{svd, ComplexMatrix, Spectrum, RANK_TOL};

/// Reduced density matrix on the subsystems listed in `keep`.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let dims = rho.dims();
    let keep = normalize_keep(keep, dims.len())?;
    let traced: Vec<usize> = (0..dims.len()).filter(|i| !keep.contains(i)).collect();
    let kept_dims: Vec<usize> = keep.iter().map(|&i| dims[i]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&i| dims[i]).collect();
    let dk: usize = kept_dims.iter().product();
    let dt: usize = traced_dims.iter().product();

    let full_index = |kept: &[usize], tr: &[usize]| {
        let mut digits = alloc::vec![0; dims.len()];
        for (&slot, &v) in keep.iter().zip(kept) {
            digits[slot] = v;
        }
        for (&slot, &v) in traced.iter().zip(tr) {
            digits[slot] = v;
        }
        join_index(&digits, dims)
    };

    let m = rho.matrix();
    let mut out = ComplexMatrix::zeros(dk, dk);
    for i in 0..dk {
        let di = split_index(i, &kept_dims);
        for j in 0..dk {
            let dj = split_index(j, &kept_dims);
            let mut acc = Complex64::new(0.0, 0.0);
            for t in 0..dt {
                let dtt = split_index(t, &traced_dims);
                acc += m[(full_index(&di, &dtt), full_index(&dj, &dtt))];
            }
            out[(i, j)] = acc;
        }
    }
    Ok(DensityMatrix {
        matrix: out.hermitian_part(),
        signature: DimSignature(kept_dims),
    })
}

/// Partial transpose on subsystem `sys` (0 = A, 1 = B) of a bipartite
/// density matrix.
pub fn partial_transpose(rho: &DensityMatrix, sys: usize) -> Result<ComplexMatrix> {
    rho.signature().require_bipartite()?;
    let dims = rho.dims();
    if sys >= dims.len() {
        return Err(crate::Error::validation(
            "subsystem_index",
            alloc::format!("subsystem {sys} of a bipartite state"),
        ));
    }
    let n = rho.matrix().rows();
    let m = rho.matrix();
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        let mut di = split_index(i, dims);
        for j in 0..n {
            let mut dj = split_index(j, dims);
            core::mem::swap(&mut di[sys], &mut dj[sys]);
            out[(join_index(&di, dims), join_index(&dj, dims))] = m[(i, j)];
            core::mem::swap(&mut di[sys], &mut dj[sys]);
        }
    }
    Ok(out)
}

/// Schmidt decomposition `|ψ⟩ = Σ λ_i |e_i⟩|f_i⟩` of a bipartite state.
#[derive(Debug, Clone)]
pub struct SchmidtData {
    /// Coefficients above the rank tolerance, descending.
    pub coefficients: Vec<f64>,
    /// Left (A) basis vectors, one per coefficient.
    pub left_basis: Vec<Vec<Complex64>>,
    /// Right (B) basis vectors, one per coefficient.
    pub right_basis: Vec<Vec<Complex64>>,
    dim_a: usize,
    all_squares: Vec<f64>,
}

impl SchmidtData {
    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    /// Spectrum of `ρ_A`: every squared singular value (including those
    /// under the rank tolerance), zero padded to `d_A`.
    pub fn reduced_spectrum(&self) -> Spectrum {
        Spectrum::from_sorted_unchecked(self.all_squares.clone()).padded(self.dim_a)
    }

    /// `Σ λ_i |e_i⟩⊗|f_i⟩`.
    pub fn reconstruct(&self) -> Vec<Complex64> {
        let da = self.dim_a;
        let db = self.right_basis.first().map_or(1, |v| v.len());
        let mut out = alloc::vec![Complex64::new(0.0, 0.0); da * db];
        for ((lambda, e), f) in self.coefficients.iter().zip(&self.left_basis).zip(&self.right_basis) {
            for i in 0..da {
                for j in 0..db {
                    out[i * db + j] += e[i] * f[j] * *lambda;
                }
            }
        }
        out
    }
}

pub fn schmidt(psi: &PureState) -> Result<SchmidtData> {
    psi.signature().require_bipartite()?;
    let (da, db) = (psi.dims()[0], psi.dims()[1]);
    let m = ComplexMatrix::new(da, db, psi.amplitudes().to_vec())?;
    let s = svd(&m)?;
    let mut coefficients = Vec::new();
    let mut left_basis = Vec::new();
    let mut right_basis = Vec::new();
    for (k, &sigma) in s.singular_values.iter().enumerate() {
        if sigma * sigma > RANK_TOL {
            coefficients.push(sigma);
            left_basis.push(s.left.column(k));
            right_basis.push(s.right.column(k).iter().map(|z| z.conj()).collect());
        }
    }
    let all_squares = s.singular_values.iter().map(|x| x * x).collect();
    Ok(SchmidtData {
        coefficients,
        left_basis,
        right_basis,
        dim_a: da,
        all_squares,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::eig_hermitian;
    use crate::states::{make_bell, make_max_entangled, pure_from_schmidt, Cut};
    use num_traits::Float;

    #[test]
    fn bell_state_reduces_to_maximally_mixed() {
        let rho = make_bell().density();
        let a = partial_trace(&rho, &[0]).unwrap();
        assert!(a.matrix().max_abs_diff(&ComplexMatrix::identity(2).scaled(0.5)) < 1e-15);
    }

    #[test]
    fn product_state_keeps_factor() {
        let ra = ComplexMatrix::from_real(2, 2, &[0.7, 0.2, 0.2, 0.3]).unwrap();
        let rb = ComplexMatrix::from_real_diagonal(&[0.1, 0.5, 0.4]);
        let rho_a = DensityMatrix::new(ra.clone(), DimSignature::new(&[2]).unwrap()).unwrap();
        let rho_b = DensityMatrix::new(rb.clone(), DimSignature::new(&[3]).unwrap()).unwrap();
        let rho = rho_a.tensor(&rho_b).unwrap();
        assert!(partial_trace(&rho, &[0]).unwrap().matrix().max_abs_diff(&ra) < 1e-15);
        assert!(partial_trace(&rho, &[1]).unwrap().matrix().max_abs_diff(&rb) < 1e-15);
    }

    #[test]
    fn invalid_keep_is_rejected() {
        let rho = make_bell().density();
        assert_eq!(
            partial_trace(&rho, &[2]).unwrap_err().invariant(),
            Some("subsystem_index")
        );
        assert!(partial_trace(&rho, &[]).is_err());
    }

    #[test]
    fn bell_partial_transpose_has_eigenvalue_minus_half() {
        let pt = partial_transpose(&make_bell().density(), 0).unwrap();
        let e = eig_hermitian(&pt).unwrap();
        assert!((e.values.values()[3] + 0.5).abs() < 1e-14);
        assert!((pt.trace().re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn partial_transpose_requires_bipartite() {
        let w = crate::states::make_w().density();
        assert_eq!(partial_transpose(&w, 0).unwrap_err().invariant(), Some("bipartite"));
        let cut = w.bipartition(&Cut::a_bc()).unwrap();
        assert!(partial_transpose(&cut, 0).is_ok());
    }

    #[test]
    fn schmidt_examples() {
        let s = schmidt(&crate::states::basis_state(&[2, 2], &[0, 0]).unwrap()).unwrap();
        assert_eq!(s.rank(), 1);
        assert!((s.coefficients[0] - 1.0).abs() < 1e-15);

        let s = schmidt(&make_bell()).unwrap();
        assert_eq!(s.rank(), 2);
        for c in &s.coefficients {
            assert!((c - Float::sqrt(0.5)).abs() < 1e-14);
        }

        let t = 1.0 / 6.0;
        let psi = pure_from_schmidt(
            &[Float::sqrt(2.0 / 3.0 - t), Float::sqrt(1.0 / 3.0), Float::sqrt(t)],
            3,
            3,
        )
        .unwrap();
        let s = schmidt(&psi).unwrap();
        let want = [Float::sqrt(0.5), Float::sqrt(1.0 / 3.0), Float::sqrt(1.0 / 6.0)];
        for (c, w) in s.coefficients.iter().zip(want) {
            assert!((c - w).abs() < 1e-14);
        }
    }

    #[test]
    fn schmidt_needs_a_cut() {
        let w = crate::states::make_w();
        assert_eq!(schmidt(&w).unwrap_err().invariant(), Some("bipartite"));
        assert_eq!(schmidt(&w.bipartition(&Cut::a_bc()).unwrap()).unwrap().rank(), 2);
    }

    #[test]
    fn max_entangled_spectrum() {
        let s = make_max_entangled(3).unwrap().reduced_spectrum().unwrap();
        for v in s.values() {
            assert!((v - 1.0 / 3.0).abs() < 1e-14);
        }
    }
}
