use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use super::ComplexMatrix;
use crate::error::Result;

const MAX_SWEEPS: usize = 100;

/// Thin singular value decomposition `M = U·diag(s)·V†`.
///
/// With `k = min(rows, cols)`: `left` is rows×k, `right` is cols×k, both
/// with orthonormal columns; `singular_values` has length k, descending.
#[derive(Debug, Clone)]
pub struct Svd {
    pub left: ComplexMatrix,
    pub singular_values: Vec<f64>,
    pub right: ComplexMatrix,
}

impl Svd {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut scaled = self.left.clone();
        for (j, &s) in self.singular_values.iter().enumerate() {
            for i in 0..scaled.rows() {
                scaled[(i, j)] *= s;
            }
        }
        scaled.matmul(&self.right.adjoint())
    }
}

/// One-sided (Hestenes) Jacobi SVD.
pub fn svd(m: &ComplexMatrix) -> Result<Svd> {
    // entries of a ComplexMatrix are finite by construction
    if m.rows() < m.cols() {
        let t = one_sided(&m.adjoint());
        return Ok(Svd {
            left: t.right,
            singular_values: t.singular_values,
            right: t.left,
        });
    }
    Ok(one_sided(m))
}

/// Requires rows ≥ cols.
fn one_sided(m: &ComplexMatrix) -> Svd {
    let rows = m.rows();
    let n = m.cols();
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| m.column(j)).collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[j] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex64 = cols[p].iter().zip(&cols[q]).map(|(a, b)| a.conj() * b).sum();
                let g = gamma.norm();
                if g == 0.0 || g <= 1e-15 * Float::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta.is_finite() {
                    let sign = if zeta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (zeta.abs() + Float::sqrt(1.0 + zeta * zeta))
                } else {
                    0.0
                };
                let c = 1.0 / Float::sqrt(1.0 + t * t);
                let s = c * t;
                let phase_conj = (gamma / g).conj();
                apply(&mut cols, p, q, c, s, phase_conj);
                apply(&mut v, p, q, c, s, phase_conj);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = cols
        .iter()
        .map(|c| Float::sqrt(c.iter().map(|z| z.norm_sqr()).sum::<f64>()))
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]).then(a.cmp(&b)));

    let top = norms.iter().copied().fold(0.0, f64::max);
    let floor = top * 1e-14 + f64::MIN_POSITIVE;
    let mut left_cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut singular_values = Vec::with_capacity(n);
    let mut right_cols = Vec::with_capacity(n);
    let mut pending = Vec::new();
    for (slot, &k) in order.iter().enumerate() {
        singular_values.push(norms[k]);
        right_cols.push(v[k].clone());
        if norms[k] > floor {
            left_cols.push(cols[k].iter().map(|z| z / norms[k]).collect());
        } else {
            left_cols.push(vec![Complex64::new(0.0, 0.0); rows]);
            pending.push(slot);
        }
    }
    complete_orthonormal(&mut left_cols, &pending, rows);

    Svd {
        left: ComplexMatrix::from_columns(rows, &left_cols).expect("column lengths agree"),
        singular_values,
        right: ComplexMatrix::from_columns(n, &right_cols).expect("column lengths agree"),
    }
}

fn apply(cols: &mut [Vec<Complex64>], p: usize, q: usize, c: f64, s: f64, phase_conj: Complex64) {
    let (lo, hi) = cols.split_at_mut(p.max(q));
    let (cp, cq) = if p < q {
        (&mut lo[p], &mut hi[0])
    } else {
        (&mut hi[0], &mut lo[q])
    };
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let a = *x;
        let b = *y * phase_conj;
        *x = a * c - b * s;
        *y = a * s + b * c;
    }
}

/// Fills the slots in `pending` with unit vectors orthogonal to every other
/// column, by Gram–Schmidt over the standard basis.
fn complete_orthonormal(cols: &mut [Vec<Complex64>], pending: &[usize], rows: usize) {
    let mut candidate = 0;
    for &slot in pending {
        while candidate < rows {
            let mut e = vec![Complex64::new(0.0, 0.0); rows];
            e[candidate] = Complex64::new(1.0, 0.0);
            candidate += 1;
            for _ in 0..2 {
                for (j, c) in cols.iter().enumerate() {
                    if j == slot {
                        continue;
                    }
                    let overlap: Complex64 = c.iter().zip(&e).map(|(a, b)| a.conj() * b).sum();
                    for (x, y) in e.iter_mut().zip(c) {
                        *x -= overlap * y;
                    }
                }
            }
            let norm = Float::sqrt(e.iter().map(|z| z.norm_sqr()).sum::<f64>());
            if norm > 1e-6 {
                cols[slot] = e.iter().map(|z| z / norm).collect();
                break;
            }
        }
    }
}
