//! Pure and mixed states on up to three subsystems.
//!
//! Subsystems are ordered A, B, C and flattened big-endian: the basis index
//! of `|i_A i_B i_C⟩` is `((i_A·d_B) + i_B)·d_C + i_C`. Bipartite operations
//! on a tripartite state always go through an explicit [`Cut`].

mod factories;
mod ops;

pub use factories::{
    basis_state, flagged_superposition, make_acin, make_bell, make_max_entangled, make_omega, make_phi, make_w,
    pure_from_schmidt, AcinParams, PhiParams, PhiRegime,
};
pub use ops::{partial_trace, partial_transpose, schmidt, SchmidtData};

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::numkit::{self, eig_hermitian, ComplexMatrix, Spectrum, HERMITIAN_TOL, TRACE_TOL};

/// Amplitude norms must equal one within this.
pub const NORM_TOL: f64 = 1e-10;

const LABELS: [char; 3] = ['A', 'B', 'C'];

/// Subsystem dimensions, in A, B, C order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DimSignature(Vec<usize>);

impl DimSignature {
    pub fn new(dims: &[usize]) -> Result<Self> {
        if dims.is_empty() || dims.len() > 3 {
            return Err(Error::validation(
                "subsystem_count",
                alloc::format!("{} subsystems (1 to 3 supported)", dims.len()),
            ));
        }
        if let Some(d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::validation(
                "subsystem_dimension",
                alloc::format!("dimension {d} < 2"),
            ));
        }
        Ok(DimSignature(dims.to_vec()))
    }

    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    pub fn parties(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().product()
    }

    pub fn is_bipartite(&self) -> bool {
        self.0.len() == 2
    }

    pub(crate) fn require_bipartite(&self) -> Result<()> {
        if self.is_bipartite() {
            Ok(())
        } else {
            Err(Error::validation(
                "bipartite",
                alloc::format!(
                    "operation needs two subsystems, got {}; apply a cut first",
                    self.0.len()
                ),
            ))
        }
    }
}

/// A bipartition of the subsystems into a left and a right group, e.g.
/// `A|BC`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cut {
    left: Vec<usize>,
    right: Vec<usize>,
}

impl Cut {
    /// `left` lists subsystem indices; the remaining indices of a
    /// `parties`-party system form the right group.
    pub fn new(left: &[usize], parties: usize) -> Result<Self> {
        let mut l = left.to_vec();
        l.sort_unstable();
        l.dedup();
        if l.is_empty() || l.len() >= parties || l.iter().any(|&i| i >= parties) {
            return Err(Error::validation(
                "cut",
                alloc::format!("invalid left group {left:?} for {parties} subsystems"),
            ));
        }
        let right = (0..parties).filter(|i| !l.contains(i)).collect();
        Ok(Cut { left: l, right })
    }

    /// `A|BC`.
    pub fn a_bc() -> Self {
        Cut {
            left: alloc::vec![0],
            right: alloc::vec![1, 2],
        }
    }

    /// `A|B` of a bipartite system.
    pub fn a_b() -> Self {
        Cut {
            left: alloc::vec![0],
            right: alloc::vec![1],
        }
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    pub fn parties(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// Subsystem order putting the left group first.
    fn order(&self) -> Vec<usize> {
        self.left.iter().chain(&self.right).copied().collect()
    }

    fn check(&self, sig: &DimSignature) -> Result<()> {
        if self.parties() != sig.parties() {
            return Err(Error::validation(
                "cut",
                alloc::format!("cut {self} does not match {} subsystems", sig.parties()),
            ));
        }
        Ok(())
    }

    fn coarse(&self, sig: &DimSignature) -> DimSignature {
        let d = |g: &[usize]| g.iter().map(|&i| sig.0[i]).product();
        DimSignature(alloc::vec![d(&self.left), d(&self.right)])
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &i in &self.left {
            write!(f, "{}", LABELS[i])?;
        }
        f.write_str("|")?;
        for &i in &self.right {
            write!(f, "{}", LABELS[i])?;
        }
        Ok(())
    }
}

impl FromStr for Cut {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (l, r) = s
            .split_once('|')
            .ok_or_else(|| Error::validation("cut", alloc::format!("`{s}` has no `|`")))?;
        let parse = |part: &str| -> Result<Vec<usize>> {
            part.trim()
                .chars()
                .map(|c| match c.to_ascii_uppercase() {
                    'A' => Ok(0),
                    'B' => Ok(1),
                    'C' => Ok(2),
                    other => Err(Error::validation(
                        "cut",
                        alloc::format!("unknown subsystem label `{other}`"),
                    )),
                })
                .collect()
        };
        let left = parse(l)?;
        let right = parse(r)?;
        let parties = left.len() + right.len();
        let cut = Cut::new(&left, parties)?;
        let mut r_sorted = right.clone();
        r_sorted.sort_unstable();
        if r_sorted != cut.right {
            return Err(Error::validation("cut", alloc::format!("`{s}` is not a bipartition")));
        }
        Ok(cut)
    }
}

/// Normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
    signature: DimSignature,
}

impl PureState {
    /// Validates length and unit norm; fixes the global phase so the first
    /// nonzero amplitude is real positive.
    pub fn new(amplitudes: Vec<Complex64>, signature: DimSignature) -> Result<Self> {
        check_length(amplitudes.len(), &signature)?;
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::validation("finite", "amplitude is not finite"));
        }
        let n2: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (Float::sqrt(n2) - 1.0).abs() > NORM_TOL {
            return Err(Error::validation(
                "unit_norm",
                alloc::format!("norm is {}", Float::sqrt(n2)),
            ));
        }
        Ok(Self::from_parts(amplitudes, signature))
    }

    /// Rescales to unit norm first. Rejects the zero vector.
    pub fn normalized(amplitudes: Vec<Complex64>, signature: DimSignature) -> Result<Self> {
        check_length(amplitudes.len(), &signature)?;
        let n = Float::sqrt(amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>());
        if n <= 0.0 || !n.is_finite() {
            return Err(Error::validation("unit_norm", "cannot normalize"));
        }
        Self::new(amplitudes.into_iter().map(|z| z / n).collect(), signature)
    }

    fn from_parts(mut amplitudes: Vec<Complex64>, signature: DimSignature) -> Self {
        if let Some(first) = amplitudes.iter().find(|z| z.norm() > 1e-14).copied() {
            let phase = first.conj() / first.norm();
            for z in amplitudes.iter_mut() {
                *z *= phase;
            }
        }
        PureState { amplitudes, signature }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn signature(&self) -> &DimSignature {
        &self.signature
    }

    pub fn dims(&self) -> &[usize] {
        self.signature.dims()
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix {
            matrix: ComplexMatrix::projector(&self.amplitudes),
            signature: self.signature.clone(),
        }
    }

    /// Regroups into a bipartite state across `cut`.
    pub fn bipartition(&self, cut: &Cut) -> Result<PureState> {
        cut.check(&self.signature)?;
        let amps = permute_vector(&self.amplitudes, self.dims(), &cut.order());
        Ok(PureState {
            amplitudes: amps,
            signature: cut.coarse(&self.signature),
        })
    }

    /// Reduced state on the subsystems in `keep`.
    pub fn reduced(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let keep = normalize_keep(keep, self.signature.parties())?;
        let rest: Vec<usize> = (0..self.signature.parties()).filter(|i| !keep.contains(i)).collect();
        let order: Vec<usize> = keep.iter().chain(&rest).copied().collect();
        let amps = permute_vector(&self.amplitudes, self.dims(), &order);
        let kept_dims: Vec<usize> = keep.iter().map(|&i| self.dims()[i]).collect();
        let dk: usize = kept_dims.iter().product();
        let dr = self.signature.total() / dk;
        let mut rho = ComplexMatrix::zeros(dk, dk);
        for i in 0..dk {
            for j in i..dk {
                let v: Complex64 = (0..dr).map(|t| amps[i * dr + t] * amps[j * dr + t].conj()).sum();
                rho[(i, j)] = v;
                rho[(j, i)] = v.conj();
            }
        }
        Ok(DensityMatrix {
            matrix: rho,
            signature: DimSignature(kept_dims),
        })
    }

    /// Spectrum of the reduced state on the left side of a bipartite state,
    /// padded to `d_A` entries.
    pub fn reduced_spectrum(&self) -> Result<Spectrum> {
        let s = schmidt(self)?;
        Ok(s.reduced_spectrum())
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix with a subsystem
/// signature.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    signature: DimSignature,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, signature: DimSignature) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::validation("square", "density matrix is not square"));
        }
        check_length(matrix.rows(), &signature)?;
        if !matrix.is_hermitian(HERMITIAN_TOL) {
            return Err(Error::validation(
                "hermitian",
                alloc::format!("deviation from adjoint {:e}", matrix.max_abs_diff(&matrix.adjoint())),
            ));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL {
            return Err(Error::validation("unit_trace", alloc::format!("trace is {}", tr.re)));
        }
        numkit::density_spectrum(&matrix)?;
        Ok(DensityMatrix {
            matrix: matrix.hermitian_part(),
            signature,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn signature(&self) -> &DimSignature {
        &self.signature
    }

    pub fn dims(&self) -> &[usize] {
        self.signature.dims()
    }

    pub fn spectrum(&self) -> Spectrum {
        eig_hermitian(&self.matrix)
            .expect("density matrices are Hermitian")
            .values
    }

    /// Number of eigenvalues above the rank tolerance.
    pub fn rank(&self) -> usize {
        self.spectrum().numerical_rank()
    }

    /// `t·self + (1−t)·other`. Signatures must agree.
    pub fn mix(&self, other: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
        if self.signature != other.signature {
            return Err(Error::validation("signature", "mixing states of different shape"));
        }
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::validation("weight", alloc::format!("t = {t}")));
        }
        Ok(DensityMatrix {
            matrix: self.matrix.mix(&other.matrix, t),
            signature: self.signature.clone(),
        })
    }

    /// `ρ_1 ⊗ ρ_2` with concatenated signatures.
    pub fn tensor(&self, other: &DensityMatrix) -> Result<DensityMatrix> {
        let dims: Vec<usize> = self.dims().iter().chain(other.dims()).copied().collect();
        Ok(DensityMatrix {
            matrix: self.matrix.kron(&other.matrix),
            signature: DimSignature::new(&dims)?,
        })
    }

    /// Regroups into a bipartite matrix across `cut`.
    pub fn bipartition(&self, cut: &Cut) -> Result<DensityMatrix> {
        cut.check(&self.signature)?;
        let order = cut.order();
        let n = self.matrix.rows();
        let map = permutation_map(self.dims(), &order);
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(map[i], map[j])] = self.matrix[(i, j)];
            }
        }
        Ok(DensityMatrix {
            matrix: m,
            signature: cut.coarse(&self.signature),
        })
    }

    /// The matrix itself when it has rank one, as a pure state.
    pub fn as_pure(&self) -> Option<PureState> {
        let e = eig_hermitian(&self.matrix).ok()?;
        if e.values.numerical_rank() != 1 {
            return None;
        }
        PureState::normalized(e.vectors.column(0), self.signature.clone()).ok()
    }
}

/// Either kind of state, as read from a state file.
#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Pure(PureState),
    Mixed(DensityMatrix),
}

impl State {
    pub fn signature(&self) -> &DimSignature {
        match self {
            State::Pure(p) => p.signature(),
            State::Mixed(m) => m.signature(),
        }
    }

    pub fn density(&self) -> DensityMatrix {
        match self {
            State::Pure(p) => p.density(),
            State::Mixed(m) => m.clone(),
        }
    }

    pub fn bipartition(&self, cut: &Cut) -> Result<State> {
        Ok(match self {
            State::Pure(p) => State::Pure(p.bipartition(cut)?),
            State::Mixed(m) => State::Mixed(m.bipartition(cut)?),
        })
    }
}

/// Label of a subsystem index (`A`, `B`, `C`).
pub fn subsystem_label(i: usize) -> char {
    LABELS[i]
}

/// Parses a list of subsystem labels such as `"AC"`.
pub fn parse_subsystems(s: &str) -> Result<Vec<usize>> {
    s.chars()
        .map(|c| match c.to_ascii_uppercase() {
            'A' => Ok(0),
            'B' => Ok(1),
            'C' => Ok(2),
            other => Err(Error::validation(
                "subsystem",
                alloc::format!("unknown subsystem label `{other}`"),
            )),
        })
        .collect()
}

fn check_length(len: usize, sig: &DimSignature) -> Result<()> {
    if len != sig.total() {
        return Err(Error::validation(
            "dimension",
            alloc::format!("length {len} does not match dims {:?}", sig.dims()),
        ));
    }
    Ok(())
}

pub(crate) fn normalize_keep(keep: &[usize], parties: usize) -> Result<Vec<usize>> {
    let mut k = keep.to_vec();
    k.sort_unstable();
    k.dedup();
    if k.is_empty() || k.iter().any(|&i| i >= parties) {
        return Err(Error::validation(
            "subsystem_index",
            alloc::format!("cannot keep {keep:?} of {parties} subsystems"),
        ));
    }
    Ok(k)
}

/// Digits of a flat index in mixed radix `dims` (big-endian).
pub(crate) fn split_index(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut digits = alloc::vec![0; dims.len()];
    for (k, &d) in dims.iter().enumerate().rev() {
        digits[k] = idx % d;
        idx /= d;
    }
    digits
}

pub(crate) fn join_index(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (&i, &d)| acc * d + i)
}

/// `map[old_index] = new_index` after reordering subsystems to `order`.
fn permutation_map(dims: &[usize], order: &[usize]) -> Vec<usize> {
    let new_dims: Vec<usize> = order.iter().map(|&i| dims[i]).collect();
    let total: usize = dims.iter().product();
    (0..total)
        .map(|idx| {
            let digits = split_index(idx, dims);
            let new_digits: Vec<usize> = order.iter().map(|&i| digits[i]).collect();
            join_index(&new_digits, &new_dims)
        })
        .collect()
}

fn permute_vector(v: &[Complex64], dims: &[usize], order: &[usize]) -> Vec<Complex64> {
    let map = permutation_map(dims, order);
    let mut out = alloc::vec![Complex64::new(0.0, 0.0); v.len()];
    for (old, &new) in map.iter().enumerate() {
        out[new] = v[old];
    }
    out
}
