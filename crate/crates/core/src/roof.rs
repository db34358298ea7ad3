//! Convex-roof extension of pure-state measures.
//!
//! Every pure-state decomposition of a rank-`r` density matrix with `m`
//! members is obtained from its spectral decomposition by an m×r isometry
//! `V`: `√q_k|φ_k⟩ = Σ_j V_kj √p_j|ψ_j⟩`. The optimiser searches over `V`
//! with random restarts and derivative-free geodesic descent (left
//! multiplication by `exp(iεH)` for random Hermitian `H`), which copes with
//! the non-smooth measures (`E_min`, partial negativity).
//!
//! The returned value is always attained by the returned ensemble, so it is
//! a certified upper bound on the true roof, never a lower bound.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;
use rand::Rng;

use crate::error::{Error, Result};
use crate::measures::{reduced_function_unchecked, MeasureId, ReducedFunctionId};
use crate::numkit::{eig_hermitian, ComplexMatrix, Spectrum, RANK_TOL, TRACE_TOL};
use crate::random::{complex_normal, haar_isometry, rng_for};
use crate::states::{partial_transpose, schmidt, DensityMatrix, DimSignature, PureState};

/// Largest numerical rank the optimiser accepts.
pub const MAX_RANK: usize = 8;
/// Members with weight below this are dropped from an ensemble.
pub const WEIGHT_FLOOR: f64 = 1e-12;
const ISOMETRY_TOL: f64 = 1e-9;
const REJECTION_STREAK: usize = 8;
const CONVERGENCE_WINDOW: usize = 100;
const MIN_STEP: f64 = 1e-12;

/// Pure-state decomposition `ρ = Σ_j p_j |ψ_j⟩⟨ψ_j|`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    probabilities: Vec<f64>,
    states: Vec<PureState>,
}

impl Ensemble {
    pub fn new(probabilities: Vec<f64>, states: Vec<PureState>) -> Result<Self> {
        if probabilities.len() != states.len() || states.is_empty() {
            return Err(Error::validation(
                "ensemble_shape",
                "need one probability per state and at least one state",
            ));
        }
        if probabilities.iter().any(|&p| p <= 0.0 || !p.is_finite()) {
            return Err(Error::validation("positive_weight", "weights must be > 0"));
        }
        let s: f64 = probabilities.iter().sum();
        if (s - 1.0).abs() > TRACE_TOL {
            return Err(Error::validation("unit_sum", alloc::format!("weights sum to {s}")));
        }
        let sig = states[0].signature();
        if states.iter().any(|s| s.signature() != sig) {
            return Err(Error::validation("signature", "members have different shapes"));
        }
        Ok(Ensemble { probabilities, states })
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn states(&self) -> &[PureState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn signature(&self) -> &DimSignature {
        self.states[0].signature()
    }

    /// `Σ p_j |ψ_j⟩⟨ψ_j|`.
    pub fn density_matrix(&self) -> ComplexMatrix {
        let n = self.signature().total();
        let mut m = ComplexMatrix::zeros(n, n);
        for (p, s) in self.probabilities.iter().zip(&self.states) {
            m.add_scaled_projector(s.amplitudes(), *p);
        }
        m
    }

    /// `Σ p_j E(ψ_j)` using the measure's reduced function.
    pub fn average(&self, measure: MeasureId) -> Result<f64> {
        let d = self.signature().dims()[0];
        let h = measure.reduced_function();
        let mut acc = 0.0;
        for (p, s) in self.probabilities.iter().zip(&self.states) {
            acc += p * reduced_function_unchecked(h, &schmidt(s)?.reduced_spectrum(), d);
        }
        Ok(acc)
    }

    /// Largest Schmidt rank among the members.
    pub fn max_schmidt_rank(&self) -> Result<usize> {
        let mut k = 0;
        for s in &self.states {
            k = k.max(schmidt(s)?.rank());
        }
        Ok(k)
    }
}

/// Spectral decomposition restricted to eigenvalues above the rank
/// tolerance.
pub fn eig_ensemble(rho: &DensityMatrix) -> Result<Ensemble> {
    let e = eig_hermitian(rho.matrix())?;
    let mut probabilities = Vec::new();
    let mut states = Vec::new();
    for (k, &lambda) in e.values.values().iter().enumerate() {
        if lambda > RANK_TOL {
            probabilities.push(lambda);
            states.push(PureState::normalized(e.vectors.column(k), rho.signature().clone())?);
        }
    }
    let s: f64 = probabilities.iter().sum();
    for p in probabilities.iter_mut() {
        *p /= s;
    }
    Ensemble::new(probabilities, states)
}

/// Maps `base` through the isometry `v` (m×r, `r = base.len()`).
pub fn apply_isometry(base: &Ensemble, v: &ComplexMatrix) -> Result<Ensemble> {
    if v.cols() != base.len() || v.rows() < v.cols() {
        return Err(Error::validation(
            "isometry_shape",
            alloc::format!("{}x{} matrix for an ensemble of {}", v.rows(), v.cols(), base.len()),
        ));
    }
    let defect = v.isometry_defect();
    if defect > ISOMETRY_TOL {
        return Err(Error::validation(
            "isometry",
            alloc::format!("V^dag V deviates from identity by {defect:e}"),
        ));
    }
    let weighted = weighted_columns(base);
    let (probabilities, states) = mix_members(&weighted, v);
    let sig = base.signature().clone();
    let states = states
        .into_iter()
        .map(|amps| PureState::normalized(amps, sig.clone()))
        .collect::<Result<Vec<_>>>()?;
    Ensemble::new(probabilities, states)
}

/// `√p_j |ψ_j⟩` as rows of amplitudes.
fn weighted_columns(base: &Ensemble) -> Vec<Vec<Complex64>> {
    base.probabilities
        .iter()
        .zip(&base.states)
        .map(|(p, s)| s.amplitudes().iter().map(|z| z * Float::sqrt(*p)).collect())
        .collect()
}

/// Normalized members (and their weights) of `V·W`; members lighter than
/// [`WEIGHT_FLOOR`] are dropped and the rest renormalized.
fn mix_members(weighted: &[Vec<Complex64>], v: &ComplexMatrix) -> (Vec<f64>, Vec<Vec<Complex64>>) {
    let n = weighted[0].len();
    let mut probabilities = Vec::with_capacity(v.rows());
    let mut states = Vec::with_capacity(v.rows());
    for k in 0..v.rows() {
        let mut amps = vec![Complex64::new(0.0, 0.0); n];
        for (j, w) in weighted.iter().enumerate() {
            let c = v[(k, j)];
            for (a, x) in amps.iter_mut().zip(w) {
                *a += c * x;
            }
        }
        let q: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if q < WEIGHT_FLOOR {
            continue;
        }
        let norm = Float::sqrt(q);
        probabilities.push(q);
        states.push(amps.into_iter().map(|z| z / norm).collect());
    }
    let total: f64 = probabilities.iter().sum();
    for p in probabilities.iter_mut() {
        *p /= total;
    }
    (probabilities, states)
}

/// Optimiser settings.
#[derive(Debug, Clone, PartialEq)]
pub struct RoofOptions {
    /// Ensemble sizes to sweep; `None` means `r, r+1, …, 2r`.
    pub ensemble_sizes: Option<Vec<usize>>,
    pub restarts: usize,
    pub seed: u64,
    /// Relative improvement over a window below which a restart stops.
    pub tol: f64,
    pub max_iterations: usize,
}

impl Default for RoofOptions {
    fn default() -> Self {
        RoofOptions {
            ensemble_sizes: None,
            restarts: 32,
            seed: 42,
            tol: 1e-8,
            max_iterations: 2000,
        }
    }
}

impl RoofOptions {
    fn sizes(&self, rank: usize) -> Result<Vec<usize>> {
        let sizes = match &self.ensemble_sizes {
            Some(s) if !s.is_empty() => s.clone(),
            _ => (rank..=2 * rank).collect(),
        };
        if let Some(&m) = sizes.iter().find(|&&m| m < rank) {
            return Err(Error::validation(
                "ensemble_size",
                alloc::format!("ensemble size {m} below rank {rank}"),
            ));
        }
        Ok(sizes)
    }
}

/// Outcome of a roof optimisation.
#[derive(Debug, Clone)]
pub struct RoofResult {
    /// `Σ p_j E(ψ_j)` of `best_ensemble`.
    pub value: f64,
    pub best_ensemble: Ensemble,
    pub restarts_used: usize,
    /// Whether the winning restart stopped on the improvement criterion
    /// rather than the iteration cap.
    pub converged: bool,
}

/// Value of one ensemble member, as a function of its (unnormalized)
/// amplitudes.
#[derive(Debug, Clone, Copy)]
pub(crate) enum MemberCost {
    /// `h` of the A-spectrum across the `d_a ⊗ d_b` split.
    Entanglement { h: ReducedFunctionId, da: usize, db: usize },
    /// `h` of the squared moduli of the amplitudes (computational basis).
    Coherence { h: ReducedFunctionId },
}

impl MemberCost {
    fn for_measure(measure: MeasureId, sig: &DimSignature) -> Self {
        MemberCost::Entanglement {
            h: measure.reduced_function(),
            da: sig.dims()[0],
            db: sig.dims()[1],
        }
    }

    /// `amps` has squared norm `q > 0`.
    fn eval(&self, amps: &[Complex64], q: f64) -> f64 {
        match *self {
            MemberCost::Entanglement { h, da, db } => {
                reduced_function_unchecked(h, &member_spectrum(amps, da, db, q), da)
            }
            MemberCost::Coherence { h } => {
                let probs = amps.iter().map(|z| z.norm_sqr() / q).collect();
                let spectrum = Spectrum::new(probs).expect("finite");
                reduced_function_unchecked(h, &spectrum, amps.len())
            }
        }
    }

    fn average(&self, ensemble: &Ensemble) -> f64 {
        ensemble
            .probabilities
            .iter()
            .zip(&ensemble.states)
            .map(|(p, s)| p * self.eval(s.amplitudes(), 1.0))
            .sum()
    }
}

/// Objective over isometries for a fixed base ensemble.
struct Objective {
    weighted: Vec<Vec<Complex64>>,
    cost: MemberCost,
}

impl Objective {
    fn eval(&self, v: &ComplexMatrix) -> f64 {
        let n = self.weighted[0].len();
        let mut total = 0.0;
        let mut amps = vec![Complex64::new(0.0, 0.0); n];
        for k in 0..v.rows() {
            amps.iter_mut().for_each(|a| *a = Complex64::new(0.0, 0.0));
            for (j, w) in self.weighted.iter().enumerate() {
                let c = v[(k, j)];
                for (a, x) in amps.iter_mut().zip(w) {
                    *a += c * x;
                }
            }
            let q: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
            if q < WEIGHT_FLOOR {
                continue;
            }
            total += q * self.cost.eval(&amps, q);
        }
        total
    }
}

/// Spectrum of the A-reduction of an unnormalized vector of squared norm `q`.
fn member_spectrum(amps: &[Complex64], da: usize, db: usize, q: f64) -> Spectrum {
    let mut rho = ComplexMatrix::zeros(da, da);
    for i in 0..da {
        for j in i..da {
            let v: Complex64 = (0..db)
                .map(|t| amps[i * db + t] * amps[j * db + t].conj())
                .sum::<Complex64>()
                / q;
            rho[(i, j)] = v;
            rho[(j, i)] = v.conj();
        }
    }
    let mut values = eig_hermitian(&rho)
        .expect("reduced matrix is Hermitian by construction")
        .values
        .into_vec();
    for x in values.iter_mut() {
        *x = x.max(0.0);
    }
    Spectrum::new(values).expect("finite")
}

struct RestartOutcome {
    value: f64,
    isometry: ComplexMatrix,
    converged: bool,
}

fn run_restart(objective: &Objective, rank: usize, m: usize, index: usize, opts: &RoofOptions) -> RestartOutcome {
    let mut rng = rng_for(opts.seed, index as u64);
    let mut v = if index == 0 {
        // start from the spectral decomposition itself
        let mut e = ComplexMatrix::zeros(m, rank);
        for j in 0..rank {
            e[(j, j)] = Complex64::new(1.0, 0.0);
        }
        e
    } else {
        haar_isometry(&mut rng, m, rank)
    };
    let mut value = objective.eval(&v);
    let mut step = 0.5;
    let mut streak = 0;
    let mut window_start = value;
    let mut converged = false;

    for it in 1..=opts.max_iterations {
        if value <= 0.0 {
            converged = true;
            break;
        }
        let u = random_unitary_step(&mut rng, m, step);
        let candidate = u.matmul(&v);
        let c = objective.eval(&candidate);
        if c < value {
            value = c;
            v = candidate;
            streak = 0;
            step = (step * 1.5).min(1.0);
        } else {
            streak += 1;
            if streak >= REJECTION_STREAK {
                step *= 0.5;
                streak = 0;
            }
        }
        if step < MIN_STEP {
            converged = true;
            break;
        }
        if it % CONVERGENCE_WINDOW == 0 {
            let gain = (window_start - value) / window_start.abs().max(f64::MIN_POSITIVE);
            if gain < opts.tol {
                converged = true;
                break;
            }
            window_start = value;
        }
    }
    RestartOutcome {
        value,
        isometry: v,
        converged,
    }
}

/// `exp(i·step·H/‖H‖)` for a random Hermitian `H`.
fn random_unitary_step<R: Rng + ?Sized>(rng: &mut R, m: usize, step: f64) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(m, m);
    for i in 0..m {
        h[(i, i)] = Complex64::new(complex_normal(rng).re, 0.0);
        for j in (i + 1)..m {
            let z = complex_normal(rng) * Float::sqrt(0.5);
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
        }
    }
    let scale = h.max_abs().max(f64::MIN_POSITIVE);
    let e = eig_hermitian(&h.scaled(step / scale)).expect("Hermitian by construction");
    let mut u = ComplexMatrix::zeros(m, m);
    for (k, &theta) in e.values.values().iter().enumerate() {
        let col = e.vectors.column(k);
        let phase = Complex64::from_polar(1.0, theta);
        for i in 0..m {
            let a = col[i] * phase;
            for j in 0..m {
                u[(i, j)] += a * col[j].conj();
            }
        }
    }
    u
}

fn require_rank(rho: &DensityMatrix) -> Result<usize> {
    let rank = rho.rank();
    if rank > MAX_RANK {
        return Err(Error::capability(alloc::format!(
            "rank {rank} exceeds the supported maximum {MAX_RANK}"
        )));
    }
    Ok(rank)
}

/// Best ensemble average of `measure` found over decompositions of `rho`.
pub fn roof_value(rho: &DensityMatrix, measure: MeasureId, opts: &RoofOptions) -> Result<RoofResult> {
    rho.signature().require_bipartite()?;
    roof_with_cost(rho, MemberCost::for_measure(measure, rho.signature()), opts)
}

pub(crate) fn roof_with_cost(rho: &DensityMatrix, cost: MemberCost, opts: &RoofOptions) -> Result<RoofResult> {
    let rank = require_rank(rho)?;
    let base = eig_ensemble(rho)?;
    if rank == 1 {
        return Ok(RoofResult {
            value: cost.average(&base),
            best_ensemble: base,
            restarts_used: 1,
            converged: true,
        });
    }
    let sizes = opts.sizes(rank)?;
    let objective = Objective {
        weighted: weighted_columns(&base),
        cost,
    };
    let restarts = opts.restarts.max(1);
    // ties go to the lowest restart index
    let mut best: Option<RestartOutcome> = None;
    for index in 0..restarts {
        let m = sizes[index % sizes.len()];
        let outcome = run_restart(&objective, rank, m, index, opts);
        if best.as_ref().is_none_or(|b| outcome.value < b.value) {
            best = Some(outcome);
        }
    }
    let best = best.expect("at least one restart");
    let ensemble = apply_isometry(&base, &best.isometry)?;
    Ok(RoofResult {
        value: cost.average(&ensemble),
        best_ensemble: ensemble,
        restarts_used: restarts,
        converged: best.converged,
    })
}

/// Bounds on the Schmidt number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchmidtNumberBounds {
    pub lower: usize,
    pub upper: usize,
}

/// Lower bound: 2 if the partial transpose has a negative eigenvalue, else 1.
/// Upper bound: the smallest `k` for which the optimiser finds a
/// decomposition whose members all have Schmidt rank ≤ `k`.
pub fn schmidt_number(rho: &DensityMatrix, opts: &RoofOptions) -> Result<SchmidtNumberBounds> {
    rho.signature().require_bipartite()?;
    let rank = require_rank(rho)?;
    let k_max = rho.dims()[0].min(rho.dims()[1]);
    if rank == 1 {
        let psi = eig_ensemble(rho)?.states[0].clone();
        let r = schmidt(&psi)?.rank();
        return Ok(SchmidtNumberBounds { lower: r, upper: r });
    }
    let pt = partial_transpose(rho, 0)?;
    let low_eig = eig_hermitian(&pt)?.values.values().last().copied().unwrap_or(0.0);
    let lower = if low_eig < -RANK_TOL { 2 } else { 1 };
    for k in lower..k_max {
        let found = roof_value(rho, MeasureId::Ek(k + 1), opts)?;
        if found.value == 0.0 && found.best_ensemble.max_schmidt_rank()? <= k {
            return Ok(SchmidtNumberBounds { lower, upper: k });
        }
    }
    Ok(SchmidtNumberBounds {
        lower,
        upper: k_max.max(lower),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_density, random_density_of_rank};
    use crate::states::{basis_state, make_bell, make_max_entangled};

    fn quick() -> RoofOptions {
        RoofOptions {
            restarts: 4,
            max_iterations: 400,
            ..RoofOptions::default()
        }
    }

    #[test]
    fn eig_ensemble_of_pure_state_has_one_member() {
        let e = eig_ensemble(&make_bell().density()).unwrap();
        assert_eq!(e.len(), 1);
        assert!((e.probabilities()[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eig_ensemble_of_maximally_mixed_qubit() {
        let rho = DensityMatrix::new(
            ComplexMatrix::identity(4).scaled(0.25),
            DimSignature::new(&[2, 2]).unwrap(),
        )
        .unwrap();
        let e = eig_ensemble(&rho).unwrap();
        assert_eq!(e.len(), 4);
        assert!(e.probabilities().iter().all(|p| (p - 0.25).abs() < 1e-14));
        assert!(e.states()[0].inner(&e.states()[1]).norm() < 1e-14);
    }

    #[test]
    fn eig_ensemble_reconstructs() {
        let mut rng = rng_for(8, 0);
        let rho = DensityMatrix::new(random_density(&mut rng, 6), DimSignature::new(&[2, 3]).unwrap()).unwrap();
        let e = eig_ensemble(&rho).unwrap();
        assert!(e.density_matrix().max_abs_diff(rho.matrix()) < 1e-9);
    }

    #[test]
    fn identity_isometry_is_a_no_op() {
        let mut rng = rng_for(4, 0);
        let rho = DensityMatrix::new(
            random_density_of_rank(&mut rng, 4, 3),
            DimSignature::new(&[2, 2]).unwrap(),
        )
        .unwrap();
        let base = eig_ensemble(&rho).unwrap();
        let same = apply_isometry(&base, &ComplexMatrix::identity(3)).unwrap();
        for (a, b) in same.states().iter().zip(base.states()) {
            assert!((a.inner(b).norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn haar_isometry_preserves_density() {
        let mut rng = rng_for(6, 0);
        let rho = DensityMatrix::new(
            random_density_of_rank(&mut rng, 6, 3),
            DimSignature::new(&[3, 2]).unwrap(),
        )
        .unwrap();
        let base = eig_ensemble(&rho).unwrap();
        for m in 3..7 {
            let v = haar_isometry(&mut rng, m, 3);
            let e = apply_isometry(&base, &v).unwrap();
            assert!(e.density_matrix().max_abs_diff(rho.matrix()) < 1e-9);
        }
    }

    #[test]
    fn non_isometry_is_rejected() {
        let base = eig_ensemble(&make_bell().density()).unwrap();
        let v = ComplexMatrix::from_real(2, 1, &[1.0, 1.0]).unwrap();
        assert_eq!(apply_isometry(&base, &v).unwrap_err().invariant(), Some("isometry"));
    }

    #[test]
    fn pure_roof_is_the_pure_value() {
        let r = roof_value(&make_max_entangled(3).unwrap().density(), MeasureId::E2Norm, &quick()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        assert_eq!(r.restarts_used, 1);
    }

    #[test]
    fn separable_mixture_has_zero_tangle_roof() {
        // equal mixture of |00⟩ and |11⟩: eigenbasis is the product basis
        let a = basis_state(&[2, 2], &[0, 0]).unwrap().density();
        let b = basis_state(&[2, 2], &[1, 1]).unwrap().density();
        let rho = a.mix(&b, 0.3).unwrap();
        let r = roof_value(&rho, MeasureId::Tangle, &quick()).unwrap();
        assert!(r.value < 1e-6);
    }

    #[test]
    fn roof_is_deterministic_and_bounded_by_spectral_ensemble() {
        let mut rng = rng_for(21, 0);
        let rho = DensityMatrix::new(
            random_density_of_rank(&mut rng, 4, 2),
            DimSignature::new(&[2, 2]).unwrap(),
        )
        .unwrap();
        let a = roof_value(&rho, MeasureId::Tangle, &quick()).unwrap();
        let b = roof_value(&rho, MeasureId::Tangle, &quick()).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        let spectral = eig_ensemble(&rho).unwrap().average(MeasureId::Tangle).unwrap();
        assert!(a.value <= spectral + 1e-12);
        assert!((a.best_ensemble.average(MeasureId::Tangle).unwrap() - a.value).abs() < 1e-10);
        assert!(a.best_ensemble.density_matrix().max_abs_diff(rho.matrix()) < 1e-9);
    }

    #[test]
    fn rank_above_limit_is_a_capability_error() {
        let mut rng = rng_for(2, 0);
        let rho = DensityMatrix::new(random_density(&mut rng, 9), DimSignature::new(&[3, 3]).unwrap()).unwrap();
        assert!(matches!(
            roof_value(&rho, MeasureId::Tangle, &quick()),
            Err(Error::Capability(_))
        ));
    }

    #[test]
    fn ensemble_sizes_below_rank_are_rejected() {
        let a = basis_state(&[2, 2], &[0, 0]).unwrap().density();
        let b = basis_state(&[2, 2], &[1, 1]).unwrap().density();
        let rho = a.mix(&b, 0.5).unwrap();
        let opts = RoofOptions {
            ensemble_sizes: Some(vec![1]),
            ..quick()
        };
        assert_eq!(
            roof_value(&rho, MeasureId::Tangle, &opts).unwrap_err().invariant(),
            Some("ensemble_size")
        );
    }

    #[test]
    fn schmidt_number_of_pure_and_product_states() {
        let b = schmidt_number(&make_max_entangled(3).unwrap().density(), &quick()).unwrap();
        assert_eq!(b, SchmidtNumberBounds { lower: 3, upper: 3 });
        let rho_a = DensityMatrix::new(
            ComplexMatrix::from_real(2, 2, &[0.6, 0.2, 0.2, 0.4]).unwrap(),
            DimSignature::new(&[2]).unwrap(),
        )
        .unwrap();
        let rho = rho_a.tensor(&rho_a).unwrap();
        let b = schmidt_number(&rho, &RoofOptions::default()).unwrap();
        assert_eq!(b, SchmidtNumberBounds { lower: 1, upper: 1 });
    }

    #[test]
    fn ensemble_validation() {
        let s = make_bell();
        assert_eq!(
            Ensemble::new(vec![0.5], vec![s.clone(), s.clone()])
                .unwrap_err()
                .invariant(),
            Some("ensemble_shape")
        );
        assert_eq!(
            Ensemble::new(vec![0.5, 0.4], vec![s.clone(), s.clone()])
                .unwrap_err()
                .invariant(),
            Some("unit_sum")
        );
        assert_eq!(
            Ensemble::new(vec![1.0, 0.0], vec![s.clone(), s])
                .unwrap_err()
                .invariant(),
            Some("positive_weight")
        );
    }
}
