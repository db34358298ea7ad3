use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::measures::{pure_value, reduced_function_unchecked, MeasureId, ReducedFunctionId};
use crate::numkit::{eig_hermitian, majorizes, ComplexMatrix, Spectrum};
use crate::random::{haar_isometry, random_density, rng_for, simplex_point};
use crate::states::{flagged_superposition, Cut, PureState};

/// A mixture counts as a violation only when `h(mix)` falls this far below
/// the average.
pub const DEFICIT_TOL: f64 = 1e-9;
/// `|h(mix) − average|` at or below this is an exact equality.
pub const EQUALITY_TOL: f64 = 1e-12;
// equality with nearly identical spectra or weights is not evidence of
// non-strictness
const DISTINCT_TOL: f64 = 1e-3;
const LOGGED: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrictVerdict {
    StrictCandidate,
    NonStrictWitnessed,
    ConcavityViolated,
}

impl fmt::Display for StrictVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StrictVerdict::StrictCandidate => "STRICT_CANDIDATE",
            StrictVerdict::NonStrictWitnessed => "NON_STRICT_WITNESSED",
            StrictVerdict::ConcavityViolated => "CONCAVITY_VIOLATED",
        })
    }
}

/// One mixture `tρ + (1−t)σ` with `δ(ρ) = x`, `δ(σ) = y`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixingSample {
    /// Sample index, or `None` for a fixed witness.
    pub index: Option<usize>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub t: f64,
    /// Spectrum of the mixture.
    pub mixed: Vec<f64>,
    /// `t·h(x) + (1−t)·h(y) − h(mix)`; positive means concavity fails.
    pub deficit: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcavityReport {
    pub function: ReducedFunctionId,
    pub dimension: usize,
    pub samples: usize,
    pub seed: u64,
    pub violations: Vec<MixingSample>,
    /// The first few equalities found (fixed witnesses first).
    pub equality_witnesses: Vec<MixingSample>,
    pub equality_count: usize,
    /// Largest deficit seen over all samples.
    pub max_deficit: f64,
    pub strict: StrictVerdict,
    /// Concavity of this function is conjectured, not proven.
    pub conjectural: bool,
}

fn evaluate(
    h: ReducedFunctionId,
    d: usize,
    index: Option<usize>,
    x: Vec<f64>,
    y: Vec<f64>,
    t: f64,
    mixed: Vec<f64>,
) -> MixingSample {
    let f = |v: &[f64]| reduced_function_unchecked(h, &Spectrum::new(v.to_vec()).expect("finite"), d);
    let deficit = t * f(&x) + (1.0 - t) * f(&y) - f(&mixed);
    MixingSample {
        index,
        x: sorted(x),
        y: sorted(y),
        t,
        mixed: sorted(mixed),
        deficit,
    }
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

fn is_equality(s: &MixingSample) -> bool {
    let distinct = s.x.iter().zip(&s.y).any(|(a, b)| (a - b).abs() > DISTINCT_TOL);
    s.deficit.abs() <= EQUALITY_TOL && distinct && s.t.min(1.0 - s.t) >= DISTINCT_TOL
}

/// Spectrum of `t·diag(x) + (1−t)·U diag(y) U†`.
fn rotated_mix<R: Rng + ?Sized>(rng: &mut R, x: &[f64], y: &[f64], t: f64) -> Vec<f64> {
    let d = x.len();
    let u = haar_isometry(rng, d, d);
    let mut m = ComplexMatrix::from_real_diagonal(x).scaled(t);
    for (k, &yk) in y.iter().enumerate() {
        m.add_scaled_projector(&u.column(k), (1.0 - t) * yk);
    }
    eig_hermitian(&m.hermitian_part())
        .expect("Hermitian by construction")
        .values
        .into_vec()
        .into_iter()
        .map(|v| v.max(0.0))
        .collect()
}

/// Fixed pair with `ĥ(½ρ + ½σ) = ½ĥ(ρ) + ½ĥ(σ)` for distinct spectra.
fn hat_witness(d: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; d];
    let mut y = vec![0.0; d];
    x[..3].fill(1.0 / 3.0);
    y[..2].fill(0.5);
    (x, y)
}

/// Samples random spectrum pairs and weights and compares `h(mix)` with the
/// weighted average.
///
/// Even samples mix commuting states (diagonal in one basis, in the random
/// order the simplex sampler produces); odd samples rotate the second state
/// by a Haar unitary. Sample `i` draws from stream `i` of `seed`, so the
/// report does not depend on evaluation order.
pub fn concavity_scan(h: ReducedFunctionId, d: usize, samples: usize, seed: u64) -> Result<ConcavityReport> {
    if d < 2 {
        return Err(Error::validation("dimension", "need d >= 2"));
    }
    if samples == 0 {
        return Err(Error::validation("samples", "need at least one sample"));
    }
    if let ReducedFunctionId::Ek(k) = h {
        if k < 2 {
            return Err(Error::validation("k_at_least_2", alloc::format!("k = {k}")));
        }
    }
    let mut all = Vec::with_capacity(samples + 1);
    if h == ReducedFunctionId::Hat && d >= 3 {
        let (x, y) = hat_witness(d);
        let mixed = x.iter().zip(&y).map(|(a, b)| 0.5 * a + 0.5 * b).collect();
        all.push(evaluate(h, d, None, x, y, 0.5, mixed));
    }
    for i in 0..samples {
        let mut rng = rng_for(seed, i as u64);
        let x = simplex_point(&mut rng, d);
        let y = simplex_point(&mut rng, d);
        let t: f64 = rng.random();
        let mixed = if i % 2 == 0 {
            x.iter().zip(&y).map(|(a, b)| t * a + (1.0 - t) * b).collect()
        } else {
            rotated_mix(&mut rng, &x, &y, t)
        };
        all.push(evaluate(h, d, Some(i), x, y, t, mixed));
    }

    let max_deficit = all.iter().map(|s| s.deficit).fold(f64::NEG_INFINITY, f64::max);
    let violations: Vec<MixingSample> = all.iter().filter(|s| s.deficit > DEFICIT_TOL).cloned().collect();
    let equalities: Vec<&MixingSample> = all.iter().filter(|s| is_equality(s)).collect();
    let strict = if !violations.is_empty() {
        StrictVerdict::ConcavityViolated
    } else if !equalities.is_empty() {
        StrictVerdict::NonStrictWitnessed
    } else {
        StrictVerdict::StrictCandidate
    };
    Ok(ConcavityReport {
        function: h,
        dimension: d,
        samples,
        seed,
        violations,
        equality_count: equalities.len(),
        equality_witnesses: equalities.into_iter().take(LOGGED).cloned().collect(),
        max_deficit,
        strict,
        conjectural: matches!(h, ReducedFunctionId::Hat | ReducedFunctionId::LogHat),
    })
}

/// Both sides of `E(Ψ; A|BC) ≥ t·E(ψ) + (1−t)·E(φ)` for the flagged state
/// `|Ψ⟩ = √t|ψ⟩|0⟩ + √(1−t)|φ⟩|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixingMargin {
    pub flagged: f64,
    pub average: f64,
}

impl MixingMargin {
    pub fn holds(&self) -> bool {
        self.flagged >= self.average - DEFICIT_TOL
    }
}

pub fn mixing_margin(psi: &PureState, phi: &PureState, t: f64, measure: MeasureId) -> Result<MixingMargin> {
    psi.signature().require_bipartite()?;
    let big = flagged_superposition(psi, phi, t)?;
    let flagged = pure_value(measure, &big.bipartition(&Cut::a_bc())?)?;
    let average = t * pure_value(measure, psi)? + (1.0 - t) * pure_value(measure, phi)?;
    Ok(MixingMargin { flagged, average })
}

/// Whether the flagged superposition carries at least the average
/// entanglement of its branches (up to [`DEFICIT_TOL`]).
pub fn mixing_monotonicity_check(psi: &PureState, phi: &PureState, t: f64, measure: MeasureId) -> Result<bool> {
    Ok(mixing_margin(psi, phi, t, measure)?.holds())
}

#[derive(Debug, Clone, PartialEq)]
pub struct MajorizationReport {
    pub pairs: usize,
    pub checks: usize,
    /// `(pair index, t)` of every failure.
    pub failures: Vec<(usize, f64)>,
}

/// Checks `δ(tρ + (1−t)σ) ≺ t·δ(ρ) + (1−t)·δ(σ)` on random `d×d` density
/// matrices for `t = 0.1, …, 0.9`.
pub fn mixture_majorization_check(pairs: usize, d: usize, seed: u64) -> Result<MajorizationReport> {
    if d < 2 {
        return Err(Error::validation("dimension", "need d >= 2"));
    }
    let mut failures = Vec::new();
    let mut checks = 0;
    for i in 0..pairs {
        let mut rng = rng_for(seed, i as u64);
        let rho = random_density(&mut rng, d);
        let sigma = random_density(&mut rng, d);
        let dr = eig_hermitian(&rho)?.values;
        let ds = eig_hermitian(&sigma)?.values;
        for step in 1..10 {
            let t = step as f64 / 10.0;
            let m = rho.mix(&sigma, t);
            let dm: Vec<f64> = eig_hermitian(&m)?
                .values
                .into_vec()
                .into_iter()
                .map(|v| v.max(0.0))
                .collect();
            let avg: Vec<f64> = dr.mix(&ds, t).into_vec().into_iter().map(|v| v.max(0.0)).collect();
            checks += 1;
            if !majorizes(&Spectrum::new(dm)?, &Spectrum::new(avg)?)? {
                failures.push((i, t));
            }
        }
    }
    Ok(MajorizationReport {
        pairs,
        checks,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_unit_vector;
    use crate::states::{make_bell, DimSignature};

    #[test]
    fn hat_witness_is_exact() {
        let r = concavity_scan(ReducedFunctionId::Hat, 3, 50, 1).unwrap();
        let w = &r.equality_witnesses[0];
        assert_eq!(w.index, None);
        assert!(w.deficit.abs() <= 1e-12);
        assert!((w.mixed[0] - 5.0 / 12.0).abs() < 1e-15);
        assert!(r.conjectural);
    }

    #[test]
    fn hat_fails_concavity_beyond_qubits() {
        // a spectrum mixed with its own permutation
        let h = |v: &[f64]| reduced_function_unchecked(ReducedFunctionId::Hat, &Spectrum::new(v.to_vec()).unwrap(), 3);
        let deficit = 0.5 * h(&[0.5, 0.3, 0.2]) + 0.5 * h(&[0.5, 0.2, 0.3]) - h(&[0.5, 0.25, 0.25]);
        assert!(deficit > 0.03);
        let r = concavity_scan(ReducedFunctionId::Hat, 3, 200, 1).unwrap();
        assert_eq!(r.strict, StrictVerdict::ConcavityViolated);
        let r = concavity_scan(ReducedFunctionId::Hat, 2, 2000, 1).unwrap();
        assert_eq!(r.strict, StrictVerdict::StrictCandidate);
    }

    #[test]
    fn concave_suite_small_scan() {
        for h in ReducedFunctionId::CONCAVE_SUITE {
            for d in 2..=4 {
                let r = concavity_scan(h, d, 400, 3).unwrap();
                assert!(r.violations.is_empty(), "{h} d={d}: {:?}", r.violations.first());
            }
        }
    }

    #[test]
    fn e2_is_not_strict() {
        let r = concavity_scan(ReducedFunctionId::E2, 3, 200, 5).unwrap();
        assert_eq!(r.strict, StrictVerdict::NonStrictWitnessed);
        let t = concavity_scan(ReducedFunctionId::Tangle, 3, 200, 5).unwrap();
        assert_eq!(t.strict, StrictVerdict::StrictCandidate);
    }

    #[test]
    fn scan_is_deterministic() {
        let a = concavity_scan(ReducedFunctionId::Neg, 3, 100, 9).unwrap();
        let b = concavity_scan(ReducedFunctionId::Neg, 3, 100, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn scan_rejects_bad_input() {
        assert_eq!(
            concavity_scan(ReducedFunctionId::E2, 1, 10, 0).unwrap_err().invariant(),
            Some("dimension")
        );
        assert_eq!(
            concavity_scan(ReducedFunctionId::E2, 3, 0, 0).unwrap_err().invariant(),
            Some("samples")
        );
    }

    fn random_pure(seed: u64, i: u64) -> PureState {
        let mut rng = rng_for(seed, i);
        PureState::normalized(random_unit_vector(&mut rng, 9), DimSignature::new(&[3, 3]).unwrap()).unwrap()
    }

    #[test]
    fn mixing_edges_are_equalities() {
        let psi = random_pure(1, 0);
        let phi = random_pure(1, 1);
        for t in [0.0, 1.0] {
            let m = mixing_margin(&psi, &phi, t, MeasureId::Tangle).unwrap();
            assert!((m.flagged - m.average).abs() < 1e-10);
        }
        let m = mixing_margin(&psi, &psi, 0.3, MeasureId::EMin).unwrap();
        assert!((m.flagged - m.average).abs() < 1e-10);
    }

    #[test]
    fn mixing_holds_on_random_pairs() {
        for i in 0..40 {
            let psi = random_pure(2, 2 * i);
            let phi = random_pure(2, 2 * i + 1);
            for m in [MeasureId::E2Raw, MeasureId::EMin, MeasureId::Tangle] {
                assert!(mixing_monotonicity_check(&psi, &phi, 0.37, m).unwrap());
            }
        }
    }

    #[test]
    fn mixing_needs_matching_shapes() {
        let psi = random_pure(3, 0);
        assert!(mixing_monotonicity_check(&psi, &make_bell(), 0.5, MeasureId::Tangle).is_err());
    }

    #[test]
    fn mixtures_are_majorized() {
        let r = mixture_majorization_check(50, 3, 4).unwrap();
        assert_eq!(r.checks, 450);
        assert!(r.failures.is_empty());
    }
}
