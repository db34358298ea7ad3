use monotone_core::analysis::{
    bounds_check, coherence_ch, coherence_pure, concavity_scan, mixing_margin, mixture_majorization_check,
    ConcavityReport, MixingSample, EQUALITY_TOL,
};
use monotone_core::measures::{MeasureId, ReducedFunctionId};
use monotone_core::numkit::ComplexMatrix;
use monotone_core::random::{random_density, random_unit_vector, rng_for};
use monotone_core::roof::RoofOptions;
use monotone_core::states::{
    basis_state, make_max_entangled, make_phi, pure_from_schmidt, DensityMatrix, DimSignature, PhiParams, PhiRegime,
    PureState, State,
};
use monotone_core::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::{roof_options, to_json, Outcome};
use crate::args::{Cli, Suite};
use crate::error::{LabError, Result};

const CONCAVITY_SAMPLES: usize = 10_000;
const MIXING_PAIRS: usize = 500;
const COHERENCE_STATES: usize = 100;
const COHERENCE_TOL: f64 = 1e-10;
const DIMENSIONS: [usize; 3] = [2, 3, 4];

/// Serialized suite output plus the first failing case, if any.
pub struct SuiteReport {
    pub json: String,
    pub failure: Option<(String, String)>,
}

#[derive(Serialize)]
struct SampleDto {
    index: Option<usize>,
    x: Vec<f64>,
    y: Vec<f64>,
    t: f64,
    mixed: Vec<f64>,
    deficit: f64,
}

impl From<&MixingSample> for SampleDto {
    fn from(s: &MixingSample) -> Self {
        SampleDto {
            index: s.index,
            x: s.x.clone(),
            y: s.y.clone(),
            t: s.t,
            mixed: s.mixed.clone(),
            deficit: s.deficit,
        }
    }
}

#[derive(Serialize)]
struct ScanDto {
    function: String,
    dimension: usize,
    samples: usize,
    /// Whether a violation fails the suite. Conjectured functions are
    /// reported but not asserted.
    asserted: bool,
    violations: usize,
    equality_count: usize,
    max_deficit: f64,
    strict: String,
    first_violation: Option<SampleDto>,
    first_equality: Option<SampleDto>,
}

impl From<&ConcavityReport> for ScanDto {
    fn from(r: &ConcavityReport) -> Self {
        ScanDto {
            function: r.function.to_string(),
            dimension: r.dimension,
            samples: r.samples,
            asserted: !r.conjectural,
            violations: r.violations.len(),
            equality_count: r.equality_count,
            max_deficit: r.max_deficit,
            strict: r.strict.to_string(),
            first_violation: r.violations.first().map(SampleDto::from),
            first_equality: r.equality_witnesses.first().map(SampleDto::from),
        }
    }
}

#[derive(Serialize)]
struct ConcavitySuite {
    suite: &'static str,
    seed: u64,
    scans: Vec<ScanDto>,
    passed: bool,
}

fn concavity(seed: u64, samples: usize) -> Result<SuiteReport> {
    let functions = ReducedFunctionId::CONCAVE_SUITE
        .into_iter()
        .chain([ReducedFunctionId::Hat]);
    let mut scans = Vec::new();
    let mut failure = None;
    for h in functions {
        for d in DIMENSIONS {
            let r = concavity_scan(h, d, samples, seed)?;
            let dto = ScanDto::from(&r);
            if failure.is_none() {
                if dto.asserted && !r.violations.is_empty() {
                    failure = Some((format!("{h} violates concavity at d = {d}"), to_json(&dto)));
                }
                if h == ReducedFunctionId::Hat && d >= 3 {
                    let fixed = r.equality_witnesses.first().filter(|w| w.index.is_none());
                    if !fixed.is_some_and(|w| w.deficit.abs() <= EQUALITY_TOL) {
                        failure = Some((format!("{h} fixed witness not exact at d = {d}"), to_json(&dto)));
                    }
                }
            }
            scans.push(dto);
        }
    }
    Ok(SuiteReport {
        json: to_json(&ConcavitySuite {
            suite: "concavity",
            seed,
            scans,
            passed: failure.is_none(),
        }),
        failure,
    })
}

#[derive(Serialize)]
struct BoundsDto {
    state: String,
    measure: String,
    bound: f64,
    analytic_roof: Option<f64>,
    roof_upper: Option<f64>,
    ok: bool,
}

#[derive(Serialize)]
struct BoundsSuite {
    suite: &'static str,
    seed: u64,
    cases: Vec<BoundsDto>,
    passed: bool,
}

fn density(m: ComplexMatrix, dims: &[usize]) -> Result<DensityMatrix> {
    Ok(DensityMatrix::new(m, DimSignature::new(dims)?)?)
}

/// A named state with the measures to check and their exact roofs where
/// known.
type Fixture = (String, DensityMatrix, Vec<(MeasureId, Option<f64>)>);

fn bounds_corpus(seed: u64) -> Result<Vec<Fixture>> {
    const ALL: [MeasureId; 3] = [MeasureId::E2Norm, MeasureId::EMin, MeasureId::EMinReinforced];
    let pure = |m: MeasureId| (m, None);
    let zero = |m: MeasureId| (m, Some(0.0));
    let mut rng = rng_for(seed, 0);
    let random_pure = PureState::normalized(random_unit_vector(&mut rng, 9), DimSignature::new(&[3, 3])?)?;
    let phi = make_phi(&PhiParams::from_squares(
        [0.5, 0.3, 0.2],
        [0.5, 0.26, 0.24],
        PhiRegime::LargestShared,
    ))?;
    let ra = density(random_density(&mut rng, 2), &[2])?;
    let rb = density(random_density(&mut rng, 3), &[3])?;
    let classical = basis_state(&[2, 2], &[0, 1])?
        .density()
        .mix(&basis_state(&[2, 2], &[1, 0])?.density(), 0.3)?;
    Ok(vec![
        (
            "max_entangled_2".into(),
            make_max_entangled(2)?.density(),
            ALL.map(pure).to_vec(),
        ),
        (
            "max_entangled_3".into(),
            make_max_entangled(3)?.density(),
            ALL.map(pure).to_vec(),
        ),
        (
            "schmidt_squares_0.5_0.3_0.2".into(),
            pure_from_schmidt(&[0.5f64.sqrt(), 0.3f64.sqrt(), 0.2f64.sqrt()], 3, 3)?.density(),
            ALL.map(pure).to_vec(),
        ),
        ("random_pure_3x3".into(), random_pure.density(), ALL.map(pure).to_vec()),
        // roof equals E2(A|BC) = 1 - a0^2, normalized by 3/2
        (
            "phi_rho_ab".into(),
            phi.reduced(&[0, 1])?,
            vec![(MeasureId::E2Norm, Some(0.75))],
        ),
        ("random_product_2x3".into(), ra.tensor(&rb)?, ALL.map(zero).to_vec()),
        ("classical_mixture".into(), classical, ALL.map(zero).to_vec()),
    ])
}

fn bounds(seed: u64, roof: &RoofOptions) -> Result<SuiteReport> {
    let mut cases = Vec::new();
    let mut failure = None;
    for (name, rho, checks) in bounds_corpus(seed)? {
        for (measure, analytic) in checks {
            let r = bounds_check(&rho, measure, analytic, roof)?;
            let dto = BoundsDto {
                state: name.clone(),
                measure: measure.to_string(),
                bound: r.bound,
                analytic_roof: r.analytic_roof,
                roof_upper: r.roof_upper,
                ok: r.ok,
            };
            if !r.ok && failure.is_none() {
                failure = Some((format!("{name}: {measure} roof exceeds its bound"), to_json(&dto)));
            }
            cases.push(dto);
        }
    }
    Ok(SuiteReport {
        json: to_json(&BoundsSuite {
            suite: "bounds",
            seed,
            cases,
            passed: failure.is_none(),
        }),
        failure,
    })
}

#[derive(Serialize)]
struct MixingDto {
    measure: String,
    passed: usize,
    total: usize,
    min_margin: f64,
}

#[derive(Serialize)]
struct MixingFailure {
    pair: usize,
    measure: String,
    t: f64,
    flagged: f64,
    average: f64,
}

#[derive(Serialize)]
struct MajorizationDto {
    pairs: usize,
    checks: usize,
    failures: usize,
}

#[derive(Serialize)]
struct MixingSuite {
    suite: &'static str,
    seed: u64,
    checks: Vec<MixingDto>,
    majorization: MajorizationDto,
    passed: bool,
}

fn random_pure(rng: &mut impl Rng, dims: &[usize]) -> Result<PureState> {
    let sig = DimSignature::new(dims)?;
    Ok(PureState::normalized(random_unit_vector(rng, sig.total()), sig)?)
}

fn mixing(seed: u64, pairs: usize) -> Result<SuiteReport> {
    let measures = [MeasureId::E2Raw, MeasureId::EMin, MeasureId::Tangle];
    let mut stats: Vec<MixingDto> = measures
        .iter()
        .map(|m| MixingDto {
            measure: m.to_string(),
            passed: 0,
            total: 0,
            min_margin: f64::INFINITY,
        })
        .collect();
    let mut failure = None;
    for i in 0..pairs {
        let mut rng = rng_for(seed, i as u64);
        let psi = random_pure(&mut rng, &[3, 3])?;
        let phi = random_pure(&mut rng, &[3, 3])?;
        let t: f64 = rng.random();
        for (m, s) in measures.iter().zip(stats.iter_mut()) {
            let r = mixing_margin(&psi, &phi, t, *m)?;
            s.total += 1;
            s.min_margin = s.min_margin.min(r.flagged - r.average);
            if r.holds() {
                s.passed += 1;
            } else if failure.is_none() {
                let case = MixingFailure {
                    pair: i,
                    measure: m.to_string(),
                    t,
                    flagged: r.flagged,
                    average: r.average,
                };
                failure = Some((format!("{m} loses entanglement under mixing"), to_json(&case)));
            }
        }
    }
    let maj = mixture_majorization_check(pairs, 3, seed)?;
    if !maj.failures.is_empty() && failure.is_none() {
        let (pair, t) = maj.failures[0];
        failure = Some((
            "mixture spectrum not majorized by the mixed spectra".into(),
            format!("{{\"pair\": {pair}, \"t\": {t}}}\n"),
        ));
    }
    Ok(SuiteReport {
        json: to_json(&MixingSuite {
            suite: "mixing",
            seed,
            checks: stats,
            majorization: MajorizationDto {
                pairs: maj.pairs,
                checks: maj.checks,
                failures: maj.failures.len(),
            },
            passed: failure.is_none(),
        }),
        failure,
    })
}

#[derive(Serialize)]
struct CoherenceSuite {
    suite: &'static str,
    seed: u64,
    basis_states_checked: usize,
    basis_states_zero: bool,
    permutation_states: usize,
    max_permutation_change: f64,
    max_coherent_qubit_e2: f64,
    dephased_roof: f64,
    passed: bool,
}

fn coherence(seed: u64, states: usize, roof: &RoofOptions) -> Result<SuiteReport> {
    const H: [ReducedFunctionId; 3] = [
        ReducedFunctionId::E2,
        ReducedFunctionId::Min,
        ReducedFunctionId::MinReinforced,
    ];
    let mut failure = None;
    let mut fail = |message: String, case: String| {
        if failure.is_none() {
            failure = Some((message, case));
        }
    };

    let mut basis_checked = 0;
    let mut basis_zero = true;
    for d in DIMENSIONS {
        for i in 0..d {
            let psi = basis_state(&[d], &[i])?;
            for h in H {
                basis_checked += 1;
                let v = coherence_pure(&psi, h)?;
                if v != 0.0 {
                    basis_zero = false;
                    fail(format!("{h} of |{i}> in d = {d} is {v}"), String::new());
                }
            }
        }
    }

    let mut max_change: f64 = 0.0;
    for i in 0..states {
        let mut rng = rng_for(seed, i as u64);
        let psi = random_pure(&mut rng, &[4])?;
        let mut amps: Vec<Complex64> = psi.amplitudes().to_vec();
        amps.shuffle(&mut rng);
        let permuted = PureState::normalized(amps, psi.signature().clone())?;
        for h in H {
            let change = (coherence_pure(&psi, h)? - coherence_pure(&permuted, h)?).abs();
            max_change = max_change.max(change);
            if change > COHERENCE_TOL {
                fail(
                    format!("{h} changed by {change} under a permutation"),
                    format!("state {i}"),
                );
            }
        }
    }

    let plus = PureState::new(
        vec![Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0); 2],
        DimSignature::new(&[2])?,
    )?;
    let qubit = coherence_pure(&plus, ReducedFunctionId::E2)?;
    if (qubit - 0.5).abs() > COHERENCE_TOL {
        fail(format!("maximally coherent qubit gives {qubit}"), String::new());
    }

    let dephased = density(ComplexMatrix::from_real_diagonal(&[0.5, 0.3, 0.2]), &[3])?;
    let dephased_roof = coherence_ch(&State::Mixed(dephased), ReducedFunctionId::E2, roof)?;
    if dephased_roof > 1e-9 {
        fail(
            format!("incoherent mixed state has roof {dephased_roof}"),
            String::new(),
        );
    }

    Ok(SuiteReport {
        json: to_json(&CoherenceSuite {
            suite: "coherence",
            seed,
            basis_states_checked: basis_checked,
            basis_states_zero: basis_zero,
            permutation_states: states,
            max_permutation_change: max_change,
            max_coherent_qubit_e2: qubit,
            dephased_roof,
            passed: failure.is_none(),
        }),
        failure,
    })
}

pub fn run_suite(suite: Suite, seed: u64, samples: Option<usize>, roof: &RoofOptions) -> Result<SuiteReport> {
    if samples == Some(0) {
        return Err(LabError::validation("samples", "need at least one sample"));
    }
    match suite {
        Suite::Concavity => concavity(seed, samples.unwrap_or(CONCAVITY_SAMPLES)),
        Suite::Bounds => bounds(seed, roof),
        Suite::Mixing => mixing(seed, samples.unwrap_or(MIXING_PAIRS)),
        Suite::Coherence => coherence(seed, samples.unwrap_or(COHERENCE_STATES), roof),
    }
}

pub fn run(cli: &Cli, suite: Suite, samples: Option<usize>) -> Result<Outcome> {
    let r = run_suite(suite, cli.seed, samples, &roof_options(cli)?)?;
    Ok(Outcome {
        failure: r.failure.map(|(message, case)| LabError::Failure { message, case }),
        report: r.json,
        table: None,
    })
}
