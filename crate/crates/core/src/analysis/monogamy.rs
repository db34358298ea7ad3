use core::fmt;

use crate::error::{Error, Result};
use crate::measures::{mixed_value, partial_negativity, reduced_function_unchecked, MeasureId};
use crate::numkit::{eig_hermitian, RANK_TOL};
use crate::roof::{roof_value, schmidt_number, RoofOptions, SchmidtNumberBounds};
use crate::states::{make_acin, partial_transpose, schmidt, AcinParams, Cut, DensityMatrix, PureState};

pub const GAP_TOL: f64 = 1e-6;
pub const WITNESS_FLOOR: f64 = 1e-6;

/// Outcome of a disentangling-condition check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// `E(A|BC) = E(AB)` while `E(AC) > 0`: the measure is not monogamous.
    ViolationWitness,
    /// Nothing contradicts monogamy for this state.
    Consistent,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ViolationWitness => "VIOLATION_WITNESS",
            Verdict::Consistent => "CONSISTENT",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonogamyOptions {
    pub roof: RoofOptions,
    pub gap_tol: f64,
    pub witness_floor: f64,
}

impl Default for MonogamyOptions {
    fn default() -> Self {
        MonogamyOptions {
            roof: RoofOptions::default(),
            gap_tol: GAP_TOL,
            witness_floor: WITNESS_FLOOR,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonogamyReport {
    pub measure: MeasureId,
    /// Exact value across the A|BC cut.
    pub e_a_bc: f64,
    /// Roof upper estimate, or the direct value for the negativity family.
    pub e_ab: f64,
    pub e_ac: f64,
    /// `N̂(ρ^AC)` for roof measures. Positive means `ρ^AC` is NPT, so any
    /// faithful roof measure is positive on it.
    pub e_ac_npt_proxy: Option<f64>,
    /// Schmidt-number bounds of the two reductions (Schmidt rank only).
    pub schmidt_bounds: Option<(SchmidtNumberBounds, SchmidtNumberBounds)>,
    pub disentangling_gap: f64,
    pub verdict: Verdict,
    pub gap_tol: f64,
    pub witness_floor: f64,
}

/// Minimum eigenvalue of `ρ^{T_A}`. Below `-1e-9` it certifies entanglement.
pub fn npt_witness(rho: &DensityMatrix) -> Result<f64> {
    let pt = partial_transpose(rho, 0)?;
    Ok(eig_hermitian(&pt)?.values.values().last().copied().unwrap_or(0.0))
}

fn require_tripartite(psi: &PureState) -> Result<()> {
    if psi.signature().parties() != 3 {
        return Err(Error::validation(
            "tripartite",
            alloc::format!("need three subsystems, got {}", psi.signature().parties()),
        ));
    }
    Ok(())
}

/// Tests the disentangling condition `E(A|BC) = E(AB) ⇒ E(AC) = 0` on `psi`.
///
/// The verdict never claims a measure is monogamous: `Consistent` only says
/// this state does not contradict it.
pub fn monogamy_check(psi: &PureState, measure: MeasureId, opts: &MonogamyOptions) -> Result<MonogamyReport> {
    require_tripartite(psi)?;
    let a_bc = psi.bipartition(&Cut::a_bc())?;
    let rho_ab = psi.reduced(&[0, 1])?;
    let rho_ac = psi.reduced(&[0, 2])?;
    let floor = opts.witness_floor;

    if measure == MeasureId::SchmidtRank {
        return schmidt_monogamy(&a_bc, &rho_ab, &rho_ac, opts);
    }
    if let MeasureId::Ek(k) = measure {
        if k >= 3 {
            return Err(Error::capability(alloc::format!(
                "{measure} is not faithful, so an NPT reduction does not certify E(AC) > 0"
            )));
        }
    }

    let e_a_bc = reduced_function_unchecked(
        measure.reduced_function(),
        &schmidt(&a_bc)?.reduced_spectrum(),
        a_bc.dims()[0],
    );
    let (e_ab, e_ac, proxy) = if measure.is_direct_on_mixed() {
        (mixed_value(measure, &rho_ab)?, mixed_value(measure, &rho_ac)?, None)
    } else {
        let ab = roof_value(&rho_ab, measure, &opts.roof)?.value;
        let ac = roof_value(&rho_ac, measure, &opts.roof)?.value;
        (ab, ac, Some(partial_negativity(&rho_ac)?))
    };
    let gap = (e_a_bc - e_ab).abs();
    let ac_positive = e_ac > floor && proxy.is_none_or(|p| p > floor);

    let verdict = if e_a_bc <= floor && e_ab <= floor && e_ac <= floor {
        Verdict::Consistent
    } else if gap <= opts.gap_tol && ac_positive {
        Verdict::ViolationWitness
    } else if gap <= opts.gap_tol && e_ac <= floor {
        Verdict::Consistent
    } else {
        Verdict::Inconclusive
    };
    Ok(MonogamyReport {
        measure,
        e_a_bc,
        e_ab,
        e_ac,
        e_ac_npt_proxy: proxy,
        schmidt_bounds: None,
        disentangling_gap: gap,
        verdict,
        gap_tol: opts.gap_tol,
        witness_floor: opts.witness_floor,
    })
}

/// Schmidt-rank variant: the separable value is 1, and reductions are
/// compared through certified Schmidt-number bounds.
fn schmidt_monogamy(
    a_bc: &PureState,
    rho_ab: &DensityMatrix,
    rho_ac: &DensityMatrix,
    opts: &MonogamyOptions,
) -> Result<MonogamyReport> {
    let r = schmidt(a_bc)?.rank();
    let ab = schmidt_number(rho_ab, &opts.roof)?;
    let ac = schmidt_number(rho_ac, &opts.roof)?;
    let gap_closed = ab.lower == r && ab.upper == r;
    let verdict = if r == 1 || (gap_closed && ac.upper == 1) {
        Verdict::Consistent
    } else if gap_closed && ac.lower >= 2 {
        Verdict::ViolationWitness
    } else {
        Verdict::Inconclusive
    };
    Ok(MonogamyReport {
        measure: MeasureId::SchmidtRank,
        e_a_bc: r as f64,
        e_ab: ab.upper as f64,
        e_ac: ac.lower as f64,
        e_ac_npt_proxy: None,
        schmidt_bounds: Some((ab, ac)),
        disentangling_gap: (r as f64 - ab.upper as f64)
            .abs()
            .max((r as f64 - ab.lower as f64).abs()),
        verdict,
        gap_tol: opts.gap_tol,
        witness_floor: opts.witness_floor,
    })
}

/// Monogamy check of the raw `E_2` on a three-qubit state in canonical form,
/// with the closed-gap condition cross-checked.
#[derive(Debug, Clone, PartialEq)]
pub struct AcinProbe {
    pub params: AcinParams,
    pub report: MonogamyReport,
    pub gap_closed: bool,
    /// `λ₂ = λ₄ = 0`, or `λ₁ = 0` and `λ₀ ≤ λ₃`.
    pub condition_holds: bool,
}

impl AcinProbe {
    /// A closed gap must come with the condition set.
    pub fn agrees(&self) -> bool {
        !self.gap_closed || self.condition_holds
    }
}

pub fn acin_disentangling_probe(params: &AcinParams, opts: &MonogamyOptions) -> Result<AcinProbe> {
    let psi = make_acin(params)?;
    let report = monogamy_check(&psi, MeasureId::E2Raw, opts)?;
    let zero = |x: f64| x * x <= RANK_TOL;
    let [l0, l1, l2, l3, l4] = params.lambda;
    let condition_holds = (zero(l2) && zero(l4)) || (zero(l1) && l0 <= l3 + RANK_TOL);
    Ok(AcinProbe {
        params: *params,
        gap_closed: report.disentangling_gap <= opts.gap_tol,
        report,
        condition_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{basis_state, make_bell, make_omega, make_phi, make_w, PhiParams, PhiRegime};
    use num_traits::Float;

    fn quick() -> MonogamyOptions {
        MonogamyOptions {
            roof: RoofOptions {
                restarts: 6,
                max_iterations: 600,
                ..RoofOptions::default()
            },
            ..MonogamyOptions::default()
        }
    }

    #[test]
    fn bell_pt_witness() {
        assert!((npt_witness(&make_bell().density()).unwrap() + 0.5).abs() < 1e-14);
        let prod = basis_state(&[2, 3], &[1, 2]).unwrap().density();
        assert!(npt_witness(&prod).unwrap() >= -1e-9);
    }

    #[test]
    fn phi_family_violates() {
        let p = PhiParams::from_squares([0.5, 0.3, 0.2], [0.5, 0.26, 0.24], PhiRegime::LargestShared);
        let r = monogamy_check(&make_phi(&p).unwrap(), MeasureId::E2Raw, &quick()).unwrap();
        assert!((r.e_a_bc - 0.5).abs() < 1e-12);
        assert!(r.disentangling_gap <= 1e-6, "{r:?}");
        assert!(r.e_ac_npt_proxy.unwrap() > 1e-6);
        assert_eq!(r.verdict, Verdict::ViolationWitness);
    }

    #[test]
    fn omega_partial_negativity_violates() {
        let s = Float::sqrt;
        let psi = make_omega(s(0.5), s(0.3), s(0.2)).unwrap();
        let r = monogamy_check(&psi, MeasureId::PartialNegativity, &quick()).unwrap();
        assert!((r.e_a_bc - s(0.15)).abs() < 1e-9);
        assert!((r.e_ab - s(0.15)).abs() < 1e-9);
        assert!((r.e_ac - s(0.06)).abs() < 1e-9);
        assert_eq!(r.verdict, Verdict::ViolationWitness);
    }

    #[test]
    fn product_state_is_consistent() {
        let psi = basis_state(&[2, 2, 2], &[0, 0, 0]).unwrap();
        for m in [
            MeasureId::E2Norm,
            MeasureId::Tangle,
            MeasureId::Negativity,
            MeasureId::EMin,
        ] {
            let r = monogamy_check(&psi, m, &quick()).unwrap();
            assert_eq!((r.e_a_bc, r.e_ab, r.e_ac), (0.0, 0.0, 0.0));
            assert_eq!(r.verdict, Verdict::Consistent);
        }
    }

    #[test]
    fn w_state_schmidt_number() {
        let r = monogamy_check(&make_w(), MeasureId::SchmidtRank, &quick()).unwrap();
        assert_eq!(r.e_a_bc, 2.0);
        let (ab, ac) = r.schmidt_bounds.unwrap();
        assert_eq!((ab.lower, ab.upper), (2, 2));
        assert_eq!((ac.lower, ac.upper), (2, 2));
        assert_eq!(r.verdict, Verdict::ViolationWitness);
    }

    #[test]
    fn needs_three_parties() {
        assert_eq!(
            monogamy_check(&make_bell(), MeasureId::E2Raw, &quick())
                .unwrap_err()
                .invariant(),
            Some("tripartite")
        );
        let psi = basis_state(&[2, 2, 2], &[0, 0, 0]).unwrap();
        assert!(matches!(
            monogamy_check(&psi, MeasureId::Ek(3), &quick()),
            Err(Error::Capability(_))
        ));
    }

    #[test]
    fn acin_regimes() {
        let s = Float::sqrt;
        // λ₁ = 0, λ₀ ≤ λ₃, λ₂ > 0: the condition set holds, yet the optimizer
        // finds a decomposition of ρ^AB strictly below E(A|BC)
        let p = AcinParams {
            lambda: [0.4, 0.0, 0.5, 0.6, s(1.0 - 0.16 - 0.25 - 0.36)],
            phi: 0.0,
        };
        let probe = acin_disentangling_probe(&p, &quick()).unwrap();
        assert!(probe.condition_holds);
        assert!((probe.report.e_a_bc - 0.16).abs() < 1e-12);
        assert!(probe.report.e_ab < 0.1, "{probe:?}");
        assert_eq!(probe.report.verdict, Verdict::Inconclusive);
        assert!(probe.agrees());

        // λ₂ = λ₄ = 0
        let p = AcinParams {
            lambda: [0.6, 0.48, 0.0, 0.64, 0.0],
            phi: 0.3,
        };
        let probe = acin_disentangling_probe(&p, &quick()).unwrap();
        assert_eq!(probe.report.verdict, Verdict::Consistent, "{probe:?}");
        assert!(probe.agrees());
    }
}
