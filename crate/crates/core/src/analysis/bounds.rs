use crate::error::{Error, Result};
use crate::measures::{pure_value, MeasureId};
use crate::numkit::{min_norm_of_spectrum, Spectrum};
use crate::roof::{roof_value, RoofOptions};
use crate::states::{partial_trace, DensityMatrix};

const BOUND_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub measure: MeasureId,
    /// Closed-form upper bound from the two marginals.
    pub bound: f64,
    /// Optimizer estimate; `None` when the rank is beyond the optimizer.
    /// Informational only: it is itself an upper bound on the roof.
    pub roof_upper: Option<f64>,
    pub analytic_roof: Option<f64>,
    pub ok: bool,
}

fn marginal_bound(measure: MeasureId, a: &Spectrum, b: &Spectrum, d: usize) -> f64 {
    match measure {
        MeasureId::E2Norm => {
            let d = d as f64;
            d / (d - 1.0) * (1.0 - a.max()).min(1.0 - b.max())
        }
        MeasureId::EMin => min_norm_of_spectrum(a).min(min_norm_of_spectrum(b)),
        _ => {
            let reinforced = |s: &Spectrum| s.numerical_rank() as f64 * min_norm_of_spectrum(s);
            reinforced(a).min(reinforced(b))
        }
    }
}

/// Compares a roof value with the marginal bound
/// (`E_2`: `d/(d−1)·min{1−‖ρ^A‖, 1−‖ρ^B‖}`, `E_min`: `min{‖ρ^A‖_min, ‖ρ^B‖_min}`,
/// `E′_min`: the same with each side weighted by its rank).
///
/// Rank-one inputs supply their own analytic roof. For other states pass
/// the known value, if any; without one, `ok` only asserts `bound ≥ 0`.
pub fn bounds_check(
    rho: &DensityMatrix,
    measure: MeasureId,
    analytic_roof: Option<f64>,
    opts: &RoofOptions,
) -> Result<BoundsReport> {
    if !matches!(measure, MeasureId::E2Norm | MeasureId::EMin | MeasureId::EMinReinforced) {
        return Err(Error::capability(alloc::format!("no marginal bound for {measure}")));
    }
    rho.signature().require_bipartite()?;
    let a = partial_trace(rho, &[0])?.spectrum();
    let b = partial_trace(rho, &[1])?.spectrum();
    let bound = marginal_bound(measure, &a, &b, rho.dims()[0]).max(0.0);
    let analytic_roof = match rho.as_pure() {
        Some(psi) => Some(pure_value(measure, &psi)?),
        None => analytic_roof,
    };
    let roof_upper = match roof_value(rho, measure, opts) {
        Ok(r) => Some(r.value),
        Err(Error::Capability(_)) => None,
        Err(e) => return Err(e),
    };
    let ok = match analytic_roof {
        Some(v) => v <= bound + BOUND_SLACK,
        None => bound >= 0.0,
    };
    Ok(BoundsReport {
        measure,
        bound,
        roof_upper,
        analytic_roof,
        ok,
    })
}
