use crate::error::{Error, Result};
use crate::measures::{reduced_function_unchecked, ReducedFunctionId};
use crate::numkit::Spectrum;
use crate::roof::{roof_with_cost, MemberCost, RoofOptions};
use crate::states::{PureState, State};

fn require_supported(h: ReducedFunctionId) -> Result<()> {
    match h {
        ReducedFunctionId::E2 | ReducedFunctionId::Min | ReducedFunctionId::MinReinforced => Ok(()),
        other => Err(Error::capability(alloc::format!(
            "coherence is not defined for {other}"
        ))),
    }
}

/// `C_h(|ψ⟩) = h(|x₀|², …, |x_{d−1}|²)` in the computational basis of the
/// whole space.
pub fn coherence_pure(psi: &PureState, h: ReducedFunctionId) -> Result<f64> {
    require_supported(h)?;
    let probs = psi.amplitudes().iter().map(|z| z.norm_sqr()).collect();
    let d = psi.amplitudes().len();
    Ok(reduced_function_unchecked(h, &Spectrum::new(probs)?, d))
}

/// `C_h` of a pure state, or its convex roof for a mixed one (an optimizer
/// upper bound).
pub fn coherence_ch(state: &State, h: ReducedFunctionId, opts: &RoofOptions) -> Result<f64> {
    require_supported(h)?;
    match state {
        State::Pure(psi) => coherence_pure(psi, h),
        State::Mixed(rho) => Ok(roof_with_cost(rho, MemberCost::Coherence { h }, opts)?.value),
    }
}
