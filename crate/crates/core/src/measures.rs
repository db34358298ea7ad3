//! Pure-state entanglement measures and their reduced functions.
//!
//! Every pure-state measure `E` here has a reduced function `h` with
//! `E(|ψ⟩) = h(δ(ρ_A))`, where `δ` is the descending spectrum of the reduced
//! state. The functions in this module compute `E` directly from its
//! defining formula (operator norm, purity, partial transpose, ...) while
//! [`reduced_function`] evaluates `h` on a spectrum; the two routes are kept
//! separate so each can be checked against the other.
//!
//! `E2Raw` is `1 − ‖ρ_A‖` and `E2Norm` rescales it by `d/(d−1)` with `d` the
//! dimension of the reduced subsystem A. Analyses default to the normalized
//! form.
//!
//! `E_min` uses the smallest Schmidt coefficient above the rank tolerance and
//! is therefore discontinuous at the boundary of each Schmidt-rank stratum.
//! No smoothing is applied.

use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::numkit::{min_norm_of_spectrum, negative_eigenvalues, operator_norm, Spectrum, RANK_TOL};
use crate::states::{partial_transpose, schmidt, DensityMatrix, PureState};

/// Identifies a measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeasureId {
    /// Vidal's `E_k = Σ_{i≥k} λ_i²`, `k ≥ 2`.
    Ek(usize),
    E2Raw,
    E2Norm,
    EMin,
    EMinReinforced,
    Tangle,
    Concurrence,
    Negativity,
    PartialNegativity,
    LogPartialNegativity,
    SchmidtRank,
}

impl MeasureId {
    pub const ALL_FIXED: [MeasureId; 10] = [
        MeasureId::E2Raw,
        MeasureId::E2Norm,
        MeasureId::EMin,
        MeasureId::EMinReinforced,
        MeasureId::Tangle,
        MeasureId::Concurrence,
        MeasureId::Negativity,
        MeasureId::PartialNegativity,
        MeasureId::LogPartialNegativity,
        MeasureId::SchmidtRank,
    ];

    /// The reduced function reproducing this measure on pure states.
    pub fn reduced_function(self) -> ReducedFunctionId {
        match self {
            MeasureId::Ek(k) => ReducedFunctionId::Ek(k),
            MeasureId::E2Raw => ReducedFunctionId::E2,
            MeasureId::E2Norm => ReducedFunctionId::E2Norm,
            MeasureId::EMin => ReducedFunctionId::Min,
            MeasureId::EMinReinforced => ReducedFunctionId::MinReinforced,
            MeasureId::Tangle => ReducedFunctionId::Tangle,
            MeasureId::Concurrence => ReducedFunctionId::Concurrence,
            MeasureId::Negativity => ReducedFunctionId::Neg,
            MeasureId::PartialNegativity => ReducedFunctionId::Hat,
            MeasureId::LogPartialNegativity => ReducedFunctionId::LogHat,
            MeasureId::SchmidtRank => ReducedFunctionId::Rank,
        }
    }

    /// Measures with a closed form on mixed states (no convex roof needed).
    pub fn is_direct_on_mixed(self) -> bool {
        matches!(
            self,
            MeasureId::Negativity | MeasureId::PartialNegativity | MeasureId::LogPartialNegativity
        )
    }

    /// Short label naming the convention used, for reports.
    pub fn convention(self) -> &'static str {
        match self {
            MeasureId::E2Raw => "raw: 1-|rho_A|",
            MeasureId::E2Norm => "normalized: d(1-|rho_A|)/(d-1), d = dim A",
            MeasureId::EMin | MeasureId::EMinReinforced => "smallest positive Schmidt coefficient",
            MeasureId::Tangle => "2(1-tr rho_A^2)",
            MeasureId::Negativity => "sum of negative-part eigenvalues of rho^T_A",
            MeasureId::PartialNegativity => "operator norm of negative part of rho^T_A",
            MeasureId::LogPartialNegativity => "log2(1 + partial negativity)",
            _ => "",
        }
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureId::Ek(k) => write!(f, "E_K({k})"),
            MeasureId::E2Raw => f.write_str("E2_RAW"),
            MeasureId::E2Norm => f.write_str("E2_NORM"),
            MeasureId::EMin => f.write_str("E_MIN"),
            MeasureId::EMinReinforced => f.write_str("E_MIN_REINFORCED"),
            MeasureId::Tangle => f.write_str("TANGLE"),
            MeasureId::Concurrence => f.write_str("CONCURRENCE"),
            MeasureId::Negativity => f.write_str("NEGATIVITY"),
            MeasureId::PartialNegativity => f.write_str("PARTIAL_NEGATIVITY"),
            MeasureId::LogPartialNegativity => f.write_str("LOG_PARTIAL_NEGATIVITY"),
            MeasureId::SchmidtRank => f.write_str("SCHMIDT_RANK"),
        }
    }
}

impl FromStr for MeasureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = String::from(s.trim()).to_ascii_uppercase();
        let m = match up.as_str() {
            "E2_RAW" => MeasureId::E2Raw,
            "E2_NORM" | "E2" => MeasureId::E2Norm,
            "E_MIN" | "EMIN" => MeasureId::EMin,
            "E_MIN_REINFORCED" | "E_MIN_PRIME" => MeasureId::EMinReinforced,
            "TANGLE" => MeasureId::Tangle,
            "CONCURRENCE" => MeasureId::Concurrence,
            "NEGATIVITY" => MeasureId::Negativity,
            "PARTIAL_NEGATIVITY" => MeasureId::PartialNegativity,
            "LOG_PARTIAL_NEGATIVITY" => MeasureId::LogPartialNegativity,
            "SCHMIDT_RANK" | "SCHMIDT_NUMBER" => MeasureId::SchmidtRank,
            other => {
                let k = other
                    .strip_prefix("E_K(")
                    .or_else(|| other.strip_prefix("E_K"))
                    .map(|r| r.trim_end_matches(')'))
                    .and_then(|r| r.parse::<usize>().ok())
                    .ok_or_else(|| Error::validation("measure", alloc::format!("unknown measure `{s}`")))?;
                if k < 2 {
                    return Err(Error::validation("k_at_least_2", alloc::format!("k = {k}")));
                }
                MeasureId::Ek(k)
            }
        };
        Ok(m)
    }
}

/// Functions on reduced spectra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReducedFunctionId {
    Ek(usize),
    /// `1 − δ₁`.
    E2,
    /// `d(1 − δ₁)/(d − 1)`.
    E2Norm,
    /// Smallest positive entry (zero for a pure reduced state).
    Min,
    /// Rank times [`ReducedFunctionId::Min`].
    MinReinforced,
    /// `2(1 − Σδ²)`.
    Tangle,
    Concurrence,
    /// `((Σ√δ)² − 1)/2`.
    Neg,
    /// `√(δ₁δ₂)`.
    Hat,
    LogHat,
    Rank,
}

impl ReducedFunctionId {
    /// Functions whose concavity the analysis suite asserts.
    pub const CONCAVE_SUITE: [ReducedFunctionId; 5] = [
        ReducedFunctionId::E2,
        ReducedFunctionId::Min,
        ReducedFunctionId::MinReinforced,
        ReducedFunctionId::Tangle,
        ReducedFunctionId::Neg,
    ];
}

impl fmt::Display for ReducedFunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReducedFunctionId::Ek(k) => write!(f, "h_E_K({k})"),
            ReducedFunctionId::E2 => f.write_str("h_E2"),
            ReducedFunctionId::E2Norm => f.write_str("h_E2_NORM"),
            ReducedFunctionId::Min => f.write_str("h_MIN"),
            ReducedFunctionId::MinReinforced => f.write_str("h_MIN_REINFORCED"),
            ReducedFunctionId::Tangle => f.write_str("h_TANGLE"),
            ReducedFunctionId::Concurrence => f.write_str("h_CONCURRENCE"),
            ReducedFunctionId::Neg => f.write_str("h_NEG"),
            ReducedFunctionId::Hat => f.write_str("h_HAT"),
            ReducedFunctionId::LogHat => f.write_str("h_LOG_HAT"),
            ReducedFunctionId::Rank => f.write_str("h_RANK"),
        }
    }
}

impl FromStr for ReducedFunctionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = String::from(s.trim()).to_ascii_uppercase();
        let body = up.strip_prefix("H_").unwrap_or(&up);
        Ok(match body {
            "E2" => ReducedFunctionId::E2,
            "E2_NORM" => ReducedFunctionId::E2Norm,
            "MIN" => ReducedFunctionId::Min,
            "MIN_REINFORCED" => ReducedFunctionId::MinReinforced,
            "TANGLE" => ReducedFunctionId::Tangle,
            "CONCURRENCE" => ReducedFunctionId::Concurrence,
            "NEG" => ReducedFunctionId::Neg,
            "HAT" => ReducedFunctionId::Hat,
            "LOG_HAT" => ReducedFunctionId::LogHat,
            "RANK" => ReducedFunctionId::Rank,
            _ => {
                return Err(Error::validation(
                    "reduced_function",
                    alloc::format!("unknown reduced function `{s}`"),
                ))
            }
        })
    }
}

/// Evaluates `h` on a probability vector. `d` is the ambient dimension used
/// by `h_E2_NORM` (ignored otherwise).
pub fn reduced_function(id: ReducedFunctionId, delta: &Spectrum, d: usize) -> Result<f64> {
    delta.check_probability()?;
    Ok(reduced_function_unchecked(id, delta, d))
}

/// [`reduced_function`] without the probability-vector check, for hot loops
/// on spectra that are valid by construction.
pub fn reduced_function_unchecked(id: ReducedFunctionId, delta: &Spectrum, d: usize) -> f64 {
    let v = delta.values();
    let top = v.first().copied().unwrap_or(0.0);
    let second = v.get(1).copied().unwrap_or(0.0).max(0.0);
    let value = match id {
        ReducedFunctionId::Ek(k) => v.iter().skip(k.saturating_sub(1)).filter(|&&x| x > RANK_TOL).sum(),
        ReducedFunctionId::E2 => 1.0 - top,
        ReducedFunctionId::E2Norm => {
            let d = d as f64;
            d * (1.0 - top) / (d - 1.0)
        }
        ReducedFunctionId::Min => min_norm_of_spectrum(delta),
        ReducedFunctionId::MinReinforced => min_norm_of_spectrum(delta) * delta.numerical_rank() as f64,
        ReducedFunctionId::Tangle => 2.0 * (1.0 - v.iter().map(|x| x * x).sum::<f64>()),
        ReducedFunctionId::Concurrence => Float::sqrt((2.0 * (1.0 - v.iter().map(|x| x * x).sum::<f64>())).max(0.0)),
        ReducedFunctionId::Neg => {
            let s: f64 = v.iter().map(|x| Float::sqrt(x.max(0.0))).sum();
            (s * s - 1.0) / 2.0
        }
        ReducedFunctionId::Hat => Float::sqrt(top.max(0.0) * second),
        ReducedFunctionId::LogHat => Float::log2(1.0 + Float::sqrt(top.max(0.0) * second)),
        ReducedFunctionId::Rank => delta.numerical_rank() as f64,
    };
    value.max(0.0)
}

/// `Σ_{i≥k} λ_i²` over the Schmidt coefficients.
pub fn e_k(psi: &PureState, k: usize) -> Result<f64> {
    if k < 2 {
        return Err(Error::validation("k_at_least_2", alloc::format!("k = {k}")));
    }
    let s = schmidt(psi)?;
    Ok(s.coefficients.iter().skip(k - 1).map(|x| x * x).sum())
}

/// `1 − ‖ρ_A‖`.
pub fn e2_raw(psi: &PureState) -> Result<f64> {
    psi.signature().require_bipartite()?;
    let rho_a = psi.reduced(&[0])?;
    Ok((1.0 - operator_norm(rho_a.matrix())?).max(0.0))
}

/// `d·(1 − ‖ρ_A‖)/(d − 1)` with `d = d_A`.
pub fn e2_normalized(psi: &PureState) -> Result<f64> {
    psi.signature().require_bipartite()?;
    e2_normalized_with_dim(psi, psi.dims()[0])
}

/// [`e2_normalized`] with an explicit normalization dimension.
pub fn e2_normalized_with_dim(psi: &PureState, d: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::validation("dimension", "normalization needs d >= 2"));
    }
    let d = d as f64;
    Ok(d * e2_raw(psi)? / (d - 1.0))
}

/// `λ_min²` for Schmidt rank ≥ 2, else 0.
pub fn e_min(psi: &PureState) -> Result<f64> {
    let s = schmidt(psi)?;
    Ok(match s.coefficients.last() {
        Some(&l) if s.rank() > 1 => l * l,
        _ => 0.0,
    })
}

/// `E_min` times the Schmidt rank.
pub fn e_min_reinforced(psi: &PureState) -> Result<f64> {
    let s = schmidt(psi)?;
    Ok(match s.coefficients.last() {
        Some(&l) if s.rank() > 1 => l * l * s.rank() as f64,
        _ => 0.0,
    })
}

/// `2(1 − tr ρ_A²)`.
pub fn tangle(psi: &PureState) -> Result<f64> {
    psi.signature().require_bipartite()?;
    let rho_a = psi.reduced(&[0])?;
    let purity: f64 = rho_a.matrix().as_slice().iter().map(|z| z.norm_sqr()).sum();
    Ok((2.0 * (1.0 - purity)).max(0.0))
}

pub fn concurrence(psi: &PureState) -> Result<f64> {
    Ok(Float::sqrt(tangle(psi)?))
}

pub fn schmidt_rank(psi: &PureState) -> Result<usize> {
    Ok(schmidt(psi)?.rank())
}

/// Sum of the negative-part eigenvalues of `ρ^{T_A}`.
pub fn negativity(rho: &DensityMatrix) -> Result<f64> {
    let pt = partial_transpose(rho, 0)?;
    Ok(negative_eigenvalues(&pt)?.iter().sum())
}

/// Operator norm of the negative part of `ρ^{T_A}`.
pub fn partial_negativity(rho: &DensityMatrix) -> Result<f64> {
    let pt = partial_transpose(rho, 0)?;
    let neg = crate::numkit::negative_part(&pt)?;
    operator_norm(&neg)
}

/// `log₂(N̂ + 1)`.
pub fn log_partial_negativity(rho: &DensityMatrix) -> Result<f64> {
    Ok(Float::log2(partial_negativity(rho)? + 1.0))
}

/// Value of any measure on a bipartite pure state, from its defining
/// formula.
pub fn pure_value(measure: MeasureId, psi: &PureState) -> Result<f64> {
    match measure {
        MeasureId::Ek(k) => e_k(psi, k),
        MeasureId::E2Raw => e2_raw(psi),
        MeasureId::E2Norm => e2_normalized(psi),
        MeasureId::EMin => e_min(psi),
        MeasureId::EMinReinforced => e_min_reinforced(psi),
        MeasureId::Tangle => tangle(psi),
        MeasureId::Concurrence => concurrence(psi),
        MeasureId::Negativity => negativity(&psi.density()),
        MeasureId::PartialNegativity => partial_negativity(&psi.density()),
        MeasureId::LogPartialNegativity => log_partial_negativity(&psi.density()),
        MeasureId::SchmidtRank => Ok(schmidt_rank(psi)? as f64),
    }
}

/// Value on a pure state computed through the reduced function of its
/// Schmidt spectrum. This is the fast path used inside optimisers.
pub fn pure_value_spectral(measure: MeasureId, psi: &PureState) -> Result<f64> {
    let s = schmidt(psi)?;
    Ok(reduced_function_unchecked(
        measure.reduced_function(),
        &s.reduced_spectrum(),
        psi.dims()[0],
    ))
}

/// Value on a bipartite density matrix for the measures that have a direct
/// mixed-state formula. Rank-one inputs are handled for every measure.
pub fn mixed_value(measure: MeasureId, rho: &DensityMatrix) -> Result<f64> {
    rho.signature().require_bipartite()?;
    match measure {
        MeasureId::Negativity => negativity(rho),
        MeasureId::PartialNegativity => partial_negativity(rho),
        MeasureId::LogPartialNegativity => log_partial_negativity(rho),
        other => match rho.as_pure() {
            Some(psi) => pure_value(other, &psi),
            None => Err(Error::capability(alloc::format!(
                "{other} on a mixed state needs the convex roof"
            ))),
        },
    }
}
