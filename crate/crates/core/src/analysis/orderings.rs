use alloc::vec::Vec;

use num_traits::Float;

use crate::error::Result;
use crate::measures::{pure_value, MeasureId};
use crate::states::{pure_from_schmidt, PureState};

/// Two measures ranking the same pair of states in opposite order:
/// `first(a) < first(b)` but `second(b) < second(a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderingReversal {
    pub states: (&'static str, &'static str),
    pub measures: (MeasureId, MeasureId),
    /// `first(b) − first(a)`.
    pub first_margin: f64,
    /// `second(a) − second(b)`.
    pub second_margin: f64,
}

impl OrderingReversal {
    pub fn holds(&self, margin: f64) -> bool {
        self.first_margin > margin && self.second_margin > margin
    }
}

fn named(squares: [f64; 3]) -> Result<PureState> {
    pure_from_schmidt(&squares.map(Float::sqrt), 3, 3)
}

/// The three reversals between `E_2`, `E_min` and `E′_min` on five two-qutrit
/// states with reduced spectra `ψ = (2/3,1/6,1/6)`, `ϕ = (1/3,1/3,1/3)`,
/// `φ = (3/5,2/5,0)`, `ξ = (2/5,2/5,1/5)`, `ζ = (4/5,1/5,0)`.
pub fn ordering_reversals() -> Result<Vec<OrderingReversal>> {
    let psi = named([2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0])?;
    let phi = named([1.0 / 3.0; 3])?;
    let varphi = named([0.6, 0.4, 0.0])?;
    let xi = named([0.4, 0.4, 0.2])?;
    let zeta = named([0.8, 0.2, 0.0])?;
    let cases = [
        (("varphi", &varphi), ("phi", &phi), MeasureId::E2Norm, MeasureId::EMin),
        (
            ("varphi", &varphi),
            ("xi", &xi),
            MeasureId::E2Norm,
            MeasureId::EMinReinforced,
        ),
        (
            ("psi", &psi),
            ("zeta", &zeta),
            MeasureId::EMin,
            MeasureId::EMinReinforced,
        ),
    ];
    cases
        .into_iter()
        .map(|((na, a), (nb, b), first, second)| {
            Ok(OrderingReversal {
                states: (na, nb),
                measures: (first, second),
                first_margin: pure_value(first, b)? - pure_value(first, a)?,
                second_margin: pure_value(second, a)? - pure_value(second, b)?,
            })
        })
        .collect()
}
