//! Named states: the two-copy construction |Φ⟩ on 3⊗4⊗2, the three-party
//! state |Ω̃⟩ on 3⊗2⊗2, the five-parameter three-qubit canonical form, and the
//! usual W, Bell and maximally entangled states.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use super::{join_index, DimSignature, PureState};
use crate::error::{Error, Result};
use crate::numkit::RANK_TOL;

const PARAM_TOL: f64 = 1e-10;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn sum_sq(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

/// Which ordering regime a [`PhiParams`] must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiRegime {
    /// `a₀² = a′₀² ≥ 1/2`, `a₀ > a₁ ≥ a₂ > 0` and likewise for `a′`:
    /// the largest reduced eigenvalue is shared, so `E_2` saturates on AB.
    LargestShared,
    /// `a₀ = a′₀`, `a₁ ≥ a₂ > a₀` and likewise for `a′`: the smallest reduced
    /// eigenvalue is shared.
    SmallestShared,
}

/// Coefficients of the two branches `|ψ₀⟩ = Σ a_i|ii⟩` and
/// `|ψ₁⟩ = a′₀|03⟩ + a′₁|12⟩ + a′₂|21⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiParams {
    pub a: [f64; 3],
    pub a_prime: [f64; 3],
    pub regime: PhiRegime,
}

impl PhiParams {
    /// From squared coefficients (`a_i²`), which is how the defaults are
    /// usually written down.
    pub fn from_squares(a_sq: [f64; 3], a_prime_sq: [f64; 3], regime: PhiRegime) -> Self {
        PhiParams {
            a: a_sq.map(Float::sqrt),
            a_prime: a_prime_sq.map(Float::sqrt),
            regime,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let [a0, a1, a2] = self.a;
        let [b0, b1, b2] = self.a_prime;
        for (name, v) in [("a", &self.a), ("a_prime", &self.a_prime)] {
            if v.iter().any(|x| !x.is_finite() || *x <= 0.0) {
                return Err(Error::validation(
                    "positive",
                    alloc::format!("{name} must have strictly positive entries"),
                ));
            }
            let s = sum_sq(v);
            if (s - 1.0).abs() > PARAM_TOL {
                return Err(Error::validation(
                    "normalization",
                    alloc::format!("sum of squares of {name} is {s}"),
                ));
            }
        }
        match self.regime {
            PhiRegime::LargestShared => {
                if (a0 * a0 - b0 * b0).abs() > PARAM_TOL || a0 * a0 < 0.5 - PARAM_TOL {
                    return Err(Error::validation("shared_largest", "need a0^2 = a'0^2 >= 1/2"));
                }
                if !(a0 > a1 && a1 >= a2 && b0 > b1 && b1 >= b2) {
                    return Err(Error::validation("ordering", "need a0 > a1 >= a2 and a'0 > a'1 >= a'2"));
                }
            }
            PhiRegime::SmallestShared => {
                if (a0 - b0).abs() > PARAM_TOL {
                    return Err(Error::validation("shared_smallest", "need a0 = a'0"));
                }
                if !(a1 >= a2 && a2 > a0 && b1 >= b2 && b2 > b0) {
                    return Err(Error::validation("ordering", "need a1 >= a2 > a0 and a'1 >= a'2 > a'0"));
                }
            }
        }
        if (b1 * a2 - a1 * b2).abs() <= PARAM_TOL {
            return Err(Error::validation(
                "cross_product",
                "need a'1*a2 != a1*a'2 (otherwise AC is not entangled)",
            ));
        }
        Ok(())
    }
}

/// `(|ψ₀⟩|0⟩ + |ψ₁⟩|1⟩)/√2` on 3⊗4⊗2. B needs four levels because `|ψ₁⟩`
/// puts the A=0 branch on B level 3.
pub fn make_phi(params: &PhiParams) -> Result<PureState> {
    params.validate()?;
    let dims = [3, 4, 2];
    let mut amps = vec![c(0.0); 24];
    let h = Float::sqrt(0.5);
    let [a0, a1, a2] = params.a;
    let [b0, b1, b2] = params.a_prime;
    for (a, b, cc, w) in [
        (0, 0, 0, a0),
        (1, 1, 0, a1),
        (2, 2, 0, a2),
        (0, 3, 1, b0),
        (1, 2, 1, b1),
        (2, 1, 1, b2),
    ] {
        amps[join_index(&[a, b, cc], &dims)] = c(h * w);
    }
    PureState::normalized(amps, DimSignature::new(&dims)?)
}

/// `λ₀|0⟩|00⟩ + λ₁|1⟩|10⟩ + λ₂|2⟩|11⟩` on 3⊗2⊗2.
pub fn make_omega(l0: f64, l1: f64, l2: f64) -> Result<PureState> {
    if l2.is_nan() || l2 <= 0.0 {
        return Err(Error::validation("positive", "need lambda2 > 0"));
    }
    if !(l0 >= l1 && l1 >= l2) {
        return Err(Error::validation("ordering", "need lambda0 >= lambda1 >= lambda2"));
    }
    let s = sum_sq(&[l0, l1, l2]);
    if (s - 1.0).abs() > PARAM_TOL {
        return Err(Error::validation(
            "normalization",
            alloc::format!("sum of squares is {s}"),
        ));
    }
    let dims = [3, 2, 2];
    let mut amps = vec![c(0.0); 12];
    amps[join_index(&[0, 0, 0], &dims)] = c(l0);
    amps[join_index(&[1, 1, 0], &dims)] = c(l1);
    amps[join_index(&[2, 1, 1], &dims)] = c(l2);
    PureState::normalized(amps, DimSignature::new(&dims)?)
}

/// Parameters of the three-qubit canonical form
/// `λ₀|000⟩ + λ₁e^{iφ}|100⟩ + λ₂|101⟩ + λ₃|110⟩ + λ₄|111⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcinParams {
    pub lambda: [f64; 5],
    pub phi: f64,
}

impl AcinParams {
    pub fn validate(&self) -> Result<()> {
        if self.lambda.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::validation("nonnegative", "lambdas must be >= 0"));
        }
        let s = sum_sq(&self.lambda);
        if (s - 1.0).abs() > PARAM_TOL {
            return Err(Error::validation(
                "normalization",
                alloc::format!("sum of squares is {s}"),
            ));
        }
        if !(0.0..=core::f64::consts::PI).contains(&self.phi) {
            return Err(Error::validation("phase_range", "need 0 <= phi <= pi"));
        }
        Ok(())
    }

    fn is_zero(x: f64) -> bool {
        x * x <= RANK_TOL
    }

    /// No subsystem factors off: `λ₀ > 0`, `λ₂² + λ₄² > 0`, `λ₃² + λ₄² > 0`.
    pub fn is_genuinely_entangled(&self) -> bool {
        let l = self.lambda;
        !Self::is_zero(l[0]) && !Self::is_zero(Float::hypot(l[2], l[4])) && !Self::is_zero(Float::hypot(l[3], l[4]))
    }

    /// ρ^AB separable iff λ₃ = 0.
    pub fn ab_separable(&self) -> bool {
        Self::is_zero(self.lambda[3])
    }

    /// ρ^AC separable iff λ₂ = 0.
    pub fn ac_separable(&self) -> bool {
        Self::is_zero(self.lambda[2])
    }
}

pub fn make_acin(params: &AcinParams) -> Result<PureState> {
    params.validate()?;
    let [l0, l1, l2, l3, l4] = params.lambda;
    let dims = [2, 2, 2];
    let mut amps = vec![c(0.0); 8];
    amps[0b000] = c(l0);
    amps[0b100] = Complex64::from_polar(l1, params.phi);
    amps[0b101] = c(l2);
    amps[0b110] = c(l3);
    amps[0b111] = c(l4);
    PureState::normalized(amps, DimSignature::new(&dims)?)
}

/// `(|100⟩ + |010⟩ + |001⟩)/√3`.
pub fn make_w() -> PureState {
    let w = 1.0 / Float::sqrt(3.0);
    let mut amps = vec![c(0.0); 8];
    amps[0b100] = c(w);
    amps[0b010] = c(w);
    amps[0b001] = c(w);
    PureState::normalized(amps, DimSignature::new(&[2, 2, 2]).expect("qubits")).expect("W state is normalizable")
}

/// `(|00⟩ + |11⟩)/√2`.
pub fn make_bell() -> PureState {
    make_max_entangled(2).expect("d = 2 is valid")
}

/// `Σ_i |ii⟩/√d`.
pub fn make_max_entangled(d: usize) -> Result<PureState> {
    let coeffs = vec![1.0 / Float::sqrt(d as f64); d];
    pure_from_schmidt(&coeffs, d, d)
}

/// `Σ_i coeffs_i |ii⟩` on `d_a ⊗ d_b`.
pub fn pure_from_schmidt(coeffs: &[f64], d_a: usize, d_b: usize) -> Result<PureState> {
    if coeffs.len() > d_a.min(d_b) {
        return Err(Error::validation(
            "schmidt_length",
            alloc::format!("{} coefficients for {d_a}x{d_b}", coeffs.len()),
        ));
    }
    if coeffs.iter().any(|x| !x.is_finite() || *x < 0.0) {
        return Err(Error::validation("nonnegative", "coefficients must be >= 0"));
    }
    let s = sum_sq(coeffs);
    if (s - 1.0).abs() > PARAM_TOL {
        return Err(Error::validation(
            "normalization",
            alloc::format!("sum of squares is {s}"),
        ));
    }
    let sig = DimSignature::new(&[d_a, d_b])?;
    let mut amps = vec![c(0.0); d_a * d_b];
    for (i, &x) in coeffs.iter().enumerate() {
        amps[i * d_b + i] = c(x);
    }
    PureState::normalized(amps, sig)
}

/// Computational basis state `|i_A i_B …⟩`.
pub fn basis_state(dims: &[usize], digits: &[usize]) -> Result<PureState> {
    let sig = DimSignature::new(dims)?;
    if digits.len() != dims.len() || digits.iter().zip(dims).any(|(i, d)| i >= d) {
        return Err(Error::validation("basis_index", "digit out of range"));
    }
    let mut amps = vec![c(0.0); sig.total()];
    amps[join_index(digits, dims)] = c(1.0);
    PureState::new(amps, sig)
}

/// `√t|ψ⟩|0⟩ + √(1−t)|φ⟩|1⟩` with a qubit flag appended as the last
/// subsystem.
pub fn flagged_superposition(psi: &PureState, phi: &PureState, t: f64) -> Result<PureState> {
    if psi.signature() != phi.signature() {
        return Err(Error::validation("signature", "states have different shapes"));
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::validation("weight", alloc::format!("t = {t}")));
    }
    let (st, su) = (Float::sqrt(t), Float::sqrt(1.0 - t));
    let mut amps = Vec::with_capacity(2 * psi.amplitudes().len());
    for (x, y) in psi.amplitudes().iter().zip(phi.amplitudes()) {
        amps.push(x * st);
        amps.push(y * su);
    }
    let dims: Vec<usize> = psi.dims().iter().copied().chain([2]).collect();
    PureState::normalized(amps, DimSignature::new(&dims)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::{eig_hermitian, ComplexMatrix};
    use crate::states::{partial_trace, partial_transpose, Cut};

    fn largest_shared_params() -> PhiParams {
        PhiParams::from_squares([0.5, 0.3, 0.2], [0.5, 0.26, 0.24], PhiRegime::LargestShared)
    }

    #[test]
    fn phi_a_reduction_matches_closed_form() {
        let p = largest_shared_params();
        let phi = make_phi(&p).unwrap();
        let rho_a = phi.reduced(&[0]).unwrap();
        let [a0, a1, a2] = p.a;
        let [_, b1, b2] = p.a_prime;
        let want = ComplexMatrix::from_real_diagonal(&[a0 * a0, (a1 * a1 + b1 * b1) / 2.0, (a2 * a2 + b2 * b2) / 2.0]);
        assert!(rho_a.matrix().max_abs_diff(&want) < 1e-15);
        let spec = rho_a.spectrum();
        for (x, y) in spec.values().iter().zip([0.5, 0.28, 0.22]) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn phi_smallest_shared_regime_is_valid() {
        let p = PhiParams::from_squares([0.2, 0.45, 0.35], [0.2, 0.44, 0.36], PhiRegime::SmallestShared);
        assert!(make_phi(&p).is_ok());
    }

    #[test]
    fn phi_constraint_errors_are_named() {
        let same = PhiParams::from_squares([0.5, 0.3, 0.2], [0.5, 0.3, 0.2], PhiRegime::LargestShared);
        assert_eq!(make_phi(&same).unwrap_err().invariant(), Some("cross_product"));
        let small = PhiParams::from_squares([0.4, 0.35, 0.25], [0.4, 0.3, 0.3], PhiRegime::LargestShared);
        assert_eq!(make_phi(&small).unwrap_err().invariant(), Some("shared_largest"));
        let unnorm = PhiParams::from_squares([0.5, 0.3, 0.3], [0.5, 0.26, 0.24], PhiRegime::LargestShared);
        assert_eq!(make_phi(&unnorm).unwrap_err().invariant(), Some("normalization"));
        let wrong = PhiParams::from_squares([0.5, 0.3, 0.2], [0.5, 0.26, 0.24], PhiRegime::SmallestShared);
        assert_eq!(make_phi(&wrong).unwrap_err().invariant(), Some("ordering"));
    }

    #[test]
    fn phi_ac_reduction_is_npt() {
        let phi = make_phi(&largest_shared_params()).unwrap();
        let rho_ac = partial_trace(&phi.density(), &[0, 2]).unwrap();
        let pt = partial_transpose(&rho_ac, 0).unwrap();
        let low = *eig_hermitian(&pt).unwrap().values.values().last().unwrap();
        assert!(low < -1e-6);
    }

    #[test]
    fn omega_examples() {
        let s = make_omega(Float::sqrt(0.5), Float::sqrt(0.3), Float::sqrt(0.2)).unwrap();
        let spec = s.reduced(&[0]).unwrap().spectrum();
        for (x, y) in spec.values().iter().zip([0.5, 0.3, 0.2]) {
            assert!((x - y).abs() < 1e-14);
        }
        assert_eq!(
            make_omega(Float::sqrt(0.5), Float::sqrt(0.5), 0.0)
                .unwrap_err()
                .invariant(),
            Some("positive")
        );
        assert_eq!(
            make_omega(Float::sqrt(0.2), Float::sqrt(0.3), Float::sqrt(0.5))
                .unwrap_err()
                .invariant(),
            Some("ordering")
        );
    }

    #[test]
    fn acin_examples() {
        let p = AcinParams {
            lambda: [1.0, 0.0, 0.0, 0.0, 0.0],
            phi: 0.0,
        };
        let s = make_acin(&p).unwrap();
        assert_eq!(s, basis_state(&[2, 2, 2], &[0, 0, 0]).unwrap());
        assert!(!p.is_genuinely_entangled());

        let g = AcinParams {
            lambda: [0.5, 0.5, 0.5, 0.5, 0.0],
            phi: 1.0,
        };
        assert!(g.is_genuinely_entangled());
        assert!(!g.ab_separable());
        let h = AcinParams {
            lambda: [0.6, 0.0, 0.0, 0.8, 0.0],
            phi: 0.0,
        };
        assert!(!h.is_genuinely_entangled());
        assert!(h.ac_separable());
        assert!(make_acin(&AcinParams {
            lambda: [0.5; 5],
            phi: 0.0
        })
        .is_err());
        assert!(make_acin(&AcinParams {
            lambda: [1.0, 0.0, 0.0, 0.0, 0.0],
            phi: 4.0
        })
        .is_err());
    }

    #[test]
    fn acin_with_zero_lambda2_has_ppt_ac() {
        let p = AcinParams {
            lambda: [0.5, 0.3, 0.0, 0.6, Float::sqrt(1.0 - 0.25 - 0.09 - 0.36)],
            phi: 0.7,
        };
        let s = make_acin(&p).unwrap();
        let ac = partial_trace(&s.density(), &[0, 2]).unwrap();
        let low = *eig_hermitian(&partial_transpose(&ac, 0).unwrap())
            .unwrap()
            .values
            .values()
            .last()
            .unwrap();
        assert!(low > -1e-12);
    }

    #[test]
    fn w_amplitudes() {
        let w = make_w();
        let x = 1.0 / Float::sqrt(3.0);
        for (i, a) in w.amplitudes().iter().enumerate() {
            let want = if [1, 2, 4].contains(&i) { x } else { 0.0 };
            assert!((a.re - want).abs() < 1e-15 && a.im == 0.0);
        }
        let cut = w.bipartition(&Cut::a_bc()).unwrap();
        let spec = cut.reduced_spectrum().unwrap();
        assert!((spec.values()[0] - 2.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn pure_from_schmidt_product() {
        let s = pure_from_schmidt(&[1.0, 0.0], 2, 2).unwrap();
        assert_eq!(s, basis_state(&[2, 2], &[0, 0]).unwrap());
        assert!(pure_from_schmidt(&[0.6, 0.6], 2, 2).is_err());
        assert!(pure_from_schmidt(&[0.6, 0.8, 0.0], 2, 3).is_err());
    }

    #[test]
    fn flagged_superposition_marginal() {
        let a = basis_state(&[2, 2], &[0, 0]).unwrap();
        let b = make_bell();
        let f = flagged_superposition(&a, &b, 0.25).unwrap();
        assert_eq!(f.dims(), &[2, 2, 2]);
        let ab = partial_trace(&f.density(), &[0, 1]).unwrap();
        let want = a.density().mix(&b.density(), 0.25).unwrap();
        assert!(ab.matrix().max_abs_diff(want.matrix()) < 1e-15);
    }
}
