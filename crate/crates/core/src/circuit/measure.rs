use num_complex::Complex;

use super::state::StateVector;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Outcome of post-selecting one qubit.
#[derive(Clone, Debug)]
pub struct ProjectionResult<T: Real> {
    /// Renormalized post-measurement state (same width as the input).
    pub state: StateVector<T>,
    /// Weight of the retained branch before renormalization.
    pub probability: T,
}

/// Probabilities at or below this multiple of `ε²` count as impossible.
const ZERO_PROBABILITY_ULPS: f64 = 1e3;

/// Projects `qubit` onto `outcome` and renormalizes.
pub fn project_ancilla<T: Real>(
    state: &StateVector<T>,
    qubit: usize,
    outcome: u8,
) -> Result<ProjectionResult<T>> {
    if outcome > 1 {
        return Err(Error::invalid("outcome", "must be 0 or 1"));
    }
    state.check_qubit(qubit)?;
    let mask = 1usize << qubit;
    let keep = if outcome == 0 { 0 } else { mask };
    let mut amps = state.amplitudes().to_vec();
    let mut probability = T::zero();
    for (i, a) in amps.iter_mut().enumerate() {
        if i & mask == keep {
            probability += a.norm_sqr();
        } else {
            *a = Complex::new(T::zero(), T::zero());
        }
    }
    let floor = T::epsilon() * T::epsilon() * T::lit(ZERO_PROBABILITY_ULPS);
    if probability <= floor {
        return Err(Error::ZeroProbability {
            qubit,
            outcome,
            probability: probability.to_f64_lossy(),
        });
    }
    let mut out = StateVector::from_raw(state.n_qubits(), amps);
    out.normalize()?;
    Ok(ProjectionResult {
        state: out,
        probability: probability / state.norm_sqr(),
    })
}

/// `<ψ|P|ψ>` for a Pauli string whose `i`-th character acts on qubit `i`.
pub fn expectation_pauli<T: Real>(state: &StateVector<T>, pauli: &str) -> Result<T> {
    let ops: Vec<char> = pauli.chars().collect();
    if ops.len() != state.n_qubits() {
        return Err(Error::MalformedPauli(pauli.to_string()));
    }
    let (mut flip, mut zmask, mut n_y) = (0usize, 0usize, 0u32);
    for (q, op) in ops.iter().enumerate() {
        match op.to_ascii_uppercase() {
            'I' => {}
            'X' => flip |= 1 << q,
            'Y' => {
                flip |= 1 << q;
                zmask |= 1 << q;
                n_y += 1;
            }
            'Z' => zmask |= 1 << q,
            _ => return Err(Error::MalformedPauli(pauli.to_string())),
        }
    }
    // P|j> = i^{n_y} (-1)^{popcount(j & zmask)} |j ^ flip>, with Y = i X Z
    let amps = state.amplitudes();
    let mut acc = Complex::new(T::zero(), T::zero());
    for (j, a) in amps.iter().enumerate() {
        let sign = if (j & zmask).count_ones() % 2 == 0 { T::one() } else { -T::one() };
        acc += amps[j ^ flip].conj() * a.scale(sign);
    }
    let phase = match n_y % 4 {
        0 => Complex::new(T::one(), T::zero()),
        1 => Complex::new(T::zero(), T::one()),
        2 => Complex::new(-T::one(), T::zero()),
        _ => Complex::new(T::zero(), -T::one()),
    };
    Ok((acc * phase).re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn bell() -> StateVector<f64> {
        let z = Complex::new(0.0, 0.0);
        let h = Complex::new(FRAC_1_SQRT_2, 0.0);
        StateVector::from_amplitudes(vec![h, z, z, h]).unwrap()
    }

    #[test]
    fn z_expectations() {
        assert_eq!(expectation_pauli(&StateVector::<f64>::zero(1).unwrap(), "Z").unwrap(), 1.0);
        assert_eq!(expectation_pauli(&StateVector::<f64>::basis(1, 1).unwrap(), "Z").unwrap(), -1.0);
        assert!((expectation_pauli(&bell(), "ZZ").unwrap() - 1.0).abs() < 1e-15);
        assert!((expectation_pauli(&bell(), "YY").unwrap() + 1.0).abs() < 1e-15);
        assert!((expectation_pauli(&bell(), "XX").unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn malformed_pauli() {
        let s = StateVector::<f64>::zero(2).unwrap();
        assert!(expectation_pauli(&s, "Z").is_err());
        assert!(expectation_pauli(&s, "ZQ").is_err());
    }

    #[test]
    fn bell_projection() {
        let r = project_ancilla(&bell(), 0, 0).unwrap();
        assert!((r.probability - 0.5).abs() < 1e-15);
        assert!((r.state.amplitudes()[0].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn projection_of_product_is_identity() {
        let s = StateVector::<f64>::basis(3, 0b110).unwrap();
        let r = project_ancilla(&s, 0, 0).unwrap();
        assert_eq!(r.probability, 1.0);
        assert_eq!(r.state, s);
    }

    #[test]
    fn impossible_outcome_errors() {
        let s = StateVector::<f64>::zero(2).unwrap();
        assert!(matches!(
            project_ancilla(&s, 1, 1),
            Err(Error::ZeroProbability { qubit: 1, outcome: 1, .. })
        ));
    }
}
