use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::circuits::{build_packet_circuit, check_packets};
use super::spec::{gaussian_coefficients, WavePacketSpec};
use crate::circuit::{project_ancilla, StateVector};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// How a scattering state is produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrepVariant {
    /// Packet operator summed over the whole lattice.
    ExactOracle,
    /// Packet operator restricted to the packet window.
    TruncatedOracle,
    /// Givens + LOBE circuit with ancilla post-selection.
    TruncatedUnitary,
}

impl PrepVariant {
    pub fn label(self) -> &'static str {
        match self {
            PrepVariant::ExactOracle => "exact",
            PrepVariant::TruncatedOracle => "truncated",
            PrepVariant::TruncatedUnitary => "truncated_unitary",
        }
    }
}

/// Applies `Σ_j a_j e^{-iβ_j} c†_j` and renormalizes.
///
/// The sum runs over the whole lattice for [`PrepVariant::ExactOracle`] and
/// over `spec.window` for [`PrepVariant::TruncatedOracle`]. The operator is
/// applied matrix-free, so it works above the dense cap.
pub fn apply_packet_oracle<T: Real>(
    state: &StateVector<T>,
    spec: &WavePacketSpec<T>,
    variant: PrepVariant,
    n_sites: usize,
) -> Result<StateVector<T>> {
    if state.n_qubits() != n_sites {
        return Err(Error::WidthMismatch {
            expected: n_sites,
            found: state.n_qubits(),
        });
    }
    spec.validate(n_sites)?;
    let spec = match variant {
        PrepVariant::ExactOracle => spec.with_window((1, n_sites)),
        PrepVariant::TruncatedOracle => *spec,
        PrepVariant::TruncatedUnitary => return Err(Error::VariantMismatch("oracle application")),
    };
    let (a, beta) = gaussian_coefficients(&spec)?;
    let psi = state.amplitudes();
    let zero = Complex::new(T::zero(), T::zero());
    let mut out = vec![zero; psi.len()];
    for ((site, &amp), &b) in spec.sites().zip(&a).zip(&beta) {
        let q = site - 1;
        let bit = 1usize << q;
        let below = bit - 1;
        let coef = Complex::new(b.cos(), -b.sin()).scale(amp);
        for (i, &x) in psi.iter().enumerate() {
            if i & bit != 0 || x == zero {
                continue;
            }
            let empties = q as u32 - (i & below).count_ones();
            let term = coef * x;
            if empties.is_multiple_of(2) {
                out[i | bit] += term;
            } else {
                out[i | bit] -= term;
            }
        }
    }
    if out.iter().all(|v| *v == zero) {
        return Err(Error::ZeroVector("packet operator output"));
    }
    StateVector::from_amplitudes(out)
}

/// Number of single-site creation terms in a two-packet product:
/// `N(N-1)/2` for the exact oracle and `N(N/2-1)/4` for truncated windows.
pub fn term_count(variant: PrepVariant, n_sites: usize) -> Result<usize> {
    if n_sites < 2 || !n_sites.is_multiple_of(2) {
        return Err(Error::invalid("n_sites", format!("{n_sites} is not a positive even size")));
    }
    Ok(match variant {
        PrepVariant::ExactOracle => n_sites * (n_sites - 1) / 2,
        PrepVariant::TruncatedOracle | PrepVariant::TruncatedUnitary => n_sites * (n_sites / 2 - 1) / 4,
    })
}

/// A scattering state and the post-selection weight it cost.
#[derive(Clone, Debug)]
pub struct PreparedState<T: Real> {
    pub state: StateVector<T>,
    /// Product of ancilla success probabilities; 1 for the oracles.
    pub success_probability: T,
}

/// `G_1 G_2 |Ω>` (or `G_1 |Ω>`) for the chosen preparation variant.
pub fn prepare_scattering_state<T: Real>(
    vacuum: &StateVector<T>,
    specs: &[WavePacketSpec<T>],
    variant: PrepVariant,
    n_sites: usize,
) -> Result<PreparedState<T>> {
    check_packets(specs, n_sites)?;
    if vacuum.n_qubits() != n_sites {
        return Err(Error::WidthMismatch {
            expected: n_sites,
            found: vacuum.n_qubits(),
        });
    }
    if variant != PrepVariant::TruncatedUnitary {
        let mut s = vacuum.clone();
        for spec in specs.iter().rev() {
            s = apply_packet_oracle(&s, spec, variant, n_sites)?;
        }
        return Ok(PreparedState {
            state: s,
            success_probability: T::one(),
        });
    }
    let circuit = build_packet_circuit(specs, variant, n_sites)?;
    let mut s = vacuum.with_extra_qubits(2 * specs.len())?;
    s.apply_circuit(&circuit)?;
    let mut prob = T::one();
    for p in 0..specs.len() {
        let r = project_ancilla(&s, n_sites + 2 * p + 1, 0)?;
        prob *= r.probability;
        s = r.state;
    }
    let tol = T::epsilon().sqrt();
    Ok(PreparedState {
        state: s.restrict_low(n_sites, tol)?,
        success_probability: prob,
    })
}
