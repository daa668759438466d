//! Gaussian wave-packet synthesis: coefficients, Givens schedules, the
//! truncated-unitary preparation circuit and the non-unitary reference
//! oracles.
//!
//! A packet with centre `j_A`, momentum `k` and width `σ` is the creation
//! operator `G = Σ_j a_j e^{-iβ_j} c†_j` with `a_j ∝ exp(-(j - j_A)²/σ²)` and
//! `β_j = k j`. Sites are 1-based throughout this module.

mod circuits;
mod oracle;
mod spec;

pub use circuits::{build_lobe_sigma_minus, build_packet_circuit, build_v_beta, build_v_theta, packet_register};
pub use oracle::{apply_packet_oracle, prepare_scattering_state, term_count, PrepVariant, PreparedState};
pub use spec::{gaussian_coefficients, givens_angles, reconstruct_amplitudes, GivensSchedule, WavePacketSpec};
