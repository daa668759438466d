//! Gaussian wave-packet scattering on a modified transverse-field Ising
//! chain: state-preparation circuits, a dense statevector engine, Trotter
//! evolution, exact-diagonalization oracles and the error studies built on
//! them.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the `*F64`
//! and `*F32` aliases below fix the scalar for callers that do not care.

// `!(x > 0)` also rejects NaN, which `x <= 0` would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod circuit;
pub mod error;
pub mod evolution;
pub mod experiments;
pub mod model;
pub mod scalar;
pub mod wavepacket;

pub use error::{Error, Result};
pub use scalar::Real;

pub type StateVectorF64 = circuit::StateVector<f64>;
pub type StateVectorF32 = circuit::StateVector<f32>;
pub type CircuitF64 = circuit::Circuit<f64>;
pub type CircuitF32 = circuit::Circuit<f32>;
pub type GateF64 = circuit::Gate<f64>;
pub type ModelParamsF64 = model::ModelParams<f64>;
pub type ModelParamsF32 = model::ModelParams<f32>;
pub type DenseOperatorF64 = model::DenseOperator<f64>;
pub type WavePacketSpecF64 = wavepacket::WavePacketSpec<f64>;
pub type WavePacketSpecF32 = wavepacket::WavePacketSpec<f32>;
pub type TrotterConfigF64 = evolution::TrotterConfig<f64>;
pub type TrajectoryDatasetF64 = experiments::TrajectoryDataset<f64>;
pub type VqeConfigF64 = experiments::VqeConfig<f64>;
