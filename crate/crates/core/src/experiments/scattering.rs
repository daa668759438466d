use serde::{Deserialize, Serialize};

use super::dataset::TrajectoryDataset;
use super::ground::{projected_ground_state, ProjectionConfig};
use super::observables::Observable;
use super::vqe::{vqe_ground_state, VqeConfig};
use crate::circuit::StateVector;
use crate::error::Result;
use crate::evolution::{evolve_trajectory, TrotterConfig};
use crate::model::{exact_ground_state, HamiltonianAction, ModelParams, DENSE_CAP};
use crate::scalar::Real;
use crate::wavepacket::{prepare_scattering_state, PrepVariant, WavePacketSpec};

/// Where the vacuum the packets are created on comes from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "", rename_all = "snake_case")]
pub enum VacuumSource<T: Real> {
    /// `|0...0>`, the vacuum of the `J = g = 0` chain.
    Trivial,
    /// Dense diagonalization up to the dense cap, imaginary-time projection
    /// above it.
    ExactGround(ProjectionConfig<T>),
    Vqe(VqeConfig<T>),
}

impl<T: Real> VacuumSource<T> {
    pub fn exact() -> Self {
        VacuumSource::ExactGround(ProjectionConfig::default())
    }
}

/// A prepared vacuum and how it was obtained.
#[derive(Clone, Debug)]
pub struct Vacuum<T: Real> {
    pub state: StateVector<T>,
    pub energy: T,
    /// `trivial`, `dense`, `projected` or `vqe`.
    pub method: &'static str,
    /// `<H²> - <H>²` of the returned state.
    pub variance: T,
}

pub fn prepare_vacuum<T: Real>(params: &ModelParams<T>, source: &VacuumSource<T>) -> Result<Vacuum<T>> {
    let (state, method) = match source {
        VacuumSource::Trivial => (StateVector::zero(params.n_sites)?, "trivial"),
        VacuumSource::ExactGround(_) if params.n_sites <= DENSE_CAP => {
            (exact_ground_state(params)?.1, "dense")
        }
        VacuumSource::ExactGround(cfg) => (projected_ground_state(params, cfg)?.state, "projected"),
        VacuumSource::Vqe(cfg) => (vqe_ground_state(params, cfg)?.state, "vqe"),
    };
    let h = HamiltonianAction::new(params)?;
    Ok(Vacuum {
        energy: h.expectation(&state)?,
        variance: h.variance(&state)?,
        state,
        method,
    })
}

/// Dataset plus preparation metadata of one scattering run.
#[derive(Clone, Debug)]
pub struct ScatteringRun<T: Real> {
    pub dataset: TrajectoryDataset<T>,
    pub success_probability: T,
}

/// Creates the packets on an already prepared vacuum and evolves.
pub fn run_on_vacuum<T: Real>(
    params: &ModelParams<T>,
    vacuum: &Vacuum<T>,
    packets: &[WavePacketSpec<T>],
    variant: PrepVariant,
    trotter: &TrotterConfig<T>,
    observers: &[Observable],
) -> Result<ScatteringRun<T>> {
    let prep = prepare_scattering_state(&vacuum.state, packets, variant, params.n_sites)?;
    let mut dataset = evolve_trajectory(&prep.state, params, trotter, observers)?;
    dataset.config_echo = serde_json::json!({
        "model": params,
        "packets": packets,
        "variant": variant,
        "trotter": trotter,
        "vacuum": {
            "method": vacuum.method,
            "energy": vacuum.energy.to_f64_lossy(),
            "variance": vacuum.variance.to_f64_lossy(),
        },
        "success_probability": prep.success_probability.to_f64_lossy(),
        "observables": observers,
    });
    Ok(ScatteringRun {
        dataset,
        success_probability: prep.success_probability,
    })
}

/// Vacuum, packets, evolution; records occupations and entropies each step.
pub fn run_scattering_experiment<T: Real>(
    params: &ModelParams<T>,
    packets: &[WavePacketSpec<T>],
    variant: PrepVariant,
    trotter: &TrotterConfig<T>,
    vacuum: &VacuumSource<T>,
) -> Result<TrajectoryDataset<T>> {
    let vac = prepare_vacuum(params, vacuum)?;
    let run = run_on_vacuum(
        params,
        &vac,
        packets,
        variant,
        trotter,
        &[Observable::Occupations, Observable::Entropies],
    )?;
    Ok(run.dataset)
}
