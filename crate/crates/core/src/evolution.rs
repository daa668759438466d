//! First-order Trotter evolution under the modified Ising Hamiltonian.

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, StateVector};
use crate::error::{Error, Result};
use crate::experiments::{Observable, TrajectoryDataset};
use crate::model::ModelParams;
use crate::scalar::Real;

/// Time step and step count. The boundary condition is taken from
/// [`ModelParams`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct TrotterConfig<T: Real> {
    pub dt: T,
    /// Zero is allowed and yields only the initial snapshot.
    pub n_steps: usize,
}

impl<T: Real> TrotterConfig<T> {
    pub fn new(dt: T, n_steps: usize) -> Result<Self> {
        let c = Self { dt, n_steps };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > T::zero()) || !self.dt.is_finite() {
            return Err(Error::invalid("dt", "must be positive and finite"));
        }
        Ok(())
    }

    pub fn total_time(&self) -> T {
        self.dt * T::lit(self.n_steps as f64)
    }
}

/// Bonds grouped as even `(0,1), (2,3), ...`, then odd, then the wrap bond,
/// so every group is a set of disjoint pairs.
fn bond_layers<T: Real>(params: &ModelParams<T>) -> Vec<(usize, usize)> {
    let mut bonds = params.bonds();
    bonds.sort_by_key(|&(a, b)| if b == a + 1 { (a % 2, a) } else { (2, a) });
    bonds
}

/// One step `Π e^{iJ dt XX} · Π e^{ih dt Z} · Π e^{ig dt ZZ}`, applied in the
/// order ZZ, Z, XX.
///
/// The XX layer is built as `H · RZZ · H`. Terms with a zero coupling are
/// left out, so `J = h = g = 0` gives an empty circuit.
pub fn build_trotter_step<T: Real>(params: &ModelParams<T>, dt: T) -> Result<Circuit<T>> {
    params.validate()?;
    let n = params.n_sites;
    let two = T::lit(2.0);
    let bonds = bond_layers(params);
    let mut c = Circuit::new(n);
    if params.g_coupling != T::zero() {
        let theta = -two * params.g_coupling * dt;
        for &(a, b) in &bonds {
            c.push(Gate::rzz(a, b, theta)?)?;
        }
    }
    if params.h_field != T::zero() {
        let theta = -two * params.h_field * dt;
        c.extend((0..n).map(|q| Gate::rz(q, theta)))?;
    }
    if params.j_coupling != T::zero() {
        let theta = -two * params.j_coupling * dt;
        c.extend((0..n).map(Gate::h))?;
        for &(a, b) in &bonds {
            c.push(Gate::rzz(a, b, theta)?)?;
        }
        c.extend((0..n).map(Gate::h))?;
    }
    Ok(c)
}

/// Applies `config.n_steps` Trotter steps and returns the final state.
pub fn trotter_evolve<T: Real>(
    state: &StateVector<T>,
    params: &ModelParams<T>,
    config: &TrotterConfig<T>,
) -> Result<StateVector<T>> {
    config.validate()?;
    let step = build_trotter_step(params, config.dt)?;
    let mut s = system_part(state, params.n_sites)?;
    for _ in 0..config.n_steps {
        s.apply_circuit(&step)?;
    }
    Ok(s)
}

/// Records the requested observables at `t = 0` and after every step.
///
/// Extra qubits above the system register must be in a computational basis
/// state (post-selected ancillas, flipped controls); they are dropped first.
pub fn evolve_trajectory<T: Real>(
    state: &StateVector<T>,
    params: &ModelParams<T>,
    config: &TrotterConfig<T>,
    observers: &[Observable],
) -> Result<TrajectoryDataset<T>> {
    config.validate()?;
    let step = build_trotter_step(params, config.dt)?;
    let mut s = system_part(state, params.n_sites)?;
    let echo = serde_json::json!({ "model": params, "trotter": config });
    let mut data = TrajectoryDataset::new(params.n_sites, echo);
    data.record(T::zero(), &s, observers)?;
    for k in 1..=config.n_steps {
        s.apply_circuit(&step)?;
        data.record(config.dt * T::lit(k as f64), &s, observers)?;
    }
    Ok(data)
}

fn system_part<T: Real>(state: &StateVector<T>, n_sites: usize) -> Result<StateVector<T>> {
    match state.n_qubits() {
        n if n == n_sites => Ok(state.clone()),
        n if n > n_sites => state.restrict_low(n_sites, T::epsilon().sqrt()),
        n => Err(Error::WidthMismatch {
            expected: n_sites,
            found: n,
        }),
    }
}
