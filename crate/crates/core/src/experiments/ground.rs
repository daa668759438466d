use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::circuit::StateVector;
use crate::error::{Error, Result};
use crate::model::{HamiltonianAction, ModelParams};
use crate::scalar::Real;

/// Settings for imaginary-time projection onto the ground state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "", default, deny_unknown_fields)]
pub struct ProjectionConfig<T: Real> {
    /// Imaginary time step `dτ`.
    pub dtau: T,
    pub max_steps: usize,
    /// Stop once `<H²> - <H>²` falls below this value.
    pub variance_tol: T,
}

impl<T: Real> Default for ProjectionConfig<T> {
    fn default() -> Self {
        Self {
            dtau: T::lit(0.05),
            max_steps: 20_000,
            variance_tol: T::lit(1e-11),
        }
    }
}

/// Outcome of [`projected_ground_state`].
#[derive(Clone, Debug)]
pub struct ProjectedGround<T: Real> {
    pub state: StateVector<T>,
    pub energy: T,
    pub variance: T,
    pub steps: usize,
    pub converged: bool,
}

/// Ground state by repeated application of the fourth-order Taylor
/// polynomial of `exp(-dτ (H - E))`, starting from `|0...0>`.
///
/// The Hamiltonian is applied matrix-free, so this works beyond the dense
/// cap. The start state fixes the `Π σz = +1` parity sector, which holds the
/// ground state for `|J| < h`.
pub fn projected_ground_state<T: Real>(
    params: &ModelParams<T>,
    config: &ProjectionConfig<T>,
) -> Result<ProjectedGround<T>> {
    if !(config.dtau > T::zero()) {
        return Err(Error::invalid("dtau", "must be positive"));
    }
    let h = HamiltonianAction::new(params)?;
    let dim = h.dim();
    let zero = Complex::new(T::zero(), T::zero());
    let mut psi = StateVector::zero(params.n_sites)?;
    let mut term = vec![zero; dim];
    let mut next = vec![zero; dim];
    let mut energy = h.expectation(&psi)?;
    let mut variance = h.variance(&psi)?;
    let mut steps = 0;
    while steps < config.max_steps && variance > config.variance_tol {
        // psi <- Σ_{k≤4} (-dτ (H - E))^k / k! psi
        let mut acc = psi.amplitudes().to_vec();
        term.copy_from_slice(psi.amplitudes());
        for k in 1..=4 {
            h.apply_into(&term, &mut next);
            let f = -config.dtau / T::lit(k as f64);
            for (n, t) in next.iter_mut().zip(&term) {
                *n = (*n - t.scale(energy)).scale(f);
            }
            std::mem::swap(&mut term, &mut next);
            for (a, t) in acc.iter_mut().zip(&term) {
                *a += *t;
            }
        }
        psi = StateVector::from_amplitudes(acc)?;
        steps += 1;
        if steps % 10 == 0 || steps == config.max_steps {
            energy = h.expectation(&psi)?;
            variance = h.variance(&psi)?;
        } else {
            energy = h.expectation(&psi)?;
        }
    }
    variance = h.variance(&psi)?;
    fix_phase(&mut psi);
    Ok(ProjectedGround {
        state: psi,
        energy,
        converged: variance <= config.variance_tol,
        variance,
        steps,
    })
}

/// Rotates the global phase so the largest amplitude is real and positive.
pub(crate) fn fix_phase<T: Real>(state: &mut StateVector<T>) {
    let amps = state.amplitudes_mut();
    let pivot = amps
        .iter()
        .enumerate()
        .fold((0, T::zero()), |acc, (i, a)| if a.norm() > acc.1 { (i, a.norm()) } else { acc })
        .0;
    let p = amps[pivot];
    if p.norm() == T::zero() {
        return;
    }
    let rot = p.conj().unscale(p.norm());
    amps.iter_mut().for_each(|a| *a *= rot);
}
