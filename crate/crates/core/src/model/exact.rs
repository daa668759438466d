use nalgebra::DMatrix;
use num_complex::Complex;

use super::hamiltonian::real_hamiltonian;
use super::ModelParams;
use crate::circuit::StateVector;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Lowest eigenpair of the dense Hamiltonian.
///
/// The returned vector's global phase is fixed so that its largest-magnitude
/// amplitude is real and positive.
pub fn exact_ground_state<T: Real>(params: &ModelParams<T>) -> Result<(T, StateVector<T>)> {
    let h = real_hamiltonian(params)?;
    let (values, vectors) = T::symmetric_eigen(h);
    let col = vectors.column(0);
    let mut pivot = 0;
    for (i, v) in col.iter().enumerate() {
        if v.abs() > col[pivot].abs() {
            pivot = i;
        }
    }
    let sign = if col[pivot] < T::zero() { -T::one() } else { T::one() };
    let amps = col.iter().map(|&v| Complex::new(sign * v, T::zero())).collect();
    Ok((values[0], StateVector::from_amplitudes(amps)?))
}

/// `exp(-iHt)` through a cached eigendecomposition; build once, evolve many times.
#[derive(Clone, Debug)]
pub struct ExactPropagator<T: Real> {
    n_sites: usize,
    energies: Vec<T>,
    vectors: DMatrix<T>,
}

impl<T: Real> ExactPropagator<T> {
    pub fn new(params: &ModelParams<T>) -> Result<Self> {
        let h = real_hamiltonian(params)?;
        let (energies, vectors) = T::symmetric_eigen(h);
        Ok(Self {
            n_sites: params.n_sites,
            energies,
            vectors,
        })
    }

    pub fn energies(&self) -> &[T] {
        &self.energies
    }

    pub fn evolve(&self, state: &StateVector<T>, t: T) -> Result<StateVector<T>> {
        if state.n_qubits() != self.n_sites {
            return Err(Error::WidthMismatch {
                expected: self.n_sites,
                found: state.n_qubits(),
            });
        }
        let psi = state.amplitudes();
        let dim = psi.len();
        let zero = Complex::new(T::zero(), T::zero());
        let v = &self.vectors;
        // coefficients in the eigenbasis, then phases, then back
        let mut coeffs = vec![zero; dim];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let column = v.column(k);
            let mut acc = zero;
            for (x, &a) in column.iter().zip(psi) {
                acc += a.scale(*x);
            }
            let phase = -self.energies[k] * t;
            *c = acc * Complex::new(phase.cos(), phase.sin());
        }
        let mut out = vec![zero; dim];
        for (k, c) in coeffs.iter().enumerate() {
            for (o, x) in out.iter_mut().zip(v.column(k).iter()) {
                *o += c.scale(*x);
            }
        }
        Ok(StateVector::from_raw(self.n_sites, out))
    }
}

/// One-shot `exp(-iHt) state`.
pub fn exact_evolve<T: Real>(state: &StateVector<T>, params: &ModelParams<T>, t: T) -> Result<StateVector<T>> {
    ExactPropagator::new(params)?.evolve(state, t)
}
