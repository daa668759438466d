use nalgebra::DMatrix;
use num_complex::Complex;

use super::{check_dense, DenseOperator, ModelParams};
use crate::circuit::StateVector;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense `H = -Σ_j (J σx_j σx_{j+1} + h σz_j + g σz_j σz_{j+1})`.
///
/// Dense construction is limited to [`super::DENSE_CAP`] sites.
pub fn build_hamiltonian<T: Real>(params: &ModelParams<T>) -> Result<DenseOperator<T>> {
    let real = real_hamiltonian(params)?;
    DenseOperator::from_matrix(real.map(|v| Complex::new(v, T::zero())))
}

/// The Hamiltonian is real in the computational basis; this is its real form.
pub(crate) fn real_hamiltonian<T: Real>(params: &ModelParams<T>) -> Result<DMatrix<T>> {
    params.validate()?;
    check_dense("Hamiltonian", params.n_sites)?;
    let action = HamiltonianAction::new(params)?;
    let dim = action.dim();
    let mut h = DMatrix::from_element(dim, dim, T::zero());
    for col in 0..dim {
        h[(col, col)] = action.diagonal[col];
        for &mask in &action.flip_masks {
            h[(col ^ mask, col)] -= params.j_coupling;
        }
    }
    Ok(h)
}

/// Matrix-free action of the Hamiltonian on statevectors; valid for any
/// width the statevector engine supports.
#[derive(Clone, Debug)]
pub struct HamiltonianAction<T: Real> {
    n_sites: usize,
    j_coupling: T,
    diagonal: Vec<T>,
    flip_masks: Vec<usize>,
}

impl<T: Real> HamiltonianAction<T> {
    pub fn new(params: &ModelParams<T>) -> Result<Self> {
        params.validate()?;
        crate::circuit::StateVector::<T>::zero(params.n_sites)?;
        let n = params.n_sites;
        let dim = 1usize << n;
        let bonds = params.bonds();
        let z = |i: usize, q: usize| if (i >> q) & 1 == 0 { T::one() } else { -T::one() };
        let diagonal = (0..dim)
            .map(|i| {
                let field: T = (0..n).map(|q| z(i, q)).sum();
                let zz: T = bonds.iter().map(|&(a, b)| z(i, a) * z(i, b)).sum();
                -(params.h_field * field + params.g_coupling * zz)
            })
            .collect();
        let flip_masks = bonds.iter().map(|&(a, b)| (1usize << a) | (1usize << b)).collect();
        Ok(Self {
            n_sites: n,
            j_coupling: params.j_coupling,
            diagonal,
            flip_masks,
        })
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    /// `out = H psi`.
    pub fn apply_into(&self, psi: &[Complex<T>], out: &mut [Complex<T>]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o = psi[i].scale(self.diagonal[i]);
        }
        if self.j_coupling != T::zero() {
            let mj = -self.j_coupling;
            for &mask in &self.flip_masks {
                for (i, o) in out.iter_mut().enumerate() {
                    *o += psi[i ^ mask].scale(mj);
                }
            }
        }
    }

    pub fn apply(&self, state: &StateVector<T>) -> Result<Vec<Complex<T>>> {
        self.check(state)?;
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.dim()];
        self.apply_into(state.amplitudes(), &mut out);
        Ok(out)
    }

    /// `<ψ|H|ψ>` for a normalized state.
    pub fn expectation(&self, state: &StateVector<T>) -> Result<T> {
        let h_psi = self.apply(state)?;
        Ok(state
            .amplitudes()
            .iter()
            .zip(&h_psi)
            .map(|(a, b)| (a.conj() * b).re)
            .sum())
    }

    /// `<H^2> - <H>^2`, evaluated as `‖(H - <H>)ψ‖²` to avoid cancellation.
    pub fn variance(&self, state: &StateVector<T>) -> Result<T> {
        let h_psi = self.apply(state)?;
        let mean: T = state
            .amplitudes()
            .iter()
            .zip(&h_psi)
            .map(|(a, b)| (a.conj() * b).re)
            .sum();
        Ok(state
            .amplitudes()
            .iter()
            .zip(&h_psi)
            .map(|(a, b)| (*b - a.scale(mean)).norm_sqr())
            .sum())
    }

    fn check(&self, state: &StateVector<T>) -> Result<()> {
        if state.n_qubits() != self.n_sites {
            Err(Error::WidthMismatch {
                expected: self.n_sites,
                found: state.n_qubits(),
            })
        } else {
            Ok(())
        }
    }
}
