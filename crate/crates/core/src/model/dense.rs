use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex;

use super::check_dense;
use crate::circuit::StateVector;
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

/// Dense operator on `n_qubits` qubits, indexed like [`StateVector`].
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator<T: Real> {
    n_qubits: usize,
    matrix: DMatrix<Complex<T>>,
}

fn zero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

impl<T: Real> DenseOperator<T> {
    pub fn zeros(n_qubits: usize) -> Result<Self> {
        check_dense("dense operator", n_qubits)?;
        let dim = 1usize << n_qubits;
        Ok(Self {
            n_qubits,
            matrix: DMatrix::from_element(dim, dim, zero()),
        })
    }

    pub fn identity(n_qubits: usize) -> Result<Self> {
        check_dense("dense operator", n_qubits)?;
        let dim = 1usize << n_qubits;
        Ok(Self {
            n_qubits,
            matrix: DMatrix::identity(dim, dim),
        })
    }

    pub fn from_matrix(matrix: DMatrix<Complex<T>>) -> Result<Self> {
        let dim = matrix.nrows();
        if dim != matrix.ncols() || !dim.is_power_of_two() {
            return Err(Error::invalid("matrix", "must be square with power-of-two size"));
        }
        let n_qubits = dim.trailing_zeros() as usize;
        check_dense("dense operator", n_qubits)?;
        Ok(Self { n_qubits, matrix })
    }

    /// Tensor product of single-qubit Paulis; qubits not listed get identity.
    pub fn pauli_string(n_qubits: usize, ops: &[(usize, Pauli)]) -> Result<Self> {
        let mut out = Self::zeros(n_qubits)?;
        let (mut flip, mut zmask, mut n_y) = (0usize, 0usize, 0usize);
        for &(q, p) in ops {
            if q >= n_qubits {
                return Err(Error::QubitOutOfRange { index: q, width: n_qubits });
            }
            match p {
                Pauli::I => {}
                Pauli::X => flip ^= 1 << q,
                Pauli::Z => zmask ^= 1 << q,
                Pauli::Y => {
                    flip ^= 1 << q;
                    zmask ^= 1 << q;
                    n_y += 1;
                }
            }
        }
        let phase = [
            Complex::new(T::one(), T::zero()),
            Complex::new(T::zero(), T::one()),
            Complex::new(-T::one(), T::zero()),
            Complex::new(T::zero(), -T::one()),
        ][n_y % 4];
        for col in 0..out.dim() {
            let sign = if (col & zmask).count_ones() % 2 == 0 { T::one() } else { -T::one() };
            out.matrix[(col ^ flip, col)] = phase.scale(sign);
        }
        Ok(out)
    }

    /// `|1><0|` on `qubit`.
    pub fn sigma_minus(n_qubits: usize, qubit: usize) -> Result<Self> {
        let mut out = Self::zeros(n_qubits)?;
        if qubit >= n_qubits {
            return Err(Error::QubitOutOfRange { index: qubit, width: n_qubits });
        }
        let bit = 1usize << qubit;
        for col in (0..out.dim()).filter(|c| c & bit == 0) {
            out.matrix[(col | bit, col)] = Complex::new(T::one(), T::zero());
        }
        Ok(out)
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    #[inline]
    pub fn matrix(&self) -> &DMatrix<Complex<T>> {
        &self.matrix
    }

    pub(crate) fn matrix_mut(&mut self) -> &mut DMatrix<Complex<T>> {
        &mut self.matrix
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.matrix[(row, col)]
    }

    pub fn dagger(&self) -> Self {
        Self {
            n_qubits: self.n_qubits,
            matrix: self.matrix.transpose().map(|v| v.conj()),
        }
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            n_qubits: self.n_qubits,
            matrix: self.matrix.map(|v| v * s),
        }
    }

    /// `{self, other}`.
    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Largest elementwise modulus.
    pub fn max_abs(&self) -> T {
        self.matrix.iter().map(|v| v.norm()).fold(T::zero(), T::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim(), other.dim(), "operator dimension mismatch");
        self.matrix
            .iter()
            .zip(other.matrix.iter())
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max)
    }

    pub fn hermiticity_defect(&self) -> T {
        self.max_abs_diff(&self.dagger())
    }

    /// `self |ψ>` without renormalization.
    pub fn apply_raw(&self, state: &StateVector<T>) -> Result<Vec<Complex<T>>> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::WidthMismatch {
                expected: self.n_qubits,
                found: state.n_qubits(),
            });
        }
        let dim = self.dim();
        Ok((0..dim)
            .map(|r| {
                (0..dim).fold(zero(), |acc, c| acc + self.matrix[(r, c)] * state.amplitudes()[c])
            })
            .collect())
    }
}

impl<T: Real> Mul for &DenseOperator<T> {
    type Output = DenseOperator<T>;
    fn mul(self, rhs: Self) -> DenseOperator<T> {
        DenseOperator {
            n_qubits: self.n_qubits,
            matrix: &self.matrix * &rhs.matrix,
        }
    }
}

impl<T: Real> Add for &DenseOperator<T> {
    type Output = DenseOperator<T>;
    fn add(self, rhs: Self) -> DenseOperator<T> {
        DenseOperator {
            n_qubits: self.n_qubits,
            matrix: &self.matrix + &rhs.matrix,
        }
    }
}

impl<T: Real> Sub for &DenseOperator<T> {
    type Output = DenseOperator<T>;
    fn sub(self, rhs: Self) -> DenseOperator<T> {
        DenseOperator {
            n_qubits: self.n_qubits,
            matrix: &self.matrix - &rhs.matrix,
        }
    }
}
