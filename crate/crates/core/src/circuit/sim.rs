//! Statevector gate kernels.

use num_complex::Complex;

use super::gate::{Gate, GateKind};
use super::ir::Circuit;
use super::state::StateVector;
use crate::error::{Error, Result};
use crate::scalar::Real;

type C<T> = Complex<T>;

#[inline]
fn c<T: Real>(re: T, im: T) -> C<T> {
    Complex::new(re, im)
}

/// Inserts a zero bit at position `pos` of `k`.
#[inline]
fn insert_zero(k: usize, pos: usize) -> usize {
    let low = k & ((1 << pos) - 1);
    ((k >> pos) << (pos + 1)) | low
}

/// Enumerates every basis index whose bits at `positions` are all zero.
fn zero_bit_indices(dim: usize, positions: &[usize]) -> impl Iterator<Item = usize> {
    let mut sorted = positions.to_vec();
    sorted.sort_unstable();
    (0..dim >> sorted.len()).map(move |k| sorted.iter().fold(k, |acc, &p| insert_zero(acc, p)))
}

fn apply_1q<T: Real>(amps: &mut [C<T>], q: usize, m: [[C<T>; 2]; 2]) {
    let stride = 1usize << q;
    for base in (0..amps.len()).step_by(stride << 1) {
        for i in base..base + stride {
            let (x, y) = (amps[i], amps[i + stride]);
            amps[i] = m[0][0] * x + m[0][1] * y;
            amps[i + stride] = m[1][0] * x + m[1][1] * y;
        }
    }
}

/// Applies a 4x4 matrix whose local index is `bit(q0) + 2 * bit(q1)`.
fn apply_2q<T: Real>(amps: &mut [C<T>], q0: usize, q1: usize, m: &[[C<T>; 4]; 4]) {
    let (m0, m1) = (1usize << q0, 1usize << q1);
    for i in zero_bit_indices(amps.len(), &[q0, q1]) {
        let idx = [i, i | m0, i | m1, i | m0 | m1];
        let v = idx.map(|k| amps[k]);
        for r in 0..4 {
            amps[idx[r]] = m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2] + m[r][3] * v[3];
        }
    }
}

fn apply_zz_phase<T: Real>(amps: &mut [C<T>], a: usize, b: usize, theta: T) {
    let half = theta / T::lit(2.0);
    let even = c(half.cos(), -half.sin());
    let odd = c(half.cos(), half.sin());
    for (i, amp) in amps.iter_mut().enumerate() {
        let parity = ((i >> a) ^ (i >> b)) & 1;
        *amp *= if parity == 0 { even } else { odd };
    }
}

fn apply_swap_if<T: Real>(amps: &mut [C<T>], controls: &[usize], target: usize) {
    let tmask = 1usize << target;
    let cmask = controls.iter().fold(0usize, |m, &q| m | (1 << q));
    for i in zero_bit_indices(amps.len(), &[target]) {
        if i & cmask == cmask {
            amps.swap(i, i | tmask);
        }
    }
}

/// 2x2 matrix of a single-qubit gate.
pub(crate) fn single_qubit_matrix<T: Real>(kind: GateKind, theta: T) -> [[C<T>; 2]; 2] {
    let z = T::zero();
    let o = T::one();
    let half = theta / T::lit(2.0);
    let (cs, sn) = (half.cos(), half.sin());
    match kind {
        GateKind::Rx => [[c(cs, z), c(z, -sn)], [c(z, -sn), c(cs, z)]],
        GateKind::Ry => [[c(cs, z), c(-sn, z)], [c(sn, z), c(cs, z)]],
        GateKind::Rz => [[c(cs, -sn), c(z, z)], [c(z, z), c(cs, sn)]],
        GateKind::H => {
            let r = T::FRAC_1_SQRT_2();
            [[c(r, z), c(r, z)], [c(r, z), c(-r, z)]]
        }
        GateKind::X => [[c(z, z), c(o, z)], [c(o, z), c(z, z)]],
        GateKind::Z => [[c(o, z), c(z, z)], [c(z, z), c(-o, z)]],
        _ => unreachable!("{kind} is not a single-qubit gate"),
    }
}

fn two_qubit_matrix<T: Real>(kind: GateKind, theta: T) -> [[C<T>; 4]; 4] {
    let z = c(T::zero(), T::zero());
    let half = theta / T::lit(2.0);
    let (cs, sn) = (half.cos(), half.sin());
    let mut m = [[z; 4]; 4];
    match kind {
        GateKind::Rxx => {
            // cos I - i sin XX; XX swaps 00<->11 and 01<->10
            for (r, col) in [(0, 3), (1, 2), (2, 1), (3, 0)] {
                m[r][r] = c(cs, T::zero());
                m[r][col] = c(T::zero(), -sn);
            }
        }
        GateKind::Ryy => {
            // YY: 00 <-> 11 with sign -1, 01 <-> 10 with sign +1
            for (r, col, sign) in [(0, 3, -1.0), (1, 2, 1.0), (2, 1, 1.0), (3, 0, -1.0)] {
                m[r][r] = c(cs, T::zero());
                m[r][col] = c(T::zero(), -sn * T::lit(sign));
            }
        }
        GateKind::Givens => {
            // acts on span{|p=1,q=0>, |p=0,q=1>} as [[cos θ, sin θ], [-sin θ, cos θ]]
            let (ct, st) = (theta.cos(), theta.sin());
            m[0][0] = c(T::one(), T::zero());
            m[3][3] = c(T::one(), T::zero());
            m[1][1] = c(ct, T::zero());
            m[1][2] = c(st, T::zero());
            m[2][1] = c(-st, T::zero());
            m[2][2] = c(ct, T::zero());
        }
        _ => unreachable!("{kind} has no dense 4x4 kernel"),
    }
    m
}

impl<T: Real> StateVector<T> {
    /// Applies one gate in place.
    pub fn apply(&mut self, gate: &Gate<T>) -> Result<()> {
        for &q in gate.qubits() {
            self.check_qubit(q)?;
        }
        let qs = gate.qubits();
        let amps = self.amplitudes_mut();
        match gate.kind() {
            k @ (GateKind::Rx | GateKind::Ry | GateKind::Rz | GateKind::H | GateKind::X | GateKind::Z) => {
                apply_1q(amps, qs[0], single_qubit_matrix(k, gate.angle()))
            }
            GateKind::Rzz => apply_zz_phase(amps, qs[0], qs[1], gate.angle()),
            k @ (GateKind::Rxx | GateKind::Ryy | GateKind::Givens) => {
                apply_2q(amps, qs[0], qs[1], &two_qubit_matrix(k, gate.angle()))
            }
            GateKind::Cnot => apply_swap_if(amps, &qs[..1], qs[1]),
            GateKind::Toffoli => apply_swap_if(amps, &qs[..2], qs[2]),
        }
        Ok(())
    }

    /// Applies the gates of `circuit` left to right in place.
    pub fn apply_circuit(&mut self, circuit: &Circuit<T>) -> Result<()> {
        if circuit.width() != self.n_qubits() {
            return Err(Error::WidthMismatch {
                expected: circuit.width(),
                found: self.n_qubits(),
            });
        }
        for g in circuit.gates() {
            self.apply(g)?;
        }
        Ok(())
    }
}

/// Returns `gate` applied to `state`.
pub fn apply_gate<T: Real>(mut state: StateVector<T>, gate: &Gate<T>) -> Result<StateVector<T>> {
    state.apply(gate)?;
    Ok(state)
}

/// Returns `circuit` applied to `state`.
pub fn apply_circuit<T: Real>(
    mut state: StateVector<T>,
    circuit: &Circuit<T>,
) -> Result<StateVector<T>> {
    state.apply_circuit(circuit)?;
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_zero_bits() {
        let v: Vec<usize> = zero_bit_indices(16, &[2, 0]).collect();
        assert_eq!(v, vec![0b0000, 0b0010, 0b1000, 0b1010]);
    }

    #[test]
    fn x_flips_zero() {
        let s = apply_gate(StateVector::<f64>::zero(1).unwrap(), &Gate::x(0)).unwrap();
        assert_eq!(s.amplitudes()[1], Complex::new(1.0, 0.0));
    }

    #[test]
    fn rz_phase_on_zero() {
        let theta = 0.7f64;
        let s = apply_gate(StateVector::zero(1).unwrap(), &Gate::rz(0, theta)).unwrap();
        let want = Complex::from_polar(1.0, -theta / 2.0);
        assert!((s.amplitudes()[0] - want).norm() < 1e-15);
    }

    #[test]
    fn cnot_only_fires_on_control() {
        let s = StateVector::<f64>::basis(2, 0b01).unwrap();
        let s = apply_gate(s, &Gate::cnot(0, 1).unwrap()).unwrap();
        assert_eq!(s.amplitudes()[0b11].re, 1.0);
        let s = StateVector::<f64>::basis(2, 0b10).unwrap();
        let s = apply_gate(s, &Gate::cnot(0, 1).unwrap()).unwrap();
        assert_eq!(s.amplitudes()[0b10].re, 1.0);
    }

    #[test]
    fn out_of_range_gate_errors() {
        let s = StateVector::<f64>::zero(2).unwrap();
        assert!(matches!(
            apply_gate(s, &Gate::h(5)),
            Err(Error::QubitOutOfRange { index: 5, .. })
        ));
    }

    #[test]
    fn circuit_width_must_match() {
        let s = StateVector::<f64>::zero(2).unwrap();
        assert!(matches!(
            apply_circuit(s, &Circuit::new(3)),
            Err(Error::WidthMismatch { .. })
        ));
    }
}
