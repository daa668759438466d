//! Independent dense oracles shared by the integration tests.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex;
use wpscatter::circuit::{apply_circuit, Circuit, Gate, GateKind, StateVector};

pub type C = Complex<f64>;
pub type M = DMatrix<C>;

pub fn c(re: f64, im: f64) -> C {
    Complex::new(re, im)
}

pub fn pauli(p: char) -> M {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    match p {
        'I' => M::from_row_slice(2, 2, &[o, z, z, o]),
        'X' => M::from_row_slice(2, 2, &[z, o, o, z]),
        'Y' => M::from_row_slice(2, 2, &[z, -i, i, z]),
        'Z' => M::from_row_slice(2, 2, &[o, z, z, -o]),
        _ => unreachable!(),
    }
}

/// `A ⊗ B` where `B` acts on the less significant index bits.
pub fn kron(a: &M, b: &M) -> M {
    a.kronecker(b)
}

/// Local operator on `k` qubits where char `i` of `s` acts on local bit `i`.
pub fn local_pauli(s: &str) -> M {
    s.chars().fold(M::identity(1, 1), |acc, p| kron(&pauli(p), &acc))
}

/// `exp(-i A)` by a long Taylor series (A small-normed).
pub fn expm_minus_i(a: &M) -> M {
    let n = a.nrows();
    let mut out = M::identity(n, n);
    let mut term = M::identity(n, n);
    for k in 1..60 {
        term = &term * a * c(0.0, -1.0 / k as f64);
        out += &term;
    }
    out
}

/// Dense local matrix of a gate; local bit `i` is `gate.qubits()[i]`.
pub fn gate_local(g: &Gate<f64>) -> M {
    let t = g.angle();
    let rot = |s: &str| expm_minus_i(&(local_pauli(s) * c(t / 2.0, 0.0)));
    let h = 0.5f64.sqrt();
    match g.kind() {
        GateKind::Rx => rot("X"),
        GateKind::Ry => rot("Y"),
        GateKind::Rz => rot("Z"),
        GateKind::Rxx => rot("XX"),
        GateKind::Ryy => rot("YY"),
        GateKind::Rzz => rot("ZZ"),
        GateKind::H => M::from_row_slice(2, 2, &[c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)]),
        GateKind::X => pauli('X'),
        GateKind::Z => pauli('Z'),
        GateKind::Cnot => permutation(2, |i| if i & 1 == 1 { i ^ 2 } else { i }),
        GateKind::Toffoli => permutation(3, |i| if i & 3 == 3 { i ^ 4 } else { i }),
        GateKind::Givens => {
            // exp(i θ/2 (X_p Y_q - Y_p X_q)) = exp(-i · (-θ/2)(XY - YX))
            let gen = (local_pauli("XY") - local_pauli("YX")) * c(-t / 2.0, 0.0);
            expm_minus_i(&gen)
        }
    }
}

fn permutation(k: usize, f: impl Fn(usize) -> usize) -> M {
    let d = 1 << k;
    let mut m = M::zeros(d, d);
    for i in 0..d {
        m[(f(i), i)] = c(1.0, 0.0);
    }
    m
}

/// Embeds a local gate matrix into the full `2^n` space.
pub fn embed(local: &M, qubits: &[usize], n: usize) -> M {
    let d = 1usize << n;
    let mask: usize = qubits.iter().map(|q| 1 << q).sum();
    let loc = |i: usize| -> usize {
        qubits.iter().enumerate().map(|(b, &q)| ((i >> q) & 1) << b).sum()
    };
    M::from_fn(d, d, |r, col| {
        if r & !mask != col & !mask {
            c(0.0, 0.0)
        } else {
            local[(loc(r), loc(col))]
        }
    })
}

pub fn gate_dense(g: &Gate<f64>, n: usize) -> M {
    embed(&gate_local(g), g.qubits(), n)
}

/// Product of dense gate matrices, first gate rightmost.
pub fn circuit_dense(circ: &Circuit<f64>) -> M {
    let n = circ.width();
    circ.gates()
        .iter()
        .fold(M::identity(1 << n, 1 << n), |acc, g| gate_dense(g, n) * acc)
}

/// Unitary of a circuit obtained by simulating every basis state.
pub fn simulated_unitary(circ: &Circuit<f64>) -> M {
    let n = circ.width();
    let cols: Vec<Vec<C>> = (0..1usize << n)
        .map(|k| {
            apply_circuit(StateVector::basis(n, k).unwrap(), circ)
                .unwrap()
                .into_amplitudes()
        })
        .collect();
    M::from_fn(1 << n, 1 << n, |r, k| cols[k][r])
}

/// `max |A - e^{iφ} B|` with the phase fitted on the largest entry of `B`.
pub fn diff_up_to_phase(a: &M, b: &M) -> f64 {
    let (idx, _) = b
        .iter()
        .enumerate()
        .fold((0, 0.0), |acc, (i, v)| if v.norm() > acc.1 { (i, v.norm()) } else { acc });
    let phase = a.as_slice()[idx] / b.as_slice()[idx];
    let phase = phase / phase.norm();
    a.iter().zip(b.iter()).map(|(x, y)| (x - y * phase).norm()).fold(0.0, f64::max)
}

pub fn max_diff(a: &M, b: &M) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn apply_dense(m: &M, s: &StateVector<f64>) -> Vec<C> {
    let v = nalgebra::DVector::from_column_slice(s.amplitudes());
    (m * v).as_slice().to_vec()
}
