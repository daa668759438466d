//! Rewrites of composite gates into `{rz, rx, h, x, cx}` (plus optional `ccx`).

use super::gate::{Gate, GateKind};
use super::ir::Circuit;
use crate::error::Result;
use crate::scalar::Real;

fn cx<T: Real>(c: usize, t: usize) -> Gate<T> {
    Gate::cnot(c, t).expect("distinct qubits checked by caller")
}

/// Six-CNOT Toffoli over `{h, rz, cx}`; equal to CCX up to a global phase.
///
/// `c2` is the control touched by the first CNOT; `c1` carries the trailing
/// `c1 -> c2` pair.
pub(crate) fn toffoli_gates<T: Real>(c1: usize, c2: usize, t: usize) -> Vec<Gate<T>> {
    let quarter = T::FRAC_PI_4();
    vec![
        Gate::h(t),
        cx(c2, t),
        Gate::rz(t, -quarter),
        cx(c1, t),
        Gate::rz(t, quarter),
        cx(c2, t),
        Gate::rz(t, -quarter),
        cx(c1, t),
        Gate::rz(c2, quarter),
        Gate::rz(t, quarter),
        Gate::h(t),
        cx(c1, c2),
        Gate::rz(c1, quarter),
        Gate::rz(c2, -quarter),
        cx(c1, c2),
    ]
}

/// Two-CNOT form of the particle-conserving Givens rotation on `(p, q)`:
/// a Clifford frame change maps `X_p Y_q - Y_p X_q` onto `X_p + Z_q` under
/// `cx(p, q)` conjugation, leaving one `rx` and one `rz` in the middle.
pub(crate) fn givens_gates<T: Real>(p: usize, q: usize, theta: T) -> Vec<Gate<T>> {
    let s = T::FRAC_PI_2();
    vec![
        Gate::h(p),
        Gate::rz(p, s),
        Gate::rz(q, s),
        Gate::h(q),
        Gate::rz(q, s),
        cx(p, q),
        Gate::rx(p, theta),
        Gate::rz(q, theta),
        cx(p, q),
        Gate::rz(p, -s),
        Gate::h(p),
        Gate::rz(q, -s),
        Gate::h(q),
        Gate::rz(q, -s),
    ]
}

pub(crate) fn rzz_gates<T: Real>(a: usize, b: usize, theta: T) -> Vec<Gate<T>> {
    vec![cx(a, b), Gate::rz(b, theta), cx(a, b)]
}

pub(crate) fn rxx_gates<T: Real>(a: usize, b: usize, theta: T) -> Vec<Gate<T>> {
    let mut g = vec![Gate::h(a), Gate::h(b)];
    g.extend(rzz_gates(a, b, theta));
    g.extend([Gate::h(a), Gate::h(b)]);
    g
}

pub(crate) fn ryy_gates<T: Real>(a: usize, b: usize, theta: T) -> Vec<Gate<T>> {
    let s = T::FRAC_PI_2();
    let mut g = vec![Gate::rx(a, s), Gate::rx(b, s)];
    g.extend(rzz_gates(a, b, theta));
    g.extend([Gate::rx(a, -s), Gate::rx(b, -s)]);
    g
}

/// `ry(θ) = rz(π/2) · rx(θ) · rz(-π/2)` (rightmost first).
pub(crate) fn ry_gates<T: Real>(q: usize, theta: T) -> Vec<Gate<T>> {
    let s = T::FRAC_PI_2();
    vec![Gate::rz(q, -s), Gate::rx(q, theta), Gate::rz(q, s)]
}

/// Expansion of one gate into the basic set. Toffolis are kept intact
/// unless `expand_toffoli` is set.
pub(crate) fn expand_gate<T: Real>(gate: &Gate<T>, expand_toffoli: bool) -> Vec<Gate<T>> {
    let q = gate.qubits();
    let th = gate.angle();
    match gate.kind() {
        GateKind::Givens => givens_gates(q[0], q[1], th),
        GateKind::Rzz => rzz_gates(q[0], q[1], th),
        GateKind::Rxx => rxx_gates(q[0], q[1], th),
        GateKind::Ryy => ryy_gates(q[0], q[1], th),
        GateKind::Ry => ry_gates(q[0], th),
        GateKind::Z => vec![Gate::rz(q[0], T::PI())],
        GateKind::Toffoli if expand_toffoli => toffoli_gates(q[0], q[1], q[2]),
        _ => vec![gate.clone()],
    }
}

/// Circuit with the same width, roles and unitary (up to global phase)
/// over `{rz, rx, h, x, cx}` and, when `expand_toffoli` is false, `ccx`.
pub fn decompose_circuit<T: Real>(circuit: &Circuit<T>, expand_toffoli: bool) -> Circuit<T> {
    let mut out = Circuit::with_roles(circuit.roles().to_vec()).expect("roles already valid");
    for g in circuit.gates() {
        out.extend(expand_gate(g, expand_toffoli))
            .expect("expansion stays on the gate's own qubits");
    }
    out
}

/// Standalone six-CNOT Toffoli circuit on the smallest register containing
/// the three qubits.
pub fn decompose_toffoli<T: Real>(control1: usize, control2: usize, target: usize) -> Result<Circuit<T>> {
    // reuse the gate constructor's distinctness check
    Gate::<T>::toffoli(control1, control2, target)?;
    let width = control1.max(control2).max(target) + 1;
    Circuit::from_gates(width, toffoli_gates(control1, control2, target))
}

/// CNOT pairs `(control, target)` a gate contributes after full expansion.
pub(crate) fn cnot_pairs<T: Real>(gate: &Gate<T>) -> Vec<(usize, usize)> {
    let q = gate.qubits();
    match gate.kind() {
        GateKind::Cnot => vec![(q[0], q[1])],
        GateKind::Rzz | GateKind::Rxx | GateKind::Ryy | GateKind::Givens | GateKind::Toffoli => {
            expand_gate(gate, true)
                .iter()
                .filter(|g| g.kind() == GateKind::Cnot)
                .map(|g| (g.qubits()[0], g.qubits()[1]))
                .collect()
        }
        _ => Vec::new(),
    }
}

impl<T: Real> Circuit<T> {
    /// Total CNOT count after expanding composite gates.
    pub fn cnot_count(&self) -> usize {
        self.gates().iter().map(|g| cnot_pairs(g).len()).sum()
    }
}

