use super::decompose::cnot_pairs;
use super::ir::Circuit;
use crate::scalar::Real;

/// CNOT depth under as-soon-as-possible layering.
///
/// Composite gates are first expanded (Givens and two-qubit Pauli rotations
/// into two CNOTs, Toffoli into six). Each CNOT lands in the layer after the
/// latest CNOT already placed on either of its qubits; single-qubit gates
/// take no depth.
pub fn cnot_depth<T: Real>(circuit: &Circuit<T>) -> usize {
    let mut frontier = vec![0usize; circuit.width()];
    let mut depth = 0;
    for gate in circuit.gates() {
        for (a, b) in cnot_pairs(gate) {
            let layer = frontier[a].max(frontier[b]) + 1;
            frontier[a] = layer;
            frontier[b] = layer;
            depth = depth.max(layer);
        }
    }
    depth
}
