//! Gate IR, statevector engine, CNOT-depth accounting, post-selection and
//! OpenQASM export.

mod decompose;
mod depth;
mod gate;
mod ir;
mod measure;
mod qasm;
mod sim;
mod state;

pub use decompose::{decompose_circuit, decompose_toffoli};
pub use depth::cnot_depth;
pub use gate::{Gate, GateKind};
pub use ir::{Circuit, QubitRole};
pub use measure::{expectation_pauli, project_ancilla, ProjectionResult};
pub use qasm::{export_qasm, export_qasm_with, parse_angle, parse_qasm, QasmOptions};
pub use sim::{apply_circuit, apply_gate};
pub use state::{StateVector, MAX_QUBITS};
