use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    Rx,
    Ry,
    Rz,
    Rxx,
    Ryy,
    Rzz,
    H,
    X,
    Z,
    Cnot,
    Toffoli,
    /// Particle-conserving rotation `exp[i θ/2 (X_p Y_q - Y_p X_q)]` on the
    /// ordered pair `(p, q)`.
    Givens,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::Rx | GateKind::Ry | GateKind::Rz | GateKind::H | GateKind::X | GateKind::Z => 1,
            GateKind::Rxx | GateKind::Ryy | GateKind::Rzz | GateKind::Cnot | GateKind::Givens => 2,
            GateKind::Toffoli => 3,
        }
    }

    /// Whether the gate carries a rotation angle.
    pub fn is_parametric(self) -> bool {
        matches!(
            self,
            GateKind::Rx
                | GateKind::Ry
                | GateKind::Rz
                | GateKind::Rxx
                | GateKind::Ryy
                | GateKind::Rzz
                | GateKind::Givens
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::Rx => "rx",
            GateKind::Ry => "ry",
            GateKind::Rz => "rz",
            GateKind::Rxx => "rxx",
            GateKind::Ryy => "ryy",
            GateKind::Rzz => "rzz",
            GateKind::H => "h",
            GateKind::X => "x",
            GateKind::Z => "z",
            GateKind::Cnot => "cx",
            GateKind::Toffoli => "ccx",
            GateKind::Givens => "givens",
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One gate of the circuit IR.
///
/// Rotations follow `RP(θ) = exp(-i P θ/2)`. Controlled gates list controls
/// first and the target last.
#[derive(Clone, Debug, PartialEq)]
pub struct Gate<T: Real> {
    kind: GateKind,
    qubits: Vec<usize>,
    angle: T,
}

impl<T: Real> Gate<T> {
    pub fn new(kind: GateKind, qubits: Vec<usize>, angle: T) -> Result<Self> {
        if qubits.len() != kind.arity() {
            return Err(Error::Arity {
                kind: kind.name(),
                expected: kind.arity(),
                found: qubits.len(),
            });
        }
        for (i, q) in qubits.iter().enumerate() {
            if qubits[..i].contains(q) {
                return Err(Error::RepeatedQubit(*q));
            }
        }
        let angle = if kind.is_parametric() { angle } else { T::zero() };
        Ok(Self { kind, qubits, angle })
    }

    fn fixed(kind: GateKind, qubits: Vec<usize>) -> Self {
        debug_assert_eq!(qubits.len(), kind.arity());
        Self {
            kind,
            qubits,
            angle: T::zero(),
        }
    }

    fn rot(kind: GateKind, qubits: Vec<usize>, angle: T) -> Self {
        debug_assert_eq!(qubits.len(), kind.arity());
        Self { kind, qubits, angle }
    }

    pub fn h(q: usize) -> Self {
        Self::fixed(GateKind::H, vec![q])
    }

    pub fn x(q: usize) -> Self {
        Self::fixed(GateKind::X, vec![q])
    }

    pub fn z(q: usize) -> Self {
        Self::fixed(GateKind::Z, vec![q])
    }

    pub fn rx(q: usize, theta: T) -> Self {
        Self::rot(GateKind::Rx, vec![q], theta)
    }

    pub fn ry(q: usize, theta: T) -> Self {
        Self::rot(GateKind::Ry, vec![q], theta)
    }

    pub fn rz(q: usize, theta: T) -> Self {
        Self::rot(GateKind::Rz, vec![q], theta)
    }

    pub fn cnot(control: usize, target: usize) -> Result<Self> {
        Self::new(GateKind::Cnot, vec![control, target], T::zero())
    }

    pub fn toffoli(c1: usize, c2: usize, target: usize) -> Result<Self> {
        Self::new(GateKind::Toffoli, vec![c1, c2, target], T::zero())
    }

    pub fn rxx(a: usize, b: usize, theta: T) -> Result<Self> {
        Self::new(GateKind::Rxx, vec![a, b], theta)
    }

    pub fn ryy(a: usize, b: usize, theta: T) -> Result<Self> {
        Self::new(GateKind::Ryy, vec![a, b], theta)
    }

    pub fn rzz(a: usize, b: usize, theta: T) -> Result<Self> {
        Self::new(GateKind::Rzz, vec![a, b], theta)
    }

    pub fn givens(p: usize, q: usize, theta: T) -> Result<Self> {
        Self::new(GateKind::Givens, vec![p, q], theta)
    }

    #[inline]
    pub fn kind(&self) -> GateKind {
        self.kind
    }

    #[inline]
    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    #[inline]
    pub fn angle(&self) -> T {
        self.angle
    }

    /// Inverse gate: rotations negate their angle, the rest are involutions.
    pub fn inverse(&self) -> Self {
        Self {
            kind: self.kind,
            qubits: self.qubits.clone(),
            angle: -self.angle,
        }
    }

    /// Same gate with every qubit index passed through `map`.
    pub fn remapped(&self, map: impl Fn(usize) -> usize) -> Self {
        Self {
            kind: self.kind,
            qubits: self.qubits.iter().map(|&q| map(q)).collect(),
            angle: self.angle,
        }
    }

    pub fn max_qubit(&self) -> usize {
        self.qubits.iter().copied().max().unwrap_or(0)
    }
}

impl<T: Real> fmt::Display for Gate<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if self.kind.is_parametric() {
            write!(f, "({})", self.angle)?;
        }
        let qs: Vec<String> = self.qubits.iter().map(|q| format!("q[{q}]")).collect();
        write!(f, " {}", qs.join(", "))
    }
}
