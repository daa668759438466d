use serde::{Deserialize, Serialize};

use super::gate::Gate;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// What a qubit is used for inside a preparation circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QubitRole {
    System,
    Control,
    Ancilla,
}

/// Ordered gate list over a fixed register.
///
/// System qubits always come first and are contiguous; controls and
/// ancillas follow in any order.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit<T: Real> {
    width: usize,
    gates: Vec<Gate<T>>,
    roles: Vec<QubitRole>,
}

impl<T: Real> Circuit<T> {
    /// Empty circuit whose qubits are all system qubits.
    pub fn new(width: usize) -> Self {
        Self {
            width,
            gates: Vec::new(),
            roles: vec![QubitRole::System; width],
        }
    }

    pub fn with_roles(roles: Vec<QubitRole>) -> Result<Self> {
        let n_system = roles.iter().take_while(|r| **r == QubitRole::System).count();
        if roles[n_system..].contains(&QubitRole::System) {
            return Err(Error::invalid(
                "roles",
                "system qubits must be contiguous and first",
            ));
        }
        Ok(Self {
            width: roles.len(),
            gates: Vec::new(),
            roles,
        })
    }

    pub fn from_gates(width: usize, gates: Vec<Gate<T>>) -> Result<Self> {
        let mut c = Self::new(width);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn gates(&self) -> &[Gate<T>] {
        &self.gates
    }

    #[inline]
    pub fn roles(&self) -> &[QubitRole] {
        &self.roles
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn qubits_with_role(&self, role: QubitRole) -> Vec<usize> {
        (0..self.width).filter(|&q| self.roles[q] == role).collect()
    }

    pub fn n_system(&self) -> usize {
        self.roles
            .iter()
            .take_while(|r| **r == QubitRole::System)
            .count()
    }

    pub fn push(&mut self, gate: Gate<T>) -> Result<&mut Self> {
        if let Some(&q) = gate.qubits().iter().find(|&&q| q >= self.width) {
            return Err(Error::QubitOutOfRange {
                index: q,
                width: self.width,
            });
        }
        self.gates.push(gate);
        Ok(self)
    }

    pub fn extend<I: IntoIterator<Item = Gate<T>>>(&mut self, gates: I) -> Result<&mut Self> {
        for g in gates {
            self.push(g)?;
        }
        Ok(self)
    }

    /// Appends the gates of a (possibly narrower) circuit.
    pub fn append(&mut self, other: &Circuit<T>) -> Result<&mut Self> {
        if other.width > self.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: other.width,
            });
        }
        self.gates.extend(other.gates.iter().cloned());
        Ok(self)
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Circuit<T>) -> Result<Circuit<T>> {
        let mut out = self.clone();
        out.append(other)?;
        Ok(out)
    }

    /// Reversed gate order with each gate inverted.
    pub fn inverse(&self) -> Circuit<T> {
        Circuit {
            width: self.width,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            roles: self.roles.clone(),
        }
    }

    /// Same gates on a wider register; the new qubits are tagged `role`.
    pub fn widened(&self, width: usize, role: QubitRole) -> Result<Circuit<T>> {
        if width < self.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: width,
            });
        }
        let mut roles = self.roles.clone();
        roles.resize(width, role);
        let mut out = Circuit::with_roles(roles)?;
        out.gates = self.gates.clone();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::gate::Gate;

    #[test]
    fn push_rejects_out_of_range() {
        let mut c = Circuit::<f64>::new(2);
        assert!(matches!(
            c.push(Gate::h(2)),
            Err(Error::QubitOutOfRange { index: 2, width: 2 })
        ));
    }

    #[test]
    fn roles_must_put_system_first() {
        use QubitRole::*;
        assert!(Circuit::<f64>::with_roles(vec![System, Ancilla, System]).is_err());
        let c = Circuit::<f64>::with_roles(vec![System, System, Control, Ancilla]).unwrap();
        assert_eq!(c.n_system(), 2);
        assert_eq!(c.qubits_with_role(Ancilla), vec![3]);
    }

    #[test]
    fn inverse_reverses_order() {
        let mut c = Circuit::<f64>::new(2);
        c.push(Gate::rx(0, 0.1)).unwrap();
        c.push(Gate::cnot(0, 1).unwrap()).unwrap();
        let inv = c.inverse();
        assert_eq!(inv.gates()[0], Gate::cnot(0, 1).unwrap());
        assert_eq!(inv.gates()[1], Gate::rx(0, -0.1));
    }
}
