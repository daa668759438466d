//! Modified transverse-field Ising chain: Hamiltonian, Jordan–Wigner
//! operators, momentum grids and dense exact-diagonalization oracles.
//!
//! Conventions: site `j` (1-based) lives on qubit `j - 1`; `|0>` is the
//! `σz = +1` state and counts as an empty site, and `σ⁻ = |1><0|` raises
//! the occupation.

mod dense;
mod exact;
mod fermion;
mod hamiltonian;
mod momentum;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

pub use dense::{DenseOperator, Pauli};
pub use exact::{exact_evolve, exact_ground_state, ExactPropagator};
pub use fermion::{four_fermion_identity_check, jw_annihilation, jw_creation};
pub use hamiltonian::{build_hamiltonian, HamiltonianAction};
pub use momentum::{momentum_grid, MomentumGrid, ParticleParity};

/// Largest number of qubits for which dense `2^n x 2^n` operators are built.
pub const DENSE_CAP: usize = 12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    /// Site `N + 1` is identified with site 1.
    #[default]
    Periodic,
    Open,
}

/// Physics configuration of `H = -Σ_j (J σx_j σx_{j+1} + h σz_j + g σz_j σz_{j+1})`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "", deny_unknown_fields)]
pub struct ModelParams<T: Real> {
    pub n_sites: usize,
    /// `J`, the XX coupling.
    pub j_coupling: T,
    /// `h`, the transverse field.
    pub h_field: T,
    /// `g`, the ZZ coupling.
    pub g_coupling: T,
    #[serde(default)]
    pub boundary: Boundary,
}

impl<T: Real> ModelParams<T> {
    pub fn new(n_sites: usize, j_coupling: T, h_field: T, g_coupling: T, boundary: Boundary) -> Result<Self> {
        let p = Self {
            n_sites,
            j_coupling,
            h_field,
            g_coupling,
            boundary,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_sites < 2 {
            return Err(Error::invalid("n_sites", format!("{} < 2", self.n_sites)));
        }
        for (name, v) in [
            ("j_coupling", self.j_coupling),
            ("h_field", self.h_field),
            ("g_coupling", self.g_coupling),
        ] {
            if !v.is_finite() {
                return Err(Error::invalid(name, "must be finite"));
            }
        }
        Ok(())
    }

    /// Nearest-neighbour bonds as 0-based qubit pairs; the wrap-around bond
    /// `(N-1, 0)` is present only for periodic boundaries.
    pub fn bonds(&self) -> Vec<(usize, usize)> {
        let n = self.n_sites;
        let mut b: Vec<(usize, usize)> = (0..n - 1).map(|j| (j, j + 1)).collect();
        if self.boundary == Boundary::Periodic {
            b.push((n - 1, 0));
        }
        b
    }

    pub fn with_couplings(&self, j_coupling: T, g_coupling: T) -> Self {
        Self {
            j_coupling,
            g_coupling,
            ..*self
        }
    }
}

pub(crate) fn check_dense(what: &'static str, n_qubits: usize) -> Result<()> {
    if n_qubits > DENSE_CAP {
        Err(Error::Capacity {
            what,
            requested: n_qubits,
            cap: DENSE_CAP,
        })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_short_chain() {
        assert!(ModelParams::new(1, 1.0, 1.0, 0.0, Boundary::Open).is_err());
        assert!(ModelParams::new(3, f64::NAN, 1.0, 0.0, Boundary::Open).is_err());
    }

    #[test]
    fn periodic_adds_wrap_bond() {
        let p = ModelParams::new(4, 1.0, 1.0, 0.0, Boundary::Periodic).unwrap();
        assert_eq!(p.bonds(), vec![(0, 1), (1, 2), (2, 3), (3, 0)]);
        let o = ModelParams { boundary: Boundary::Open, ..p };
        assert_eq!(o.bonds().len(), 3);
    }
}
