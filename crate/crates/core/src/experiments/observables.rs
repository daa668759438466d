use nalgebra::DMatrix;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::circuit::{expectation_pauli, StateVector};
use crate::error::{Error, Result};
use crate::model::DENSE_CAP;
use crate::scalar::Real;

/// Quantities recorded along a trajectory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Observable {
    /// `<n_j>` for every site.
    Occupations,
    /// Von Neumann entropy for every cut `1..N`.
    Entropies,
}

/// `<n_j> = (1 - <σz_j>)/2` for the first `n_system` qubits.
pub fn site_occupations<T: Real>(state: &StateVector<T>, n_system: usize) -> Result<Vec<T>> {
    if n_system > state.n_qubits() {
        return Err(Error::WidthMismatch {
            expected: n_system,
            found: state.n_qubits(),
        });
    }
    let mut occ = vec![T::zero(); n_system];
    for (i, a) in state.amplitudes().iter().enumerate() {
        let w = a.norm_sqr();
        if w == T::zero() {
            continue;
        }
        for (q, o) in occ.iter_mut().enumerate() {
            if (i >> q) & 1 == 1 {
                *o += w;
            }
        }
    }
    let norm = state.norm_sqr();
    Ok(occ.into_iter().map(|o| o / norm).collect())
}

/// Occupation through the Pauli-expectation primitive; used to cross-check
/// the direct amplitude sum.
pub fn site_occupation_via_pauli<T: Real>(state: &StateVector<T>, site: usize) -> Result<T> {
    let n = state.n_qubits();
    if site == 0 || site > n {
        return Err(Error::SiteOutOfRange { site, n_sites: n });
    }
    let pauli: String = (1..=n).map(|j| if j == site { 'Z' } else { 'I' }).collect();
    Ok((T::one() - expectation_pauli(state, &pauli)?) / T::lit(2.0))
}

/// `-Tr ρ ln ρ` of qubits `[0, cut)`, natural log.
///
/// The reduced density matrix is formed on the smaller side of the cut,
/// which may hold at most [`DENSE_CAP`] qubits.
pub fn bipartite_entropy<T: Real>(state: &StateVector<T>, cut: usize) -> Result<T> {
    let n = state.n_qubits();
    if cut == 0 || cut >= n {
        return Err(Error::invalid("cut", format!("{cut} is not a bond of a {n}-qubit register")));
    }
    let small = cut.min(n - cut);
    if small > DENSE_CAP {
        return Err(Error::Capacity {
            what: "reduced density matrix",
            requested: small,
            cap: DENSE_CAP,
        });
    }
    let (dl, dr) = (1usize << cut, 1usize << (n - cut));
    // psi[l + dl * r] viewed as a dl x dr matrix
    let m = DMatrix::from_column_slice(dl, dr, state.amplitudes());
    let rho = if cut <= n - cut {
        gram(&m)
    } else {
        gram(&m.transpose())
    };
    let norm = state.norm_sqr();
    let floor = T::epsilon() * T::lit(10.0);
    Ok(T::hermitian_eigenvalues(rho)
        .into_iter()
        .map(|l| l / norm)
        .filter(|&l| l > floor)
        .map(|l| -l * l.ln())
        .sum::<T>()
        .max(T::zero()))
}

/// Entropies for every cut `1..n_system` of the first `n_system` qubits.
pub fn cut_entropies<T: Real>(state: &StateVector<T>) -> Result<Vec<T>> {
    (1..state.n_qubits()).map(|c| bipartite_entropy(state, c)).collect()
}

/// `M M†`.
fn gram<T: Real>(m: &DMatrix<Complex<T>>) -> DMatrix<Complex<T>> {
    let rows = m.nrows();
    let mut out = DMatrix::from_element(rows, rows, Complex::new(T::zero(), T::zero()));
    for c in 0..m.ncols() {
        let col = m.column(c);
        for i in 0..rows {
            let ci = col[i];
            if ci.re == T::zero() && ci.im == T::zero() {
                continue;
            }
            for j in 0..=i {
                out[(i, j)] += ci * col[j].conj();
            }
        }
    }
    for i in 0..rows {
        for j in 0..i {
            out[(j, i)] = out[(i, j)].conj();
        }
    }
    out
}
