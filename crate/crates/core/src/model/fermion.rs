use num_complex::Complex;

use super::{check_dense, Boundary, DenseOperator, Pauli};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// `c†_j = (Π_{i<j} -σz_i) σ⁻_j` for 1-based `site`.
pub fn jw_creation<T: Real>(site: usize, n_sites: usize) -> Result<DenseOperator<T>> {
    if site == 0 || site > n_sites {
        return Err(Error::SiteOutOfRange { site, n_sites });
    }
    check_dense("Jordan-Wigner operator", n_sites)?;
    let mut op = DenseOperator::zeros(n_sites)?;
    let q = site - 1;
    let bit = 1usize << q;
    let below = bit - 1;
    let dim = op.dim();
    let m = op.matrix_mut();
    for col in (0..dim).filter(|c| c & bit == 0) {
        // -σz is -1 on an empty site and +1 on an occupied one
        let empties = q as u32 - (col & below).count_ones();
        let sign = if empties.is_multiple_of(2) { T::one() } else { -T::one() };
        m[(col | bit, col)] = Complex::new(sign, T::zero());
    }
    Ok(op)
}

/// `c_j`, the adjoint of [`jw_creation`].
pub fn jw_annihilation<T: Real>(site: usize, n_sites: usize) -> Result<DenseOperator<T>> {
    Ok(jw_creation(site, n_sites)?.dagger())
}

/// Largest elementwise gap between `4 Σ_b n_j n_k` and
/// `Σ_b (1 - σz_j - σz_k + σz_j σz_k)` over the bonds `b = (j, k)` of the
/// chain. For periodic chains the right side is `Σ_j (1 - 2σz_j + σz_j σz_{j+1})`.
pub fn four_fermion_identity_check<T: Real>(n_sites: usize, boundary: Boundary) -> Result<T> {
    if n_sites < 2 {
        return Err(Error::invalid("n_sites", "need at least one bond"));
    }
    check_dense("four-fermion identity", n_sites)?;
    let n = n_sites;
    let mut bonds: Vec<(usize, usize)> = (1..n).map(|j| (j, j + 1)).collect();
    if boundary == Boundary::Periodic {
        bonds.push((n, 1));
    }
    let number = |site: usize| -> Result<DenseOperator<T>> {
        let cd = jw_creation::<T>(site, n)?;
        Ok(&cd * &cd.dagger())
    };
    let four = Complex::new(T::lit(4.0), T::zero());
    let one = DenseOperator::identity(n)?;
    let mut lhs = DenseOperator::zeros(n)?;
    let mut rhs = DenseOperator::zeros(n)?;
    for &(j, k) in &bonds {
        let nn = &number(j)? * &number(k)?;
        lhs = &lhs + &nn.scale(four);
        let zj = DenseOperator::pauli_string(n, &[(j - 1, Pauli::Z)])?;
        let zk = DenseOperator::pauli_string(n, &[(k - 1, Pauli::Z)])?;
        let zz = DenseOperator::pauli_string(n, &[(j - 1, Pauli::Z), (k - 1, Pauli::Z)])?;
        rhs = &(&(&(&rhs + &one) - &zj) - &zk) + &zz;
    }
    Ok(lhs.max_abs_diff(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::StateVector;

    #[test]
    fn creation_populates_site() {
        let cd = jw_creation::<f64>(2, 3).unwrap();
        let vac = StateVector::<f64>::zero(3).unwrap();
        let out = cd.apply_raw(&vac).unwrap();
        // one empty site to the left contributes -1
        assert_eq!(out[0b010], Complex::new(-1.0, 0.0));
    }

    #[test]
    fn index_out_of_range() {
        assert!(matches!(
            jw_creation::<f64>(0, 4),
            Err(Error::SiteOutOfRange { .. })
        ));
        assert!(jw_creation::<f64>(5, 4).is_err());
    }

    #[test]
    fn identity_on_small_chains() {
        assert!(four_fermion_identity_check::<f64>(2, Boundary::Periodic).unwrap() < 1e-12);
        assert!(four_fermion_identity_check::<f64>(3, Boundary::Open).unwrap() < 1e-12);
    }
}
