use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParticleParity {
    OddParticleNumber,
    EvenParticleNumber,
}

/// Allowed momenta of one particle-number parity sector, ascending in `(-π, π]`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumGrid<T: Real> {
    pub parity: ParticleParity,
    pub values: Vec<T>,
}

/// Odd sector: `2πm/N` for `m = -(N/2 - 1) ..= N/2`; even sector:
/// `(2m + 1)π/N` for `m = -N/2 ..< N/2`.
pub fn momentum_grid<T: Real>(n_sites: usize, parity: ParticleParity) -> Result<MomentumGrid<T>> {
    if n_sites < 2 || !n_sites.is_multiple_of(2) {
        return Err(Error::invalid("n_sites", format!("momentum grids need an even lattice, got {n_sites}")));
    }
    let half = (n_sites / 2) as i64;
    let n = T::lit(n_sites as f64);
    let values = match parity {
        ParticleParity::OddParticleNumber => (-(half - 1)..=half)
            .map(|m| T::lit(2.0 * m as f64) * T::PI() / n)
            .collect(),
        ParticleParity::EvenParticleNumber => (-half..half)
            .map(|m| T::lit((2 * m + 1) as f64) * T::PI() / n)
            .collect(),
    };
    Ok(MomentumGrid { parity, values })
}
