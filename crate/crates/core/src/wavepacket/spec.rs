use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Parameters of one Gaussian packet.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct WavePacketSpec<T: Real> {
    /// Centre `j_A` in site units.
    pub center: T,
    pub momentum: T,
    /// Gaussian width `σ`.
    pub width: T,
    /// Inclusive 1-based site range `[lo, hi]` carrying the packet.
    pub window: (usize, usize),
}

impl<T: Real> WavePacketSpec<T> {
    pub fn new(center: T, momentum: T, width: T, window: (usize, usize)) -> Result<Self> {
        let s = Self {
            center,
            momentum,
            width,
            window,
        };
        s.check_shape()?;
        Ok(s)
    }

    /// Packet on the left half `[1, N/2]`.
    pub fn left_half(n_sites: usize, center: T, momentum: T, width: T) -> Result<Self> {
        Self::new(center, momentum, width, (1, n_sites / 2))
    }

    /// Packet on the right half `[N/2 + 1, N]`.
    pub fn right_half(n_sites: usize, center: T, momentum: T, width: T) -> Result<Self> {
        Self::new(center, momentum, width, (n_sites / 2 + 1, n_sites))
    }

    pub fn with_window(&self, window: (usize, usize)) -> Self {
        Self { window, ..*self }
    }

    pub fn window_len(&self) -> usize {
        self.window.1 + 1 - self.window.0
    }

    pub fn sites(&self) -> std::ops::RangeInclusive<usize> {
        self.window.0..=self.window.1
    }

    /// Checks the packet against an `n_sites` lattice.
    pub fn validate(&self, n_sites: usize) -> Result<()> {
        self.check_shape()?;
        if self.window.1 > n_sites {
            return Err(Error::SiteOutOfRange {
                site: self.window.1,
                n_sites,
            });
        }
        Ok(())
    }

    fn check_shape(&self) -> Result<()> {
        if !(self.width > T::zero()) || !self.width.is_finite() {
            return Err(Error::invalid("width", "must be positive and finite"));
        }
        if !self.center.is_finite() || !self.momentum.is_finite() {
            return Err(Error::invalid("center/momentum", "must be finite"));
        }
        let (lo, hi) = self.window;
        if lo == 0 || hi < lo {
            return Err(Error::invalid(
                "window",
                format!("[{lo}, {hi}] is not a non-empty 1-based range"),
            ));
        }
        Ok(())
    }
}

/// Normalized Gaussian amplitudes over the window and the phases `β_j = k j`.
pub fn gaussian_coefficients<T: Real>(spec: &WavePacketSpec<T>) -> Result<(Vec<T>, Vec<T>)> {
    spec.check_shape()?;
    let sigma2 = spec.width * spec.width;
    let mut a: Vec<T> = spec
        .sites()
        .map(|j| {
            let d = T::lit(j as f64) - spec.center;
            (-(d * d) / sigma2).exp()
        })
        .collect();
    let norm = a.iter().map(|&x| x * x).sum::<T>().sqrt();
    if norm == T::zero() {
        return Err(Error::ZeroVector("gaussian coefficients"));
    }
    a.iter_mut().for_each(|x| *x /= norm);
    let beta = spec.sites().map(|j| spec.momentum * T::lit(j as f64)).collect();
    Ok((a, beta))
}

/// Angles that rotate `a` onto the first unit vector.
///
/// `angles[i]` belongs to the neighbour pair `(i, i + 1)` (0-based within the
/// window). Pairs are eliminated from the last one down to the first with
/// `θ = atan2(-a_{i+1}, a_i)`, after which `a_i` holds the pair's norm.
pub fn givens_angles<T: Real>(a: &[T]) -> Result<Vec<T>> {
    if a.len() < 2 {
        return Err(Error::invalid("amplitudes", "need at least two entries"));
    }
    if a.iter().all(|&x| x == T::zero()) {
        return Err(Error::ZeroVector("givens input"));
    }
    let mut work = a.to_vec();
    let mut angles = vec![T::zero(); a.len() - 1];
    for i in (0..a.len() - 1).rev() {
        angles[i] = (-work[i + 1]).atan2(work[i]);
        work[i] = work[i].hypot(work[i + 1]);
        work[i + 1] = T::zero();
    }
    Ok(angles)
}

/// Runs the rotations of [`givens_angles`] backwards on `e_1`.
///
/// This is the single-particle action of `V(θ)`, so it returns the original
/// normalized amplitudes.
pub fn reconstruct_amplitudes<T: Real>(angles: &[T]) -> Vec<T> {
    let mut v = vec![T::zero(); angles.len() + 1];
    v[0] = T::one();
    for (i, &theta) in angles.iter().enumerate() {
        // inverse of the elimination rotation on (i, i + 1)
        let (s, c) = theta.sin_cos();
        let (x, y) = (v[i], v[i + 1]);
        v[i] = c * x + s * y;
        v[i + 1] = -s * x + c * y;
    }
    v
}

/// Classical preprocessing for one packet.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct GivensSchedule<T: Real> {
    pub window: (usize, usize),
    /// `β_j` for each window site.
    pub phases: Vec<T>,
    /// See [`givens_angles`] for the indexing.
    pub angles: Vec<T>,
    pub target_amplitudes: Vec<T>,
}

impl<T: Real> GivensSchedule<T> {
    pub fn from_spec(spec: &WavePacketSpec<T>) -> Result<Self> {
        let (a, phases) = gaussian_coefficients(spec)?;
        let angles = if a.len() > 1 { givens_angles(&a)? } else { Vec::new() };
        Ok(Self {
            window: spec.window,
            phases,
            angles,
            target_amplitudes: a,
        })
    }

    /// Largest deviation between the reconstructed and target amplitudes.
    pub fn reconstruction_error(&self) -> T {
        reconstruct_amplitudes(&self.angles)
            .iter()
            .zip(&self.target_amplitudes)
            .map(|(x, y)| (*x - *y).abs())
            .fold(T::zero(), T::max)
    }
}
