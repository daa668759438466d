use num_complex::Complex;
use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Upper bound on statevector width; 2^26 amplitudes is 1 GiB at `f64`.
pub const MAX_QUBITS: usize = 26;

/// Dense statevector over `n_qubits` qubits.
///
/// Amplitude index bit `q` holds the computational-basis value of qubit `q`
/// (little-endian: qubit 0 is the least significant bit). `|0>` is the
/// `σz = +1` eigenstate.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T: Real> {
    n_qubits: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    /// `|0...0>` on `n_qubits` qubits.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::basis(n_qubits, 0)
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_width(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::invalid(
                "index",
                format!("{index} outside the {dim}-dimensional basis"),
            ));
        }
        let mut amps = vec![Complex::new(T::zero(), T::zero()); dim];
        amps[index] = Complex::new(T::one(), T::zero());
        Ok(Self { n_qubits, amps })
    }

    /// Builds a state from raw amplitudes and normalizes it.
    pub fn from_amplitudes(amps: Vec<Complex<T>>) -> Result<Self> {
        let dim = amps.len();
        if dim == 0 || !dim.is_power_of_two() {
            return Err(Error::invalid(
                "amplitudes",
                format!("length {dim} is not a power of two"),
            ));
        }
        let n_qubits = dim.trailing_zeros() as usize;
        check_width(n_qubits)?;
        let mut state = Self { n_qubits, amps };
        state.normalize()?;
        Ok(state)
    }

    /// Random normalized state with independent uniform components.
    pub fn random<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Result<Self> {
        check_width(n_qubits)?;
        let amps = (0..1usize << n_qubits)
            .map(|_| {
                Complex::new(
                    T::lit(rng.gen_range(-1.0..1.0)),
                    T::lit(rng.gen_range(-1.0..1.0)),
                )
            })
            .collect();
        Self::from_amplitudes(amps)
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    #[inline]
    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    #[inline]
    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex<T>> {
        self.amps
    }

    pub(crate) fn from_raw(n_qubits: usize, amps: Vec<Complex<T>>) -> Self {
        debug_assert_eq!(amps.len(), 1 << n_qubits);
        Self { n_qubits, amps }
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalize(&mut self) -> Result<()> {
        let n2 = self.norm_sqr();
        if !(n2 > T::zero()) || !n2.is_finite() {
            return Err(Error::ZeroVector("state"));
        }
        let inv = T::one() / n2.sqrt();
        for a in &mut self.amps {
            *a = a.scale(inv);
        }
        Ok(())
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        assert_eq!(self.dim(), other.dim(), "inner product of mismatched widths");
        self.amps
            .iter()
            .zip(&other.amps)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| {
                acc + a.conj() * b
            })
    }

    /// `|<self|other>|^2`; insensitive to global phase.
    pub fn fidelity(&self, other: &Self) -> T {
        self.inner(other).norm_sqr()
    }

    /// Phase-invariant distance `min_φ ||self - e^{iφ} other||`.
    pub fn distance_up_to_phase(&self, other: &Self) -> T {
        let overlap = self.inner(other).norm();
        let two = T::lit(2.0);
        (two - two * overlap).max(T::zero()).sqrt()
    }

    /// Probability that `qubit` reads `outcome` in the computational basis.
    pub fn probability(&self, qubit: usize, outcome: u8) -> Result<T> {
        self.check_qubit(qubit)?;
        let mask = 1usize << qubit;
        let want = if outcome == 0 { 0 } else { mask };
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask == want)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    /// Appends `extra` qubits in `|0>` above the existing ones.
    pub fn with_extra_qubits(&self, extra: usize) -> Result<Self> {
        check_width(self.n_qubits + extra)?;
        let mut amps = vec![Complex::new(T::zero(), T::zero()); self.dim() << extra];
        amps[..self.dim()].copy_from_slice(&self.amps);
        Ok(Self {
            n_qubits: self.n_qubits + extra,
            amps,
        })
    }

    /// Keeps the lowest `n_keep` qubits, discarding higher qubits that must be
    /// left in a single computational basis state (within `tol` of weight 1).
    pub fn restrict_low(&self, n_keep: usize, tol: T) -> Result<Self> {
        if n_keep > self.n_qubits || n_keep == 0 {
            return Err(Error::invalid(
                "n_keep",
                format!("cannot keep {n_keep} of {} qubits", self.n_qubits),
            ));
        }
        let low = 1usize << n_keep;
        let blocks = self.dim() / low;
        let weights: Vec<T> = (0..blocks)
            .map(|b| self.amps[b * low..(b + 1) * low].iter().map(|a| a.norm_sqr()).sum())
            .collect();
        let (best, w) = weights
            .iter()
            .copied()
            .enumerate()
            .fold((0, T::neg_infinity()), |acc, (i, w)| if w > acc.1 { (i, w) } else { acc });
        let total = self.norm_sqr();
        if total - w > tol * total {
            return Err(Error::invalid(
                "state",
                format!(
                    "discarded qubits are entangled or mixed (leftover weight {:e})",
                    (total - w).to_f64_lossy()
                ),
            ));
        }
        let mut out = Self {
            n_qubits: n_keep,
            amps: self.amps[best * low..(best + 1) * low].to_vec(),
        };
        out.normalize()?;
        Ok(out)
    }

    pub(crate) fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n_qubits {
            Err(Error::QubitOutOfRange {
                index: q,
                width: self.n_qubits,
            })
        } else {
            Ok(())
        }
    }
}

pub(crate) fn check_width(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 {
        return Err(Error::invalid("n_qubits", "must be at least 1"));
    }
    if n_qubits > MAX_QUBITS {
        return Err(Error::Capacity {
            what: "statevector",
            requested: n_qubits,
            cap: MAX_QUBITS,
        });
    }
    Ok(())
}
