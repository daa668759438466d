use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, StateVector};
use crate::error::{Error, Result};
use crate::model::{HamiltonianAction, ModelParams};
use crate::scalar::Real;

/// Ansatz size, SPSA gain schedule and seed.
///
/// Gains follow `a_k = a / (k + 1 + A)^alpha` and `c_k = c / (k + 1)^gamma`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "", default, deny_unknown_fields)]
pub struct VqeConfig<T: Real> {
    pub n_layers: usize,
    pub max_iterations: usize,
    pub a: T,
    pub c: T,
    /// Stability constant `A`.
    pub stability: T,
    pub alpha: T,
    pub gamma: T,
    /// Standard deviation of the initial parameters around zero. Small
    /// spreads start next to the `|0...0>` product state, which is a local
    /// minimum for weak `J`.
    pub init_spread: T,
    pub seed: u64,
}

impl<T: Real> Default for VqeConfig<T> {
    fn default() -> Self {
        Self {
            n_layers: 1,
            max_iterations: 15_000,
            a: T::lit(0.5),
            c: T::lit(0.2),
            stability: T::lit(100.0),
            alpha: T::lit(0.602),
            gamma: T::lit(0.101),
            init_spread: T::lit(1.5),
            seed: 0,
        }
    }
}

impl<T: Real> VqeConfig<T> {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("a", self.a), ("c", self.c)] {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(Error::invalid(name, "SPSA gains must be positive"));
            }
        }
        if self.stability < T::zero() {
            return Err(Error::invalid("stability", "must be non-negative"));
        }
        if self.max_iterations == 0 {
            return Err(Error::invalid("max_iterations", "must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct VqeResult<T: Real> {
    pub state: StateVector<T>,
    pub energy: T,
    pub parameters: Vec<T>,
    /// Best energy seen after each iteration.
    pub history: Vec<T>,
    pub evaluations: usize,
}

/// Number of angles in [`efficient_su2`].
pub fn ansatz_parameter_count(n_qubits: usize, n_layers: usize) -> usize {
    2 * n_qubits * (n_layers + 1)
}

/// Hardware-efficient ansatz: `n_layers` blocks of RY and RZ on every qubit
/// followed by a CNOT ladder `(0,1), (1,2), ...`, closed by a final RY/RZ
/// rotation layer.
pub fn efficient_su2<T: Real>(n_qubits: usize, n_layers: usize, params: &[T]) -> Result<Circuit<T>> {
    let expected = ansatz_parameter_count(n_qubits, n_layers);
    if params.len() != expected {
        return Err(Error::LengthMismatch {
            what: "ansatz parameters",
            expected,
            found: params.len(),
        });
    }
    let mut c = Circuit::new(n_qubits);
    let mut it = params.iter().copied();
    for layer in 0..=n_layers {
        for q in 0..n_qubits {
            c.push(Gate::ry(q, it.next().unwrap()))?;
        }
        for q in 0..n_qubits {
            c.push(Gate::rz(q, it.next().unwrap()))?;
        }
        if layer < n_layers {
            for q in 0..n_qubits.saturating_sub(1) {
                c.push(Gate::cnot(q, q + 1)?)?;
            }
        }
    }
    Ok(c)
}

/// Minimizes `<ψ(φ)|H|ψ(φ)>` over the [`efficient_su2`] angles with SPSA.
///
/// Energies are exact statevector expectations. The best point evaluated
/// during the run is returned; the result is a pure function of the config.
pub fn vqe_ground_state<T: Real>(params: &ModelParams<T>, config: &VqeConfig<T>) -> Result<VqeResult<T>> {
    config.validate()?;
    let n = params.n_sites;
    let h = HamiltonianAction::new(params)?;
    let energy_of = |phi: &[T]| -> Result<(T, StateVector<T>)> {
        let mut s = StateVector::zero(n)?;
        s.apply_circuit(&efficient_su2(n, config.n_layers, phi)?)?;
        Ok((h.expectation(&s)?, s))
    };

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let count = ansatz_parameter_count(n, config.n_layers);
    let mut phi: Vec<T> = (0..count)
        .map(|_| T::lit(rng.sample::<f64, _>(StandardNormal)) * config.init_spread)
        .collect();
    let (mut best_e, mut best_state) = energy_of(&phi)?;
    let mut best_phi = phi.clone();
    let mut evaluations = 1;
    let mut history = Vec::with_capacity(config.max_iterations);

    for k in 0..config.max_iterations {
        let kf = T::lit(k as f64);
        let ak = config.a / (kf + T::one() + config.stability).powf(config.alpha);
        let ck = config.c / (kf + T::one()).powf(config.gamma);
        let delta: Vec<T> = (0..count)
            .map(|_| if rng.gen::<bool>() { T::one() } else { -T::one() })
            .collect();
        let plus: Vec<T> = phi.iter().zip(&delta).map(|(p, d)| *p + ck * *d).collect();
        let minus: Vec<T> = phi.iter().zip(&delta).map(|(p, d)| *p - ck * *d).collect();
        let (ep, sp) = energy_of(&plus)?;
        let (em, sm) = energy_of(&minus)?;
        evaluations += 2;
        for (e, s, p) in [(ep, sp, &plus), (em, sm, &minus)] {
            if e < best_e {
                best_e = e;
                best_state = s;
                best_phi = p.clone();
            }
        }
        let slope = (ep - em) / (T::lit(2.0) * ck);
        for (p, d) in phi.iter_mut().zip(&delta) {
            *p -= ak * slope * *d;
        }
        history.push(best_e);
    }
    let (e, s) = energy_of(&phi)?;
    evaluations += 1;
    if e < best_e {
        best_e = e;
        best_state = s;
        best_phi = phi;
    }
    Ok(VqeResult {
        state: best_state,
        energy: best_e,
        parameters: best_phi,
        history,
        evaluations,
    })
}
