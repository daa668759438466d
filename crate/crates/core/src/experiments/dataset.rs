use std::io::Write;

use serde::{Deserialize, Serialize};

use super::observables::{cut_entropies, site_occupations, Observable};
use crate::circuit::StateVector;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Time series of per-site occupations and per-cut entropies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct TrajectoryDataset<T: Real> {
    pub n_sites: usize,
    pub times: Vec<T>,
    /// `occupations[step][site]`; empty rows when not observed.
    pub occupations: Vec<Vec<T>>,
    /// `entropies[step][cut - 1]`; empty rows when not observed.
    pub entropies: Vec<Vec<T>>,
    /// Resolved configuration that produced the run.
    pub config_echo: serde_json::Value,
}

impl<T: Real> TrajectoryDataset<T> {
    pub fn new(n_sites: usize, config_echo: serde_json::Value) -> Self {
        Self {
            n_sites,
            times: Vec::new(),
            occupations: Vec::new(),
            entropies: Vec::new(),
            config_echo,
        }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Appends one snapshot of a system-only state.
    pub fn record(&mut self, t: T, state: &StateVector<T>, observers: &[Observable]) -> Result<()> {
        if state.n_qubits() != self.n_sites {
            return Err(Error::WidthMismatch {
                expected: self.n_sites,
                found: state.n_qubits(),
            });
        }
        self.times.push(t);
        self.occupations.push(if observers.contains(&Observable::Occupations) {
            site_occupations(state, self.n_sites)?
        } else {
            Vec::new()
        });
        self.entropies.push(if observers.contains(&Observable::Entropies) {
            cut_entropies(state)?
        } else {
            Vec::new()
        });
        Ok(())
    }

    /// Total occupation per step.
    pub fn particle_numbers(&self) -> Vec<T> {
        self.occupations.iter().map(|r| r.iter().copied().sum()).collect()
    }

    fn has_occupations(&self) -> bool {
        self.occupations.iter().any(|r| !r.is_empty())
    }

    fn has_entropies(&self) -> bool {
        self.entropies.iter().any(|r| !r.is_empty())
    }

    /// One row per time step: `t`, `n_1..n_N`, `S_1..S_{N-1}` (columns of
    /// unobserved quantities are omitted).
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["t".to_string()];
        let (occ, ent) = (self.has_occupations(), self.has_entropies());
        if occ {
            header.extend((1..=self.n_sites).map(|j| format!("n_{j}")));
        }
        if ent {
            header.extend((1..self.n_sites).map(|c| format!("S_{c}")));
        }
        w.write_record(&header)?;
        for k in 0..self.len() {
            let mut row = vec![format_value(self.times[k])];
            if occ {
                row.extend(self.occupations[k].iter().map(|&v| format_value(v)));
            }
            if ent {
                row.extend(self.entropies[k].iter().map(|&v| format_value(v)));
            }
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Shortest decimal that round-trips through `f64`.
fn format_value<T: Real>(v: T) -> String {
    format!("{}", v.to_f64_lossy())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut d = TrajectoryDataset::<f64>::new(2, serde_json::Value::Null);
        let s = StateVector::basis(2, 0b10).unwrap();
        d.record(0.0, &s, &[Observable::Occupations, Observable::Entropies]).unwrap();
        let text = d.to_csv_string().unwrap();
        assert_eq!(text, "t,n_1,n_2,S_1\n0,0,1,0\n");
    }

    #[test]
    fn json_round_trip() {
        let mut d = TrajectoryDataset::<f64>::new(2, serde_json::json!({"k": 1}));
        d.record(0.5, &StateVector::zero(2).unwrap(), &[Observable::Occupations]).unwrap();
        let back = TrajectoryDataset::from_json(&d.to_json().unwrap()).unwrap();
        assert_eq!(back, d);
    }
}
