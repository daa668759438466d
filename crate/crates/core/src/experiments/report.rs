use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::dataset::TrajectoryDataset;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// How per-step errors combine sites (or cuts).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aggregation {
    /// `100 ‖x_ref - x‖ / ‖x_ref‖` per step.
    #[default]
    L2Ratio,
    /// Mean over sites of `100 |x_ref - x| / |x_ref|`, skipping vanishing references.
    SiteMean,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ErrorOptions {
    pub aggregation: Aggregation,
    /// Whether the `t = 0` snapshot enters the time average.
    pub include_initial: bool,
}

impl Default for ErrorOptions {
    fn default() -> Self {
        Self {
            aggregation: Aggregation::L2Ratio,
            include_initial: false,
        }
    }
}

/// References smaller than this are treated as zero.
const REF_FLOOR: f64 = 1e-12;

/// Time-averaged relative percent errors `(occupation, entropy)` with the
/// default [`ErrorOptions`]. A quantity missing from either dataset yields NaN.
pub fn relative_error_series<T: Real>(
    reference: &TrajectoryDataset<T>,
    approx: &TrajectoryDataset<T>,
) -> Result<(T, T)> {
    relative_error_series_with(reference, approx, ErrorOptions::default())
}

pub fn relative_error_series_with<T: Real>(
    reference: &TrajectoryDataset<T>,
    approx: &TrajectoryDataset<T>,
    options: ErrorOptions,
) -> Result<(T, T)> {
    if reference.len() != approx.len() || reference.n_sites != approx.n_sites {
        return Err(Error::GridMismatch(format!(
            "{} steps on {} sites vs {} steps on {} sites",
            reference.len(),
            reference.n_sites,
            approx.len(),
            approx.n_sites
        )));
    }
    let tol = T::lit(1e-12) * (T::one() + reference.times.last().map_or(T::zero(), |t| t.abs()));
    if reference.times.iter().zip(&approx.times).any(|(a, b)| (*a - *b).abs() > tol) {
        return Err(Error::GridMismatch("time grids differ".into()));
    }
    let occ = series(&reference.occupations, &approx.occupations, options)?;
    let ent = series(&reference.entropies, &approx.entropies, options)?;
    Ok((occ, ent))
}

fn series<T: Real>(reference: &[Vec<T>], approx: &[Vec<T>], options: ErrorOptions) -> Result<T> {
    let start = usize::from(!options.include_initial);
    let mut total = T::zero();
    let mut count = 0usize;
    let mut observed = false;
    for (r, a) in reference.iter().zip(approx).skip(start) {
        if r.is_empty() || a.is_empty() {
            continue;
        }
        if r.len() != a.len() {
            return Err(Error::GridMismatch(format!("row widths {} and {}", r.len(), a.len())));
        }
        observed = true;
        if let Some(e) = step_error(r, a, options.aggregation) {
            total += e;
            count += 1;
        }
    }
    if !observed {
        return Ok(T::nan());
    }
    Ok(if count == 0 { T::zero() } else { total / T::lit(count as f64) })
}

fn step_error<T: Real>(r: &[T], a: &[T], aggregation: Aggregation) -> Option<T> {
    let floor = T::lit(REF_FLOOR);
    let hundred = T::lit(100.0);
    match aggregation {
        Aggregation::L2Ratio => {
            let norm = r.iter().map(|&x| x * x).sum::<T>().sqrt();
            let diff = r.iter().zip(a).map(|(&x, &y)| (x - y) * (x - y)).sum::<T>().sqrt();
            (norm > floor).then(|| hundred * diff / norm)
        }
        Aggregation::SiteMean => {
            let terms: Vec<T> = r
                .iter()
                .zip(a)
                .filter(|(x, _)| x.abs() > floor)
                .map(|(&x, &y)| hundred * (x - y).abs() / x.abs())
                .collect();
            (!terms.is_empty()).then(|| terms.iter().copied().sum::<T>() / T::lit(terms.len() as f64))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", content = "message", rename_all = "snake_case")]
pub enum CellStatus {
    Ok,
    Failed(String),
}

/// One `(J, g)` cell of the error table. Errors are percentages.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorRow {
    pub j_coupling: f64,
    pub g_coupling: f64,
    pub n_sites: usize,
    /// Exact vs truncated packets, occupations.
    pub occupation_twp: f64,
    /// Exact vs truncated packets, entropies.
    pub entropy_twp: f64,
    /// Exact vs truncated-unitary packets, occupations.
    pub occupation_tuwp: f64,
    /// Same three columns under the alternate aggregation.
    pub alternate: [f64; 3],
    /// Two-ancilla post-selection probability of the circuit preparation.
    pub success_probability: f64,
    pub vacuum_method: String,
    pub status: CellStatus,
}

impl ErrorRow {
    pub fn failed(j_coupling: f64, g_coupling: f64, n_sites: usize, message: String) -> Self {
        Self {
            j_coupling,
            g_coupling,
            n_sites,
            occupation_twp: f64::NAN,
            entropy_twp: f64::NAN,
            occupation_tuwp: f64::NAN,
            alternate: [f64::NAN; 3],
            success_probability: f64::NAN,
            vacuum_method: String::new(),
            status: CellStatus::Failed(message),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == CellStatus::Ok
    }
}

/// Which error column a query refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorColumn {
    OccupationTwp,
    EntropyTwp,
    OccupationTuwp,
}

impl ErrorColumn {
    pub const ALL: [ErrorColumn; 3] = [
        ErrorColumn::OccupationTwp,
        ErrorColumn::EntropyTwp,
        ErrorColumn::OccupationTuwp,
    ];

    pub fn of(self, row: &ErrorRow) -> f64 {
        match self {
            ErrorColumn::OccupationTwp => row.occupation_twp,
            ErrorColumn::EntropyTwp => row.entropy_twp,
            ErrorColumn::OccupationTuwp => row.occupation_tuwp,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ErrorColumn::OccupationTwp => "occ EWP-TWP",
            ErrorColumn::EntropyTwp => "ent EWP-TWP",
            ErrorColumn::OccupationTuwp => "occ EWP-TUWP",
        }
    }
}

/// One ordered comparison between consecutive `g` values at fixed `J`.
#[derive(Clone, Debug, PartialEq)]
pub struct MonotonicityCheck {
    pub j_coupling: f64,
    pub g_low: f64,
    pub g_high: f64,
    pub low: f64,
    pub high: f64,
}

impl MonotonicityCheck {
    pub fn holds(&self) -> bool {
        self.high > self.low
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub aggregation: Aggregation,
    pub rows: Vec<ErrorRow>,
}

impl ErrorReport {
    pub fn row(&self, j: f64, g: f64) -> Option<&ErrorRow> {
        self.rows
            .iter()
            .find(|r| (r.j_coupling - j).abs() < 1e-12 && (r.g_coupling - g).abs() < 1e-12)
    }

    pub fn failed_cells(&self) -> usize {
        self.rows.iter().filter(|r| !r.is_ok()).count()
    }

    /// Consecutive-in-`g` comparisons at each listed `J`, restricted to
    /// `g_values` when given.
    pub fn monotonicity(&self, column: ErrorColumn, j_values: &[f64], g_values: Option<&[f64]>) -> Vec<MonotonicityCheck> {
        let mut out = Vec::new();
        for &j in j_values {
            let mut cells: Vec<&ErrorRow> = self
                .rows
                .iter()
                .filter(|r| r.is_ok() && (r.j_coupling - j).abs() < 1e-12)
                .filter(|r| g_values.is_none_or(|gs| gs.iter().any(|g| (g - r.g_coupling).abs() < 1e-12)))
                .collect();
            cells.sort_by(|a, b| a.g_coupling.total_cmp(&b.g_coupling));
            for w in cells.windows(2) {
                out.push(MonotonicityCheck {
                    j_coupling: j,
                    g_low: w[0].g_coupling,
                    g_high: w[1].g_coupling,
                    low: column.of(w[0]),
                    high: column.of(w[1]),
                });
            }
        }
        out
    }

    /// Aligned plain-text table.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:>5} {:>6} {:>4} | {:>12} {:>12} | {:>12} | {:>10}  status",
            "J", "g", "N", "occ EWP-TWP", "ent EWP-TWP", "occ EWP-TUWP", "P(post)"
        );
        let _ = writeln!(s, "{}", "-".repeat(86));
        for r in &self.rows {
            let status = match &r.status {
                CellStatus::Ok => "ok".to_string(),
                CellStatus::Failed(m) => format!("FAILED: {m}"),
            };
            let _ = writeln!(
                s,
                "{:>5.2} {:>6.3} {:>4} | {:>12.3} {:>12.3} | {:>12.3} | {:>10.4}  {}",
                r.j_coupling,
                r.g_coupling,
                r.n_sites,
                r.occupation_twp,
                r.entropy_twp,
                r.occupation_tuwp,
                r.success_probability,
                status
            );
        }
        s
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "j_coupling",
            "g_coupling",
            "n_sites",
            "occupation_twp",
            "entropy_twp",
            "occupation_tuwp",
            "alt_occupation_twp",
            "alt_entropy_twp",
            "alt_occupation_tuwp",
            "success_probability",
            "vacuum_method",
            "status",
        ])?;
        for r in &self.rows {
            let status = match &r.status {
                CellStatus::Ok => "ok".to_string(),
                CellStatus::Failed(m) => format!("failed: {m}"),
            };
            let mut rec = vec![r.j_coupling.to_string(), r.g_coupling.to_string(), r.n_sites.to_string()];
            for v in [r.occupation_twp, r.entropy_twp, r.occupation_tuwp]
                .into_iter()
                .chain(r.alternate)
                .chain([r.success_probability])
            {
                rec.push(v.to_string());
            }
            rec.push(r.vacuum_method.clone());
            rec.push(status);
            w.write_record(&rec)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}
