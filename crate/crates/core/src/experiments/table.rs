use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::observables::Observable;
use super::report::{relative_error_series_with, Aggregation, CellStatus, ErrorOptions, ErrorReport, ErrorRow};
use super::scattering::{prepare_vacuum, run_on_vacuum, VacuumSource};
use crate::error::Result;
use crate::evolution::TrotterConfig;
use crate::model::ModelParams;
use crate::scalar::Real;
use crate::wavepacket::{PrepVariant, WavePacketSpec};

/// One `(J, g)` point of the sweep; `n_sites` overrides the base lattice.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableCell {
    pub j_coupling: f64,
    pub g_coupling: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_sites: Option<usize>,
}

impl TableCell {
    pub fn new(j_coupling: f64, g_coupling: f64) -> Self {
        Self {
            j_coupling,
            g_coupling,
            n_sites: None,
        }
    }
}

/// The fourteen `(J, g)` points of the reference error study.
pub fn table1_cells() -> Vec<TableCell> {
    let grid: [(f64, &[f64]); 4] = [
        (0.4, &[0.01, 0.02, 0.03, 0.05]),
        (0.6, &[0.01, 0.02, 0.03, 0.05]),
        (0.8, &[0.01, 0.02, 0.03]),
        (1.0, &[0.01, 0.02, 0.03]),
    ];
    grid.iter()
        .flat_map(|(j, gs)| gs.iter().map(move |g| TableCell::new(*j, *g)))
        .collect()
}

/// Everything except `(J, g)` shared by the cells of a sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct TableConfig<T: Real> {
    pub base: ModelParams<T>,
    pub packets: Vec<WavePacketSpec<T>>,
    pub trotter: TrotterConfig<T>,
    pub vacuum: VacuumSource<T>,
    pub errors: ErrorOptions,
}

/// Runs the exact, truncated and truncated-unitary preparations of one cell
/// on a shared vacuum and compares them.
pub fn run_table_cell<T: Real>(cell: &TableCell, config: &TableConfig<T>) -> Result<ErrorRow> {
    let mut params = config
        .base
        .with_couplings(T::lit(cell.j_coupling), T::lit(cell.g_coupling));
    if let Some(n) = cell.n_sites {
        params.n_sites = n;
    }
    params.validate()?;
    let vacuum = prepare_vacuum(&params, &config.vacuum)?;
    let both = [Observable::Occupations, Observable::Entropies];
    let run = |variant, observers: &[Observable]| {
        run_on_vacuum(&params, &vacuum, &config.packets, variant, &config.trotter, observers)
    };
    let exact = run(PrepVariant::ExactOracle, &both)?;
    let truncated = run(PrepVariant::TruncatedOracle, &both)?;
    let unitary = run(PrepVariant::TruncatedUnitary, &[Observable::Occupations])?;

    let alternate = ErrorOptions {
        aggregation: match config.errors.aggregation {
            Aggregation::L2Ratio => Aggregation::SiteMean,
            Aggregation::SiteMean => Aggregation::L2Ratio,
        },
        ..config.errors
    };
    let columns = |opts: ErrorOptions| -> Result<[f64; 3]> {
        let (occ_t, ent_t) = relative_error_series_with(&exact.dataset, &truncated.dataset, opts)?;
        let (occ_u, _) = relative_error_series_with(&exact.dataset, &unitary.dataset, opts)?;
        Ok([occ_t.to_f64_lossy(), ent_t.to_f64_lossy(), occ_u.to_f64_lossy()])
    };
    let primary = columns(config.errors)?;
    Ok(ErrorRow {
        j_coupling: cell.j_coupling,
        g_coupling: cell.g_coupling,
        n_sites: params.n_sites,
        occupation_twp: primary[0],
        entropy_twp: primary[1],
        occupation_tuwp: primary[2],
        alternate: columns(alternate)?,
        success_probability: unitary.success_probability.to_f64_lossy(),
        vacuum_method: vacuum.method.to_string(),
        status: CellStatus::Ok,
    })
}

/// Runs every cell in parallel on the current rayon pool. A failing cell is
/// kept in the report with its error message instead of aborting the sweep.
pub fn table1_report<T: Real>(cells: &[TableCell], config: &TableConfig<T>) -> ErrorReport {
    let rows = cells
        .par_iter()
        .map(|cell| {
            run_table_cell(cell, config).unwrap_or_else(|e| {
                let n = cell.n_sites.unwrap_or(config.base.n_sites);
                ErrorRow::failed(cell.j_coupling, cell.g_coupling, n, e.to_string())
            })
        })
        .collect();
    ErrorReport {
        aggregation: config.errors.aggregation,
        rows,
    }
}
