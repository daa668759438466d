//! Observables, trajectory datasets, the three-variant error study, and
//! variational and projected ground states.

mod dataset;
mod ground;
mod observables;
mod report;
mod scattering;
mod table;
mod vqe;

pub use dataset::TrajectoryDataset;
pub use ground::{projected_ground_state, ProjectedGround, ProjectionConfig};
pub use observables::{bipartite_entropy, cut_entropies, site_occupation_via_pauli, site_occupations, Observable};
pub use report::{
    relative_error_series, relative_error_series_with, Aggregation, CellStatus, ErrorColumn, ErrorOptions,
    ErrorReport, ErrorRow, MonotonicityCheck,
};
pub use scattering::{prepare_vacuum, run_on_vacuum, run_scattering_experiment, ScatteringRun, Vacuum, VacuumSource};
pub use table::{run_table_cell, table1_cells, table1_report, TableCell, TableConfig};
pub use vqe::{ansatz_parameter_count, efficient_su2, vqe_ground_state, VqeConfig, VqeResult};
