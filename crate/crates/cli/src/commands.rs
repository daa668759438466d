use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{json, Value};
use wpscatter::circuit::{cnot_depth, export_qasm_with, Circuit, QasmOptions, StateVector};
use wpscatter::experiments::{
    prepare_vacuum, run_on_vacuum, table1_report, vqe_ground_state, ErrorReport, TableConfig, Vacuum,
};
use wpscatter::model::{exact_ground_state, DENSE_CAP};
use wpscatter::wavepacket::{build_packet_circuit, prepare_scattering_state, term_count, PrepVariant};

use crate::config::{Format, RunConfig};

/// Files produced by a command, written only after all computation succeeded.
pub struct Outputs {
    files: Vec<(String, Vec<u8>)>,
    /// Number of failed sweep cells.
    pub failed_cells: usize,
}

impl Outputs {
    fn new(cfg: &RunConfig) -> Self {
        let mut out = Self {
            files: Vec::new(),
            failed_cells: 0,
        };
        out.json("config_echo.json", &cfg.echo);
        out
    }

    fn text(&mut self, name: &str, body: String) {
        self.files.push((name.to_string(), body.into_bytes()));
    }

    fn json(&mut self, name: &str, value: &Value) {
        let mut body = serde_json::to_string_pretty(value).expect("json value serializes");
        body.push('\n');
        self.text(name, body);
    }

    /// `state.bin` holds interleaved little-endian `f64` pairs `(re, im)` in
    /// basis order; `state.json` describes the layout.
    fn state(&mut self, state: &StateVector<f64>, cfg: &RunConfig) {
        let mut bytes = Vec::with_capacity(state.dim() * 16);
        for a in state.amplitudes() {
            bytes.extend_from_slice(&a.re.to_le_bytes());
            bytes.extend_from_slice(&a.im.to_le_bytes());
        }
        self.files.push(("state.bin".into(), bytes));
        self.json(
            "state.json",
            &json!({
                "file": "state.bin",
                "n_qubits": state.n_qubits(),
                "dim": state.dim(),
                "dtype": "complex128",
                "byte_order": "little",
                "layout": "interleaved re/im per amplitude; basis index bit q is qubit q, site j is qubit j-1",
                "config_echo": cfg.echo,
            }),
        );
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.files.iter().map(|(n, _)| n.as_str())
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (name, body) in &self.files {
            let path = dir.join(name);
            fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
        }
        Ok(())
    }
}

fn vacuum_json(vac: &Vacuum<f64>) -> Value {
    json!({ "method": vac.method, "energy": vac.energy, "variance": vac.variance })
}

pub fn prepare(cfg: &RunConfig) -> Result<Outputs> {
    let n = cfg.model.n_sites;
    let vac = prepare_vacuum(&cfg.model, &cfg.vacuum).context("preparing the vacuum")?;
    let prep = prepare_scattering_state(&vac.state, &cfg.packets, cfg.variant, n).context("applying the packets")?;
    let depth = match cfg.variant {
        PrepVariant::TruncatedUnitary => {
            Some(cnot_depth(&build_packet_circuit(&cfg.packets, cfg.variant, n)?))
        }
        _ => None,
    };
    let mut out = Outputs::new(cfg);
    out.json(
        "metrics.json",
        &json!({
            "variant": cfg.variant,
            "n_sites": n,
            "n_packets": cfg.packets.len(),
            "cnot_depth": depth,
            "term_count": term_count(cfg.variant, n)?,
            "success_probability": prep.success_probability,
            "vacuum": vacuum_json(&vac),
            "config_echo": cfg.echo,
        }),
    );
    out.state(&prep.state, cfg);
    Ok(out)
}

pub fn evolve(cfg: &RunConfig) -> Result<Outputs> {
    let vac = prepare_vacuum(&cfg.model, &cfg.vacuum).context("preparing the vacuum")?;
    let run = run_on_vacuum(&cfg.model, &vac, &cfg.packets, cfg.variant, &cfg.trotter, &cfg.output.observables)
        .context("running the trajectory")?;
    let mut data = run.dataset;
    data.config_echo = cfg.echo.clone();
    let mut out = Outputs::new(cfg);
    match cfg.output.format {
        Format::Csv => out.text("trajectory.csv", data.to_csv_string()?),
        Format::Json => out.text("trajectory.json", data.to_json()? + "\n"),
    }
    out.json(
        "metrics.json",
        &json!({
            "rows": data.len(),
            "success_probability": run.success_probability,
            "vacuum": vacuum_json(&vac),
            "config_echo": cfg.echo,
        }),
    );
    Ok(out)
}

pub fn table(cfg: &RunConfig, jobs: Option<usize>) -> Result<Outputs> {
    let table = TableConfig {
        base: cfg.model,
        packets: cfg.packets.clone(),
        trotter: cfg.trotter,
        vacuum: cfg.vacuum,
        errors: cfg.errors,
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        pool = pool.num_threads(j);
    }
    let pool = pool.build().context("starting the worker pool")?;
    let report: ErrorReport = pool.install(|| table1_report(&cfg.cells, &table));
    let mut out = Outputs::new(cfg);
    out.failed_cells = report.failed_cells();
    out.text("report.txt", report.render_text());
    match cfg.output.format {
        Format::Csv => out.text("report.csv", report.to_csv_string()?),
        Format::Json => out.json(
            "report.json",
            &json!({ "report": report, "config_echo": cfg.echo }),
        ),
    }
    Ok(out)
}

pub fn export(cfg: &RunConfig) -> Result<Outputs> {
    let n = cfg.model.n_sites;
    let circuit = if cfg.packets.is_empty() {
        Circuit::new(n)
    } else {
        build_packet_circuit(&cfg.packets, PrepVariant::TruncatedUnitary, n)?
    };
    let options = QasmOptions {
        expand_toffoli: cfg.output.expand_toffoli,
    };
    let qasm = export_qasm_with(&circuit, options)?;
    let mut out = Outputs::new(cfg);
    out.text("circuit.qasm", qasm);
    out.json(
        "metrics.json",
        &json!({
            "width": circuit.width(),
            "gates": circuit.len(),
            "cnot_depth": cnot_depth(&circuit),
            "expand_toffoli": options.expand_toffoli,
            "config_echo": cfg.echo,
        }),
    );
    Ok(out)
}

pub fn vqe(cfg: &RunConfig) -> Result<Outputs> {
    let res = vqe_ground_state(&cfg.model, &cfg.vqe).context("running the optimizer")?;
    let exact = if cfg.model.n_sites <= DENSE_CAP {
        Some(exact_ground_state(&cfg.model)?.0)
    } else {
        None
    };
    let mut out = Outputs::new(cfg);
    out.json(
        "vqe.json",
        &json!({
            "energy": res.energy,
            "exact_energy": exact,
            "relative_error_percent": exact.map(|e| 100.0 * (res.energy - e) / e.abs()),
            "evaluations": res.evaluations,
            "parameters": res.parameters,
            "history": res.history,
            "config_echo": cfg.echo,
        }),
    );
    out.state(&res.state, cfg);
    Ok(out)
}
