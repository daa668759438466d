//! Run configuration: loading, defaults, validation and the resolved echo.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use wpscatter::circuit::parse_angle;
use wpscatter::experiments::{
    table1_cells, ErrorOptions, Observable, ProjectionConfig, TableCell, VacuumSource, VqeConfig,
};
use wpscatter::model::ModelParams;
use wpscatter::wavepacket::{PrepVariant, WavePacketSpec};
use wpscatter::{TrotterConfigF64, WavePacketSpecF64};

/// A configuration problem, located by field path and, for TOML input, line.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub path: String,
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.path.is_empty()) {
            (Some(l), false) => write!(f, "line {l}: `{}`: {}", self.path, self.message),
            (None, false) => write!(f, "`{}`: {}", self.path, self.message),
            (Some(l), true) => write!(f, "line {l}: {}", self.message),
            (None, true) => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

fn problem(path: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError {
        path: path.into(),
        line: None,
        message: message.into(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Momentum {
    Value(f64),
    /// `"7*pi/16"`, `"-pi/2"`, ...
    Expr(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PacketEntry {
    pub center: f64,
    pub momentum: Momentum,
    pub width: f64,
    /// 1-based inclusive site range; defaults to the left half for the first
    /// packet and the right half for the second.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<[usize; 2]>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VacuumKind {
    Trivial,
    #[default]
    Exact,
    Vqe,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrotterSection {
    #[serde(default = "default_dt")]
    pub dt: f64,
    #[serde(default = "default_steps")]
    pub n_steps: usize,
}

fn default_dt() -> f64 {
    0.1
}

fn default_steps() -> usize {
    120
}

impl Default for TrotterSection {
    fn default() -> Self {
        Self {
            dt: default_dt(),
            n_steps: default_steps(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableSection {
    /// `"table1"` selects the fourteen-cell reference grid.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cells: Vec<TableCell>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    pub dir: PathBuf,
    pub format: Format,
    pub observables: Vec<Observable>,
    /// Write Toffolis in exported circuits as six CNOTs plus single-qubit gates.
    pub expand_toffoli: bool,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("out"),
            format: Format::Csv,
            observables: vec![Observable::Occupations, Observable::Entropies],
            expand_toffoli: false,
        }
    }
}

/// The on-disk configuration. After [`RunConfig::resolve`] every optional
/// part is filled in, and its JSON form is the run's `config_echo`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub model: ModelParams<f64>,
    #[serde(default)]
    pub packets: Vec<PacketEntry>,
    #[serde(default = "default_variant")]
    pub variant: PrepVariant,
    #[serde(default)]
    pub vacuum: VacuumKind,
    #[serde(default)]
    pub trotter: TrotterSection,
    #[serde(default)]
    pub projection: ProjectionConfig<f64>,
    #[serde(default)]
    pub vqe: VqeConfig<f64>,
    #[serde(default)]
    pub errors: ErrorOptions,
    #[serde(default)]
    pub table: TableSection,
    #[serde(default)]
    pub output: OutputSection,
}

fn default_variant() -> PrepVariant {
    PrepVariant::TruncatedUnitary
}

/// Command-line values that take precedence over the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub expand_toffoli: bool,
}

/// Validated configuration ready for the commands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub model: ModelParams<f64>,
    pub packets: Vec<WavePacketSpecF64>,
    pub variant: PrepVariant,
    pub vacuum: VacuumSource<f64>,
    pub trotter: TrotterConfigF64,
    pub vqe: VqeConfig<f64>,
    pub errors: ErrorOptions,
    pub cells: Vec<TableCell>,
    pub output: OutputSection,
    pub echo: serde_json::Value,
}

/// Reads a TOML file, or a JSON file such as a previous run's `config_echo.json`.
pub fn load(path: &Path, overrides: &Overrides) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| problem("", format!("cannot read {}: {e}", path.display())))?;
    let is_json = path.extension().is_some_and(|e| e == "json");
    parse(&text, is_json, overrides)
}

pub fn parse(text: &str, is_json: bool, overrides: &Overrides) -> Result<RunConfig, ConfigError> {
    let raw: RawConfig = if is_json {
        serde_json::from_str(text).map_err(|e| ConfigError {
            path: String::new(),
            line: Some(e.line()),
            message: e.to_string(),
        })?
    } else {
        toml::from_str(text).map_err(|e| ConfigError {
            path: String::new(),
            line: e.span().map(|s| line_of(text, s.start)),
            message: e.message().trim().to_string(),
        })?
    };
    RunConfig::resolve(raw, overrides).map_err(|mut e| {
        if !is_json {
            e.line = locate(text, &e.path);
        }
        e
    })
}

impl RunConfig {
    pub fn resolve(mut raw: RawConfig, overrides: &Overrides) -> Result<Self, ConfigError> {
        if let Some(seed) = overrides.seed {
            raw.vqe.seed = seed;
        }
        if let Some(format) = overrides.format {
            raw.output.format = format;
        }
        if let Some(dir) = &overrides.output {
            raw.output.dir = dir.clone();
        }
        raw.output.expand_toffoli |= overrides.expand_toffoli;

        let m = &raw.model;
        if m.n_sites < 2 {
            return Err(problem("model.n_sites", format!("must be at least 2, got {}", m.n_sites)));
        }
        for (field, v) in [("j_coupling", m.j_coupling), ("h_field", m.h_field), ("g_coupling", m.g_coupling)] {
            if !v.is_finite() {
                return Err(problem(format!("model.{field}"), "must be a finite number"));
            }
        }
        let n = m.n_sites;

        if raw.packets.len() > 2 {
            return Err(problem("packets", format!("at most two packets are supported, got {}", raw.packets.len())));
        }
        let mut packets = Vec::with_capacity(raw.packets.len());
        for (i, p) in raw.packets.iter_mut().enumerate() {
            let at = |field: &str| format!("packets[{i}].{field}");
            if !(p.width.is_finite() && p.width > 0.0) {
                return Err(problem(at("width"), format!("must be positive and finite, got {}", p.width)));
            }
            if !p.center.is_finite() {
                return Err(problem(at("center"), "must be a finite number"));
            }
            let k = match &p.momentum {
                Momentum::Value(v) if v.is_finite() => *v,
                Momentum::Value(_) => return Err(problem(at("momentum"), "must be a finite number")),
                Momentum::Expr(s) => parse_angle::<f64>(s).ok_or_else(|| {
                    problem(at("momentum"), format!("cannot read `{s}`; use a number or a form like \"7*pi/16\""))
                })?,
            };
            p.momentum = Momentum::Value(k);
            let window = match p.window {
                Some([lo, hi]) => (lo, hi),
                None if !n.is_multiple_of(2) => {
                    return Err(problem(at("window"), "required when n_sites is odd"));
                }
                None if i == 0 => (1, n / 2),
                None => (n / 2 + 1, n),
            };
            p.window = Some([window.0, window.1]);
            let spec = WavePacketSpec::new(p.center, k, p.width, window)
                .and_then(|s| s.validate(n).map(|_| s))
                .map_err(|e| problem(at("window"), e.to_string()))?;
            packets.push(spec);
        }
        if let [a, b] = packets.as_slice() {
            if a.window.1 >= b.window.0 && b.window.1 >= a.window.0 {
                return Err(problem(
                    "packets[1].window",
                    format!("overlaps the first packet's window {:?}", a.window),
                ));
            }
        }

        let trotter = TrotterConfigF64::new(raw.trotter.dt, raw.trotter.n_steps)
            .map_err(|_| problem("trotter.dt", format!("must be positive and finite, got {}", raw.trotter.dt)))?;

        let proj = &raw.projection;
        if !(proj.dtau.is_finite() && proj.dtau > 0.0) {
            return Err(problem("projection.dtau", "must be positive and finite"));
        }
        if proj.variance_tol.is_nan() || proj.variance_tol <= 0.0 {
            return Err(problem("projection.variance_tol", "must be positive"));
        }
        raw.vqe.validate().map_err(|e| match e {
            wpscatter::Error::InvalidParameter { field, reason } => problem(format!("vqe.{field}"), reason),
            other => problem("vqe", other.to_string()),
        })?;
        if raw.vqe.n_layers == 0 {
            return Err(problem("vqe.n_layers", "must be at least 1"));
        }
        let vacuum = match raw.vacuum {
            VacuumKind::Trivial => VacuumSource::Trivial,
            VacuumKind::Exact => VacuumSource::ExactGround(raw.projection),
            VacuumKind::Vqe => VacuumSource::Vqe(raw.vqe),
        };

        let cells = match raw.table.preset.as_deref() {
            Some("table1") if raw.table.cells.is_empty() => table1_cells(),
            Some("table1") => return Err(problem("table.cells", "give either `preset` or `cells`, not both")),
            Some(other) => return Err(problem("table.preset", format!("unknown preset `{other}`; expected \"table1\""))),
            None => raw.table.cells.clone(),
        };
        for (i, c) in cells.iter().enumerate() {
            if !c.j_coupling.is_finite() || !c.g_coupling.is_finite() {
                return Err(problem(format!("table.cells[{i}]"), "couplings must be finite"));
            }
            if c.n_sites.is_some_and(|s| s < 2) {
                return Err(problem(format!("table.cells[{i}].n_sites"), "must be at least 2"));
            }
        }
        if raw.output.observables.is_empty() {
            return Err(problem("output.observables", "list at least one observable"));
        }

        let echo = serde_json::to_value(&raw).expect("configuration serializes");
        Ok(Self {
            model: raw.model,
            packets,
            variant: raw.variant,
            vacuum,
            trotter,
            vqe: raw.vqe,
            errors: raw.errors,
            cells,
            output: raw.output,
            echo,
        })
    }

    pub fn require_packets(&self) -> Result<(), ConfigError> {
        if self.packets.is_empty() {
            return Err(problem("packets", "this command needs at least one [[packets]] entry"));
        }
        Ok(())
    }

    pub fn require_cells(&self) -> Result<(), ConfigError> {
        if self.cells.is_empty() {
            return Err(problem("table", "set `preset = \"table1\"` or list [[table.cells]]"));
        }
        Ok(())
    }
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

/// Line of the item at `path` (such as `packets[1].width`), falling back to
/// the closest enclosing item that exists in the file.
fn locate(text: &str, path: &str) -> Option<usize> {
    let doc = toml_edit::Document::parse(text).ok()?;
    let mut item = doc.as_item();
    let mut best = None;
    for segment in path.split('.') {
        let (key, index) = match segment.split_once('[') {
            Some((k, rest)) => (k, rest.trim_end_matches(']').parse::<usize>().ok()),
            None => (segment, None),
        };
        item = match item.get(key) {
            Some(next) => next,
            None => break,
        };
        if let Some(i) = index {
            item = match item.get(i) {
                Some(next) => next,
                None => break,
            };
        }
        if let Some(span) = item.span() {
            best = Some(line_of(text, span.start));
        }
    }
    best
}
