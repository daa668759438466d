use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} needs {requested} qubits but the limit is {cap}")]
    Capacity {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("qubit {index} out of range for width {width}")]
    QubitOutOfRange { index: usize, width: usize },

    #[error("qubit {0} appears more than once in one gate")]
    RepeatedQubit(usize),

    #[error("{kind} expects {expected} qubits, got {found}")]
    Arity {
        kind: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("site {site} outside 1..={n_sites}")]
    SiteOutOfRange { site: usize, n_sites: usize },

    #[error("width mismatch: expected {expected} qubits, found {found}")]
    WidthMismatch { expected: usize, found: usize },

    #[error("length mismatch in {what}: expected {expected}, found {found}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("post-selection of outcome {outcome} on qubit {qubit} is impossible (probability {probability:e})")]
    ZeroProbability {
        qubit: usize,
        outcome: u8,
        probability: f64,
    },

    #[error("invalid `{field}`: {reason}")]
    InvalidParameter { field: String, reason: String },

    #[error("malformed Pauli string {0:?}")]
    MalformedPauli(String),

    #[error("gate kind {0} has no OpenQASM form in the selected gate set")]
    Unexportable(&'static str),

    #[error("OpenQASM parse error on line {line}: {message}")]
    QasmParse { line: usize, message: String },

    #[error("{0} is the zero vector")]
    ZeroVector(&'static str),

    #[error("packet windows {first:?} and {second:?} overlap")]
    OverlappingWindows {
        first: (usize, usize),
        second: (usize, usize),
    },

    #[error("{0}")]
    GridMismatch(String),

    #[error("{0} is not supported for this preparation variant")]
    VariantMismatch(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field: field.into(),
            reason: reason.into(),
        }
    }
}
