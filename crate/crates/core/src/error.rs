use thiserror::Error;

/// Errors raised by state construction, circuit execution and the file formats.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("basis index {index} out of range for {n_qubits} qubit(s)")]
    IndexOutOfRange { n_qubits: usize, index: usize },

    #[error("register of {0} qubits exceeds the desk-scale cap of {max}", max = crate::MAX_QUBITS)]
    TooManyQubits(usize),

    #[error("amplitude vector length {0} is not a power of two")]
    BadLength(usize),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{what} = {value} outside [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("operation requires a single qubit, got {0}")]
    NotSingleQubit(usize),

    #[error("unknown gate `{0}`")]
    UnknownGate(String),

    #[error("gate `{name}` is not unitary")]
    NotUnitary { name: String },

    #[error("gate `{name}` acts on {arity} qubit(s) but {given} target(s) were given")]
    ArityMismatch {
        name: String,
        arity: usize,
        given: usize,
    },

    #[error("bad targets {targets:?} for a {n_qubits}-qubit register")]
    BadTargets {
        targets: Vec<usize>,
        n_qubits: usize,
    },

    #[error("input is not a computational basis state")]
    NotBasisState,

    #[error("invalid measurement operator: {0}")]
    InvalidOperator(String),

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("arc {from} -> {to} is not applicable from node {current}")]
    ArcNotApplicable {
        from: String,
        to: String,
        current: String,
    },

    #[error("guard `{0}` is not satisfied")]
    GuardFailed(String),

    #[error("unknown guard `{0}`")]
    UnknownGuard(String),

    #[error("unknown metric `{0}`")]
    UnknownMetric(String),

    #[error("invalid joystick input: {0}")]
    InvalidInput(String),

    #[error("collapse threshold not reached ({accumulated} < {threshold} rad)")]
    ThresholdNotReached { accumulated: f64, threshold: f64 },

    #[error("invalid trajectory script: {0}")]
    InvalidScript(String),

    #[error("consecutive waypoints {0} and {1} are antipodal")]
    AntipodalTargets(usize, usize),

    #[error("trajectory is empty")]
    EmptyTrajectory,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
