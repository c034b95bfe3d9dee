use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config parse error: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{name} must be > 0 (got {value})")]
    NotPositive { name: &'static str, value: f64 },
    #[error("{name} must be >= 0 (got {value})")]
    Negative { name: &'static str, value: f64 },
    #[error("{name}: min {min} must be below max {max}")]
    EmptyRange {
        name: &'static str,
        min: f64,
        max: f64,
    },
    #[error("{name} out of range (got {value})")]
    OutOfRange { name: &'static str, value: f64 },
}

#[derive(Debug, Error, PartialEq)]
pub enum GridError {
    #[error("field must have positive width and height (got {width} x {height} m)")]
    EmptyField { width: f64, height: f64 },
    #[error("cell size must be positive and no larger than the field (got {0} m)")]
    BadCellSize(f64),
}

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("annulus inner radius {r_min} exceeds outer radius {r_max}")]
    InvertedAnnulus { r_min: f64, r_max: f64 },
    #[error("negative length {0}")]
    NegativeLength(f64),
}

#[derive(Debug, Error, PartialEq)]
pub enum SprayError {
    #[error("nozzle cap turns must be within 0..=7 (got {0})")]
    TurnsOutOfRange(i64),
}

#[derive(Debug, Error, PartialEq)]
pub enum PowerError {
    #[error("zero current draw: battery backup is unbounded")]
    UnboundedBackup,
    #[error("panel voltage must be > 0 (got {0})")]
    NonPositiveVoltage(f64),
    #[error("charging current must be > 0 (got {0})")]
    NonPositiveCurrent(f64),
}

#[derive(Debug, Error, PartialEq)]
pub enum ControllerError {
    #[error("speed control requires corrected controller mode")]
    SpeedInFaithfulMode,
}

#[derive(Debug, Error, PartialEq)]
pub enum ScriptError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: event time {t} is earlier than the previous event")]
    Unsorted { line: usize, t: f64 },
    #[error("script has no END event")]
    MissingEnd,
    #[error("line {line}: duplicate END (first at line {first})")]
    DuplicateEnd { line: usize, first: usize },
    #[error("line {line}: event after END never executes")]
    AfterEnd { line: usize },
    #[error("line {line}: SPEED requires corrected controller mode")]
    SpeedInFaithfulMode { line: usize },
}

#[derive(Debug, Error, PartialEq)]
pub enum SimError {
    #[error(transparent)]
    Script(#[from] ScriptError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("time step must be positive and finite (got {0})")]
    BadTimeStep(f64),
    #[error("invalid config: {0}")]
    Config(String),
}

#[derive(Debug, Error, PartialEq)]
pub enum SessionError {
    #[error("control link already in use")]
    ControlBusy,
    #[error("directive: {0}")]
    Directive(String),
    #[error(transparent)]
    Controller(#[from] ControllerError),
}
