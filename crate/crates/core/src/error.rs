use thiserror::Error;

/// Errors raised anywhere in the extraction pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty dataset")]
    EmptyDataset,

    #[error("arity mismatch: expected {expected} attributes, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("{n} attributes exceed the configured maximum of {max}")]
    TooManyAttributes { n: usize, max: usize },

    #[error("degree {value} of attribute {index} is outside [0, 1]")]
    DegreeOutOfRange { index: usize, value: f64 },

    #[error("non-finite value {value} in attribute {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("minterm index {k} out of range for {n} attributes")]
    MintermOutOfRange { k: usize, n: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("invalid training config: {0}")]
    InvalidConfig(String),

    #[error("training diverged at epoch {epoch}: loss is {loss}")]
    Diverged { epoch: usize, loss: f64 },

    #[error("training data must contain both classes")]
    SingleClass,

    #[error("model file: {0}")]
    ModelFormat(String),

    #[error("empty ReLU status")]
    EmptyStatus,

    #[error("cell {cell} does not fit {width} ReLU nodes")]
    InvalidCell { cell: u64, width: usize },

    #[error("cell width {got} does not match ReLU count {expected}")]
    CellWidthMismatch { expected: usize, got: usize },

    #[error("cell {cell} needs the single-node cell of ReLU node {node}")]
    MissingSingleCell { cell: u64, node: usize },

    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("weight {value} at minterm {k} is outside [0, 1]")]
    WeightOutOfRange { k: usize, value: f64 },

    #[error("bit code level {level} out of range 0..={max}")]
    LevelOutOfRange { level: usize, max: usize },

    #[error("empty attribute selection")]
    EmptySelection,

    #[error("attribute index {index} out of range for {n} attributes")]
    AttributeOutOfRange { index: usize, n: usize },

    #[error("syntax error at token {token}: {message}")]
    Syntax { token: usize, message: String },

    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),

    #[error("invalid label `{value}` in row {row}: labels must be 0 or 1")]
    InvalidLabel { row: usize, value: String },

    #[error("invalid value `{value}` in row {row}, column `{column}`")]
    InvalidValue {
        row: usize,
        column: String,
        value: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures reading or writing files.
    pub fn is_io(&self) -> bool {
        match self {
            Error::Io(_) | Error::File { .. } => true,
            Error::Csv(e) => e.is_io_error(),
            _ => false,
        }
    }
}

pub(crate) fn file_error(path: &std::path::Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::File {
        path: path.display().to_string(),
        source,
    }
}
