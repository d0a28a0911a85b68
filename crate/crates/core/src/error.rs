use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("incompatible spaces: {0} vs {1}")]
    IncompatibleSpaces(String, String),
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("factor mismatch: {0}")]
    FactorMismatch(String),
    #[error("generator index {index} out of range for {factor}")]
    IndexOutOfRange { index: u32, factor: String },
    #[error("oracle scale exceeded: n = {n} is above the cutoff {cutoff}")]
    OracleScaleExceeded { n: u32, cutoff: u32 },
    #[error("degree error: {0}")]
    Degree(String),
    #[error("unsupported W-integrand: {0}")]
    UnsupportedWIntegrand(String),
    #[error("singular pairing matrix for {0}")]
    SingularPairing(String),
    #[error("missing pairing datum: {0}")]
    MissingPairing(String),
    #[error("non-reduced or wrong class: {0}")]
    NonIntegralGenus(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("inconsistent blocks: {0}")]
    InconsistentBlocks(String),
    #[error("data file error: {0}")]
    Data(String),
    #[error("{kind} at line {line}, column {column}: {msg}")]
    Parse { kind: &'static str, line: usize, column: usize, msg: String },
    #[error("evaluation error: {0}")]
    Eval(String),
}

pub type Result<T> = std::result::Result<T, Error>;
