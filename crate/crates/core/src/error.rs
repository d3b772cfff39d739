use std::path::PathBuf;

use crate::timeseries::CurrencyCode;

/// Errors produced anywhere in the analysis pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: rate must be strictly positive and finite, got {value}")]
    NonPositiveRate { line: usize, value: f64 },

    #[error("invalid currency code {0:?}: expected three uppercase ASCII letters")]
    InvalidCode(String),

    #[error("unknown currency {0}")]
    UnknownCurrency(CurrencyCode),

    #[error("currency {0} is already present")]
    DuplicateCurrency(CurrencyCode),

    #[error("no quote between {0} and {1}")]
    MissingQuote(CurrencyCode, CurrencyCode),

    #[error("currencies must be distinct, got {0}")]
    NotDistinct(String),

    #[error("series shorter than the minimum length {min} after cleaning: {}", join_codes(.series))]
    SeriesTooShort { series: Vec<CurrencyCode>, min: usize },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (max off-diagonal {off_diagonal:e})")]
    NumericalFailure { sweeps: usize, off_diagonal: f64 },

    #[error("eigenvalue {0:e} is below the positive-semidefinite tolerance")]
    NegativeEigenvalue(f64),

    #[error("correlation entry ({row}, {col}) = {value} lies outside [-1, 1]")]
    InvalidCorrelation { row: usize, col: usize, value: f64 },

    #[error("invalid distance matrix: {0}")]
    InvalidDistances(String),

    #[error("power fit needs at least {needed} support points, got {got}")]
    InsufficientSupport { needed: usize, got: usize },

    #[error("fitted exponent {0} is not positive")]
    NonPositiveExponent(f64),

    #[error("group {0} has no members")]
    EmptyGroup(String),

    #[error("invalid market model: {0}")]
    InvalidModel(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("base {base}: {source}")]
    Base {
        base: CurrencyCode,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub(crate) fn for_base(self, base: CurrencyCode) -> Self {
        Error::Base { base, source: Box::new(self) }
    }
}

fn join_codes(codes: &[CurrencyCode]) -> String {
    codes.iter().map(|c| c.as_str()).collect::<Vec<_>>().join(", ")
}
