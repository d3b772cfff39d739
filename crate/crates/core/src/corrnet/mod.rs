//! Correlation matrices of normalized returns and their eigenvalue spectra.

mod correlation;
mod jacobi;
mod spectrum;

pub use correlation::{correlation, CorrelationMatrix};
pub use jacobi::{symmetric_eigenvalues, JacobiConfig};
pub use spectrum::{
    classify_regime, eigenvalue_separation, second_eigenvalue_separation, spectrum, spectrum_table, Regime,
    RegimeThresholds, SpectrumReport, SpectrumRow, NEGATIVE_EIGENVALUE_TOLERANCE, SEPARATION_EPSILON,
};
