use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::timeseries::{CurrencyCode, ReturnMatrix};

/// Symmetric `N × N` matrix `C = (1/T) M Mᵀ` of normalized returns.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationMatrix {
    base: CurrencyCode,
    currencies: Vec<CurrencyCode>,
    entries: Vec<f64>,
    samples: usize,
    degenerate: Vec<bool>,
}

impl CorrelationMatrix {
    /// Wraps a row-major matrix after checking symmetry, a unit diagonal and
    /// entries in `[-1, 1]`.
    pub fn from_entries(
        base: CurrencyCode,
        currencies: Vec<CurrencyCode>,
        entries: Vec<f64>,
        samples: usize,
    ) -> Result<Self> {
        let n = currencies.len();
        if entries.len() != n * n {
            return Err(Error::InsufficientData(format!("expected {} entries, got {}", n * n, entries.len())));
        }
        for i in 0..n {
            if entries[i * n + i] != 1.0 {
                return Err(Error::InvalidCorrelation { row: i, col: i, value: entries[i * n + i] });
            }
            for j in 0..n {
                let v = entries[i * n + j];
                if !(-1.0..=1.0).contains(&v) || v != entries[j * n + i] {
                    return Err(Error::InvalidCorrelation { row: i, col: j, value: v });
                }
            }
        }
        Ok(CorrelationMatrix { base, currencies, entries, samples, degenerate: vec![false; n] })
    }

    pub fn base(&self) -> CurrencyCode {
        self.base
    }

    pub fn currencies(&self) -> &[CurrencyCode] {
        &self.currencies
    }

    pub fn n(&self) -> usize {
        self.currencies.len()
    }

    /// Number of return samples `T` the matrix was estimated from.
    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n() + j]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.n()).map(|i| self.get(i, i)).sum()
    }

    /// Rows whose return series was constant.
    pub fn degenerate_flags(&self) -> &[bool] {
        &self.degenerate
    }
}

/// `C_AB = (1/T) Σ_t g_A(t) g_B(t)`, each pair computed once.
///
/// The diagonal is exactly 1 (also for constant rows, whose off-diagonal
/// entries are 0) and rounding excursions past ±1 are clamped.
pub fn correlation(returns: &ReturnMatrix) -> Result<CorrelationMatrix> {
    let n = returns.n_rows();
    let t = returns.len();
    if n < 2 || t < 2 {
        return Err(Error::InsufficientData(format!("correlation needs N >= 2 and T >= 2, got N = {n}, T = {t}")));
    }
    let rows = returns.rows();
    let upper: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            ((i + 1)..n)
                .map(|j| {
                    let dot: f64 = rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).sum();
                    (dot / t as f64).clamp(-1.0, 1.0)
                })
                .collect()
        })
        .collect();
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        entries[i * n + i] = 1.0;
        for (k, v) in upper[i].iter().enumerate() {
            let j = i + 1 + k;
            entries[i * n + j] = *v;
            entries[j * n + i] = *v;
        }
    }
    Ok(CorrelationMatrix {
        base: returns.base(),
        currencies: returns.currencies().to_vec(),
        entries,
        samples: t,
        degenerate: returns.degenerate_flags().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::timeseries::code;

    fn matrix(rows: Vec<Vec<f64>>) -> ReturnMatrix {
        let codes = ["AAA", "BBB", "CCC", "DDD"][..rows.len()].iter().map(|c| code(c)).collect();
        ReturnMatrix::from_raw(code("USD"), codes, 1, rows).unwrap()
    }

    #[test]
    fn identical_rows_are_perfectly_correlated() {
        let r = vec![0.1, -0.2, 0.05, 0.3, -0.1];
        let c = correlation(&matrix(vec![r.clone(), r])).unwrap();
        assert_eq!(c.entries(), &[1.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn negated_row_is_anticorrelated() {
        let r = vec![0.1, -0.2, 0.05, 0.3, -0.1];
        let neg = r.iter().map(|v| -v).collect();
        let c = correlation(&matrix(vec![r, neg])).unwrap();
        assert!((c.get(0, 1) + 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_row_correlates_with_nothing() {
        let c = correlation(&matrix(vec![vec![0.0; 4], vec![0.1, 0.2, -0.3, 0.0], vec![0.3, -0.1, 0.2, 0.1]])).unwrap();
        assert_eq!(c.get(0, 0), 1.0);
        assert_eq!(c.get(0, 1), 0.0);
        assert_eq!(c.get(2, 0), 0.0);
        assert_eq!(c.degenerate_flags(), &[true, false, false]);
        assert!((c.trace() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn needs_two_rows_and_two_samples() {
        assert!(correlation(&matrix(vec![vec![0.1, 0.2, 0.3]])).is_err());
        assert!(correlation(&matrix(vec![vec![0.1], vec![0.2]])).is_err());
    }

    #[test]
    fn from_entries_rejects_asymmetry() {
        let codes = vec![code("AAA"), code("BBB")];
        assert!(CorrelationMatrix::from_entries(code("USD"), codes.clone(), vec![1.0, 0.5, 0.4, 1.0], 10).is_err());
        assert!(CorrelationMatrix::from_entries(code("USD"), codes, vec![1.0, 0.5, 0.5, 1.0], 10).is_ok());
    }
}
