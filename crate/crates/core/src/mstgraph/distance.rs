use crate::corrnet::CorrelationMatrix;
use crate::error::{Error, Result};
use crate::timeseries::CurrencyCode;

/// Correlations this far outside `[-1, 1]` are clamped; farther is an error.
pub const CORRELATION_TOLERANCE: f64 = 1e-12;

/// Symmetric `N × N` distances in `[0, 1]` with a zero diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    base: CurrencyCode,
    currencies: Vec<CurrencyCode>,
    entries: Vec<f64>,
    degenerate: Vec<bool>,
}

impl DistanceMatrix {
    /// Wraps arbitrary row-major distances, e.g. for oracle comparisons.
    pub fn from_entries(base: CurrencyCode, currencies: Vec<CurrencyCode>, entries: Vec<f64>) -> Result<Self> {
        let n = currencies.len();
        if entries.len() != n * n {
            return Err(Error::InvalidDistances(format!("expected {} entries, got {}", n * n, entries.len())));
        }
        for i in 0..n {
            if entries[i * n + i] != 0.0 {
                return Err(Error::InvalidDistances(format!("diagonal entry {i} is not zero")));
            }
            for j in 0..n {
                let d = entries[i * n + j];
                if !(0.0..=1.0).contains(&d) || d != entries[j * n + i] {
                    return Err(Error::InvalidDistances(format!("entry ({i}, {j}) = {d}")));
                }
            }
        }
        Ok(DistanceMatrix { base, currencies, entries, degenerate: vec![false; n] })
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

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n() + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn degenerate_flags(&self) -> &[bool] {
        &self.degenerate
    }

    /// Applies `f` to every off-diagonal entry.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        let n = self.n();
        let entries = self.entries.iter().enumerate().map(|(k, d)| if k / n == k % n { 0.0 } else { f(*d) }).collect();
        let mut out = DistanceMatrix::from_entries(self.base, self.currencies.clone(), entries)?;
        out.degenerate = self.degenerate.clone();
        Ok(out)
    }
}

/// `d(A, B) = sqrt((1 - C_AB) / 2)` entrywise.
pub fn distances(c: &CorrelationMatrix) -> Result<DistanceMatrix> {
    let n = c.n();
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let v = c.get(i, j);
            if !(-1.0 - CORRELATION_TOLERANCE..=1.0 + CORRELATION_TOLERANCE).contains(&v) {
                return Err(Error::InvalidCorrelation { row: i, col: j, value: v });
            }
            entries[i * n + j] = ((1.0 - v.clamp(-1.0, 1.0)) / 2.0).sqrt();
        }
    }
    Ok(DistanceMatrix {
        base: c.base(),
        currencies: c.currencies().to_vec(),
        entries,
        degenerate: c.degenerate_flags().to_vec(),
    })
}
