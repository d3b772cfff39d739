use std::fmt;

use serde::Serialize;

use super::correlation::CorrelationMatrix;
use super::jacobi::{symmetric_eigenvalues, JacobiConfig};
use crate::error::{Error, Result};
use crate::timeseries::{CurrencyCode, Group};

/// Negative eigenvalues down to this value are rounding noise and reported as 0.
pub const NEGATIVE_EIGENVALUE_TOLERANCE: f64 = 1e-8;

/// Guard added to separation denominators for degenerate spectra.
pub const SEPARATION_EPSILON: f64 = 1e-12;

/// Where the largest eigenvalue of a base currency falls relative to `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Regime {
    /// `λ_N` above the typical band: the base fluctuates on its own.
    IndependentDrift,
    Typical,
    /// `λ_N` below the typical band: the base moves with many of the others.
    UsdTied,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::IndependentDrift => "INDEPENDENT_DRIFT",
            Regime::Typical => "TYPICAL",
            Regime::UsdTied => "USD_TIED",
        })
    }
}

/// Bounds of the typical band as fractions of `N`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RegimeThresholds {
    low_frac: f64,
    high_frac: f64,
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        RegimeThresholds { low_frac: 0.4, high_frac: 0.65 }
    }
}

impl RegimeThresholds {
    pub fn new(low_frac: f64, high_frac: f64) -> Result<Self> {
        if !(0.0 < low_frac && low_frac < high_frac && high_frac < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "regime thresholds need 0 < low < high < 1, got ({low_frac}, {high_frac})"
            )));
        }
        Ok(RegimeThresholds { low_frac, high_frac })
    }

    pub fn low_frac(&self) -> f64 {
        self.low_frac
    }

    pub fn high_frac(&self) -> f64 {
        self.high_frac
    }

    pub fn classify(&self, lambda_max: f64, n: usize) -> Regime {
        let n = n as f64;
        if lambda_max > self.high_frac * n {
            Regime::IndependentDrift
        } else if lambda_max < self.low_frac * n {
            Regime::UsdTied
        } else {
            Regime::Typical
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumReport {
    /// Ascending, with rounding-level negatives clamped to 0.
    pub eigenvalues: Vec<f64>,
    pub lambda_max: f64,
    pub lambda_second: f64,
    pub regime: Regime,
    pub thresholds: RegimeThresholds,
}

impl SpectrumReport {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }
}

/// Full eigenvalue spectrum of a correlation matrix.
pub fn spectrum(c: &CorrelationMatrix, thresholds: &RegimeThresholds) -> Result<SpectrumReport> {
    let n = c.n();
    let mut eigenvalues = symmetric_eigenvalues(c.entries(), n, &JacobiConfig::default())?;
    if let Some(&lowest) = eigenvalues.first() {
        if lowest < -NEGATIVE_EIGENVALUE_TOLERANCE {
            return Err(Error::NegativeEigenvalue(lowest));
        }
    }
    for ev in eigenvalues.iter_mut() {
        if *ev < 0.0 {
            *ev = 0.0;
        }
    }
    let lambda_max = eigenvalues[n - 1];
    let lambda_second = eigenvalues[n - 2];
    Ok(SpectrumReport {
        regime: thresholds.classify(lambda_max, n),
        eigenvalues,
        lambda_max,
        lambda_second,
        thresholds: *thresholds,
    })
}

pub fn classify_regime(report: &SpectrumReport, n: usize, thresholds: &RegimeThresholds) -> Regime {
    thresholds.classify(report.lambda_max, n)
}

/// Gap below the `rank`-th largest eigenvalue relative to the spread of the
/// rest: `(λ_(N-r+1) - λ_(N-r)) / (λ_(N-r) - λ_1 + ε)`.
pub fn eigenvalue_separation(report: &SpectrumReport, rank: usize) -> Result<f64> {
    let n = report.n();
    if rank == 0 || n < rank + 1 {
        return Err(Error::InsufficientData(format!("separation at rank {rank} needs N >= {}, got {n}", rank + 1)));
    }
    let ev = &report.eigenvalues;
    let upper = ev[n - rank];
    let lower = ev[n - rank - 1];
    Ok((upper - lower) / (lower - ev[0] + SEPARATION_EPSILON))
}

/// `(λ_(N-1) - λ_(N-2)) / (λ_(N-2) - λ_1 + ε)`.
pub fn second_eigenvalue_separation(report: &SpectrumReport) -> Result<f64> {
    eigenvalue_separation(report, 2)
}

/// One line of the per-base spectrum file.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub base: CurrencyCode,
    pub group: Option<Group>,
    pub n: usize,
    pub lambda_max: f64,
    pub lambda_second: f64,
    pub regime: Regime,
}

impl SpectrumRow {
    pub fn new(base: CurrencyCode, group: Option<Group>, report: &SpectrumReport) -> Self {
        SpectrumRow {
            base,
            group,
            n: report.n(),
            lambda_max: report.lambda_max,
            lambda_second: report.lambda_second,
            regime: report.regime,
        }
    }
}

/// Delimited spectrum table sorted by `λ_N`, largest first.
pub fn spectrum_table(rows: &[SpectrumRow]) -> String {
    let mut sorted: Vec<&SpectrumRow> = rows.iter().collect();
    sorted.sort_by(|a, b| b.lambda_max.total_cmp(&a.lambda_max).then(a.base.cmp(&b.base)));
    let mut out = String::from("base,group,n,lambda_max,lambda_second,lambda_max_over_n,regime\n");
    for r in sorted {
        out.push_str(&format!(
            "{},{},{},{:.6},{:.6},{:.6},{}\n",
            r.base,
            r.group.map_or("", Group::label),
            r.n,
            r.lambda_max,
            r.lambda_second,
            r.lambda_max / r.n as f64,
            r.regime
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::timeseries::code;

    fn matrix(n: usize, entries: Vec<f64>) -> CorrelationMatrix {
        let codes = (0..n).map(|i| CurrencyCode::new(&format!("Q{}X", (b'A' + i as u8) as char)).unwrap()).collect();
        CorrelationMatrix::from_entries(code("USD"), codes, entries, 100).unwrap()
    }

    fn identity(n: usize) -> CorrelationMatrix {
        let mut e = vec![0.0; n * n];
        for i in 0..n {
            e[i * n + i] = 1.0;
        }
        matrix(n, e)
    }

    /// `ρ` on every off-diagonal entry.
    fn equicorrelated(n: usize, rho: f64) -> CorrelationMatrix {
        matrix(n, (0..n * n).map(|k| if k / n == k % n { 1.0 } else { rho }).collect())
    }

    #[test]
    fn identity_spectrum_is_all_ones() {
        let r = spectrum(&identity(5), &RegimeThresholds::default()).unwrap();
        assert_eq!(r.eigenvalues, vec![1.0; 5]);
        assert_eq!(r.lambda_max, 1.0);
        assert_eq!(second_eigenvalue_separation(&r).unwrap(), 0.0);
    }

    #[test]
    fn two_by_two_matches_closed_form() {
        let r = spectrum(&matrix(2, vec![1.0, 0.3, 0.3, 1.0]), &RegimeThresholds::default()).unwrap();
        assert!((r.eigenvalues[0] - 0.7).abs() < 1e-14);
        assert!((r.eigenvalues[1] - 1.3).abs() < 1e-14);
    }

    #[test]
    fn regime_boundaries() {
        let t = RegimeThresholds::default();
        assert_eq!(t.classify(0.5 * 60.0, 60), Regime::Typical);
        assert_eq!(t.classify(60.0, 60), Regime::IndependentDrift);
        assert_eq!(t.classify(0.2 * 60.0, 60), Regime::UsdTied);
        assert_eq!(t.classify(0.4 * 60.0, 60), Regime::Typical);
        assert_eq!(t.classify(0.65 * 60.0, 60), Regime::Typical);
        assert!(RegimeThresholds::new(0.7, 0.6).is_err());
        assert!(RegimeThresholds::new(0.0, 0.6).is_err());
        assert!(RegimeThresholds::new(0.4, 1.0).is_err());
    }

    #[test]
    fn all_identical_series_drift_independently() {
        let r = spectrum(&equicorrelated(6, 1.0), &RegimeThresholds::default()).unwrap();
        assert!((r.lambda_max - 6.0).abs() < 1e-12);
        assert_eq!(r.regime, Regime::IndependentDrift);
        assert!(r.eigenvalues[..5].iter().all(|&v| v == 0.0 || v.abs() < 1e-12));
    }

    #[test]
    fn one_factor_separates_only_the_top_eigenvalue() {
        // closed form: 1 + (n - 1)ρ once, 1 - ρ (n - 1) times
        let (n, rho) = (10, 0.4);
        let r = spectrum(&equicorrelated(n, rho), &RegimeThresholds::default()).unwrap();
        assert!((r.lambda_max - (1.0 + 9.0 * rho)).abs() < 1e-12);
        let top = eigenvalue_separation(&r, 1).unwrap();
        let second = second_eigenvalue_separation(&r).unwrap();
        assert!(top > 1e6, "{top}");
        assert!(second < 1e-3, "{second}");
    }

    #[test]
    fn two_factor_blocks_lift_the_second_eigenvalue() {
        // blocks of sizes 6 and 4 with intra-block correlations 0.6 and 0.5
        let n = 10;
        let block = |i: usize| usize::from(i >= 6);
        let rho = [0.6, 0.5];
        let e = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                if i == j {
                    1.0
                } else if block(i) == block(j) {
                    rho[block(i)]
                } else {
                    0.0
                }
            })
            .collect();
        let r = spectrum(&matrix(n, e), &RegimeThresholds::default()).unwrap();
        // closed form spectrum: {4.0, 2.5, 0.4 ×5, 0.5 ×3}
        let expected_second = (2.5 - 0.5) / (0.5 - 0.4 + SEPARATION_EPSILON);
        let second = second_eigenvalue_separation(&r).unwrap();
        assert!((second - expected_second).abs() < 1e-9, "{second} vs {expected_second}");
        let one_factor =
            second_eigenvalue_separation(&spectrum(&equicorrelated(n, 0.55), &RegimeThresholds::default()).unwrap())
                .unwrap();
        assert!(second > 1.0 && one_factor < 1e-3);
    }

    #[test]
    fn separation_needs_three_eigenvalues() {
        let r = spectrum(&identity(2), &RegimeThresholds::default()).unwrap();
        assert!(second_eigenvalue_separation(&r).is_err());
    }

    #[test]
    fn table_is_sorted_by_lambda_max() {
        let rows = vec![
            SpectrumRow {
                base: code("USD"),
                group: Some(Group::AStar),
                n: 59,
                lambda_max: 12.0,
                lambda_second: 3.0,
                regime: Regime::UsdTied,
            },
            SpectrumRow {
                base: code("GHC"),
                group: Some(Group::C),
                n: 59,
                lambda_max: 50.0,
                lambda_second: 2.0,
                regime: Regime::IndependentDrift,
            },
        ];
        let text = spectrum_table(&rows);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("GHC,C,59,50.000000"));
        assert!(lines[2].ends_with("USD_TIED"));
    }
}
