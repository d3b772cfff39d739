use std::collections::BTreeMap;

use rayon::prelude::*;

use super::currency::CurrencyCode;
use super::panel::RatePanel;
use crate::error::{Error, Result};

/// Standard deviation below which a return row is treated as constant.
pub const DEGENERATE_SD: f64 = 1e-14;

/// Non-overlapping log-returns `ln x(t + tau) - ln x(t)` sampled every `tau` steps.
pub fn log_returns(levels: &[f64], tau: usize) -> Vec<f64> {
    levels.iter().step_by(tau).collect::<Vec<_>>().windows(2).map(|w| w[1].ln() - w[0].ln()).collect()
}

/// `N × T` log-returns of a panel, raw and standardized per row.
#[derive(Clone, Debug, PartialEq)]
pub struct ReturnMatrix {
    base: CurrencyCode,
    currencies: Vec<CurrencyCode>,
    tau: usize,
    raw: Vec<Vec<f64>>,
    values: Vec<Vec<f64>>,
    degenerate: Vec<bool>,
}

/// `(G - mean) / sd` with the population standard deviation, or all zeros
/// when the row is constant.
fn standardize(row: &[f64]) -> (Vec<f64>, bool) {
    let n = row.len() as f64;
    let mean = row.iter().sum::<f64>() / n;
    let centered: Vec<f64> = row.iter().map(|g| g - mean).collect();
    let sd = (centered.iter().map(|c| c * c).sum::<f64>() / n).sqrt();
    if sd < DEGENERATE_SD {
        (vec![0.0; row.len()], true)
    } else {
        (centered.iter().map(|c| c / sd).collect(), false)
    }
}

impl ReturnMatrix {
    /// Builds the matrix from raw returns, standardizing every row.
    pub fn from_raw(base: CurrencyCode, currencies: Vec<CurrencyCode>, tau: usize, raw: Vec<Vec<f64>>) -> Result<Self> {
        if currencies.len() != raw.len() {
            return Err(Error::InsufficientData(format!("{} currencies but {} rows", currencies.len(), raw.len())));
        }
        let t = raw.first().map_or(0, Vec::len);
        if t == 0 || raw.iter().any(|r| r.len() != t) {
            return Err(Error::InsufficientData("return rows must be non-empty and of equal length".into()));
        }
        let (values, degenerate) = raw.par_iter().map(|r| standardize(r)).unzip();
        Ok(ReturnMatrix { base, currencies, tau, raw, values, degenerate })
    }

    pub(crate) fn from_parts(
        base: CurrencyCode,
        currencies: Vec<CurrencyCode>,
        tau: usize,
        raw: Vec<Vec<f64>>,
        values: Vec<Vec<f64>>,
        degenerate: Vec<bool>,
    ) -> Self {
        ReturnMatrix { base, currencies, tau, raw, values, degenerate }
    }

    pub fn base(&self) -> CurrencyCode {
        self.base
    }

    pub fn currencies(&self) -> &[CurrencyCode] {
        &self.currencies
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    /// Number of series `N`.
    pub fn n_rows(&self) -> usize {
        self.values.len()
    }

    /// Number of return samples `T`.
    pub fn len(&self) -> usize {
        self.values.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Standardized row `g_A`.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i]
    }

    /// Raw row `G_A`.
    pub fn raw_row(&self, i: usize) -> &[f64] {
        &self.raw[i]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn raw_rows(&self) -> &[Vec<f64>] {
        &self.raw
    }

    pub fn is_degenerate(&self, i: usize) -> bool {
        self.degenerate[i]
    }

    pub fn degenerate_flags(&self) -> &[bool] {
        &self.degenerate
    }
}

/// Log-returns of every series of `panel` at horizon `tau`.
pub fn returns(panel: &RatePanel, tau: usize) -> Result<ReturnMatrix> {
    if tau == 0 {
        return Err(Error::InvalidConfig("return horizon tau must be at least 1".into()));
    }
    if panel.len() < tau + 1 {
        return Err(Error::InsufficientData(format!(
            "tau = {tau} needs at least {} timestamps, panel has {}",
            tau + 1,
            panel.len()
        )));
    }
    let raw: Vec<Vec<f64>> = (0..panel.n_series()).into_par_iter().map(|j| log_returns(panel.column(j), tau)).collect();
    ReturnMatrix::from_raw(panel.base(), panel.currencies().to_vec(), tau, raw)
}

/// Anything that can produce the rate of one currency in units of another.
pub trait RateSource {
    /// `x_a^b(t)`: the value of `a` expressed in `b`, per timestamp.
    fn cross_series(&self, a: CurrencyCode, b: CurrencyCode) -> Result<Vec<f64>>;
}

impl RateSource for RatePanel {
    fn cross_series(&self, a: CurrencyCode, b: CurrencyCode) -> Result<Vec<f64>> {
        let levels = |c: CurrencyCode| -> Result<Option<&[f64]>> {
            if c == self.base() {
                Ok(None)
            } else {
                self.series(c).map(Some).ok_or(Error::UnknownCurrency(c))
            }
        };
        let len = self.len();
        Ok(match (levels(a)?, levels(b)?) {
            (None, None) => vec![1.0; len],
            (Some(xa), None) => xa.to_vec(),
            (None, Some(xb)) => xb.iter().map(|v| 1.0 / v).collect(),
            (Some(xa), Some(xb)) => xa.iter().zip(xb).map(|(x, y)| x / y).collect(),
        })
    }
}

/// Directly quoted pair rates, not necessarily consistent with each other.
#[derive(Clone, Debug, Default)]
pub struct PairQuotes {
    len: usize,
    quotes: BTreeMap<(CurrencyCode, CurrencyCode), Vec<f64>>,
}

impl PairQuotes {
    pub fn new(len: usize) -> Self {
        PairQuotes { len, quotes: BTreeMap::new() }
    }

    /// Records `x_a^b` over time.
    pub fn insert(&mut self, a: CurrencyCode, b: CurrencyCode, rates: Vec<f64>) -> Result<()> {
        if rates.len() != self.len {
            return Err(Error::InsufficientData(format!("expected {} rates, got {}", self.len, rates.len())));
        }
        if let Some(v) = rates.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::NonPositiveRate { line: 0, value: *v });
        }
        self.quotes.insert((a, b), rates);
        Ok(())
    }
}

impl RateSource for PairQuotes {
    fn cross_series(&self, a: CurrencyCode, b: CurrencyCode) -> Result<Vec<f64>> {
        if a == b {
            return Ok(vec![1.0; self.len]);
        }
        if let Some(direct) = self.quotes.get(&(a, b)) {
            return Ok(direct.clone());
        }
        if let Some(inverse) = self.quotes.get(&(b, a)) {
            return Ok(inverse.iter().map(|v| 1.0 / v).collect());
        }
        Err(Error::MissingQuote(a, b))
    }
}

/// `max_t |G_a^b + G_b^c + G_c^a|` at horizon `tau`.
pub fn triangle_residual<S: RateSource + ?Sized>(
    source: &S,
    a: CurrencyCode,
    b: CurrencyCode,
    c: CurrencyCode,
    tau: usize,
) -> Result<f64> {
    if a == b || b == c || a == c {
        return Err(Error::NotDistinct(format!("{a}, {b}, {c}")));
    }
    if tau == 0 {
        return Err(Error::InvalidConfig("return horizon tau must be at least 1".into()));
    }
    let ab = log_returns(&source.cross_series(a, b)?, tau);
    let bc = log_returns(&source.cross_series(b, c)?, tau);
    let ca = log_returns(&source.cross_series(c, a)?, tau);
    if ab.is_empty() {
        return Err(Error::InsufficientData(format!("tau = {tau} leaves no returns")));
    }
    Ok(ab.iter().zip(&bc).zip(&ca).map(|((x, y), z)| (x + y + z).abs()).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use chrono::NaiveDate;

    use super::*;
    use crate::timeseries::code;

    fn dates(n: usize) -> Vec<NaiveDate> {
        (0..n).map(|i| NaiveDate::from_ymd_opt(2003, 1, 1).unwrap() + chrono::Days::new(i as u64)).collect()
    }

    fn toy_panel() -> RatePanel {
        let a: Vec<f64> = (0..40).map(|t| (0.02 * (t as f64 * 0.7).sin() + 0.001 * t as f64).exp()).collect();
        let b: Vec<f64> = (0..40).map(|t| 120.0 * (0.03 * (t as f64 * 1.9).cos()).exp()).collect();
        let c: Vec<f64> =
            (0..40).map(|t| 0.6 * (0.01 * (t as f64 * 0.3).sin() - 0.02 * (t as f64 * 2.3).cos()).exp()).collect();
        RatePanel::new(code("USD"), vec![code("EUR"), code("JPY"), code("GBP")], dates(40), vec![a, b, c]).unwrap()
    }

    #[test]
    fn log_return_of_e_is_one() {
        let r = log_returns(&[1.0, std::f64::consts::E], 1);
        assert!((r[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn horizon_samples_are_non_overlapping() {
        let levels: Vec<f64> = (0..7).map(|t| (t as f64).exp()).collect();
        let r = log_returns(&levels, 3);
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|g| (g - 3.0).abs() < 1e-12));
    }

    #[test]
    fn daily_panel_of_1658_rows_gives_1657_returns() {
        let levels: Vec<f64> = (0..1658).map(|t| 1.0 + 0.1 * ((t % 13) as f64)).collect();
        let p = RatePanel::new(code("USD"), vec![code("EUR")], dates(1658), vec![levels]).unwrap();
        assert_eq!(returns(&p, 1).unwrap().len(), 1657);
    }

    #[test]
    fn rows_are_standardized() {
        let m = returns(&toy_panel(), 1).unwrap();
        for i in 0..m.n_rows() {
            let row = m.row(i);
            let n = row.len() as f64;
            let mean = row.iter().sum::<f64>() / n;
            let sd = (row.iter().map(|g| (g - mean) * (g - mean)).sum::<f64>() / n).sqrt();
            assert!(mean.abs() <= 1e-10);
            assert!((sd - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn constant_series_is_flagged_degenerate() {
        let p = RatePanel::new(
            code("USD"),
            vec![code("HKD"), code("EUR")],
            dates(5),
            vec![vec![7.8; 5], vec![1.0, 1.1, 1.05, 1.2, 1.0]],
        )
        .unwrap();
        let m = returns(&p, 1).unwrap();
        assert!(m.raw_row(0).iter().all(|g| *g == 0.0));
        assert!(m.row(0).iter().all(|g| *g == 0.0));
        assert!(m.is_degenerate(0));
        assert!(!m.is_degenerate(1));
    }

    #[test]
    fn horizon_must_fit_the_panel() {
        let p = toy_panel();
        assert!(matches!(returns(&p, 40), Err(Error::InsufficientData(_))));
        assert!(returns(&p, 39).is_ok());
        assert!(returns(&p, 0).is_err());
    }

    #[test]
    fn returns_are_antisymmetric_under_rebase() {
        let p = toy_panel();
        let in_jpy = returns(&p.rebase(code("JPY")).unwrap(), 1).unwrap();
        let in_eur = returns(&p.rebase(code("EUR")).unwrap(), 1).unwrap();
        let eur_in_jpy = in_jpy.raw_row(in_jpy.currencies().iter().position(|c| *c == code("EUR")).unwrap());
        let jpy_in_eur = in_eur.raw_row(in_eur.currencies().iter().position(|c| *c == code("JPY")).unwrap());
        for (x, y) in eur_in_jpy.iter().zip(jpy_in_eur) {
            assert!((x + y).abs() < 1e-12);
        }
    }

    #[test]
    fn triangle_rule_holds_on_panel_cross_rates() {
        let p = toy_panel();
        for (a, b, c) in [("EUR", "JPY", "GBP"), ("USD", "EUR", "JPY"), ("GBP", "USD", "EUR")] {
            let r = triangle_residual(&p, code(a), code(b), code(c), 1).unwrap();
            assert!(r <= 1e-10, "{a}{b}{c}: {r}");
        }
    }

    #[test]
    fn triangle_requires_distinct_known_currencies() {
        let p = toy_panel();
        assert!(matches!(triangle_residual(&p, code("EUR"), code("EUR"), code("GBP"), 1), Err(Error::NotDistinct(_))));
        assert!(matches!(
            triangle_residual(&p, code("EUR"), code("XYZ"), code("GBP"), 1),
            Err(Error::UnknownCurrency(_))
        ));
    }

    #[test]
    fn independent_quotes_leave_a_residual() {
        let p = toy_panel();
        let mut q = PairQuotes::new(p.len());
        let (eur, jpy, usd) = (code("EUR"), code("JPY"), code("USD"));
        q.insert(eur, usd, p.cross_series(eur, usd).unwrap()).unwrap();
        q.insert(jpy, usd, p.cross_series(jpy, usd).unwrap()).unwrap();
        // EUR/JPY quoted on its own venue with a small independent error
        let noisy: Vec<f64> = p
            .cross_series(eur, jpy)
            .unwrap()
            .iter()
            .enumerate()
            .map(|(t, x)| x * (1.0 + 1e-4 * ((t * 37 % 11) as f64 - 5.0)))
            .collect();
        q.insert(eur, jpy, noisy).unwrap();
        let r = triangle_residual(&q, eur, jpy, usd, 1).unwrap();
        assert!(r > 1e-6 && r < 2e-3, "{r}");
        assert!(matches!(q.cross_series(eur, code("GBP")), Err(Error::MissingQuote(..))));
    }
}
