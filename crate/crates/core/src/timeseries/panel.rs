use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use chrono::NaiveDate;

use super::currency::CurrencyCode;
use crate::error::{Error, Result};

/// Time-aligned exchange rates of `N` currencies against one base currency.
///
/// `series[j][t]` is the value of currency `currencies[j]` expressed in the
/// base currency on `dates[t]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RatePanel {
    base: CurrencyCode,
    currencies: Vec<CurrencyCode>,
    dates: Vec<NaiveDate>,
    series: Vec<Vec<f64>>,
}

impl RatePanel {
    pub fn new(
        base: CurrencyCode,
        currencies: Vec<CurrencyCode>,
        dates: Vec<NaiveDate>,
        series: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if currencies.len() != series.len() {
            return Err(Error::InsufficientData(format!(
                "{} currencies but {} series",
                currencies.len(),
                series.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for c in &currencies {
            if *c == base || !seen.insert(*c) {
                return Err(Error::DuplicateCurrency(*c));
            }
        }
        if dates.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig("panel dates must be strictly increasing".into()));
        }
        for (c, s) in currencies.iter().zip(&series) {
            if s.len() != dates.len() {
                return Err(Error::InsufficientData(format!(
                    "series {c} has {} values for {} dates",
                    s.len(),
                    dates.len()
                )));
            }
            if let Some(v) = s.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
                return Err(Error::NonPositiveRate { line: 0, value: *v });
            }
        }
        Ok(RatePanel { base, currencies, dates, series })
    }

    pub fn base(&self) -> CurrencyCode {
        self.base
    }

    pub fn currencies(&self) -> &[CurrencyCode] {
        &self.currencies
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    /// Number of timestamps (`T + 1` for daily returns).
    pub fn len(&self) -> usize {
        self.dates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dates.is_empty()
    }

    /// Number of non-base currencies, `N = n - 1`.
    pub fn n_series(&self) -> usize {
        self.currencies.len()
    }

    /// Every currency in the panel, base first.
    pub fn all_currencies(&self) -> Vec<CurrencyCode> {
        std::iter::once(self.base).chain(self.currencies.iter().copied()).collect()
    }

    pub fn index_of(&self, code: CurrencyCode) -> Option<usize> {
        self.currencies.iter().position(|c| *c == code)
    }

    pub fn contains(&self, code: CurrencyCode) -> bool {
        code == self.base || self.index_of(code).is_some()
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.series[j]
    }

    pub fn series(&self, code: CurrencyCode) -> Option<&[f64]> {
        self.index_of(code).map(|j| self.series[j].as_slice())
    }

    pub(crate) fn into_parts(self) -> (CurrencyCode, Vec<CurrencyCode>, Vec<NaiveDate>, Vec<Vec<f64>>) {
        (self.base, self.currencies, self.dates, self.series)
    }

    /// Re-expresses every rate in `new_base`: `x_A^new = x_A^old / x_new^old`.
    ///
    /// The old base takes the column previously held by `new_base`, with
    /// rate `1 / x_new^old`.
    pub fn rebase(&self, new_base: CurrencyCode) -> Result<RatePanel> {
        if new_base == self.base {
            return Ok(self.clone());
        }
        let k = self.index_of(new_base).ok_or(Error::UnknownCurrency(new_base))?;
        let pivot = &self.series[k];
        let mut currencies = self.currencies.clone();
        currencies[k] = self.base;
        let series = self
            .series
            .iter()
            .enumerate()
            .map(|(j, s)| {
                if j == k {
                    pivot.iter().map(|p| 1.0 / p).collect()
                } else {
                    s.iter().zip(pivot).map(|(x, p)| x / p).collect()
                }
            })
            .collect();
        Ok(RatePanel { base: new_base, currencies, dates: self.dates.clone(), series })
    }

    /// Appends a new currency column.
    pub fn with_currency(&self, code: CurrencyCode, values: Vec<f64>) -> Result<RatePanel> {
        let mut currencies = self.currencies.clone();
        currencies.push(code);
        let mut series = self.series.clone();
        series.push(values);
        RatePanel::new(self.base, currencies, self.dates.clone(), series)
    }

    /// Long-form text in the same layout [`parse_panel`] reads.
    pub fn to_long_text(&self) -> String {
        let mut out = format!("# base: {}\ndate,currency,rate\n", self.base);
        for (t, d) in self.dates.iter().enumerate() {
            for (c, s) in self.currencies.iter().zip(&self.series) {
                out.push_str(&format!("{},{},{}\n", d.format("%Y-%m-%d"), c, s[t]));
            }
        }
        out
    }
}

/// How a flagged jump is repaired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepairPolicy {
    /// Remove the offending timestamp from every series.
    #[default]
    DropDay,
    /// Clamp the jump to the threshold and carry the level path forward.
    Clip,
    /// Replace the offending level by the log-linear midpoint of its neighbours.
    Interpolate,
}

impl std::str::FromStr for RepairPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "drop-day" | "drop" => Ok(RepairPolicy::DropDay),
            "clip" => Ok(RepairPolicy::Clip),
            "interpolate" => Ok(RepairPolicy::Interpolate),
            other => Err(Error::InvalidConfig(format!("unknown repair policy {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CleaningConfig {
    /// Jump threshold in units of the per-series standard deviation of
    /// one-day log-changes.
    pub threshold: f64,
    pub policy: RepairPolicy,
    /// Minimum number of timestamps a series must keep.
    pub min_length: usize,
    /// Upper bound on flag-and-repair passes.
    pub max_passes: usize,
}

impl Default for CleaningConfig {
    fn default() -> Self {
        CleaningConfig { threshold: 5.0, policy: RepairPolicy::DropDay, min_length: 20, max_passes: 32 }
    }
}

impl CleaningConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.threshold.is_finite() && self.threshold > 0.0) {
            return Err(Error::InvalidConfig(format!("jump threshold must be positive, got {}", self.threshold)));
        }
        if self.min_length < 2 {
            return Err(Error::InvalidConfig("minimum length must be at least 2".into()));
        }
        Ok(())
    }
}

/// One repaired jump.
#[derive(Clone, Debug, PartialEq)]
pub struct Repair {
    pub currency: CurrencyCode,
    pub date: NaiveDate,
    /// Deviation of the offending log-change from the series mean, in σ.
    pub sigmas: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CleaningReport {
    pub repairs: Vec<Repair>,
    pub dropped_dates: Vec<NaiveDate>,
    pub passes: usize,
    /// False when `max_passes` ran out before a pass came back clean.
    pub converged: bool,
}

struct Flag {
    index: usize,
    sigmas: f64,
    spike: bool,
}

fn mean_and_sd(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Offending timestamps of one series. A flagged change followed by an
/// opposite flagged change is a single misprinted level (spike).
fn flag_series(levels: &[f64], threshold: f64) -> (Vec<Flag>, f64, f64) {
    if levels.len() < 3 {
        return (Vec::new(), 0.0, 0.0);
    }
    let changes: Vec<f64> = levels.windows(2).map(|w| w[1].ln() - w[0].ln()).collect();
    let (mean, sd) = mean_and_sd(&changes);
    if sd == 0.0 {
        return (Vec::new(), mean, sd);
    }
    let z = |i: usize| (changes[i] - mean) / sd;
    let mut flags = Vec::new();
    let mut i = 0;
    while i < changes.len() {
        if z(i).abs() > threshold {
            let spike = i + 1 < changes.len() && z(i + 1).abs() > threshold && z(i).signum() != z(i + 1).signum();
            // change i lands on timestamp i + 1
            flags.push(Flag { index: i + 1, sigmas: z(i), spike });
            i += if spike { 2 } else { 1 };
        } else {
            i += 1;
        }
    }
    (flags, mean, sd)
}

/// Repairs jumps larger than `threshold · σ` until a pass finds none.
///
/// σ is recomputed for every series at the start of each pass, so the output
/// of a converged run is a fixed point: cleaning it again changes nothing.
pub fn clean(panel: &RatePanel, config: &CleaningConfig) -> Result<(RatePanel, CleaningReport)> {
    config.validate()?;
    let (base, currencies, mut dates, mut series) = panel.clone().into_parts();
    let mut report = CleaningReport::default();
    while report.passes < config.max_passes {
        let flagged: Vec<(Vec<Flag>, f64, f64)> = series.iter().map(|s| flag_series(s, config.threshold)).collect();
        if flagged.iter().all(|(f, _, _)| f.is_empty()) {
            report.converged = true;
            break;
        }
        report.passes += 1;
        for (j, (flags, _, _)) in flagged.iter().enumerate() {
            for f in flags {
                report.repairs.push(Repair { currency: currencies[j], date: dates[f.index], sigmas: f.sigmas });
            }
        }
        match config.policy {
            RepairPolicy::DropDay => {
                let drop: BTreeSet<usize> = flagged.iter().flat_map(|(f, _, _)| f.iter().map(|f| f.index)).collect();
                report.dropped_dates.extend(drop.iter().map(|&t| dates[t]));
                let keep = |t: &usize| !drop.contains(t);
                dates = dates.iter().enumerate().filter(|(t, _)| keep(t)).map(|(_, d)| *d).collect();
                for s in series.iter_mut() {
                    *s = s.iter().enumerate().filter(|(t, _)| keep(t)).map(|(_, v)| *v).collect();
                }
            }
            RepairPolicy::Clip => {
                for (s, (flags, mean, sd)) in series.iter_mut().zip(&flagged) {
                    clip_series(s, flags, *mean, *sd, config.threshold);
                }
            }
            RepairPolicy::Interpolate => {
                for (s, (flags, _, _)) in series.iter_mut().zip(&flagged) {
                    for f in flags {
                        let t = f.index;
                        s[t] = if t + 1 < s.len() { (0.5 * (s[t - 1].ln() + s[t + 1].ln())).exp() } else { s[t - 1] };
                    }
                }
            }
        }
    }
    let short: Vec<CurrencyCode> = if dates.len() < config.min_length { currencies.clone() } else { Vec::new() };
    if !short.is_empty() {
        return Err(Error::SeriesTooShort { series: short, min: config.min_length });
    }
    Ok((RatePanel::new(base, currencies, dates, series)?, report))
}

fn clip_series(levels: &mut [f64], flags: &[Flag], mean: f64, sd: f64, threshold: f64) {
    if flags.is_empty() {
        return;
    }
    let flagged: BTreeSet<usize> =
        flags.iter().flat_map(|f| if f.spike { vec![f.index, f.index + 1] } else { vec![f.index] }).collect();
    let changes: Vec<f64> = levels.windows(2).map(|w| w[1].ln() - w[0].ln()).collect();
    // Clamp against the spread of the unflagged changes so a clipped value
    // does not trip the next pass.
    let kept: Vec<f64> =
        changes.iter().enumerate().filter(|(i, _)| !flagged.contains(&(i + 1))).map(|(_, c)| *c).collect();
    let (kmean, ksd) = if kept.len() >= 2 { mean_and_sd(&kept) } else { (mean, sd) };
    let limit = threshold * ksd;
    let first = *flagged.iter().next().expect("non-empty");
    for t in first..levels.len() {
        let change = changes[t - 1];
        let change = if flagged.contains(&t) { kmean + (change - kmean).clamp(-limit, limit) } else { change };
        levels[t] = levels[t - 1] * change.exp();
    }
}

/// Rates exactly as read from a long-form file, before gap synchronization.
#[derive(Clone, Debug, Default)]
pub struct RawQuotes {
    pub base: Option<CurrencyCode>,
    pub quotes: BTreeMap<CurrencyCode, BTreeMap<NaiveDate, f64>>,
}

fn parse_base_directive(comment: &str) -> Option<&str> {
    let body = comment.trim_start_matches('#').trim();
    let rest = body.strip_prefix("base").or_else(|| body.strip_prefix("reference"))?;
    let rest = rest.trim_start();
    let value = rest.strip_prefix(':').or_else(|| rest.strip_prefix('='))?;
    Some(value.trim())
}

/// Reads long-form `date,currency,rate` text. The reference currency is
/// declared by a `# base: XXX` comment line before the header row.
pub fn parse_quotes(text: &str) -> Result<RawQuotes> {
    let mut raw = RawQuotes::default();
    let mut delimiter = None;
    let mut header_line = 0;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let err = |message: String| Error::Parse { line: lineno, message };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('#') {
            if let Some(value) = parse_base_directive(trimmed) {
                raw.base = Some(CurrencyCode::new(value).map_err(|e| err(e.to_string()))?);
            }
            continue;
        }
        let Some(delim) = delimiter else {
            let delim = if trimmed.contains('\t') { '\t' } else { ',' };
            let fields: Vec<String> = trimmed.split(delim).map(|f| f.trim().to_ascii_lowercase()).collect();
            if fields != ["date", "currency", "rate"] {
                return Err(err(format!("expected header `date,currency,rate`, got {trimmed:?}")));
            }
            delimiter = Some(delim);
            header_line = lineno;
            continue;
        };
        let fields: Vec<&str> = trimmed.split(delim).map(str::trim).collect();
        let [date, currency, rate] = fields[..] else {
            return Err(err(format!("expected 3 fields, got {}", fields.len())));
        };
        let date = NaiveDate::parse_from_str(date, "%Y-%m-%d").map_err(|e| err(format!("bad date {date:?}: {e}")))?;
        let currency = CurrencyCode::new(currency).map_err(|e| err(e.to_string()))?;
        let value: f64 = rate.parse().map_err(|_| err(format!("bad rate {rate:?}")))?;
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::NonPositiveRate { line: lineno, value });
        }
        if Some(currency) == raw.base {
            if value != 1.0 {
                return Err(err(format!("reference currency {currency} quoted against itself at {value}")));
            }
            continue;
        }
        if raw.quotes.entry(currency).or_default().insert(date, value).is_some() {
            return Err(err(format!("duplicate quote for {currency} on {date}")));
        }
    }
    if delimiter.is_none() {
        return Err(Error::Parse { line: 0, message: "missing `date,currency,rate` header".into() });
    }
    if raw.base.is_none() {
        return Err(Error::Parse { line: header_line, message: "missing `# base: XXX` declaration".into() });
    }
    Ok(raw)
}

impl RawQuotes {
    /// Keeps only the dates on which every series has a quote.
    pub fn synchronize(&self, min_length: usize) -> Result<RatePanel> {
        let base = self.base.ok_or_else(|| Error::InvalidConfig("reference currency not declared".into()))?;
        if self.quotes.is_empty() {
            return Err(Error::InsufficientData("no series in input".into()));
        }
        let short: Vec<CurrencyCode> =
            self.quotes.iter().filter(|(_, q)| q.len() < min_length).map(|(c, _)| *c).collect();
        if !short.is_empty() {
            return Err(Error::SeriesTooShort { series: short, min: min_length });
        }
        let mut common: BTreeSet<NaiveDate> = self.quotes.values().next().expect("non-empty").keys().copied().collect();
        for q in self.quotes.values().skip(1) {
            common.retain(|d| q.contains_key(d));
        }
        if common.len() < min_length {
            return Err(Error::SeriesTooShort { series: self.quotes.keys().copied().collect(), min: min_length });
        }
        let dates: Vec<NaiveDate> = common.into_iter().collect();
        let currencies: Vec<CurrencyCode> = self.quotes.keys().copied().collect();
        let series = self.quotes.values().map(|q| dates.iter().map(|d| q[d]).collect()).collect();
        RatePanel::new(base, currencies, dates, series)
    }
}

/// Parses, synchronizes gaps and cleans a long-form rate file held in memory.
pub fn parse_panel(text: &str, config: &CleaningConfig) -> Result<(RatePanel, CleaningReport)> {
    config.validate()?;
    let raw = parse_quotes(text)?;
    let panel = raw.synchronize(config.min_length)?;
    clean(&panel, config)
}

pub fn load_panel(path: impl AsRef<Path>, config: &CleaningConfig) -> Result<(RatePanel, CleaningReport)> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_panel(&text, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::timeseries::code;

    fn day(i: usize) -> NaiveDate {
        NaiveDate::from_ymd_opt(2000, 1, 3).unwrap() + chrono::Days::new(i as u64)
    }

    fn wiggle(len: usize, phase: f64, scale: f64) -> Vec<f64> {
        (0..len).map(|t| scale * (0.01 * ((t as f64) * 1.3 + phase).sin()).exp()).collect()
    }

    fn panel(series: Vec<Vec<f64>>) -> RatePanel {
        let n = series.len();
        let codes = ["EUR", "JPY", "GBP", "CHF"][..n].iter().map(|c| code(c)).collect();
        let len = series[0].len();
        RatePanel::new(code("USD"), codes, (0..len).map(day).collect(), series).unwrap()
    }

    fn small_config() -> CleaningConfig {
        CleaningConfig { min_length: 5, ..CleaningConfig::default() }
    }

    #[test]
    fn rebase_uses_ratio_definition() {
        let p = RatePanel::new(code("USD"), vec![code("AAA"), code("BBB")], vec![day(0)], vec![vec![2.0], vec![4.0]])
            .unwrap();
        let r = p.rebase(code("BBB")).unwrap();
        assert_eq!(r.base(), code("BBB"));
        assert_eq!(r.series(code("AAA")).unwrap(), &[0.5]);
        assert_eq!(r.series(code("USD")).unwrap(), &[0.25]);
        assert_eq!(r.n_series(), 2);
    }

    #[test]
    fn rebase_to_current_base_is_identity() {
        let p = panel(vec![wiggle(10, 0.0, 1.1), wiggle(10, 1.0, 110.0)]);
        assert_eq!(p.rebase(code("USD")).unwrap(), p);
    }

    #[test]
    fn rebase_to_unknown_currency_fails() {
        let p = panel(vec![wiggle(10, 0.0, 1.1)]);
        assert!(matches!(p.rebase(code("XYZ")), Err(Error::UnknownCurrency(_))));
    }

    #[test]
    fn spike_is_dropped_from_every_series() {
        let mut a = wiggle(200, 0.0, 1.0);
        let b = wiggle(200, 2.0, 3.0);
        a[100] *= 1.5;
        let p = panel(vec![a, b]);
        let (cleaned, report) = clean(&p, &small_config()).unwrap();
        assert_eq!(cleaned.len(), 199);
        assert!(!cleaned.dates().contains(&day(100)));
        assert_eq!(report.dropped_dates, vec![day(100)]);
        assert_eq!(report.repairs.len(), 1);
        assert!(report.converged);
    }

    #[test]
    fn clean_panel_is_returned_unchanged() {
        let p = panel(vec![wiggle(50, 0.0, 1.0), wiggle(50, 0.5, 7.0)]);
        let (cleaned, report) = clean(&p, &small_config()).unwrap();
        assert_eq!(cleaned, p);
        assert!(report.repairs.is_empty());
    }

    #[test]
    fn every_policy_is_idempotent_on_spikes() {
        for policy in [RepairPolicy::DropDay, RepairPolicy::Clip, RepairPolicy::Interpolate] {
            let mut a = wiggle(300, 0.0, 1.0);
            a[40] *= 1.8;
            a[210] *= 0.6;
            let p = panel(vec![a, wiggle(300, 1.0, 2.0)]);
            let cfg = CleaningConfig { policy, ..small_config() };
            let (once, report) = clean(&p, &cfg).unwrap();
            assert!(report.converged, "{policy:?}");
            assert!(!report.repairs.is_empty(), "{policy:?}");
            let (twice, _) = clean(&once, &cfg).unwrap();
            assert_eq!(once, twice, "{policy:?}");
        }
    }

    #[test]
    fn interpolate_restores_midpoint() {
        let mut a: Vec<f64> = (0..100).map(|t| (0.001 * t as f64 + 0.002 * ((t * 7 % 5) as f64)).exp()).collect();
        let original = a[60];
        a[60] *= 3.0;
        let p = panel(vec![a.clone()]);
        let cfg = CleaningConfig { policy: RepairPolicy::Interpolate, ..small_config() };
        let (cleaned, _) = clean(&p, &cfg).unwrap();
        let expected = (0.5 * (a[59].ln() + a[61].ln())).exp();
        assert!((cleaned.column(0)[60] - expected).abs() < 1e-12);
        assert!((cleaned.column(0)[60] / original - 1.0).abs() < 0.01);
    }

    #[test]
    fn cleaning_below_minimum_length_is_rejected() {
        let p = panel(vec![wiggle(6, 0.0, 1.0)]);
        let cfg = CleaningConfig { min_length: 10, ..CleaningConfig::default() };
        assert!(matches!(clean(&p, &cfg), Err(Error::SeriesTooShort { .. })));
    }

    const TOY: &str = "# base: USD\ndate,currency,rate\n\
        2001-01-02,EUR,0.9\n2001-01-02,JPY,110\n\
        2001-01-03,EUR,0.91\n2001-01-03,JPY,111\n\
        2001-01-04,EUR,0.92\n\
        2001-01-05,EUR,0.93\n2001-01-05,JPY,112\n";

    #[test]
    fn gaps_are_synchronized_by_intersection() {
        let raw = parse_quotes(TOY).unwrap();
        let p = raw.synchronize(2).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.series(code("EUR")).unwrap(), &[0.9, 0.91, 0.93]);
        assert_eq!(p.base(), code("USD"));
    }

    #[test]
    fn tab_delimited_input_is_accepted() {
        let tabbed = TOY.replace(',', "\t");
        assert_eq!(parse_quotes(&tabbed).unwrap().quotes.len(), 2);
    }

    #[test]
    fn malformed_rows_carry_line_numbers() {
        let bad = "# base: USD\ndate,currency,rate\n2001-01-02,EUR,0.9\n2001-01-03,EUR\n";
        assert!(matches!(parse_quotes(bad), Err(Error::Parse { line: 4, .. })));
        let neg = "# base: USD\ndate,currency,rate\n2001-01-02,EUR,-0.9\n";
        assert!(matches!(parse_quotes(neg), Err(Error::NonPositiveRate { line: 3, .. })));
        let zero = "# base: USD\ndate,currency,rate\n2001-01-02,EUR,0\n";
        assert!(matches!(parse_quotes(zero), Err(Error::NonPositiveRate { line: 3, .. })));
        let date = "# base: USD\ndate,currency,rate\n2001-13-02,EUR,1\n";
        assert!(matches!(parse_quotes(date), Err(Error::Parse { line: 3, .. })));
        let dup = "# base: USD\ndate,currency,rate\n2001-01-02,EUR,1\n2001-01-02,EUR,1\n";
        assert!(matches!(parse_quotes(dup), Err(Error::Parse { line: 4, .. })));
        let nobase = "date,currency,rate\n2001-01-02,EUR,1\n";
        assert!(matches!(parse_quotes(nobase), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn short_series_are_listed() {
        let raw = parse_quotes(TOY).unwrap();
        match raw.synchronize(4) {
            Err(Error::SeriesTooShort { series, min: 4 }) => assert_eq!(series, vec![code("JPY")]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn long_text_round_trips() {
        let p = panel(vec![wiggle(30, 0.0, 1.0 / 3.0), wiggle(30, 0.5, 7.0)]);
        let back = parse_quotes(&p.to_long_text()).unwrap().synchronize(2).unwrap();
        assert_eq!(back, p);
    }
}
