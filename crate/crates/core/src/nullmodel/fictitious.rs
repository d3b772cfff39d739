use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::RandomSeed;
use crate::error::{Error, Result};
use crate::timeseries::{code, log_returns, RatePanel, FICTITIOUS_CODE};

/// How the noise enters the fictitious currency's rate to its anchor.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FictMode {
    /// The log-rate is a Gaussian random walk, so its returns are i.i.d. Gaussian.
    #[default]
    RandomWalk,
    /// The log-rate itself is i.i.d. Gaussian around zero.
    IidLevel,
}

impl std::str::FromStr for FictMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random-walk" => Ok(FictMode::RandomWalk),
            "iid-level" => Ok(FictMode::IidLevel),
            other => Err(Error::InvalidConfig(format!("unknown fictitious mode {other:?}"))),
        }
    }
}

/// Appends currency `FIC` whose rate to `anchor` is Gaussian noise; its rate
/// to every other currency follows through the anchor.
pub fn fictitious_currency(
    panel: &RatePanel,
    anchor: crate::timeseries::CurrencyCode,
    sigma: f64,
    seed: RandomSeed,
    mode: FictMode,
) -> Result<RatePanel> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidConfig(format!("fictitious sigma must be positive, got {sigma}")));
    }
    let fic = code(FICTITIOUS_CODE);
    if panel.base() == fic || panel.contains(fic) {
        return Err(Error::DuplicateCurrency(fic));
    }
    let anchor_levels: Vec<f64> = if anchor == panel.base() {
        vec![1.0; panel.len()]
    } else {
        panel.series(anchor).ok_or(Error::UnknownCurrency(anchor))?.to_vec()
    };
    let mut rng = seed.stream(0);
    let mut walk = 0.0;
    let values = anchor_levels
        .iter()
        .enumerate()
        .map(|(t, a)| {
            let z: f64 = rng.sample(StandardNormal);
            let log_rate = match mode {
                FictMode::RandomWalk => {
                    if t > 0 {
                        walk += sigma * z;
                    }
                    walk
                }
                FictMode::IidLevel => sigma * z,
            };
            a * log_rate.exp()
        })
        .collect();
    panel.with_currency(fic, values)
}

/// Median over series of the standard deviation of one-step log-returns.
pub fn default_fict_sigma(panel: &RatePanel) -> Result<f64> {
    let mut sds: Vec<f64> = (0..panel.n_series())
        .map(|j| {
            let r = log_returns(panel.column(j), 1);
            let n = r.len() as f64;
            let mean = r.iter().sum::<f64>() / n;
            (r.iter().map(|g| (g - mean).powi(2)).sum::<f64>() / n).sqrt()
        })
        .filter(|sd| sd.is_finite() && *sd > 0.0)
        .collect();
    if sds.is_empty() {
        return Err(Error::InsufficientData("no series with varying returns to size the fictitious noise".into()));
    }
    sds.sort_by(f64::total_cmp);
    let m = sds.len();
    Ok(if m % 2 == 1 { sds[m / 2] } else { 0.5 * (sds[m / 2 - 1] + sds[m / 2]) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::timeseries::{triangle_residual, CurrencyCode};
    use chrono::NaiveDate;

    fn panel() -> RatePanel {
        let dates = (0..40).map(|d| NaiveDate::from_ymd_opt(2000, 1, 1).unwrap() + chrono::Days::new(d)).collect();
        let eur = (0..40).map(|t| 1.1 + 0.01 * (t as f64 * 0.7).sin()).collect();
        let jpy = (0..40).map(|t| 0.009 + 0.0002 * (t as f64 * 1.3).cos()).collect();
        RatePanel::new(code("USD"), vec![code("EUR"), code("JPY")], dates, vec![eur, jpy]).unwrap()
    }

    #[test]
    fn fic_satisfies_the_triangle_rule() {
        let p = fictitious_currency(&panel(), code("EUR"), 0.01, RandomSeed(5), FictMode::RandomWalk).unwrap();
        let r = triangle_residual(&p, code("FIC"), code("EUR"), code("JPY"), 1).unwrap();
        assert!(r <= 1e-10, "{r}");
    }

    #[test]
    fn vanishing_noise_copies_the_anchor() {
        let p = fictitious_currency(&panel(), code("EUR"), 1e-12, RandomSeed(5), FictMode::RandomWalk).unwrap();
        let fic = p.series(code("FIC")).unwrap();
        let eur = p.series(code("EUR")).unwrap();
        assert!(fic.iter().zip(eur).all(|(f, e)| (f / e - 1.0).abs() < 1e-9));
    }

    #[test]
    fn anchor_may_be_the_base() {
        let p = fictitious_currency(&panel(), code("USD"), 0.01, RandomSeed(1), FictMode::IidLevel).unwrap();
        assert_eq!(p.n_series(), 3);
    }

    #[test]
    fn errors() {
        let p = panel();
        let missing = CurrencyCode::new("GBP").unwrap();
        assert!(matches!(
            fictitious_currency(&p, missing, 0.01, RandomSeed(1), FictMode::RandomWalk),
            Err(Error::UnknownCurrency(c)) if c == missing
        ));
        assert!(fictitious_currency(&p, code("EUR"), 0.0, RandomSeed(1), FictMode::RandomWalk).is_err());
        let twice = fictitious_currency(&p, code("EUR"), 0.01, RandomSeed(1), FictMode::RandomWalk).unwrap();
        assert!(fictitious_currency(&twice, code("EUR"), 0.01, RandomSeed(1), FictMode::RandomWalk).is_err());
    }

    #[test]
    fn default_sigma_is_the_median_sd() {
        let p = panel();
        let sd = |j: usize| {
            let r = log_returns(p.column(j), 1);
            let m = r.iter().sum::<f64>() / r.len() as f64;
            (r.iter().map(|g| (g - m) * (g - m)).sum::<f64>() / r.len() as f64).sqrt()
        };
        let expected = 0.5 * (sd(0) + sd(1));
        assert!((default_fict_sigma(&p).unwrap() - expected).abs() < 1e-15);
    }
}
