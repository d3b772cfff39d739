//! Cumulative node-multiplicity distributions and inverse power fits.
//!
//! For a tree with `N` nodes, `N'(K)` counts nodes with exactly `K` legs and
//! `N(K) = Σ_{i ≥ K} N'(i)` those with `K` or more. The fit is ordinary least
//! squares of `ln N(K)` on `ln K`, so `N(K) ≈ A · K^(-α)`.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mstgraph::MstTree;
use crate::timeseries::CurrencyCode;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeDistribution {
    n_total: usize,
    counts: BTreeMap<usize, usize>,
    cumulative: BTreeMap<usize, usize>,
    k_max: usize,
}

impl DegreeDistribution {
    pub fn from_multiplicities(multiplicities: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut counts = BTreeMap::new();
        let mut n_total = 0;
        for k in multiplicities {
            if k == 0 {
                return Err(Error::InsufficientData("a node without legs has no place in a spanning tree".into()));
            }
            *counts.entry(k).or_insert(0) += 1;
            n_total += 1;
        }
        let Some(&k_max) = counts.keys().next_back() else {
            return Err(Error::InsufficientData("no nodes".into()));
        };
        let mut cumulative = BTreeMap::new();
        let mut running = 0;
        for k in (1..=k_max).rev() {
            running += counts.get(&k).copied().unwrap_or(0);
            cumulative.insert(k, running);
        }
        Ok(DegreeDistribution { n_total, counts, cumulative, k_max })
    }

    pub fn n_total(&self) -> usize {
        self.n_total
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// `N'(K)`, only for occupied `K`.
    pub fn counts(&self) -> &BTreeMap<usize, usize> {
        &self.counts
    }

    /// `N(K)` for every `K` in `1..=K_max`.
    pub fn cumulative(&self) -> &BTreeMap<usize, usize> {
        &self.cumulative
    }

    /// `N(K)`, zero beyond `K_max`.
    pub fn at_least(&self, k: usize) -> usize {
        if k == 0 {
            return self.n_total;
        }
        self.cumulative.get(&k).copied().unwrap_or(0)
    }

    /// `F(K) = N(K) / N`.
    pub fn normalized(&self, k: usize) -> f64 {
        self.at_least(k) as f64 / self.n_total as f64
    }

    pub fn normalized_map(&self) -> BTreeMap<usize, f64> {
        self.cumulative.keys().map(|&k| (k, self.normalized(k))).collect()
    }

    /// `(K, N(K))` for `K = 1..=K_max`.
    pub fn points(&self) -> Vec<(f64, f64)> {
        self.cumulative.iter().map(|(&k, &n)| (k as f64, n as f64)).collect()
    }
}

pub fn degree_distribution(tree: &MstTree) -> DegreeDistribution {
    DegreeDistribution::from_multiplicities(tree.multiplicities().values().copied())
        .expect("spanning tree nodes have at least one leg")
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FitConfig {
    /// Relative error `Δα/α` above which a fit is flagged poor.
    pub quality_threshold: f64,
    pub min_points: usize,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig { quality_threshold: 0.09, min_points: 3 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FitQuality {
    Good,
    Poor,
}

impl std::fmt::Display for FitQuality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FitQuality::Good => "GOOD",
            FitQuality::Poor => "POOR",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerFit {
    pub alpha: f64,
    /// Standard error of the fitted slope.
    pub delta_alpha: f64,
    pub relative_error: f64,
    /// Prefactor of `N(K)`.
    pub amplitude: f64,
    /// Prefactor of `F(K)`, i.e. `amplitude / N` (NaN when N is unknown).
    pub amplitude_normalized: f64,
    pub points_used: Vec<(f64, f64)>,
    pub quality: FitQuality,
}

impl PowerFit {
    pub fn predict(&self, k: f64) -> f64 {
        self.amplitude * k.powf(-self.alpha)
    }
}

/// Log-log least squares through `(K, N)` points with `K, N > 0`.
pub fn fit_power_points(points: &[(f64, f64)], n_total: Option<usize>, config: &FitConfig) -> Result<PowerFit> {
    let used: Vec<(f64, f64)> = points.iter().copied().filter(|(k, n)| *k > 0.0 && *n > 0.0).collect();
    let mut distinct: Vec<f64> = used.iter().map(|p| p.0).collect();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    let needed = config.min_points.max(3);
    if distinct.len() < needed {
        return Err(Error::InsufficientSupport { needed, got: distinct.len() });
    }
    let m = used.len() as f64;
    let xs: Vec<f64> = used.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = used.iter().map(|p| p.1.ln()).collect();
    let x_mean = xs.iter().sum::<f64>() / m;
    let y_mean = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - x_mean) * (x - x_mean)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - x_mean) * (y - y_mean)).sum();
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let ssr: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let delta_alpha = (ssr / (m - 2.0) / sxx).sqrt();
    let alpha = -slope;
    if alpha <= 0.0 {
        return Err(Error::NonPositiveExponent(alpha));
    }
    let relative_error = delta_alpha / alpha;
    let amplitude = intercept.exp();
    Ok(PowerFit {
        alpha,
        delta_alpha,
        relative_error,
        amplitude,
        amplitude_normalized: n_total.map_or(f64::NAN, |n| amplitude / n as f64),
        points_used: used,
        quality: if relative_error > config.quality_threshold { FitQuality::Poor } else { FitQuality::Good },
    })
}

/// Fits `N(K) ≈ A · K^(-α)` over `K = 1..=K_max`.
pub fn fit_power(dist: &DegreeDistribution, config: &FitConfig) -> Result<PowerFit> {
    fit_power_points(&dist.points(), Some(dist.n_total()), config)
}

/// Expected accuracy limit of `F(K)` from the integer values of `N(K)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DiscretenessBound {
    /// Mean distance of a real number to the nearest integer, 1/4.
    pub delta_mean: f64,
    /// `δ / N`.
    pub delta_f: f64,
    /// Lower bound on `ΔF / F`, using `F ≤ 1`.
    pub relative_floor: f64,
}

pub fn discreteness_floor(n_total: usize) -> Result<DiscretenessBound> {
    if n_total == 0 {
        return Err(Error::InsufficientData("discreteness floor needs at least one node".into()));
    }
    let delta_mean = 0.25;
    let delta_f = delta_mean / n_total as f64;
    Ok(DiscretenessBound { delta_mean, delta_f, relative_floor: delta_f })
}

/// Arithmetic means over a set of per-base fits.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupFit {
    pub label: String,
    pub members: Vec<CurrencyCode>,
    pub alpha: f64,
    pub delta_alpha: f64,
    /// Mean of the per-base `Δα/α`.
    pub relative_error: f64,
    pub lambda_max: f64,
    /// Population spread of the per-base `α`.
    pub alpha_stdev: f64,
}

/// One base currency's fit together with its largest eigenvalue.
#[derive(Clone, Debug, PartialEq)]
pub struct FitSummary {
    pub base: CurrencyCode,
    pub fit: PowerFit,
    pub lambda_max: f64,
}

pub fn aggregate_fits(label: &str, fits: &[FitSummary]) -> Result<GroupFit> {
    if fits.is_empty() {
        return Err(Error::EmptyGroup(label.to_string()));
    }
    let m = fits.len() as f64;
    let mean = |f: &dyn Fn(&FitSummary) -> f64| fits.iter().map(f).sum::<f64>() / m;
    let alpha = mean(&|s| s.fit.alpha);
    let alpha_var = mean(&|s| (s.fit.alpha - alpha).powi(2));
    Ok(GroupFit {
        label: label.to_string(),
        members: fits.iter().map(|s| s.base).collect(),
        alpha,
        delta_alpha: mean(&|s| s.fit.delta_alpha),
        relative_error: mean(&|s| s.fit.relative_error),
        lambda_max: mean(&|s| s.lambda_max),
        alpha_stdev: alpha_var.sqrt(),
    })
}

/// Fits every tree and averages `α`, `Δα`, `Δα/α` and `λ_N` across them.
pub fn group_fit(label: &str, members: &[(&MstTree, f64)], config: &FitConfig) -> Result<GroupFit> {
    let fits = members
        .iter()
        .map(|(tree, lambda_max)| {
            let fit = fit_power(&degree_distribution(tree), config).map_err(|e| e.for_base(tree.base()))?;
            Ok(FitSummary { base: tree.base(), fit, lambda_max: *lambda_max })
        })
        .collect::<Result<Vec<_>>>()?;
    aggregate_fits(label, &fits)
}

/// `k,n_k,f_k,fit_n_k` rows for plotting `N(K)` against its fitted line.
pub fn plot_data(dist: &DegreeDistribution, fit: Option<&PowerFit>) -> String {
    let mut out = String::from("k,n_k,f_k,fit_n_k\n");
    for (&k, &n) in dist.cumulative() {
        let fitted = fit.map_or(String::new(), |f| format!("{:.6}", f.predict(k as f64)));
        writeln!(out, "{k},{n},{:.6},{fitted}", dist.normalized(k)).unwrap();
    }
    out
}
