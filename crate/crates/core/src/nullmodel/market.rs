//! Synthetic multi-currency markets with a known dependence tree.
//!
//! Every currency carries a latent log-value measured against a noiseless
//! reference unit ([`REFERENCE_CODE`]). A currency tied to a parent with
//! strength `s` follows `v_child = v_parent + w`, where `w` is an independent
//! random walk sized so that returns of siblings correlate with coefficient
//! `s`. Rebasing to a parent therefore leaves its subtrees uncorrelated.

use std::collections::BTreeSet;
use std::path::Path;

use chrono::{Datelike, Days, NaiveDate, Weekday};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::RandomSeed;
use crate::error::{Error, Result};
use crate::timeseries::{CurrencyCode, RatePanel, LESS_LIQUID, LIQUID, MAJOR, NON_TRADABLE};

/// Base of generated panels: a unit of account with no noise of its own.
pub const REFERENCE_CODE: &str = "XDR";

const HUB_CODE: &str = "USD";
const ANCHOR_CODES: [&str; 5] = ["EUR", "JPY", "GBP", "AUD", "CAD"];
const DRIFTER_CODES: [&str; 8] = ["GHC", "VEB", "TRY", "ZMK", "SDD", "ARS", "BRL", "RUB"];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bloc {
    /// Members including the bloc anchor.
    pub size: usize,
    /// Return correlation between two members.
    pub intra_corr: f64,
}

/// Where currencies outside blocs and drifters hang in the dependence tree.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Attachment {
    /// Directly on the hub.
    Star,
    /// On the hub or an earlier free currency, with probability `∝ K + offset`.
    Preferential { offset: f64 },
}

impl Default for Attachment {
    fn default() -> Self {
        Attachment::Preferential { offset: 0.5 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarketModel {
    /// Currencies in the panel, the reference unit included.
    pub n_currencies: usize,
    /// Tie strength of bloc anchors and free currencies to the hub.
    pub hub_strength: f64,
    #[serde(default)]
    pub blocs: Vec<Bloc>,
    #[serde(default)]
    pub drifters: usize,
    /// Observations per series.
    #[serde(rename = "T", alias = "t")]
    pub t: usize,
    #[serde(default)]
    pub attachment: Attachment,
    /// Daily log-volatility of the hub.
    #[serde(default = "default_volatility")]
    pub volatility: f64,
    /// Drifter volatility as a multiple of `volatility`.
    #[serde(default = "default_drifter_volatility")]
    pub drifter_volatility: f64,
    /// Magnitude of the daily drifter trend.
    #[serde(default = "default_drift")]
    pub drift: f64,
}

fn default_volatility() -> f64 {
    0.006
}

fn default_drifter_volatility() -> f64 {
    4.0
}

fn default_drift() -> f64 {
    5e-4
}

impl MarketModel {
    /// All currencies tied to the hub with one common strength.
    pub fn one_factor(n_currencies: usize, hub_strength: f64, t: usize) -> Self {
        MarketModel {
            n_currencies,
            hub_strength,
            blocs: Vec::new(),
            drifters: 0,
            t,
            attachment: Attachment::Star,
            volatility: default_volatility(),
            drifter_volatility: default_drifter_volatility(),
            drift: default_drift(),
        }
    }

    /// Hub plus two regional blocs and five drifters at desk scale.
    pub fn mixed() -> Self {
        MarketModel {
            blocs: vec![Bloc { size: 6, intra_corr: 0.7 }, Bloc { size: 4, intra_corr: 0.6 }],
            drifters: 5,
            attachment: Attachment::default(),
            ..MarketModel::one_factor(60, 0.6, 1657)
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let model: MarketModel = toml::from_str(text).map_err(|e| Error::InvalidModel(e.to_string()))?;
        model.validate()?;
        Ok(model)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("market model serializes")
    }

    /// Latent currencies, i.e. everything except the reference unit.
    fn latent(&self) -> usize {
        self.n_currencies.saturating_sub(1)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidModel(m));
        if self.n_currencies < 3 {
            return bad(format!("need at least 3 currencies, got {}", self.n_currencies));
        }
        if self.t < 3 {
            return bad(format!("need at least 3 observations, got {}", self.t));
        }
        let unit = |x: f64| (0.0..=1.0).contains(&x);
        if !unit(self.hub_strength) {
            return bad(format!("hub_strength {} outside [0, 1]", self.hub_strength));
        }
        if let Some(b) = self.blocs.iter().find(|b| !unit(b.intra_corr) || b.size < 1) {
            return bad(format!("bloc needs size >= 1 and intra_corr in [0, 1], got {b:?}"));
        }
        let used = 1 + self.blocs.iter().map(|b| b.size).sum::<usize>() + self.drifters;
        if used > self.latent() {
            return bad(format!(
                "hub, blocs and drifters need {used} currencies but only {} besides {REFERENCE_CODE} exist",
                self.latent()
            ));
        }
        if let Attachment::Preferential { offset } = self.attachment {
            if !(offset > -1.0 && offset.is_finite()) {
                return bad(format!("preferential offset must exceed -1, got {offset}"));
            }
        }
        if !(self.volatility > 0.0 && self.drifter_volatility > 0.0 && self.drift >= 0.0) {
            return bad("volatility and drifter_volatility must be positive, drift non-negative".into());
        }
        Ok(())
    }
}

/// Random tree on `n` nodes grown by attaching each new node to an existing
/// one with probability `∝ K + offset`. Returns `(parent, child)` edges.
pub fn preferential_tree(n: usize, offset: f64, seed: RandomSeed) -> Result<Vec<(usize, usize)>> {
    if n < 2 {
        return Err(Error::InsufficientData(format!("a tree needs at least 2 nodes, got {n}")));
    }
    if !(offset > -1.0 && offset.is_finite()) {
        return Err(Error::InvalidConfig(format!("preferential offset must exceed -1, got {offset}")));
    }
    let mut rng = seed.stream(0);
    let mut degree = vec![0usize; n];
    let mut edges = Vec::with_capacity(n - 1);
    for child in 1..n {
        let parent = if child == 1 { 0 } else { pick(&degree[..child], offset, &mut rng) };
        degree[parent] += 1;
        degree[child] += 1;
        edges.push((parent, child));
    }
    Ok(edges)
}

fn pick(degrees: &[usize], offset: f64, rng: &mut impl Rng) -> usize {
    let weights = degrees.iter().map(|&k| (k as f64 + offset).max(0.0));
    WeightedIndex::new(weights).map_or(0, |w| w.sample(rng))
}

#[derive(Clone, Copy, Debug)]
enum Tie {
    Root,
    To { parent: usize, strength: f64 },
    Drifter,
}

/// Currency codes: hub, bloc anchors and drifters get fixed names, the rest
/// come from the standard currency lists, then from generated `Q??` codes.
struct CodePool {
    free: Vec<CurrencyCode>,
    used: BTreeSet<CurrencyCode>,
    next_generic: usize,
}

impl CodePool {
    fn new() -> Self {
        let reserved: BTreeSet<&str> =
            [REFERENCE_CODE, HUB_CODE].into_iter().chain(ANCHOR_CODES).chain(DRIFTER_CODES).collect();
        let free = MAJOR
            .iter()
            .chain(&LIQUID)
            .chain(&LESS_LIQUID)
            .chain(&NON_TRADABLE)
            .filter(|c| !reserved.contains(*c))
            .map(|c| CurrencyCode::new(c).expect("static code"))
            .rev()
            .collect();
        let used = [REFERENCE_CODE].iter().map(|c| CurrencyCode::new(c).expect("static code")).collect();
        CodePool { free, used, next_generic: 0 }
    }

    fn named(&mut self, list: &[&str], i: usize) -> CurrencyCode {
        match list.get(i).map(|c| CurrencyCode::new(c).expect("static code")) {
            Some(c) if !self.used.contains(&c) => {
                self.used.insert(c);
                c
            }
            _ => self.next(),
        }
    }

    fn next(&mut self) -> CurrencyCode {
        while let Some(c) = self.free.pop() {
            if self.used.insert(c) {
                return c;
            }
        }
        loop {
            let k = self.next_generic;
            self.next_generic += 1;
            let name = format!("Q{}{}", (b'A' + (k / 26 % 26) as u8) as char, (b'A' + (k % 26) as u8) as char);
            let c = CurrencyCode::new(&name).expect("generated code");
            if self.used.insert(c) {
                return c;
            }
        }
    }
}

/// First `count` weekdays from 1 December 1998.
fn business_days(count: usize) -> Vec<NaiveDate> {
    let mut d = NaiveDate::from_ymd_opt(1998, 12, 1).expect("valid date");
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        if !matches!(d.weekday(), Weekday::Sat | Weekday::Sun) {
            out.push(d);
        }
        d = d + Days::new(1);
    }
    out
}

/// Draws a panel of rates against [`REFERENCE_CODE`] from `model`.
pub fn generate_market(model: &MarketModel, seed: RandomSeed) -> Result<RatePanel> {
    model.validate()?;
    let mut codes = CodePool::new();
    let mut currencies = Vec::with_capacity(model.latent());
    let mut ties = Vec::with_capacity(model.latent());

    currencies.push(codes.named(&[HUB_CODE], 0));
    ties.push(Tie::Root);
    let hub_tie = |parent| Tie::To { parent, strength: model.hub_strength };
    for (b, bloc) in model.blocs.iter().enumerate() {
        let anchor = currencies.len();
        currencies.push(codes.named(&ANCHOR_CODES, b));
        ties.push(hub_tie(0));
        for _ in 1..bloc.size {
            currencies.push(codes.next());
            ties.push(Tie::To { parent: anchor, strength: bloc.intra_corr });
        }
    }
    let free = model.latent() - currencies.len() - model.drifters;
    let mut structure = seed.stream(u64::MAX);
    // candidates for preferential attachment: the hub and earlier free currencies
    let mut candidates = vec![0usize];
    let mut degrees = vec![model.blocs.len()];
    for _ in 0..free {
        let parent = match model.attachment {
            Attachment::Star => 0,
            Attachment::Preferential { offset } => {
                let slot = pick(&degrees, offset, &mut structure);
                degrees[slot] += 1;
                candidates[slot]
            }
        };
        candidates.push(currencies.len());
        degrees.push(1);
        currencies.push(codes.next());
        ties.push(hub_tie(parent));
    }
    for d in 0..model.drifters {
        currencies.push(codes.named(&DRIFTER_CODES, d));
        ties.push(Tie::Drifter);
    }

    // per-step variance of every latent currency, parents before children
    let base_var = model.volatility * model.volatility;
    let mut variance = vec![0.0; ties.len()];
    let mut own_sd = vec![0.0; ties.len()];
    for (i, tie) in ties.iter().enumerate() {
        let (var, own) = match *tie {
            Tie::Root => (base_var, base_var),
            Tie::Drifter => {
                let v = base_var * model.drifter_volatility * model.drifter_volatility;
                (v, v)
            }
            Tie::To { strength, .. } if strength <= 0.0 => (base_var, base_var),
            Tie::To { parent, strength } => {
                let v = variance[parent] / strength;
                (v, v - variance[parent])
            }
        };
        variance[i] = var;
        own_sd[i] = own.max(0.0).sqrt();
    }

    let steps = model.t - 1;
    let own_paths: Vec<Vec<f64>> = (0..ties.len())
        .into_par_iter()
        .map(|i| {
            let mut rng = seed.stream(i as u64);
            let mut v: f64 = rng.random_range(-2.0..2.0);
            let trend = match ties[i] {
                Tie::Drifter => {
                    if rng.random::<bool>() {
                        model.drift
                    } else {
                        -model.drift
                    }
                }
                _ => 0.0,
            };
            let mut path = Vec::with_capacity(model.t);
            path.push(v);
            for _ in 0..steps {
                let z: f64 = rng.sample(StandardNormal);
                v += trend + own_sd[i] * z;
                path.push(v);
            }
            path
        })
        .collect();

    let mut log_values: Vec<Vec<f64>> = Vec::with_capacity(ties.len());
    for (i, tie) in ties.iter().enumerate() {
        let path = match *tie {
            Tie::To { parent, strength } if strength > 0.0 => {
                log_values[parent].iter().zip(&own_paths[i]).map(|(p, w)| p + w).collect()
            }
            _ => own_paths[i].clone(),
        };
        log_values.push(path);
    }
    let series = log_values.into_iter().map(|p| p.into_iter().map(f64::exp).collect()).collect();
    RatePanel::new(CurrencyCode::new(REFERENCE_CODE).expect("static code"), currencies, business_days(model.t), series)
}
