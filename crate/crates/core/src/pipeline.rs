//! End-to-end runs: load, clean, rebase, correlate, build trees, fit, report.
//!
//! [`run_panel`] does all computation in memory and [`write_outputs`] lays the
//! results out on disk, one directory per base currency:
//!
//! ```text
//! out/
//!   manifest.json  spectrum.csv  fits.csv  table1.csv
//!   USD/  tree.dot  edges.csv  multiplicity.csv  distribution.csv  spectrum.csv
//!   USD/shuffled/  (same files, when shuffling is enabled)
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::corrnet::{correlation, spectrum, spectrum_table, RegimeThresholds, SpectrumReport, SpectrumRow};
use crate::error::{Error, Result};
use crate::mstgraph::{build_mst, distances, edge_list, export_dot, multiplicity_list, DotStyle, MstTree};
use crate::nullmodel::{default_fict_sigma, fictitious_currency, shuffle_returns, FictMode, RandomSeed};
use crate::scaling::{
    aggregate_fits, degree_distribution, discreteness_floor, fit_power, plot_data, DegreeDistribution, FitConfig,
    FitSummary, PowerFit,
};
use crate::timeseries::{
    code, load_panel, returns, CleaningConfig, CleaningReport, CurrencyCode, Group, GroupTable, RatePanel,
    ReturnMatrix, FICTITIOUS_CODE,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseSelection {
    Single(CurrencyCode),
    All,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FictConfig {
    /// Currency the noise is quoted against.
    pub anchor: CurrencyCode,
    /// Step size of the noise; the median one-day return spread when unset.
    pub sigma: Option<f64>,
    pub seed: RandomSeed,
    pub mode: FictMode,
}

impl FictConfig {
    pub fn new(seed: RandomSeed) -> Self {
        FictConfig { anchor: code("USD"), sigma: None, seed, mode: FictMode::default() }
    }
}

/// Settings for the in-memory part of a run.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisConfig {
    pub bases: BaseSelection,
    pub tau: usize,
    pub fit: FitConfig,
    pub thresholds: RegimeThresholds,
    /// Also analyze time-shuffled returns for every base.
    pub shuffle_seed: Option<RandomSeed>,
    pub fict: Option<FictConfig>,
    pub groups: GroupTable,
    /// Size of the worker pool; the global rayon pool when unset.
    pub workers: Option<usize>,
}

impl AnalysisConfig {
    pub fn new(bases: BaseSelection) -> Self {
        AnalysisConfig {
            bases,
            tau: 1,
            fit: FitConfig::default(),
            thresholds: RegimeThresholds::default(),
            shuffle_seed: None,
            fict: None,
            groups: GroupTable::default(),
            workers: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub input: PathBuf,
    pub out_dir: PathBuf,
    pub cleaning: CleaningConfig,
    pub analysis: AnalysisConfig,
}

/// Everything computed for one return matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct TreeAnalysis {
    pub spectrum: SpectrumReport,
    pub tree: MstTree,
    pub distribution: DegreeDistribution,
    pub fit: Option<PowerFit>,
    pub fit_error: Option<String>,
}

impl TreeAnalysis {
    pub fn n(&self) -> usize {
        self.tree.n()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BaseReport {
    pub base: CurrencyCode,
    pub group: Option<Group>,
    pub analysis: TreeAnalysis,
    pub shuffled: Option<TreeAnalysis>,
}

/// Correlation, spectrum, tree and power fit of one return matrix.
pub fn analyze_returns(r: &ReturnMatrix, fit: &FitConfig, thresholds: &RegimeThresholds) -> Result<TreeAnalysis> {
    let c = correlation(r)?;
    let spectrum = spectrum(&c, thresholds)?;
    let tree = build_mst(&distances(&c)?)?;
    let distribution = degree_distribution(&tree);
    let (fit, fit_error) = match fit_power(&distribution, fit) {
        Ok(f) => (Some(f), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(TreeAnalysis { spectrum, tree, distribution, fit, fit_error })
}

/// Seed of the shuffled pass for one base, independent of sweep order.
fn base_seed(seed: RandomSeed, base: CurrencyCode) -> RandomSeed {
    let b = base.as_str().as_bytes();
    seed.derive(u64::from_be_bytes([0, 0, 0, 0, 0, b[0], b[1], b[2]]))
}

/// Full analysis with `base` as the unit of account.
pub fn analyze_base(panel: &RatePanel, base: CurrencyCode, config: &AnalysisConfig) -> Result<BaseReport> {
    let run = || -> Result<BaseReport> {
        let r = returns(&panel.rebase(base)?, config.tau)?;
        let analysis = analyze_returns(&r, &config.fit, &config.thresholds)?;
        let shuffled = match config.shuffle_seed {
            Some(seed) => {
                Some(analyze_returns(&shuffle_returns(&r, base_seed(seed, base)), &config.fit, &config.thresholds)?)
            }
            None => None,
        };
        Ok(BaseReport { base, group: config.groups.group_of(base), analysis, shuffled })
    };
    run().map_err(|e| e.for_base(base))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table1Row {
    pub label: String,
    pub members: usize,
    pub alpha: f64,
    pub delta_alpha: f64,
    pub relative_error: f64,
    pub lambda_max: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Table1 {
    /// metals, A*, A, B, C, average, r.m., fict; empty rows are left out.
    pub rows: Vec<Table1Row>,
    /// Mean of the A*, A, B and C rows, as opposed to the mean over all bases.
    pub average_groups: Option<Table1Row>,
    pub warnings: Vec<String>,
}

impl Table1 {
    pub fn row(&self, label: &str) -> Option<&Table1Row> {
        self.rows.iter().find(|r| r.label == label)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("row,members,alpha,delta_alpha,relative_error,lambda_max\n");
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{:.4},{:.4},{:.4},{:.4}",
                r.label, r.members, r.alpha, r.delta_alpha, r.relative_error, r.lambda_max
            )
            .unwrap();
        }
        out
    }
}

fn summary(base: CurrencyCode, a: &TreeAnalysis) -> Option<FitSummary> {
    a.fit.as_ref().map(|fit| FitSummary { base, fit: fit.clone(), lambda_max: a.spectrum.lambda_max })
}

/// Group averages of `α`, `Δα`, `Δα/α` and `λ_N` in the layout of the
/// classic summary table.
pub fn make_table1(reports: &[BaseReport], groups: &GroupTable) -> Table1 {
    let fict = code(FICTITIOUS_CODE);
    let is_fict = |r: &BaseReport| r.base == fict || r.group == Some(Group::Fictitious);
    let real: Vec<&BaseReport> = reports.iter().filter(|r| !is_fict(r)).collect();
    let select = |keep: &dyn Fn(&BaseReport) -> bool| -> Vec<FitSummary> {
        real.iter().filter(|r| keep(r)).filter_map(|r| summary(r.base, &r.analysis)).collect()
    };
    let in_group = |g: Group| move |r: &BaseReport| groups.group_of(r.base) == Some(g);
    let rows: Vec<(&str, Vec<FitSummary>)> = vec![
        ("metals", select(&|r| groups.is_metal(r.base))),
        ("A*", select(&in_group(Group::AStar))),
        ("A", select(&in_group(Group::A))),
        ("B", select(&in_group(Group::B))),
        ("C", select(&in_group(Group::C))),
        ("average", select(&|_| true)),
        ("r.m.", real.iter().filter_map(|r| r.shuffled.as_ref().and_then(|s| summary(r.base, s))).collect()),
        ("fict", reports.iter().filter(|r| is_fict(r)).filter_map(|r| summary(r.base, &r.analysis)).collect()),
    ];
    let mut table = Table1::default();
    for (label, fits) in rows {
        match aggregate_fits(label, &fits) {
            Ok(g) => table.rows.push(Table1Row {
                label: label.to_string(),
                members: g.members.len(),
                alpha: g.alpha,
                delta_alpha: g.delta_alpha,
                relative_error: g.relative_error,
                lambda_max: g.lambda_max,
            }),
            Err(e) => table.warnings.push(format!("table row {label} omitted: {e}")),
        }
    }
    let group_rows: Vec<&Table1Row> =
        table.rows.iter().filter(|r| matches!(r.label.as_str(), "A*" | "A" | "B" | "C")).collect();
    if !group_rows.is_empty() {
        let m = group_rows.len() as f64;
        let mean = |f: fn(&Table1Row) -> f64| group_rows.iter().map(|r| f(r)).sum::<f64>() / m;
        table.average_groups = Some(Table1Row {
            label: "average_groups".into(),
            members: group_rows.iter().map(|r| r.members).sum(),
            alpha: mean(|r| r.alpha),
            delta_alpha: mean(|r| r.delta_alpha),
            relative_error: mean(|r| r.relative_error),
            lambda_max: mean(|r| r.lambda_max),
        });
    }
    table
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    /// Panel as analyzed, including the fictitious currency when requested.
    pub panel_base: CurrencyCode,
    pub bases: Vec<BaseReport>,
    pub failures: Vec<(CurrencyCode, String)>,
    pub table1: Table1,
    pub fict_sigma: Option<f64>,
    pub cleaning: CleaningReport,
}

impl RunReport {
    pub fn base(&self, code: CurrencyCode) -> Option<&BaseReport> {
        self.bases.iter().find(|b| b.base == code)
    }

    pub fn spectrum_rows(&self) -> Vec<SpectrumRow> {
        self.bases.iter().map(|b| SpectrumRow::new(b.base, b.group, &b.analysis.spectrum)).collect()
    }
}

fn in_pool<T: Send>(workers: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(job()),
        Some(0) => Err(Error::InvalidConfig("worker count must be at least 1".into())),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::InvalidConfig(format!("cannot start worker pool: {e}")))?;
            Ok(pool.install(job))
        }
    }
}

/// Runs the analysis on an already cleaned panel.
///
/// Configuration problems are returned as errors; failures of individual
/// base currencies are collected in [`RunReport::failures`].
pub fn run_panel(panel: RatePanel, config: &AnalysisConfig) -> Result<RunReport> {
    if config.tau == 0 {
        return Err(Error::InvalidConfig("return horizon tau must be at least 1".into()));
    }
    let (panel, fict_sigma) = match &config.fict {
        Some(f) => {
            let sigma = match f.sigma {
                Some(s) => s,
                None => default_fict_sigma(&panel)?,
            };
            (fictitious_currency(&panel, f.anchor, sigma, f.seed, f.mode)?, Some(sigma))
        }
        None => (panel, None),
    };
    let bases = match config.bases {
        BaseSelection::All => {
            let mut all = panel.all_currencies();
            all.sort();
            all
        }
        BaseSelection::Single(b) => {
            if b != panel.base() && !panel.contains(b) {
                return Err(Error::UnknownCurrency(b));
            }
            let mut bases = vec![b];
            let fict = code(FICTITIOUS_CODE);
            if config.fict.is_some() && b != fict {
                bases.push(fict);
            }
            bases
        }
    };
    let outcomes: Vec<Result<BaseReport>> =
        in_pool(config.workers, || bases.par_iter().map(|&b| analyze_base(&panel, b, config)).collect())?;
    let mut reports = Vec::new();
    let mut failures = Vec::new();
    for (base, outcome) in bases.iter().zip(outcomes) {
        match outcome {
            Ok(r) => {
                if let Some(e) = &r.analysis.fit_error {
                    failures.push((*base, format!("base {base}: {e}")));
                }
                reports.push(r);
            }
            Err(e) => failures.push((*base, e.to_string())),
        }
    }
    let table1 = make_table1(&reports, &config.groups);
    Ok(RunReport {
        panel_base: panel.base(),
        bases: reports,
        failures,
        table1,
        fict_sigma,
        cleaning: CleaningReport::default(),
    })
}

/// Loads and cleans the input, runs every requested base and writes all outputs.
pub fn run_pipeline(config: &RunConfig) -> Result<RunReport> {
    let (panel, cleaning) = load_panel(&config.input, &config.cleaning)?;
    let mut report = run_panel(panel, &config.analysis)?;
    report.cleaning = cleaning;
    write_outputs(&report, config, &config.out_dir)?;
    Ok(report)
}

fn eigenvalue_list(s: &SpectrumReport) -> String {
    let mut out = String::from("k,eigenvalue\n");
    for (k, v) in s.eigenvalues.iter().enumerate() {
        writeln!(out, "{},{:.12}", k + 1, v).unwrap();
    }
    out
}

fn fits_table(report: &RunReport) -> String {
    let mut out = String::from(
        "base,group,n,k_max,alpha,delta_alpha,relative_error,amplitude,amplitude_normalized,quality,lambda_max,regime,error\n",
    );
    for b in &report.bases {
        let a = &b.analysis;
        let group = b.group.map_or("", Group::label);
        let fit = match &a.fit {
            Some(f) => format!(
                "{:.6},{:.6},{:.6},{:.6},{:.6},{}",
                f.alpha, f.delta_alpha, f.relative_error, f.amplitude, f.amplitude_normalized, f.quality
            ),
            None => ",,,,,".to_string(),
        };
        let error = a.fit_error.as_deref().unwrap_or("").replace(',', ";");
        writeln!(
            out,
            "{},{},{},{},{},{:.6},{},{}",
            b.base,
            group,
            a.n(),
            a.distribution.k_max(),
            fit,
            a.spectrum.lambda_max,
            a.spectrum.regime,
            error
        )
        .unwrap();
    }
    out
}

#[derive(Serialize)]
struct FailureEntry {
    base: CurrencyCode,
    error: String,
}

#[derive(Serialize)]
struct CleaningSummary {
    repairs: usize,
    dropped_dates: usize,
    passes: usize,
    converged: bool,
}

#[derive(Serialize)]
struct FictEntry {
    anchor: CurrencyCode,
    sigma: f64,
    seed: u64,
    mode: FictMode,
}

#[derive(Serialize)]
struct Manifest<'a> {
    input: String,
    panel_base: CurrencyCode,
    tau: usize,
    bases: Vec<CurrencyCode>,
    shuffle_seed: Option<u64>,
    fict: Option<FictEntry>,
    cleaning: CleaningSummary,
    discreteness_floor: Option<crate::scaling::DiscretenessBound>,
    table1: &'a [Table1Row],
    average_groups: Option<&'a Table1Row>,
    failures: Vec<FailureEntry>,
    warnings: &'a [String],
    files: Vec<String>,
}

fn write_file(out_dir: &Path, rel: &str, contents: &str, files: &mut Vec<String>) -> Result<()> {
    let path = out_dir.join(rel);
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::write(&path, contents).map_err(|e| Error::io(&path, e))?;
    files.push(rel.to_string());
    Ok(())
}

fn write_tree_files(
    out_dir: &Path,
    prefix: &str,
    a: &TreeAnalysis,
    groups: &GroupTable,
    files: &mut Vec<String>,
) -> Result<()> {
    write_file(out_dir, &format!("{prefix}/tree.dot"), &export_dot(&a.tree, &DotStyle::default(), groups), files)?;
    write_file(out_dir, &format!("{prefix}/edges.csv"), &edge_list(&a.tree), files)?;
    write_file(out_dir, &format!("{prefix}/multiplicity.csv"), &multiplicity_list(&a.tree), files)?;
    write_file(out_dir, &format!("{prefix}/distribution.csv"), &plot_data(&a.distribution, a.fit.as_ref()), files)?;
    write_file(out_dir, &format!("{prefix}/spectrum.csv"), &eigenvalue_list(&a.spectrum), files)
}

/// Writes per-base files, summary tables and `manifest.json` under `out_dir`.
/// Returns the written paths relative to `out_dir`, manifest last.
pub fn write_outputs(report: &RunReport, config: &RunConfig, out_dir: &Path) -> Result<Vec<String>> {
    let groups = &config.analysis.groups;
    let mut files = Vec::new();
    for b in &report.bases {
        write_tree_files(out_dir, b.base.as_str(), &b.analysis, groups, &mut files)?;
        if let Some(s) = &b.shuffled {
            write_tree_files(out_dir, &format!("{}/shuffled", b.base), s, groups, &mut files)?;
        }
    }
    write_file(out_dir, "spectrum.csv", &spectrum_table(&report.spectrum_rows()), &mut files)?;
    write_file(out_dir, "fits.csv", &fits_table(report), &mut files)?;
    write_file(out_dir, "table1.csv", &report.table1.to_text(), &mut files)?;

    let analysis = &config.analysis;
    let manifest = Manifest {
        input: config.input.display().to_string(),
        panel_base: report.panel_base,
        tau: analysis.tau,
        bases: report.bases.iter().map(|b| b.base).collect(),
        shuffle_seed: analysis.shuffle_seed.map(|s| s.0),
        fict: analysis.fict.as_ref().zip(report.fict_sigma).map(|(f, sigma)| FictEntry {
            anchor: f.anchor,
            sigma,
            seed: f.seed.0,
            mode: f.mode,
        }),
        cleaning: CleaningSummary {
            repairs: report.cleaning.repairs.len(),
            dropped_dates: report.cleaning.dropped_dates.len(),
            passes: report.cleaning.passes,
            converged: report.cleaning.converged,
        },
        discreteness_floor: report.bases.first().and_then(|b| discreteness_floor(b.analysis.n()).ok()),
        table1: &report.table1.rows,
        average_groups: report.table1.average_groups.as_ref(),
        failures: report
            .failures
            .iter()
            .map(|(base, error)| FailureEntry { base: *base, error: error.clone() })
            .collect(),
        warnings: &report.table1.warnings,
        files: files.clone(),
    };
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    write_file(out_dir, "manifest.json", &json, &mut files)?;
    Ok(files)
}
