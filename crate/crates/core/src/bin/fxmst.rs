use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fxmst::corrnet::RegimeThresholds;
use fxmst::nullmodel::{generate_market, FictMode, MarketModel, RandomSeed};
use fxmst::pipeline::{run_pipeline, AnalysisConfig, BaseSelection, FictConfig, RunConfig};
use fxmst::scaling::FitConfig;
use fxmst::timeseries::{CleaningConfig, CurrencyCode, GroupTable, RepairPolicy};

#[derive(Parser)]
#[command(name = "fxmst", version, about = "Minimal spanning trees and multiplicity scaling of FX cross-rate networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a rate panel for one base currency or all of them.
    Run(RunArgs),
    /// Write a synthetic rate panel drawn from a market model file.
    Gen(GenArgs),
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("selection").required(true).args(["base", "all_bases"])))]
struct RunArgs {
    /// Long-form `date,currency,rate` file with a `# base: XXX` header.
    input: PathBuf,
    #[arg(long)]
    base: Option<CurrencyCode>,
    #[arg(long)]
    all_bases: bool,
    /// Return horizon in observations.
    #[arg(long, default_value_t = 1)]
    tau: usize,
    /// Also analyze time-shuffled returns with this seed.
    #[arg(long)]
    shuffle_seed: Option<u64>,
    /// Add the fictitious Gaussian-noise currency FIC.
    #[arg(long)]
    fict: bool,
    #[arg(long, requires = "fict")]
    fict_sigma: Option<f64>,
    #[arg(long, requires = "fict", default_value_t = 0)]
    fict_seed: u64,
    #[arg(long, requires = "fict", default_value = "USD")]
    fict_anchor: CurrencyCode,
    /// random-walk or iid-level.
    #[arg(long, requires = "fict", default_value = "random-walk")]
    fict_mode: FictMode,
    /// Jump threshold in standard deviations.
    #[arg(long, default_value_t = 5.0)]
    clean_threshold: f64,
    /// drop-day, clip or interpolate.
    #[arg(long, default_value = "drop-day")]
    repair: RepairPolicy,
    #[arg(long, default_value_t = 20)]
    min_length: usize,
    /// Relative fit error above which a fit is marked POOR.
    #[arg(long, default_value_t = 0.09)]
    quality_threshold: f64,
    #[arg(long, default_value_t = 0.4)]
    regime_low: f64,
    #[arg(long, default_value_t = 0.65)]
    regime_high: f64,
    /// `CODE,GROUP` file replacing the built-in currency groups.
    #[arg(long)]
    groups: Option<PathBuf>,
    /// Worker threads for the base-currency sweep.
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct GenArgs {
    /// TOML market model.
    model: PathBuf,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

const EXIT_FAILURES: u8 = 1;
const EXIT_CONFIG: u8 = 2;

fn run_config(args: RunArgs) -> fxmst::Result<RunConfig> {
    let groups = match &args.groups {
        Some(path) => GroupTable::parse(
            &std::fs::read_to_string(path).map_err(|source| fxmst::Error::Io { path: path.clone(), source })?,
        )?,
        None => GroupTable::default(),
    };
    let cleaning = CleaningConfig {
        threshold: args.clean_threshold,
        policy: args.repair,
        min_length: args.min_length,
        ..CleaningConfig::default()
    };
    let analysis = AnalysisConfig {
        bases: args.base.map_or(BaseSelection::All, BaseSelection::Single),
        tau: args.tau,
        fit: FitConfig { quality_threshold: args.quality_threshold, ..FitConfig::default() },
        thresholds: RegimeThresholds::new(args.regime_low, args.regime_high)?,
        shuffle_seed: args.shuffle_seed.map(RandomSeed),
        fict: args.fict.then_some(FictConfig {
            anchor: args.fict_anchor,
            sigma: args.fict_sigma,
            seed: RandomSeed(args.fict_seed),
            mode: args.fict_mode,
        }),
        groups,
        workers: args.workers,
    };
    Ok(RunConfig { input: args.input, out_dir: args.out, cleaning, analysis })
}

fn run(args: RunArgs) -> ExitCode {
    let report = match run_config(args).and_then(|config| run_pipeline(&config)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    for b in &report.bases {
        let a = &b.analysis;
        match &a.fit {
            Some(f) => println!(
                "{}: N={} lambda_max={:.3} {} alpha={:.3} delta_alpha={:.3} ({:.1}%) {}",
                b.base,
                a.n(),
                a.spectrum.lambda_max,
                a.spectrum.regime,
                f.alpha,
                f.delta_alpha,
                100.0 * f.relative_error,
                f.quality
            ),
            None => {
                println!("{}: N={} lambda_max={:.3} {} no fit", b.base, a.n(), a.spectrum.lambda_max, a.spectrum.regime)
            }
        }
    }
    for w in &report.table1.warnings {
        eprintln!("warning: {w}");
    }
    if report.failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        for (_, e) in &report.failures {
            eprintln!("error: {e}");
        }
        ExitCode::from(EXIT_FAILURES)
    }
}

fn gen(args: GenArgs) -> ExitCode {
    let result =
        MarketModel::load(&args.model).and_then(|m| generate_market(&m, RandomSeed(args.seed))).and_then(|panel| {
            std::fs::write(&args.out, panel.to_long_text())
                .map_err(|source| fxmst::Error::Io { path: args.out.clone(), source })
        });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run(args) => run(args),
        Command::Gen(args) => gen(args),
    }
}
