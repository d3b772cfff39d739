//! Every base currency of a synthetic market, with both null models, written to disk.
//!
//! `cargo run --release --example full_sweep -- out/`

use std::path::PathBuf;

use fxmst::nullmodel::{generate_market, MarketModel, RandomSeed};
use fxmst::pipeline::{run_panel, write_outputs, AnalysisConfig, BaseSelection, FictConfig, RunConfig};
use fxmst::timeseries::CleaningConfig;

fn main() -> fxmst::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "sweep-out".into()));
    let panel = generate_market(&MarketModel::mixed(), RandomSeed(2))?;

    let mut analysis = AnalysisConfig::new(BaseSelection::All);
    analysis.shuffle_seed = Some(RandomSeed(42));
    analysis.fict = Some(FictConfig::new(RandomSeed(7)));
    let report = run_panel(panel, &analysis)?;

    print!("{}", report.table1.to_text());
    for w in &report.table1.warnings {
        eprintln!("warning: {w}");
    }
    let config =
        RunConfig { input: "<generated>".into(), out_dir: out.clone(), cleaning: CleaningConfig::default(), analysis };
    let files = write_outputs(&report, &config, &out)?;
    println!("{} files written to {}", files.len(), out.display());
    Ok(())
}
