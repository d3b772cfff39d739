//! Cumulative multiplicity distribution of a tree and its inverse power fit.

use fxmst::corrnet::correlation;
use fxmst::mstgraph::{build_mst, distances};
use fxmst::nullmodel::{generate_market, MarketModel, RandomSeed};
use fxmst::scaling::{degree_distribution, discreteness_floor, fit_power, plot_data, FitConfig};
use fxmst::timeseries::{code, returns};

fn main() -> fxmst::Result<()> {
    let panel = generate_market(&MarketModel::mixed(), RandomSeed(5))?;
    for base in ["EUR", "USD"] {
        let c = correlation(&returns(&panel.rebase(code(base))?, 1)?)?;
        let dist = degree_distribution(&build_mst(&distances(&c)?)?);
        let fit = fit_power(&dist, &FitConfig::default())?;
        println!(
            "{base}: alpha = {:.3} +- {:.3} ({:.1}%, {}), K_max = {}",
            fit.alpha,
            fit.delta_alpha,
            100.0 * fit.relative_error,
            fit.quality,
            dist.k_max()
        );
        if base == "EUR" {
            print!("{}", plot_data(&dist, Some(&fit)));
        }
    }
    let floor = discreteness_floor(59)?;
    println!("discreteness floor for N = 59: delta F = {:.5}", floor.delta_f);
    Ok(())
}
