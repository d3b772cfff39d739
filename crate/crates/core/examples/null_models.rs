//! Shuffled returns and the fictitious noise currency next to a structured market.

use fxmst::corrnet::RegimeThresholds;
use fxmst::nullmodel::{
    default_fict_sigma, fictitious_currency, generate_market, shuffle_returns, FictMode, MarketModel, RandomSeed,
};
use fxmst::pipeline::{analyze_returns, TreeAnalysis};
use fxmst::scaling::FitConfig;
use fxmst::timeseries::{code, returns, FICTITIOUS_CODE};

fn show(label: &str, a: &TreeAnalysis) {
    let fit = a.fit.as_ref().map_or(String::from("no fit"), |f| {
        format!("alpha {:.2}, rel. error {:.1}%", f.alpha, 100.0 * f.relative_error)
    });
    println!("{label:<12} lambda_N {:>6.2} ({}), {fit}", a.spectrum.lambda_max, a.spectrum.regime);
}

fn main() -> fxmst::Result<()> {
    let (fit, thresholds) = (FitConfig::default(), RegimeThresholds::default());
    let panel = generate_market(&MarketModel::mixed(), RandomSeed(11))?;
    let sigma = default_fict_sigma(&panel)?;
    let panel = fictitious_currency(&panel, code("USD"), sigma, RandomSeed(1), FictMode::RandomWalk)?;
    println!("fictitious step size {sigma:.5}");

    let r = returns(&panel.rebase(code("CHF"))?, 1)?;
    show("CHF", &analyze_returns(&r, &fit, &thresholds)?);
    show("CHF shuffled", &analyze_returns(&shuffle_returns(&r, RandomSeed(42)), &fit, &thresholds)?);
    show("FIC", &analyze_returns(&returns(&panel.rebase(code(FICTITIOUS_CODE))?, 1)?, &fit, &thresholds)?);
    show("USD", &analyze_returns(&returns(&panel.rebase(code("USD"))?, 1)?, &fit, &thresholds)?);
    Ok(())
}
