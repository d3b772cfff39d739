use fxmst::corrnet::RegimeThresholds;
use fxmst::nullmodel::{default_fict_sigma, fictitious_currency, generate_market, FictMode, MarketModel, RandomSeed};
use fxmst::pipeline::analyze_returns;
use fxmst::scaling::FitConfig;
use fxmst::timeseries::{code, returns, FICTITIOUS_CODE};

#[test]
fn noise_currency_as_base_sits_in_the_upper_typical_band() {
    let mut ratios = Vec::new();
    for seed in 0..8 {
        let panel = generate_market(&MarketModel::mixed(), RandomSeed(seed)).unwrap();
        let sigma = default_fict_sigma(&panel).unwrap();
        let panel =
            fictitious_currency(&panel, code("USD"), sigma, RandomSeed(seed + 100), FictMode::RandomWalk).unwrap();
        let r = returns(&panel.rebase(code(FICTITIOUS_CODE)).unwrap(), 1).unwrap();
        let a = analyze_returns(&r, &FitConfig::default(), &RegimeThresholds::default()).unwrap();
        ratios.push(a.spectrum.lambda_max / a.n() as f64);
    }
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    assert!((0.525..=0.65).contains(&mean), "mean lambda_max / N = {mean:.3} from {ratios:?}");
}
