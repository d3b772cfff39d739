//! Rebase a panel to another unit of account and check the triangle rule,
//! first on cross-derived rates and then on independently quoted pairs.

use fxmst::nullmodel::{generate_market, MarketModel, RandomSeed};
use fxmst::timeseries::{code, returns, triangle_residual, PairQuotes, RateSource};

fn main() -> fxmst::Result<()> {
    let panel = generate_market(&MarketModel::mixed(), RandomSeed(1))?;
    let in_eur = panel.rebase(code("EUR"))?;
    println!("{} series in {}, {} series in EUR", panel.n_series(), panel.base(), in_eur.n_series());

    let r = returns(&in_eur, 1)?;
    println!("{} returns per series, first USD/EUR return {:+.5}", r.len(), r.raw_row(0)[0]);

    let (usd, jpy, chf) = (code("USD"), code("JPY"), code("CHF"));
    println!("cross-derived residual: {:.2e}", triangle_residual(&in_eur, usd, jpy, chf, 1)?);

    // quote the three pairs directly, with a small error on one of them
    let mut quotes = PairQuotes::new(panel.len());
    quotes.insert(usd, jpy, panel.cross_series(usd, jpy)?)?;
    quotes.insert(jpy, chf, panel.cross_series(jpy, chf)?)?;
    let noisy =
        panel.cross_series(chf, usd)?.iter().enumerate().map(|(t, x)| x * (1.0 + 1e-4 * (t % 3) as f64)).collect();
    quotes.insert(chf, usd, noisy)?;
    println!("quoted residual:        {:.2e}", triangle_residual(&quotes, usd, jpy, chf, 1)?);
    Ok(())
}
