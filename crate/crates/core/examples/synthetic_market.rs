//! Draw a synthetic panel from a model file and write it in the input format.
//!
//! `cargo run --example synthetic_market -- 42 > panel.csv`

use fxmst::nullmodel::{generate_market, MarketModel, RandomSeed};

const MODEL: &str = include_str!("data/mixed.toml");

fn main() -> fxmst::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let model = MarketModel::from_toml(MODEL)?;
    let panel = generate_market(&model, RandomSeed(seed))?;
    eprintln!("{} currencies against {}, {} observations", panel.n_series(), panel.base(), panel.len());
    print!("{}", panel.to_long_text());
    Ok(())
}
