//! Largest eigenvalue of the correlation matrix for a handful of base currencies.

use fxmst::corrnet::{
    correlation, second_eigenvalue_separation, spectrum, spectrum_table, RegimeThresholds, SpectrumRow,
};
use fxmst::nullmodel::{generate_market, MarketModel, RandomSeed};
use fxmst::timeseries::{code, returns, GroupTable};

fn main() -> fxmst::Result<()> {
    let panel = generate_market(&MarketModel::mixed(), RandomSeed(7))?;
    let groups = GroupTable::default();
    let thresholds = RegimeThresholds::default();

    let mut rows = Vec::new();
    for base in ["USD", "EUR", "CHF", "XDR", "GHC", "VEB"] {
        let base = code(base);
        let c = correlation(&returns(&panel.rebase(base)?, 1)?)?;
        let report = spectrum(&c, &thresholds)?;
        println!(
            "{base}: trace {:.1}, second-eigenvalue separation {:.2}",
            c.trace(),
            second_eigenvalue_separation(&report)?
        );
        rows.push(SpectrumRow::new(base, groups.group_of(base), &report));
    }
    print!("{}", spectrum_table(&rows));
    Ok(())
}
