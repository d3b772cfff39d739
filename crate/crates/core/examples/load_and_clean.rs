//! Parse a long-form rate file, repair a misprinted quote and report what changed.

use fxmst::nullmodel::{generate_market, MarketModel, RandomSeed};
use fxmst::timeseries::{parse_panel, CleaningConfig, RepairPolicy};

const TOY: &str = include_str!("data/toy.csv");

fn main() -> fxmst::Result<()> {
    let (toy, _) = parse_panel(TOY, &CleaningConfig::default())?;
    println!("toy file: {} dates, base {}, currencies {:?}", toy.len(), toy.base(), toy.currencies());

    // a longer panel with one quote misprinted by a factor of ten
    let panel = generate_market(&MarketModel::one_factor(12, 0.5, 400), RandomSeed(3))?;
    let target = format!("{},{},", panel.dates()[200], panel.currencies()[1]);
    let mut lines: Vec<String> = panel.to_long_text().lines().map(str::to_owned).collect();
    let i = lines.iter().position(|l| l.starts_with(&target)).expect("quote present");
    let (head, rate) = lines[i].rsplit_once(',').unwrap();
    lines[i] = format!("{head},{}", 10.0 * rate.parse::<f64>().unwrap());
    let text = lines.join("\n");

    for policy in [RepairPolicy::DropDay, RepairPolicy::Clip, RepairPolicy::Interpolate] {
        let config = CleaningConfig { policy, ..CleaningConfig::default() };
        let (cleaned, report) = parse_panel(&text, &config)?;
        println!("{policy:?}: {} dates kept, {} passes", cleaned.len(), report.passes);
        for r in &report.repairs {
            println!("  {} on {} ({:+.1} sigma)", r.currency, r.date, r.sigmas);
        }
        for d in &report.dropped_dates {
            println!("  dropped {d}");
        }
    }
    Ok(())
}
