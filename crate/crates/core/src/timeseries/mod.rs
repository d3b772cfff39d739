//! Exchange-rate panels: ingestion, cleaning, rebasing and log-returns.

mod currency;
mod panel;
mod returns;

pub use currency::{
    code, CurrencyCode, Group, GroupTable, FICTITIOUS_CODE, LESS_LIQUID, LIQUID, MAJOR, METALS, NON_TRADABLE,
};
pub use panel::{
    clean, load_panel, parse_panel, parse_quotes, CleaningConfig, CleaningReport, RatePanel, RawQuotes, Repair,
    RepairPolicy,
};
pub use returns::{log_returns, returns, triangle_residual, PairQuotes, RateSource, ReturnMatrix, DEGENERATE_SD};
