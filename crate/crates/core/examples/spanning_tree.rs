//! Minimal spanning tree for one base currency, printed as Graphviz DOT.
//!
//! `cargo run --example spanning_tree | dot -Tsvg > tree.svg`

use fxmst::corrnet::correlation;
use fxmst::mstgraph::{build_mst, distances, export_dot, DotStyle};
use fxmst::nullmodel::{generate_market, MarketModel, RandomSeed};
use fxmst::timeseries::{code, returns, GroupTable};

fn main() -> fxmst::Result<()> {
    let panel = generate_market(&MarketModel::mixed(), RandomSeed(3))?;
    let c = correlation(&returns(&panel.rebase(code("CHF"))?, 1)?)?;
    let tree = build_mst(&distances(&c)?)?;

    let (hub, legs) = tree.hub().expect("non-empty tree");
    eprintln!("{} nodes, weight {:.3}, hub {hub} with {legs} legs", tree.n(), tree.total_weight());
    print!("{}", export_dot(&tree, &DotStyle::default(), &GroupTable::default()));
    Ok(())
}
