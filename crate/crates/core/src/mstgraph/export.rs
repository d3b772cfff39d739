use std::collections::BTreeMap;
use std::fmt::Write;

use super::tree::MstTree;
use crate::timeseries::{Group, GroupTable};

/// Node fill colours per currency group.
#[derive(Clone, Debug, PartialEq)]
pub struct DotStyle {
    pub colors: BTreeMap<Group, String>,
    pub unassigned: String,
}

impl Default for DotStyle {
    fn default() -> Self {
        let colors = [
            (Group::AStar, "#e41a1c"),
            (Group::A, "#377eb8"),
            (Group::B, "#4daf4a"),
            (Group::C, "#984ea3"),
            (Group::Metal, "#ffd700"),
            (Group::Fictitious, "#a6a6a6"),
        ]
        .into_iter()
        .map(|(g, c)| (g, c.to_string()))
        .collect();
        DotStyle { colors, unassigned: "#ffffff".into() }
    }
}

/// Graphviz text for `tree`. Nodes are listed in code order, edges in
/// acceptance order with distances to four decimals; constant-series nodes
/// get a dashed outline.
pub fn export_dot(tree: &MstTree, style: &DotStyle, groups: &GroupTable) -> String {
    let mut out = String::new();
    writeln!(out, "graph \"mst_{}\" {{", tree.base()).unwrap();
    writeln!(out, "  label=\"MST, base {}\";", tree.base()).unwrap();
    writeln!(out, "  node [shape=ellipse, style=filled, fontname=\"Helvetica\"];").unwrap();
    let mut nodes = tree.nodes().to_vec();
    nodes.sort();
    for c in nodes {
        let group = groups.group_of(c);
        let color = group.and_then(|g| style.colors.get(&g)).unwrap_or(&style.unassigned);
        let group_label = group.map_or("-", Group::label);
        let k = tree.multiplicity(c).unwrap_or(0);
        let extra = if tree.degenerate().contains(&c) { ", style=\"filled,dashed\", degenerate=true" } else { "" };
        writeln!(out, "  \"{c}\" [label=\"{c}\", fillcolor=\"{color}\", group=\"{group_label}\", K={k}{extra}];")
            .unwrap();
    }
    for e in tree.edges() {
        writeln!(out, "  \"{}\" -- \"{}\" [label=\"{:.4}\"];", e.a, e.b, e.distance).unwrap();
    }
    out.push_str("}\n");
    out
}

/// `a,b,distance` lines in acceptance order.
pub fn edge_list(tree: &MstTree) -> String {
    let mut out = String::from("a,b,distance\n");
    for e in tree.edges() {
        writeln!(out, "{},{},{:.12}", e.a, e.b, e.distance).unwrap();
    }
    out
}

/// `code,k` lines in code order.
pub fn multiplicity_list(tree: &MstTree) -> String {
    let mut out = String::from("code,k\n");
    for (c, k) in tree.multiplicities() {
        writeln!(out, "{c},{k}").unwrap();
    }
    out
}
