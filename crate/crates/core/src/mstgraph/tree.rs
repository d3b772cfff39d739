use std::collections::{BTreeMap, BTreeSet};

use super::distance::DistanceMatrix;
use super::union_find::UnionFind;
use crate::error::{Error, Result};
use crate::timeseries::CurrencyCode;

/// Tree edge ("leg") with endpoints in code order, `a < b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub a: CurrencyCode,
    pub b: CurrencyCode,
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MstTree {
    base: CurrencyCode,
    nodes: Vec<CurrencyCode>,
    edges: Vec<Edge>,
    multiplicities: BTreeMap<CurrencyCode, usize>,
    degenerate: BTreeSet<CurrencyCode>,
}

impl MstTree {
    pub fn base(&self) -> CurrencyCode {
        self.base
    }

    pub fn nodes(&self) -> &[CurrencyCode] {
        &self.nodes
    }

    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    /// Edges in the order Kruskal accepted them.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Number of legs `K` attached to each node.
    pub fn multiplicities(&self) -> &BTreeMap<CurrencyCode, usize> {
        &self.multiplicities
    }

    pub fn multiplicity(&self, code: CurrencyCode) -> Option<usize> {
        self.multiplicities.get(&code).copied()
    }

    /// Nodes whose return series was constant.
    pub fn degenerate(&self) -> &BTreeSet<CurrencyCode> {
        &self.degenerate
    }

    /// Sum of edge distances, accumulated in ascending order.
    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.distance).sum()
    }

    /// The node with the most legs (smallest code on ties).
    pub fn hub(&self) -> Option<(CurrencyCode, usize)> {
        self.multiplicities.iter().fold(None, |best, (c, k)| match best {
            Some((_, bk)) if bk >= *k => best,
            _ => Some((*c, *k)),
        })
    }
}

/// Kruskal's algorithm on the complete graph of `d`.
///
/// Edges are scanned by ascending distance, ties broken by the endpoint
/// codes `(min, max)`, and kept when they join two components.
pub fn build_mst(d: &DistanceMatrix) -> Result<MstTree> {
    let n = d.n();
    if n < 2 {
        return Err(Error::InsufficientData(format!("a spanning tree needs at least 2 nodes, got {n}")));
    }
    let codes = d.currencies();
    let mut candidates: Vec<(f64, CurrencyCode, CurrencyCode, usize, usize)> = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let (lo, hi) = if codes[i] < codes[j] { (i, j) } else { (j, i) };
            candidates.push((d.get(i, j), codes[lo], codes[hi], lo, hi));
        }
    }
    candidates.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));

    let mut sets = UnionFind::new(n);
    let mut edges = Vec::with_capacity(n - 1);
    let mut legs = vec![0usize; n];
    for (distance, a, b, i, j) in candidates {
        if sets.union(i, j) {
            edges.push(Edge { a, b, distance });
            legs[i] += 1;
            legs[j] += 1;
            if edges.len() == n - 1 {
                break;
            }
        }
    }
    let multiplicities = codes.iter().copied().zip(legs).collect();
    let degenerate = codes.iter().zip(d.degenerate_flags()).filter(|(_, f)| **f).map(|(c, _)| *c).collect();
    Ok(MstTree { base: d.base(), nodes: codes.to_vec(), edges, multiplicities, degenerate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::timeseries::code;

    fn dm(codes: &[&str], upper: &[f64]) -> DistanceMatrix {
        let n = codes.len();
        let mut e = vec![0.0; n * n];
        let mut k = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                e[i * n + j] = upper[k];
                e[j * n + i] = upper[k];
                k += 1;
            }
        }
        DistanceMatrix::from_entries(code("USD"), codes.iter().map(|c| code(c)).collect(), e).unwrap()
    }

    #[test]
    fn two_nodes_make_one_edge() {
        let t = build_mst(&dm(&["EUR", "JPY"], &[0.4])).unwrap();
        assert_eq!(t.edges().len(), 1);
        assert_eq!(t.multiplicity(code("EUR")), Some(1));
        assert_eq!(t.multiplicity(code("JPY")), Some(1));
    }

    #[test]
    fn three_node_example() {
        // d(1,2) = 0.1, d(1,3) = 0.2, d(2,3) = 0.3; the three spanning trees
        // weigh 0.3, 0.4 and 0.5
        let t = build_mst(&dm(&["AAA", "BBB", "CCC"], &[0.1, 0.2, 0.3])).unwrap();
        let pairs: Vec<(&str, &str)> = t.edges().iter().map(|e| (e.a.as_str(), e.b.as_str())).collect();
        assert_eq!(pairs, vec![("AAA", "BBB"), ("AAA", "CCC")]);
        assert_eq!(t.multiplicity(code("AAA")), Some(2));
        assert_eq!(t.multiplicity(code("BBB")), Some(1));
        assert!((t.total_weight() - 0.3).abs() < 1e-15);
    }

    #[test]
    fn ties_break_on_codes() {
        // every distance equal: accepted edges follow (min, max) code order
        let t = build_mst(&dm(&["CCC", "AAA", "BBB", "DDD"], &[0.5; 6])).unwrap();
        let pairs: Vec<(&str, &str)> = t.edges().iter().map(|e| (e.a.as_str(), e.b.as_str())).collect();
        assert_eq!(pairs, vec![("AAA", "BBB"), ("AAA", "CCC"), ("AAA", "DDD")]);
        assert_eq!(t.hub(), Some((code("AAA"), 3)));
    }

    #[test]
    fn single_node_is_rejected() {
        let d = DistanceMatrix::from_entries(code("USD"), vec![code("EUR")], vec![0.0]).unwrap();
        assert!(build_mst(&d).is_err());
    }
}
