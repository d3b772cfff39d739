//! Minimal spanning trees of the correlation distance `d = sqrt((1 - C) / 2)`.

mod distance;
mod export;
mod tree;
mod union_find;

pub use distance::{distances, DistanceMatrix, CORRELATION_TOLERANCE};
pub use export::{edge_list, export_dot, multiplicity_list, DotStyle};
pub use tree::{build_mst, Edge, MstTree};
pub use union_find::UnionFind;
