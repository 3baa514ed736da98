//! Orientations, Eulerian sub-digraph parity counts, graph-polynomial
//! coefficients, degree budgets and brute-force Alon-Tarsi oracles.
//!
//! Sign convention: each edge contributes the factor `(x_u - x_v)` with
//! `u < v`. For an orientation `D` with out-degree vector `d`, the
//! coefficient of `prod x_v^d(v)` equals `(-1)^b * diff(D)`, where `b` is
//! the number of arcs of `D` pointing from a larger to a smaller id.

mod budget;
mod euler;
mod flow;
mod orientation;
mod poly;
mod search;

pub use budget::{DegreeBudget, OutDegreeVector};
pub use euler::{diff_enum, diff_enum_capped, EulerianCount, DEFAULT_ENUM_CAP};
pub use flow::orientation_with_outdegrees;
pub use orientation::{Arc, Orientation};
pub use poly::{coeff, coeff_capped, diff_coeff, diff_coeff_capped, DEFAULT_MONOMIAL_CAP};
pub use search::{at_number, find_f_at_orientation, is_f_at, BRUTE_FORCE_EDGE_CAP};

use std::collections::BTreeMap;

use crate::graph::{Edge, Graph, Vertex};

/// Edges ordered so that few vertices are partially processed at any time:
/// vertices are placed greedily to keep the frontier (placed vertices with
/// unplaced neighbours) small, and edges follow their later endpoint.
pub(crate) fn edge_order(graph: &Graph) -> Vec<Edge> {
    let mut pos: BTreeMap<Vertex, usize> = BTreeMap::new();
    // unplaced neighbours per vertex
    let mut open: BTreeMap<Vertex, usize> = graph.vertices().map(|v| (v, graph.degree(v))).collect();
    let mut placed_nbrs: BTreeMap<Vertex, usize> = graph.vertices().map(|v| (v, 0)).collect();
    while pos.len() < graph.num_vertices() {
        let mut best: Option<((isize, std::cmp::Reverse<usize>), Vertex)> = None;
        for v in graph.vertices().filter(|v| !pos.contains_key(v)) {
            let closes = graph
                .neighbors(v)
                .filter(|u| pos.contains_key(u) && open[u] == 1)
                .count() as isize;
            let opens = (open[&v] > 0) as isize;
            let key = (opens - closes, std::cmp::Reverse(placed_nbrs[&v]));
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                best = Some((key, v));
            }
        }
        let (_, v) = best.unwrap();
        pos.insert(v, pos.len());
        for u in graph.neighbors(v).collect::<Vec<_>>() {
            *open.get_mut(&u).unwrap() -= 1;
            *placed_nbrs.get_mut(&u).unwrap() += 1;
        }
    }
    let mut edges: Vec<Edge> = graph.edges().collect();
    edges.sort_by_key(|e| {
        let (a, b) = (pos[&e.lo()], pos[&e.hi()]);
        (a.max(b), a.min(b))
    });
    edges
}
