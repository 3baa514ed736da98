//! Simple undirected graphs over stable integer vertex ids.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = u32;

/// An unordered vertex pair, stored with the smaller id first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[Vertex; 2]", into = "[Vertex; 2]")]
pub struct Edge {
    lo: Vertex,
    hi: Vertex,
}

impl Edge {
    /// Panics on a loop; use [`Edge::try_new`] for untrusted input.
    pub fn new(a: Vertex, b: Vertex) -> Self {
        Self::try_new(a, b).expect("loop edge")
    }

    pub fn try_new(a: Vertex, b: Vertex) -> Result<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Edge { lo: a, hi: b }),
            std::cmp::Ordering::Greater => Ok(Edge { lo: b, hi: a }),
            std::cmp::Ordering::Equal => Err(Error::InvalidInput(format!("loop at vertex {a}"))),
        }
    }

    pub fn lo(self) -> Vertex {
        self.lo
    }

    pub fn hi(self) -> Vertex {
        self.hi
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.lo == v || self.hi == v
    }

    /// The endpoint that is not `v`. `v` must be an endpoint.
    pub fn other(self, v: Vertex) -> Vertex {
        debug_assert!(self.contains(v));
        if self.lo == v {
            self.hi
        } else {
            self.lo
        }
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

impl TryFrom<[Vertex; 2]> for Edge {
    type Error = Error;
    fn try_from(p: [Vertex; 2]) -> Result<Self> {
        Edge::try_new(p[0], p[1])
    }
}

impl From<Edge> for [Vertex; 2] {
    fn from(e: Edge) -> Self {
        [e.lo, e.hi]
    }
}

/// Undirected simple graph. Values are immutable in spirit: the structural
/// operations return new graphs.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct Graph {
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

impl Graph {
    pub fn empty() -> Self {
        Graph::default()
    }

    pub fn from_edges<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = Vertex>,
        E: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj: BTreeMap<Vertex, BTreeSet<Vertex>> =
            vertices.into_iter().map(|v| (v, BTreeSet::new())).collect();
        for (a, b) in edges {
            let e = Edge::try_new(a, b)?;
            if !adj.contains_key(&a) {
                return Err(Error::unknown_vertex(a));
            }
            if !adj.contains_key(&b) {
                return Err(Error::unknown_vertex(b));
            }
            if !adj.get_mut(&e.lo).unwrap().insert(e.hi) {
                return Err(Error::InvalidInput(format!("duplicate edge {e:?}")));
            }
            adj.get_mut(&e.hi).unwrap().insert(e.lo);
        }
        Ok(Graph { adj })
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.adj.keys().next_back().copied()
    }

    /// Edges in ascending `(lo, hi)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, ns)| ns.range(u + 1..).map(move |&v| Edge { lo: u, hi: v }))
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.adj.get(&e.lo).is_some_and(|ns| ns.contains(&e.hi))
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.get(&v).into_iter().flatten().copied()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn with_vertex(&self, v: Vertex) -> Graph {
        let mut g = self.clone();
        g.adj.entry(v).or_default();
        g
    }

    pub fn with_edge(&self, e: Edge) -> Result<Graph> {
        if !self.has_vertex(e.lo) {
            return Err(Error::unknown_vertex(e.lo));
        }
        if !self.has_vertex(e.hi) {
            return Err(Error::unknown_vertex(e.hi));
        }
        if self.has_edge(e) {
            return Err(Error::InvalidInput(format!("duplicate edge {e:?}")));
        }
        let mut g = self.clone();
        g.adj.get_mut(&e.lo).unwrap().insert(e.hi);
        g.adj.get_mut(&e.hi).unwrap().insert(e.lo);
        Ok(g)
    }

    pub fn without_edge(&self, e: Edge) -> Result<Graph> {
        if !self.has_edge(e) {
            return Err(Error::Precondition(format!("edge {e:?} not in graph")));
        }
        let mut g = self.clone();
        g.adj.get_mut(&e.lo).unwrap().remove(&e.hi);
        g.adj.get_mut(&e.hi).unwrap().remove(&e.lo);
        Ok(g)
    }

    pub fn without_edges<'a>(&self, es: impl IntoIterator<Item = &'a Edge>) -> Result<Graph> {
        let mut g = self.clone();
        for &e in es {
            g = g.without_edge(e)?;
        }
        Ok(g)
    }

    pub fn without_vertex(&self, v: Vertex) -> Result<Graph> {
        let Some(ns) = self.adj.get(&v) else {
            return Err(Error::unknown_vertex(v));
        };
        let mut g = self.clone();
        for u in ns {
            g.adj.get_mut(u).unwrap().remove(&v);
        }
        g.adj.remove(&v);
        Ok(g)
    }

    /// True when every vertex and edge of `self` is present in `other`.
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.vertices().all(|v| other.has_vertex(v)) && self.edges().all(|e| other.has_edge(e))
    }

    /// Connected components, each as an ascending vertex list, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for s in self.vertices() {
            if !seen.insert(s) {
                continue;
            }
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u) {
                    if seen.insert(w) {
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// At least three vertices, connected, and no cut vertex.
    pub fn is_2_connected(&self) -> bool {
        if self.num_vertices() < 3 || !self.is_connected() {
            return false;
        }
        self.cut_vertices().is_empty()
    }

    /// Articulation points via iterative lowpoint DFS.
    pub fn cut_vertices(&self) -> BTreeSet<Vertex> {
        let mut disc: BTreeMap<Vertex, usize> = BTreeMap::new();
        let mut low: BTreeMap<Vertex, usize> = BTreeMap::new();
        let mut cuts = BTreeSet::new();
        let mut timer = 0;
        for root in self.vertices() {
            if disc.contains_key(&root) {
                continue;
            }
            let mut root_children = 0;
            disc.insert(root, timer);
            low.insert(root, timer);
            timer += 1;
            // (vertex, parent, neighbour list, next index)
            let mut stack: Vec<(Vertex, Option<Vertex>, Vec<Vertex>, usize)> =
                vec![(root, None, self.neighbors(root).collect(), 0)];
            while let Some(top) = stack.last_mut() {
                let (u, parent) = (top.0, top.1);
                if top.3 < top.2.len() {
                    let w = top.2[top.3];
                    top.3 += 1;
                    if Some(w) == parent {
                        continue;
                    }
                    if let Some(&dw) = disc.get(&w) {
                        let lu = low[&u].min(dw);
                        low.insert(u, lu);
                    } else {
                        disc.insert(w, timer);
                        low.insert(w, timer);
                        timer += 1;
                        if u == root {
                            root_children += 1;
                        }
                        stack.push((w, Some(u), self.neighbors(w).collect(), 0));
                    }
                } else {
                    stack.pop();
                    if let Some(p) = parent {
                        let lp = low[&p].min(low[&u]);
                        low.insert(p, lp);
                        if p != root && low[&u] >= disc[&p] {
                            cuts.insert(p);
                        }
                    }
                }
            }
            if root_children > 1 {
                cuts.insert(root);
            }
        }
        cuts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: u32) -> Graph {
        Graph::from_edges(0..n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: u32) -> Graph {
        Graph::from_edges(0..n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn edge_normalizes_and_rejects_loops() {
        assert_eq!(Edge::new(5, 2), Edge::new(2, 5));
        assert_eq!(Edge::new(5, 2).lo(), 2);
        assert!(Edge::try_new(3, 3).is_err());
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(Graph::from_edges(0..2, [(0, 5)]).is_err());
        assert!(Graph::from_edges(0..2, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(0..2, [(1, 1)]).is_err());
    }

    #[test]
    fn two_connectivity() {
        assert!(!path(3).is_2_connected());
        assert!(cycle(4).is_2_connected());
        assert_eq!(path(4).cut_vertices(), BTreeSet::from([1, 2]));
        // two triangles sharing a vertex
        let bowtie =
            Graph::from_edges(0..5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(bowtie.cut_vertices(), BTreeSet::from([2]));
        assert!(!Graph::from_edges(0..2, [(0, 1)]).unwrap().is_2_connected());
    }

    #[test]
    fn edge_removal_and_subgraph() {
        let c = cycle(5);
        let p = c.without_edge(Edge::new(4, 0)).unwrap();
        assert_eq!(p, path(5));
        assert!(p.is_subgraph_of(&c));
        assert!(!c.is_subgraph_of(&p));
        assert!(c.without_edge(Edge::new(0, 2)).is_err());
        let d = c.without_vertex(0).unwrap();
        assert_eq!(d.num_edges(), 3);
        assert_eq!(d.components().len(), 1);
    }
}
