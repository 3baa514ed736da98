use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::OutDegreeVector;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[Vertex; 2]", into = "[Vertex; 2]")]
pub struct Arc {
    pub tail: Vertex,
    pub head: Vertex,
}

impl Arc {
    pub fn new(tail: Vertex, head: Vertex) -> Self {
        Arc { tail, head }
    }

    pub fn edge(self) -> Edge {
        Edge::new(self.tail, self.head)
    }

    pub fn reversed(self) -> Arc {
        Arc::new(self.head, self.tail)
    }
}

impl fmt::Debug for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.tail, self.head)
    }
}

impl From<[Vertex; 2]> for Arc {
    fn from(p: [Vertex; 2]) -> Self {
        Arc::new(p[0], p[1])
    }
}

impl From<Arc> for [Vertex; 2] {
    fn from(a: Arc) -> Self {
        [a.tail, a.head]
    }
}

/// An orientation of every edge of an (abstract) graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Orientation {
    graph: Graph,
    tails: BTreeMap<Edge, Vertex>,
}

impl Orientation {
    /// The arcs must orient every edge of `graph` exactly once.
    pub fn new(graph: Graph, arcs: impl IntoIterator<Item = Arc>) -> Result<Self> {
        let mut tails = BTreeMap::new();
        for a in arcs {
            let e = Edge::try_new(a.tail, a.head)?;
            if !graph.has_edge(e) {
                return Err(Error::InvalidInput(format!("arc {a:?} is not an edge of the graph")));
            }
            if tails.insert(e, a.tail).is_some() {
                return Err(Error::InvalidInput(format!("edge {e:?} oriented twice")));
            }
        }
        if tails.len() != graph.num_edges() {
            let missing = graph.edges().find(|e| !tails.contains_key(e)).unwrap();
            return Err(Error::InvalidInput(format!("edge {missing:?} is not oriented")));
        }
        Ok(Orientation { graph, tails })
    }

    /// Builds the graph from the arcs themselves, plus extra isolated vertices.
    pub fn from_arcs(
        vertices: impl IntoIterator<Item = Vertex>,
        arcs: impl IntoIterator<Item = Arc> + Clone,
    ) -> Result<Self> {
        let mut vs: Vec<Vertex> = vertices.into_iter().collect();
        vs.extend(arcs.clone().into_iter().flat_map(|a| [a.tail, a.head]));
        vs.sort_unstable();
        vs.dedup();
        let graph = Graph::from_edges(vs, arcs.clone().into_iter().map(|a| (a.tail, a.head)))?;
        Orientation::new(graph, arcs)
    }

    /// Every edge oriented from the endpoint that comes first in `order`.
    pub fn acyclic(graph: Graph, order: &[Vertex]) -> Result<Self> {
        let rank: BTreeMap<Vertex, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        if graph.vertices().any(|v| !rank.contains_key(&v)) {
            return Err(Error::InvalidInput("order does not cover all vertices".into()));
        }
        let tails = graph
            .edges()
            .map(|e| {
                let t = if rank[&e.lo()] < rank[&e.hi()] { e.lo() } else { e.hi() };
                (e, t)
            })
            .collect();
        Ok(Orientation { graph, tails })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn num_arcs(&self) -> usize {
        self.tails.len()
    }

    /// Arcs in ascending edge order.
    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.tails.iter().map(|(&e, &t)| Arc::new(t, e.other(t)))
    }

    pub fn arc_of(&self, e: Edge) -> Option<Arc> {
        self.tails.get(&e).map(|&t| Arc::new(t, e.other(t)))
    }

    pub fn has_arc(&self, a: Arc) -> bool {
        self.tails.get(&a.edge()) == Some(&a.tail)
    }

    pub fn out_degree(&self, v: Vertex) -> u32 {
        self.graph
            .neighbors(v)
            .filter(|&u| self.tails[&Edge::new(u, v)] == v)
            .count() as u32
    }

    pub fn in_degree(&self, v: Vertex) -> u32 {
        self.graph.degree(v) as u32 - self.out_degree(v)
    }

    pub fn out_degrees(&self) -> OutDegreeVector {
        let mut d: BTreeMap<Vertex, u32> = self.graph.vertices().map(|v| (v, 0)).collect();
        for &t in self.tails.values() {
            *d.get_mut(&t).unwrap() += 1;
        }
        OutDegreeVector::from(d)
    }

    pub fn max_out_degree(&self) -> u32 {
        self.out_degrees().values().max().unwrap_or(0)
    }

    pub fn is_sink(&self, v: Vertex) -> bool {
        self.out_degree(v) == 0
    }

    /// Out-neighbours of `v` in ascending order.
    pub fn out_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.graph
            .neighbors(v)
            .filter(|&u| self.tails[&Edge::new(u, v)] == v)
            .collect()
    }

    /// Number of arcs pointing from a larger to a smaller vertex id.
    pub fn descending_arcs(&self) -> usize {
        self.tails.iter().filter(|(e, &t)| t == e.hi()).count()
    }

    pub fn without_edge(&self, e: Edge) -> Result<Orientation> {
        let graph = self.graph.without_edge(e)?;
        let mut tails = self.tails.clone();
        tails.remove(&e);
        Ok(Orientation { graph, tails })
    }

    /// Adds an arc; missing endpoints are added as new vertices.
    pub fn with_arc(&self, a: Arc) -> Result<Orientation> {
        let graph = self.graph.with_vertex(a.tail).with_vertex(a.head).with_edge(a.edge())?;
        let mut tails = self.tails.clone();
        tails.insert(a.edge(), a.tail);
        Ok(Orientation { graph, tails })
    }

    /// Removes an isolated vertex.
    pub fn without_isolated_vertex(&self, v: Vertex) -> Result<Orientation> {
        if self.graph.degree(v) != 0 {
            return Err(Error::Precondition(format!("vertex {v} is not isolated")));
        }
        Ok(Orientation {
            graph: self.graph.without_vertex(v)?,
            tails: self.tails.clone(),
        })
    }

    pub fn with_reversed(&self, e: Edge) -> Result<Orientation> {
        let t = *self
            .tails
            .get(&e)
            .ok_or_else(|| Error::Precondition(format!("edge {e:?} not oriented")))?;
        let mut tails = self.tails.clone();
        tails.insert(e, e.other(t));
        Ok(Orientation {
            graph: self.graph.clone(),
            tails,
        })
    }

    /// Disjoint-edge union; shared vertices are identified.
    pub fn union(&self, other: &Orientation) -> Result<Orientation> {
        Orientation::from_arcs(
            self.graph.vertices().chain(other.graph.vertices()),
            self.arcs().chain(other.arcs()).collect::<Vec<_>>(),
        )
    }
}
