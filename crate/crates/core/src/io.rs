//! JSON and DOT formats.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::at_core::{Arc, Orientation};
use crate::at_planar::Certificate;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::plane_graph::PlaneGraph;

/// Wire form of a plane graph. Rotations list neighbours counter-clockwise.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<Vertex>,
    pub rotations: BTreeMap<Vertex, Vec<Vertex>>,
    pub outer_face: Vec<Vertex>,
    /// How the graph was produced, including any seed. Not part of the digest.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
}

impl From<&PlaneGraph> for GraphJson {
    fn from(g: &PlaneGraph) -> Self {
        GraphJson {
            vertices: g.graph().vertices().collect(),
            rotations: g.rotations().clone(),
            outer_face: g.outer_face().to_vec(),
            generator: None,
        }
    }
}

impl TryFrom<GraphJson> for PlaneGraph {
    type Error = Error;
    fn try_from(j: GraphJson) -> Result<Self> {
        let listed: Vec<Vertex> = {
            let mut v = j.vertices.clone();
            v.sort_unstable();
            v.dedup();
            if v.len() != j.vertices.len() {
                return Err(Error::InvalidInput("duplicate entry in vertices".into()));
            }
            v
        };
        let keys: Vec<Vertex> = j.rotations.keys().copied().collect();
        if listed != keys {
            return Err(Error::InvalidInput(
                "vertices and rotation keys differ".into(),
            ));
        }
        PlaneGraph::new(j.rotations, j.outer_face)
    }
}

pub fn parse_graph(s: &str) -> Result<PlaneGraph> {
    let j: GraphJson = serde_json::from_str(s)?;
    j.try_into()
}

pub fn graph_to_json(g: &PlaneGraph) -> String {
    serde_json::to_string_pretty(&GraphJson::from(g)).expect("graph serializes")
}

pub fn graph_to_json_with_generator(g: &PlaneGraph, generator: &str) -> String {
    let mut j = GraphJson::from(g);
    j.generator = Some(generator.to_string());
    serde_json::to_string_pretty(&j).expect("graph serializes")
}

/// Compact JSON of the canonical form; the digest input.
pub fn graph_to_json_compact(g: &PlaneGraph) -> String {
    serde_json::to_string(&GraphJson::from(&g.canonical())).expect("graph serializes")
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrientationJson {
    pub arcs: Vec<Arc>,
}

/// Parses arcs that must orient exactly the edges of `g`.
pub fn parse_orientation(s: &str, g: &Graph) -> Result<Orientation> {
    let j: OrientationJson = serde_json::from_str(s)?;
    Orientation::new(g.clone(), j.arcs)
}

/// Parses a free-standing digraph; the vertex set is the arc endpoints.
pub fn parse_arcs(s: &str) -> Result<Orientation> {
    let j: OrientationJson = serde_json::from_str(s)?;
    Orientation::from_arcs([], j.arcs)
}

pub fn orientation_to_json(o: &Orientation) -> String {
    serde_json::to_string_pretty(&OrientationJson {
        arcs: o.arcs().collect(),
    })
    .expect("orientation serializes")
}

pub fn graph_to_dot(g: &PlaneGraph) -> String {
    let mut s = String::from("graph G {\n");
    for v in g.graph().vertices() {
        let _ = writeln!(s, "  {v};");
    }
    for e in g.graph().edges() {
        let _ = writeln!(s, "  {} -- {};", e.lo(), e.hi());
    }
    s.push_str("}\n");
    s
}

/// Arcs directed, matching edges dashed, boundary vertices labelled with
/// their budget.
pub fn certificate_to_dot(g: &PlaneGraph, c: &Certificate) -> String {
    let boundary: std::collections::BTreeSet<Vertex> = g.outer_face().iter().copied().collect();
    let mut s = String::from("digraph G {\n");
    for v in g.graph().vertices() {
        match (boundary.contains(&v), c.budget.get(&v)) {
            (true, Some(f)) => {
                let _ = writeln!(s, "  {v} [label=\"{v}\\nf={f}\", shape=box];");
            }
            _ => {
                let _ = writeln!(s, "  {v};");
            }
        }
    }
    for a in &c.arcs {
        let _ = writeln!(s, "  {} -> {};", a.tail, a.head);
    }
    for e in &c.matching {
        let _ = writeln!(s, "  {} -> {} [dir=none, style=dashed];", e.lo(), e.hi());
    }
    s.push_str("}\n");
    s
}
