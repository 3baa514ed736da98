//! The boundary-budget induction on near-triangulations and the top-level
//! pipelines producing the two planar certificates.
//!
//! For a 2-connected plane graph `G` with boundary edge `e1 = v1v2`:
//!
//! * `G - e1` is AT for the budget `1` on `v1, v2`, `3` on the rest of the
//!   boundary and `5` inside;
//! * there is a matching `M` containing `e1` such that `G - M` is AT for
//!   `1` on `v1, v2`, `3 - d_M(x)` on the rest of the boundary and `4`
//!   inside.
//!
//! The constructive proof splits along boundary chords, and otherwise
//! deletes `v_n`, recurses, and reattaches `v_n` through a gadget of
//! 2-paths whose removal is paid for one vertex at a time.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::at_core::{diff_enum, Arc, DegreeBudget, Orientation};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::io;
use crate::plane_graph::{BoundaryWalk, PlaneGraph};
use crate::witness_ops::{
    add_arc_no_euler, remove_arc_no_euler, remove_deg2_vertex_keep_at, restrict_witness,
    union_one_way, Deg2Removal, EdgeRemoval, WitnessedGraph,
};

/// A set of pairwise disjoint edges.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<Edge>", into = "Vec<Edge>")]
pub struct Matching(BTreeSet<Edge>);

impl Matching {
    pub fn new(edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut m = BTreeSet::new();
        let mut covered = BTreeSet::new();
        for e in edges {
            if !covered.insert(e.lo()) || !covered.insert(e.hi()) {
                return Err(Error::InvalidInput(format!("{e:?} shares a vertex with another matching edge")));
            }
            m.insert(e);
        }
        Ok(Matching(m))
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.0.contains(&e)
    }

    pub fn covers(&self, v: Vertex) -> bool {
        self.0.iter().any(|e| e.contains(v))
    }

    /// `d_M(v)`, 0 or 1.
    pub fn degree(&self, v: Vertex) -> u32 {
        self.covers(v) as u32
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn with(&self, e: Edge) -> Result<Matching> {
        Matching::new(self.edges().chain([e]))
    }
}

impl TryFrom<Vec<Edge>> for Matching {
    type Error = Error;
    fn try_from(v: Vec<Edge>) -> Result<Self> {
        Matching::new(v)
    }
}

impl From<Matching> for Vec<Edge> {
    fn from(m: Matching) -> Self {
        m.0.into_iter().collect()
    }
}

/// The boundary budgets `f_{G,v1v2}` (no matching) and `f_{G,v1v2,M}`.
pub fn boundary_budget(g: &PlaneGraph, b: &BoundaryWalk, matching: Option<&Matching>) -> DegreeBudget {
    g.graph()
        .vertices()
        .map(|x| {
            let value = if x == b.v1() || x == b.v2() {
                1
            } else if b.contains(x) {
                3 - matching.map_or(0, |m| m.degree(x))
            } else if matching.is_some() {
                4
            } else {
                5
            };
            (x, value)
        })
        .collect()
}

/// Pointwise `d+(v) + 1 <= target(v)`; the error lists offending vertices.
pub fn budget_check(w: &WitnessedGraph, target: &DegreeBudget) -> std::result::Result<(), Vec<Vertex>> {
    let bad = DegreeBudget::tight(w.witness()).exceeding(target);
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad)
    }
}

/// The 2-path gadget attached when `v_n` is re-inserted.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GadgetRecord {
    pub peeled: Vertex,
    pub v1: Vertex,
    pub before_peeled: Vertex,
    /// `u_1, ..., u_k` in rotation order from `v1`.
    pub interior: Vec<Vertex>,
    /// `w_1, ..., w_k`, fresh ids.
    pub gadget_vertices: Vec<Vertex>,
}

impl GadgetRecord {
    /// `a_i = (u_i, v_n)`.
    pub fn a(&self, i: usize) -> Arc {
        Arc::new(self.interior[i], self.peeled)
    }

    /// `a'_i = (u_i, w_i)`.
    pub fn a_prime(&self, i: usize) -> Arc {
        Arc::new(self.interior[i], self.gadget_vertices[i])
    }

    /// `a''_i = (w_i, v_n)`.
    pub fn a_double_prime(&self, i: usize) -> Arc {
        Arc::new(self.gadget_vertices[i], self.peeled)
    }

    pub fn b1(&self) -> Arc {
        Arc::new(self.peeled, self.before_peeled)
    }

    pub fn b2(&self) -> Arc {
        Arc::new(self.peeled, self.v1)
    }

    /// The arc set `Z`.
    pub fn arcs(&self) -> Vec<Arc> {
        let mut z: Vec<Arc> = (0..self.interior.len())
            .flat_map(|i| [self.a(i), self.a_prime(i), self.a_double_prime(i)])
            .collect();
        z.push(self.b1());
        z.push(self.b2());
        z
    }
}

/// Both diffs of a gadget extension, computed by enumeration.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ParityCheck {
    pub arcs: usize,
    pub diff_before: i64,
    pub diff_after: i64,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum TraceStep {
    Base {
        depth: usize,
        vertices: [Vertex; 3],
    },
    ChordSplit {
        depth: usize,
        chord: Edge,
        vertices: usize,
        part1_vertices: usize,
        part2_vertices: usize,
    },
    Peel {
        depth: usize,
        vertices: usize,
        gadget: GadgetRecord,
        /// Arc count of the extended digraph `D2`.
        arcs: usize,
        parity: Option<ParityCheck>,
        /// Edge removals restricting `G'' - e1` to `G - e1`.
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        restriction: Vec<EdgeRemoval>,
        /// Degree-2 removals of `w_k, ..., w_1`.
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        removals: Vec<Deg2Removal>,
        /// The `u_i` whose removal reduced `v_n` instead, if any.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        reduced_peeled_at: Option<Vertex>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        matching_extended: Option<Edge>,
    },
    Reinsert {
        arc: Arc,
    },
    Restrict {
        removals: Vec<EdgeRemoval>,
    },
}

/// Tuning knobs for the self-checks run during the induction.
#[derive(Clone, Copy, Debug)]
pub struct ProverConfig {
    /// Gadget extensions with at most this many arcs are re-checked by
    /// direct enumeration.
    pub enum_check_arcs: usize,
}

impl Default for ProverConfig {
    fn default() -> Self {
        ProverConfig { enum_check_arcs: 18 }
    }
}

struct Prover {
    config: ProverConfig,
    trace: Vec<TraceStep>,
}

fn base_case(g: &PlaneGraph, b: &BoundaryWalk) -> Result<WitnessedGraph> {
    let v3 = b.vertices()[2];
    let graph = g.graph().without_edge(b.e1())?;
    let o = Orientation::new(graph, [Arc::new(v3, b.v1()), Arc::new(v3, b.v2())])?;
    WitnessedGraph::new(o, boundary_budget(g, b, None))
}

/// Extends a witness on `G' - X` by the gadget arcs, giving `G'' - X`.
/// The diff is unchanged: sub-digraphs through `a_i` and through
/// `a'_i, a''_i` pair up with opposite parities.
pub fn case2_gadget_build(
    w: &WitnessedGraph,
    gadget: &GadgetRecord,
    config: ProverConfig,
) -> Result<(WitnessedGraph, Option<ParityCheck>)> {
    for a in gadget.arcs() {
        if w.graph().has_edge(a.edge()) {
            return Err(Error::Precondition(format!("gadget arc {a:?} already present")));
        }
    }
    let mut o = w.witness().clone();
    for a in gadget.arcs() {
        o = o.with_arc(a)?;
    }
    let parity = if o.num_arcs() <= config.enum_check_arcs {
        let before = diff_enum(w.witness())?.diff;
        let after = diff_enum(&o)?.diff;
        if before != after {
            return Err(Error::CertificateViolation(format!(
                "gadget changed the enumerated diff from {before} to {after}"
            )));
        }
        // at most 2^arcs sub-digraphs, so both fit comfortably
        Some(ParityCheck {
            arcs: o.num_arcs(),
            diff_before: before as i64,
            diff_after: after as i64,
        })
    } else {
        None
    };
    let budget = DegreeBudget::tight(&o);
    let next = WitnessedGraph::with_claimed_diff(o, budget, w.diff())?;
    Ok((next, parity))
}

fn check_dominated(w: &WitnessedGraph, f: &DegreeBudget, what: &str) -> Result<WitnessedGraph> {
    let bad = w.budget().exceeding(f);
    if !bad.is_empty() {
        return Err(Error::CertificateViolation(format!(
            "{what}: budget exceeds the boundary budget at {bad:?}"
        )));
    }
    w.with_budget(f.clone())
}

fn gadget_for(g: &PlaneGraph, b: &BoundaryWalk, interior: &[Vertex]) -> GadgetRecord {
    let fresh = g.graph().max_vertex().unwrap() + 1;
    GadgetRecord {
        peeled: b.vn(),
        v1: b.v1(),
        before_peeled: b.before_vn(),
        interior: interior.to_vec(),
        gadget_vertices: (0..interior.len() as u32).map(|i| fresh + i).collect(),
    }
}

impl Prover {
    fn new(config: ProverConfig) -> Self {
        Prover {
            config,
            trace: Vec::new(),
        }
    }

    /// `G - e1` with budget `f_{G,v1v2}`.
    fn at(&mut self, g: &PlaneGraph, b: &BoundaryWalk, depth: usize) -> Result<WitnessedGraph> {
        let f = boundary_budget(g, b, None);
        if g.num_vertices() == 3 {
            self.trace.push(TraceStep::Base {
                depth,
                vertices: [b.v1(), b.v2(), b.vertices()[2]],
            });
            return base_case(g, b);
        }
        if let Some(chord) = g.find_chord(b) {
            let split = g.split_at_chord(b, chord)?;
            self.push_split(depth, g, &split.part1, &split.part2, chord);
            let b1 = split.part1.boundary(b.v1(), b.v2())?;
            let b2 = split.part2.boundary(chord.lo(), chord.hi())?;
            let w1 = self.at(&split.part1, &b1, depth + 1)?;
            let w2 = self.at(&split.part2, &b2, depth + 1)?;
            return union_one_way(&w2, &w1, &[], f);
        }

        let del = g.delete_boundary_vertex(b)?;
        let b_prime = del.graph.boundary(b.v1(), b.v2())?;
        let w1 = self.at(&del.graph, &b_prime, depth + 1)?;
        let gadget = gadget_for(g, b, del.interior_neighbors());
        let (w2, parity) = case2_gadget_build(&w1, &gadget, self.config)?;
        let w2_arcs = w2.witness().num_arcs();
        // g = d+_{D2} + 1 must already fit under f on V(G)
        let tight_on_g = w2.budget().restricted_to(g.graph())?;
        let bad = tight_on_g.exceeding(&f);
        if !bad.is_empty() {
            return Err(Error::CertificateViolation(format!(
                "gadget out-degrees exceed f_G at {bad:?}"
            )));
        }
        let target = g.graph().without_edge(b.e1())?;
        let (w3, restriction) = restrict_witness(&w2, &target)?;
        self.trace.push(TraceStep::Peel {
            depth,
            vertices: g.num_vertices(),
            arcs: w2_arcs,
            gadget,
            parity,
            restriction,
            removals: Vec::new(),
            reduced_peeled_at: None,
            matching_extended: None,
        });
        check_dominated(&w3, &f, "case 2")
    }

    /// A matching `M` containing `e1` and `G - M` with budget `f_{G,v1v2,M}`.
    fn matching(
        &mut self,
        g: &PlaneGraph,
        b: &BoundaryWalk,
        depth: usize,
    ) -> Result<(Matching, WitnessedGraph)> {
        if g.num_vertices() == 3 {
            self.trace.push(TraceStep::Base {
                depth,
                vertices: [b.v1(), b.v2(), b.vertices()[2]],
            });
            let m = Matching::new([b.e1()])?;
            let w = base_case(g, b)?;
            let w = w.with_budget(boundary_budget(g, b, Some(&m)))?;
            return Ok((m, w));
        }
        if let Some(chord) = g.find_chord(b) {
            let split = g.split_at_chord(b, chord)?;
            self.push_split(depth, g, &split.part1, &split.part2, chord);
            let b1 = split.part1.boundary(b.v1(), b.v2())?;
            let b2 = split.part2.boundary(chord.lo(), chord.hi())?;
            let (m1, w1) = self.matching(&split.part1, &b1, depth + 1)?;
            let (m2, w2) = self.matching(&split.part2, &b2, depth + 1)?;
            let m = Matching::new(m1.edges().chain(m2.edges().filter(|&e| e != chord)))?;
            let f = boundary_budget(g, b, Some(&m));
            let w = union_one_way(&w2, &w1, &[], f)?;
            return Ok((m, w));
        }

        let del = g.delete_boundary_vertex(b)?;
        let b_prime = del.graph.boundary(b.v1(), b.v2())?;
        let (m1, w1) = self.matching(&del.graph, &b_prime, depth + 1)?;
        let gadget = gadget_for(g, b, del.interior_neighbors());
        let (w2, parity) = case2_gadget_build(&w1, &gadget, self.config)?;
        let w2_arcs = w2.witness().num_arcs();
        let vn = gadget.peeled;

        // peel w_k, ..., w_1
        let mut cur = w2;
        let mut removals = Vec::with_capacity(gadget.interior.len());
        let mut reduced_peeled_at = None;
        for i in (0..gadget.interior.len()).rev() {
            let (next, step) = remove_deg2_vertex_keep_at(&cur, gadget.gadget_vertices[i], gadget.interior[i])?;
            if step.reduced_at == vn {
                if reduced_peeled_at.is_some() {
                    return Err(Error::CertificateViolation(format!(
                        "v_n = {vn} reduced twice while peeling"
                    )));
                }
                reduced_peeled_at = Some(gadget.interior[i]);
            }
            if next.budget().get(vn).unwrap_or(0) < 2 {
                return Err(Error::CertificateViolation(format!(
                    "budget at v_n = {vn} dropped below 2"
                )));
            }
            removals.push(step);
            cur = next;
        }

        let mut m = m1;
        let mut matching_extended = None;
        if let Some(u) = reduced_peeled_at {
            if !m.covers(u) {
                let e = Edge::new(u, vn);
                m = m.with(e)?;
                cur = remove_arc_no_euler(&cur, Arc::new(u, vn))?;
                matching_extended = Some(e);
            }
        }
        self.trace.push(TraceStep::Peel {
            depth,
            vertices: g.num_vertices(),
            arcs: w2_arcs,
            gadget,
            parity,
            restriction: Vec::new(),
            removals,
            reduced_peeled_at,
            matching_extended,
        });
        let f = boundary_budget(g, b, Some(&m));
        let w = check_dominated(&cur, &f, "matching case 2")?;
        Ok((m, w))
    }

    fn push_split(&mut self, depth: usize, g: &PlaneGraph, p1: &PlaneGraph, p2: &PlaneGraph, chord: Edge) {
        self.trace.push(TraceStep::ChordSplit {
            depth,
            chord,
            vertices: g.num_vertices(),
            part1_vertices: p1.num_vertices(),
            part2_vertices: p2.num_vertices(),
        });
    }
}

fn check_theorem_input(g: &PlaneGraph, v1: Vertex, v2: Vertex) -> Result<BoundaryWalk> {
    if !g.is_near_triangulation() {
        return Err(Error::Precondition(
            "the induction runs on 2-connected near-triangulations".into(),
        ));
    }
    g.boundary(v1, v2)
}

/// `G - e1` is `f_{G,v1v2}`-AT, with witness and trace.
pub fn thm_main_at(g: &PlaneGraph, v1: Vertex, v2: Vertex) -> Result<(WitnessedGraph, Vec<TraceStep>)> {
    thm_main_at_with(g, v1, v2, ProverConfig::default())
}

pub fn thm_main_at_with(
    g: &PlaneGraph,
    v1: Vertex,
    v2: Vertex,
    config: ProverConfig,
) -> Result<(WitnessedGraph, Vec<TraceStep>)> {
    let b = check_theorem_input(g, v1, v2)?;
    let mut p = Prover::new(config);
    let w = p.at(g, &b, 0)?;
    Ok((w, p.trace))
}

/// A matching `M` containing `e1` with `G - M` `f_{G,v1v2,M}`-AT.
pub fn thm_main_matching(
    g: &PlaneGraph,
    v1: Vertex,
    v2: Vertex,
) -> Result<(Matching, WitnessedGraph, Vec<TraceStep>)> {
    thm_main_matching_with(g, v1, v2, ProverConfig::default())
}

pub fn thm_main_matching_with(
    g: &PlaneGraph,
    v1: Vertex,
    v2: Vertex,
    config: ProverConfig,
) -> Result<(Matching, WitnessedGraph, Vec<TraceStep>)> {
    let b = check_theorem_input(g, v1, v2)?;
    let mut p = Prover::new(config);
    let (m, w) = p.matching(g, &b, 0)?;
    Ok((m, w, p.trace))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum CertificateKind {
    /// Orientation of `G` with out-degree at most 4.
    #[serde(rename = "at5")]
    At5,
    /// Matching `M` and an orientation of `G - M` with out-degree at most 3.
    #[serde(rename = "at4m")]
    At4Matching,
}

impl CertificateKind {
    /// The constant budget the certificate claims.
    pub fn bound(self) -> u32 {
        match self {
            CertificateKind::At5 => 5,
            CertificateKind::At4Matching => 4,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub graph_sha256: String,
    #[serde(default)]
    pub e1: Option<Edge>,
    pub arcs: Vec<Arc>,
    pub budget: std::collections::BTreeMap<Vertex, u32>,
    #[serde(default)]
    pub matching: Vec<Edge>,
    pub diff: i128,
    #[serde(default)]
    pub trace: Vec<TraceStep>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Certificate> {
        Ok(serde_json::from_str(s)?)
    }

    /// Parses only the checkable claims; the trace is discarded unread.
    pub fn parse_claims(s: &str) -> Result<Certificate> {
        #[derive(Deserialize)]
        struct Claims {
            kind: CertificateKind,
            graph_sha256: String,
            #[serde(default)]
            e1: Option<Edge>,
            arcs: Vec<Arc>,
            budget: std::collections::BTreeMap<Vertex, u32>,
            #[serde(default)]
            matching: Vec<Edge>,
            diff: i128,
        }
        let c: Claims = serde_json::from_str(s)?;
        Ok(Certificate {
            kind: c.kind,
            graph_sha256: c.graph_sha256,
            e1: c.e1,
            arcs: c.arcs,
            budget: c.budget,
            matching: c.matching,
            diff: c.diff,
            trace: Vec::new(),
        })
    }

    pub fn orientation_on(&self, g: &Graph) -> Result<Orientation> {
        Orientation::new(g.clone(), self.arcs.iter().copied())
    }

    /// All peel steps recorded in the trace.
    pub fn peel_steps(&self) -> impl Iterator<Item = &TraceStep> {
        self.trace.iter().filter(|s| matches!(s, TraceStep::Peel { .. }))
    }
}

pub fn graph_digest(g: &PlaneGraph) -> String {
    let json = io::graph_to_json_compact(g);
    hex::encode(Sha256::digest(json.as_bytes()))
}

fn pipeline_input(g: &PlaneGraph) -> Result<(PlaneGraph, Edge)> {
    if g.num_vertices() < 3 || !g.graph().is_connected() {
        return Err(Error::Precondition(
            "certificates need a connected plane graph with at least 3 vertices".into(),
        ));
    }
    let t = g.to_near_triangulation()?;
    let outer = t.outer_edges();
    let e1 = outer
        .iter()
        .copied()
        .find(|&e| g.graph().has_edge(e))
        .unwrap_or_else(|| *outer.iter().next().unwrap());
    Ok((t, e1))
}

/// Orientation of `g` with out-degree at most 4 and nonzero diff.
pub fn at5_certificate(g: &PlaneGraph) -> Result<Certificate> {
    at5_certificate_with(g, ProverConfig::default())
}

pub fn at5_certificate_with(g: &PlaneGraph, config: ProverConfig) -> Result<Certificate> {
    let (t, e1) = pipeline_input(g)?;
    let (v1, v2) = (e1.lo(), e1.hi());
    let (w, mut trace) = thm_main_at_with(&t, v1, v2, config)?;
    // v2 has budget 1, hence is a sink
    let arc = Arc::new(v1, v2);
    let raised = w.budget().with_value(v1, w.budget().get(v1).unwrap() + 1);
    let w = add_arc_no_euler(&w, arc, raised)?;
    trace.push(TraceStep::Reinsert { arc });
    let (w, removals) = restrict_witness(&w, g.graph())?;
    trace.push(TraceStep::Restrict { removals });
    finish(g, CertificateKind::At5, e1, &w, Vec::new(), trace)
}

/// Matching `M` of `g` and an orientation of `g - M` with out-degree at
/// most 3 and nonzero diff.
pub fn at4_matching_certificate(g: &PlaneGraph) -> Result<Certificate> {
    at4_matching_certificate_with(g, ProverConfig::default())
}

pub fn at4_matching_certificate_with(g: &PlaneGraph, config: ProverConfig) -> Result<Certificate> {
    let (t, e1) = pipeline_input(g)?;
    let (m, w, mut trace) = thm_main_matching_with(&t, e1.lo(), e1.hi(), config)?;
    let in_g: Vec<Edge> = m.edges().filter(|&e| g.graph().has_edge(e)).collect();
    let target = g.graph().without_edges(&in_g)?;
    let (w, removals) = restrict_witness(&w, &target)?;
    trace.push(TraceStep::Restrict { removals });
    finish(g, CertificateKind::At4Matching, e1, &w, in_g, trace)
}

fn finish(
    g: &PlaneGraph,
    kind: CertificateKind,
    e1: Edge,
    w: &WitnessedGraph,
    matching: Vec<Edge>,
    trace: Vec<TraceStep>,
) -> Result<Certificate> {
    let bound = DegreeBudget::constant(g.graph(), kind.bound());
    let bad = w.budget().exceeding(&bound);
    if !bad.is_empty() {
        return Err(Error::CertificateViolation(format!(
            "final budget exceeds {} at {bad:?}",
            kind.bound()
        )));
    }
    Ok(Certificate {
        kind,
        graph_sha256: graph_digest(g),
        e1: g.graph().has_edge(e1).then_some(e1),
        arcs: w.witness().arcs().collect(),
        budget: w.budget().as_map().clone(),
        matching,
        diff: w.diff(),
        trace,
    })
}
