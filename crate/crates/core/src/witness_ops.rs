//! Witness-carrying versions of the edge/vertex removal lemmas and the
//! one-way-cut product rule. Every result is re-validated when it is
//! built, so a wrong step surfaces as [`Error::CertificateViolation`].

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::at_core::{
    coeff, diff_coeff, diff_enum, orientation_with_outdegrees, Arc, DegreeBudget, Orientation,
};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};

/// Orientations up to this many arcs get an extra enumeration cross-check
/// wherever a diff is claimed rather than recomputed.
pub const ENUM_ASSERT_ARCS: usize = 18;

/// A graph with a budget `f` and an `f`-AT orientation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WitnessedGraph {
    budget: DegreeBudget,
    witness: Orientation,
    diff: i128,
}

fn compute_diff(o: &Orientation) -> Result<i128> {
    match diff_coeff(o) {
        Ok(d) => Ok(d),
        Err(Error::CapExceeded { .. }) => Ok(diff_enum(o)?.diff),
        Err(e) => Err(e),
    }
}

impl WitnessedGraph {
    pub fn new(witness: Orientation, budget: DegreeBudget) -> Result<Self> {
        let g = witness.graph();
        if budget.len() != g.num_vertices() || g.vertices().any(|v| budget.get(v).is_none()) {
            return Err(Error::CertificateViolation(
                "budget does not cover exactly the witness vertices".into(),
            ));
        }
        let bad = budget.violations(&witness);
        if !bad.is_empty() {
            return Err(Error::CertificateViolation(format!(
                "out-degree exceeds budget - 1 at {bad:?}"
            )));
        }
        let diff = compute_diff(&witness)?;
        if diff == 0 {
            return Err(Error::CertificateViolation("witness has diff 0".into()));
        }
        Ok(WitnessedGraph {
            budget,
            witness,
            diff,
        })
    }

    /// As [`WitnessedGraph::new`], additionally requiring the recomputed
    /// diff to equal `claimed`.
    pub fn with_claimed_diff(witness: Orientation, budget: DegreeBudget, claimed: i128) -> Result<Self> {
        let w = Self::new(witness, budget)?;
        if w.diff != claimed {
            return Err(Error::CertificateViolation(format!(
                "claimed diff {claimed}, recomputed {}",
                w.diff
            )));
        }
        Ok(w)
    }

    pub fn graph(&self) -> &Graph {
        self.witness.graph()
    }

    pub fn budget(&self) -> &DegreeBudget {
        &self.budget
    }

    pub fn witness(&self) -> &Orientation {
        &self.witness
    }

    pub fn diff(&self) -> i128 {
        self.diff
    }

    /// Same witness under another budget it satisfies.
    pub fn with_budget(&self, budget: DegreeBudget) -> Result<WitnessedGraph> {
        WitnessedGraph::with_claimed_diff(self.witness.clone(), budget, self.diff)
    }

    pub fn without_isolated_vertex(&self, v: Vertex) -> Result<WitnessedGraph> {
        WitnessedGraph::with_claimed_diff(
            self.witness.without_isolated_vertex(v)?,
            self.budget.without(v),
            self.diff,
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// The arc was deleted and its tail's budget lowered.
    Tail,
    /// A fresh orientation lowers the head's out-degree instead.
    Head,
}

/// Which side of the edge-removal dichotomy was taken.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EdgeRemoval {
    pub edge: Edge,
    pub reduced_at: Vertex,
    pub branch: Branch,
}

/// `G - e` is `f_[u,-1]`-AT or `f_[v,-1]`-AT.
///
/// With `d` the witness out-degrees and `t -> h` the arc on `e`, the
/// coefficient identity `c_G(d) = c_{G-e}(d - 1_lo) - c_{G-e}(d - 1_hi)`
/// guarantees that one of the two reduced vectors has a nonzero
/// coefficient. The tail side reuses the witness; the head side needs a
/// new orientation.
pub fn remove_edge_keep_at(w: &WitnessedGraph, e: Edge) -> Result<(WitnessedGraph, EdgeRemoval)> {
    let arc = w
        .witness
        .arc_of(e)
        .ok_or_else(|| Error::Precondition(format!("edge {e:?} not in graph")))?;
    let rest = w.graph().without_edge(e)?;
    let d = w.witness.out_degrees();

    let tail_vec = d.decremented(arc.tail).expect("tail has out-degree >= 1");
    if coeff(&rest, &tail_vec)? != 0 {
        let next = WitnessedGraph::new(w.witness.without_edge(e)?, w.budget.reduced_at(arc.tail)?)?;
        return Ok((
            next,
            EdgeRemoval {
                edge: e,
                reduced_at: arc.tail,
                branch: Branch::Tail,
            },
        ));
    }
    let violation = || {
        Error::CertificateViolation(format!(
            "both reductions of {e:?} have zero coefficient"
        ))
    };
    let head_vec = d.decremented(arc.head).ok_or_else(violation)?;
    if coeff(&rest, &head_vec)? == 0 {
        return Err(violation());
    }
    let o = orientation_with_outdegrees(&rest, &head_vec)?.ok_or_else(|| {
        Error::CertificateViolation(format!("nonzero coefficient but no orientation for {head_vec:?}"))
    })?;
    let next = WitnessedGraph::new(o, w.budget.reduced_at(arc.head)?)?;
    Ok((
        next,
        EdgeRemoval {
            edge: e,
            reduced_at: arc.head,
            branch: Branch::Head,
        },
    ))
}

/// Edge removal whose reduced endpoint is forced to be `u`: either
/// `f(v) = 1`, or `f(v) = 2` and `v` has a neighbour `x` with `f(x) = 1`.
pub fn forced_edge_removal(w: &WitnessedGraph, e: Edge, u: Vertex) -> Result<WitnessedGraph> {
    if !e.contains(u) {
        return Err(Error::Precondition(format!("{u} is not an endpoint of {e:?}")));
    }
    let v = e.other(u);
    let f = |x: Vertex| w.budget.get(x).unwrap_or(0);
    let forced = f(v) == 1 || (f(v) == 2 && w.graph().neighbors(v).any(|x| x != u && f(x) == 1));
    if !forced {
        return Err(Error::Precondition(format!(
            "removal of {e:?} is not forced towards {u}"
        )));
    }
    let (next, step) = remove_edge_keep_at(w, e)?;
    if step.reduced_at != u {
        return Err(Error::CertificateViolation(format!(
            "forced removal of {e:?} reduced at {} instead of {u}",
            step.reduced_at
        )));
    }
    Ok(next)
}

/// Trace record of a degree-2 vertex removal.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Deg2Removal {
    pub vertex: Vertex,
    pub first: EdgeRemoval,
    pub reduced_at: Vertex,
    /// True when the first removal already reduced at the neighbour and the
    /// vertex was then dropped as a pendant vertex.
    pub pendant_drop: bool,
}

/// Removes a pendant vertex: its arc lies in no Eulerian sub-digraph.
fn drop_pendant(w: &WitnessedGraph, x: Vertex) -> Result<WitnessedGraph> {
    let nbrs: Vec<Vertex> = w.graph().neighbors(x).collect();
    let [y] = nbrs[..] else {
        return Err(Error::Precondition(format!("vertex {x} is not pendant")));
    };
    let o = w.witness.without_edge(Edge::new(x, y))?.without_isolated_vertex(x)?;
    WitnessedGraph::with_claimed_diff(o, w.budget.without(x), w.diff)
}

/// A degree-2 vertex `x` with `f(x) = 2` can be deleted at the price of
/// lowering the budget of one neighbour. The edge to `first` is removed
/// first.
pub fn remove_deg2_vertex_keep_at(
    w: &WitnessedGraph,
    x: Vertex,
    first: Vertex,
) -> Result<(WitnessedGraph, Deg2Removal)> {
    let nbrs: Vec<Vertex> = w.graph().neighbors(x).collect();
    if nbrs.len() != 2 {
        return Err(Error::Precondition(format!(
            "vertex {x} has degree {}, expected 2",
            nbrs.len()
        )));
    }
    if w.budget.get(x) != Some(2) {
        return Err(Error::Precondition(format!("budget at {x} is not 2")));
    }
    if !nbrs.contains(&first) {
        return Err(Error::Precondition(format!("{first} is not a neighbour of {x}")));
    }
    let second = if nbrs[0] == first { nbrs[1] } else { nbrs[0] };
    let (w1, step) = remove_edge_keep_at(w, Edge::new(x, first))?;
    if step.reduced_at == first {
        let next = drop_pendant(&w1, x)?;
        return Ok((
            next,
            Deg2Removal {
                vertex: x,
                first: step,
                reduced_at: first,
                pendant_drop: true,
            },
        ));
    }
    // f(x) is now 1, so x is a sink and the remaining edge is forced
    let w2 = forced_edge_removal(&w1, Edge::new(x, second), second)?;
    let next = w2.without_isolated_vertex(x)?;
    Ok((
        next,
        Deg2Removal {
            vertex: x,
            first: step,
            reduced_at: second,
            pendant_drop: false,
        },
    ))
}

/// Combines two witnesses across a one-way cut.
///
/// The vertices of `from_side` not in `to_side` form the set `X`; shared
/// vertices must be sinks of `from_side`, and every cross arc must run
/// from `X` into `to_side`. Then no Eulerian sub-digraph uses a cut arc and
/// the diff of the union is the product of the two diffs.
pub fn union_one_way(
    from_side: &WitnessedGraph,
    to_side: &WitnessedGraph,
    cross_arcs: &[Arc],
    budget: DegreeBudget,
) -> Result<WitnessedGraph> {
    let lower: BTreeSet<Vertex> = to_side.graph().vertices().collect();
    let upper: BTreeSet<Vertex> = from_side
        .graph()
        .vertices()
        .filter(|v| !lower.contains(v))
        .collect();
    for a in from_side.witness.arcs() {
        if lower.contains(&a.tail) {
            return Err(Error::Precondition(format!(
                "arc {a:?} of the source side leaves a shared vertex"
            )));
        }
    }
    for a in cross_arcs {
        if !upper.contains(&a.tail) || !lower.contains(&a.head) {
            return Err(Error::Precondition(format!(
                "cross arc {a:?} does not run from the source side into the sink side"
            )));
        }
    }
    let mut arcs: Vec<Arc> = from_side.witness.arcs().collect();
    arcs.extend(to_side.witness.arcs());
    arcs.extend_from_slice(cross_arcs);
    let combined = Orientation::from_arcs(lower.iter().chain(upper.iter()).copied(), arcs)?;
    let product = from_side
        .diff
        .checked_mul(to_side.diff)
        .ok_or(Error::Overflow("diff product"))?;
    if combined.num_arcs() <= ENUM_ASSERT_ARCS {
        let enumerated = diff_enum(&combined)?.diff;
        if enumerated != product {
            return Err(Error::CertificateViolation(format!(
                "one-way union: enumerated diff {enumerated} != product {product}"
            )));
        }
    }
    WitnessedGraph::with_claimed_diff(combined, budget, product)
}

/// Adds an arc into a sink; the diff cannot change.
pub fn add_arc_no_euler(w: &WitnessedGraph, arc: Arc, new_budget: DegreeBudget) -> Result<WitnessedGraph> {
    if w.graph().has_vertex(arc.head) && !w.witness.is_sink(arc.head) {
        return Err(Error::Precondition(format!("head of {arc:?} is not a sink")));
    }
    if w.graph().has_edge(arc.edge()) {
        return Err(Error::Precondition(format!("edge {:?} already present", arc.edge())));
    }
    WitnessedGraph::with_claimed_diff(w.witness.with_arc(arc)?, new_budget, w.diff)
}

/// Deletes an arc that lies in no Eulerian sub-digraph (for instance one
/// whose head reaches only sinks) and lowers its tail's budget. The
/// unchanged diff is re-verified.
pub fn remove_arc_no_euler(w: &WitnessedGraph, arc: Arc) -> Result<WitnessedGraph> {
    if !w.witness.has_arc(arc) {
        return Err(Error::Precondition(format!("{arc:?} is not an arc of the witness")));
    }
    let o = w.witness.without_edge(arc.edge())?;
    let budget = w.budget.reduced_at(arc.tail)?;
    WitnessedGraph::with_claimed_diff(o, budget, w.diff).map_err(|e| match e {
        Error::CertificateViolation(msg) => {
            Error::CertificateViolation(format!("removing {arc:?} changed the diff: {msg}"))
        }
        other => other,
    })
}

/// Restricts a witness to a subgraph by repeated edge removal; budgets
/// only decrease.
pub fn restrict_witness(
    w: &WitnessedGraph,
    target: &Graph,
) -> Result<(WitnessedGraph, Vec<EdgeRemoval>)> {
    if !target.is_subgraph_of(w.graph()) {
        return Err(Error::Precondition("target is not a subgraph".into()));
    }
    let mut cur = w.clone();
    let mut steps = Vec::new();
    let extra: Vec<Edge> = w.graph().edges().filter(|&e| !target.has_edge(e)).collect();
    for e in extra {
        let (next, step) = remove_edge_keep_at(&cur, e)?;
        cur = next;
        steps.push(step);
    }
    let gone: Vec<Vertex> = w.graph().vertices().filter(|&v| !target.has_vertex(v)).collect();
    for v in gone {
        cur = cur.without_isolated_vertex(v)?;
    }
    Ok((cur, steps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget(xs: &[(u32, u32)]) -> DegreeBudget {
        xs.iter().copied().collect()
    }

    fn k3() -> Graph {
        Graph::from_edges([1, 2, 3], [(1, 2), (1, 3), (2, 3)]).unwrap()
    }

    /// Triangle 1,2,3 minus edge 12, with 3 a source.
    fn base_case() -> WitnessedGraph {
        let o = Orientation::from_arcs([], vec![Arc::new(3, 1), Arc::new(3, 2)]).unwrap();
        WitnessedGraph::new(o, budget(&[(1, 1), (2, 1), (3, 3)])).unwrap()
    }

    #[test]
    fn construction_validates() {
        let c3 = Orientation::from_arcs([], vec![Arc::new(1, 2), Arc::new(2, 3), Arc::new(3, 1)]).unwrap();
        assert!(matches!(
            WitnessedGraph::new(c3, budget(&[(1, 5), (2, 5), (3, 5)])),
            Err(Error::CertificateViolation(_))
        ));
        let acyc = Orientation::acyclic(k3(), &[1, 2, 3]).unwrap();
        assert!(WitnessedGraph::new(acyc.clone(), budget(&[(1, 2), (2, 2), (3, 1)])).is_err());
        assert!(WitnessedGraph::new(acyc.clone(), budget(&[(1, 3), (2, 2)])).is_err());
        assert!(WitnessedGraph::with_claimed_diff(acyc, budget(&[(1, 3), (2, 2), (3, 1)]), 2).is_err());
    }

    #[test]
    fn edge_removal_tail_branch() {
        let acyc = Orientation::acyclic(k3(), &[1, 2, 3]).unwrap();
        let w = WitnessedGraph::new(acyc, budget(&[(1, 3), (2, 2), (3, 1)])).unwrap();
        let (r, step) = remove_edge_keep_at(&w, Edge::new(1, 2)).unwrap();
        assert_eq!(step.branch, Branch::Tail);
        assert_eq!(step.reduced_at, 1);
        assert_eq!(r.budget(), &budget(&[(1, 2), (2, 2), (3, 1)]));
        assert_eq!(diff_enum(r.witness()).unwrap().diff, r.diff());

        let single = Orientation::from_arcs([], vec![Arc::new(1, 2)]).unwrap();
        let w = WitnessedGraph::new(single, budget(&[(1, 2), (2, 1)])).unwrap();
        let (r, step) = remove_edge_keep_at(&w, Edge::new(1, 2)).unwrap();
        assert_eq!((step.reduced_at, step.branch), (1, Branch::Tail));
        assert_eq!(r.budget(), &budget(&[(1, 1), (2, 1)]));
        assert_eq!(r.diff(), 1);
    }

    #[test]
    fn edge_removal_head_branch() {
        // directed 4-cycle 0123 plus chord 0->2: Eulerian sets are {},
        // the 4-cycle (even) and 0->2->3->0 (odd), so diff = 1
        let arcs = vec![Arc::new(0, 1), Arc::new(1, 2), Arc::new(2, 3), Arc::new(3, 0), Arc::new(0, 2)];
        let o = Orientation::from_arcs([], arcs).unwrap();
        let w = WitnessedGraph::new(o.clone(), DegreeBudget::tight(&o)).unwrap();
        assert_eq!(w.diff(), 1);
        for e in w.graph().edges().collect::<Vec<_>>() {
            let (r, step) = remove_edge_keep_at(&w, e).unwrap();
            assert_eq!(diff_enum(r.witness()).unwrap().diff, r.diff());
            let before = w.budget().get(step.reduced_at).unwrap();
            assert_eq!(r.budget().get(step.reduced_at), Some(before - 1));
        }
        // dropping 0->1 leaves only the odd triangle: the tail side dies
        let (r, step) = remove_edge_keep_at(&w, Edge::new(0, 1)).unwrap();
        assert_eq!((step.branch, step.reduced_at), (Branch::Head, 1));
        assert!(r.witness().is_sink(1));
        let (_, step) = remove_edge_keep_at(&w, Edge::new(0, 3)).unwrap();
        assert_eq!((step.branch, step.reduced_at), (Branch::Tail, 3));
    }

    #[test]
    fn forced_removals() {
        // star centre 0, leaf 1 with f = 1
        let o = Orientation::from_arcs([], vec![Arc::new(0, 1), Arc::new(0, 2)]).unwrap();
        let w = WitnessedGraph::new(o, budget(&[(0, 3), (1, 1), (2, 1)])).unwrap();
        let r = forced_edge_removal(&w, Edge::new(0, 1), 0).unwrap();
        assert_eq!(r.budget().get(0), Some(2));

        let b = base_case();
        let r = forced_edge_removal(&b, Edge::new(3, 1), 3).unwrap();
        assert_eq!(r.budget().get(3), Some(2));
        assert!(forced_edge_removal(&b, Edge::new(3, 1), 1).is_err());

        // path u=1 - v=2 - w=3 with f = (2,2,1): case (B)
        let o = Orientation::from_arcs([], vec![Arc::new(1, 2), Arc::new(2, 3)]).unwrap();
        let w = WitnessedGraph::new(o, budget(&[(1, 2), (2, 2), (3, 1)])).unwrap();
        let r = forced_edge_removal(&w, Edge::new(1, 2), 1).unwrap();
        assert_eq!(r.budget().get(1), Some(1));
        assert_eq!(diff_enum(r.witness()).unwrap().diff, 1);
    }

    #[test]
    fn deg2_removal() {
        // triangle u=1, v=2, y=3 plus x=4 adjacent to 1 and 2
        let o = Orientation::from_arcs(
            [],
            vec![Arc::new(3, 1), Arc::new(3, 2), Arc::new(1, 2), Arc::new(4, 1), Arc::new(4, 2)],
        )
        .unwrap();
        let w = WitnessedGraph::new(o, budget(&[(1, 2), (2, 1), (3, 3), (4, 3)])).unwrap();
        // f(4) must be 2
        assert!(remove_deg2_vertex_keep_at(&w, 4, 1).is_err());
        let o = Orientation::from_arcs(
            [],
            vec![Arc::new(3, 1), Arc::new(3, 2), Arc::new(1, 2), Arc::new(1, 4), Arc::new(4, 2)],
        )
        .unwrap();
        let w = WitnessedGraph::new(o, budget(&[(1, 3), (2, 1), (3, 3), (4, 2)])).unwrap();
        for first in [1, 2] {
            let (r, step) = remove_deg2_vertex_keep_at(&w, 4, first).unwrap();
            assert!(!r.graph().has_vertex(4));
            assert!([1, 2].contains(&step.reduced_at));
            let reduced = r.budget().get(step.reduced_at).unwrap();
            assert_eq!(reduced + 1, w.budget().get(step.reduced_at).unwrap());
            assert_eq!(diff_enum(r.witness()).unwrap().diff, r.diff());
        }
        // degree 3 vertex
        assert!(remove_deg2_vertex_keep_at(&w, 1, 2).is_err());
    }

    #[test]
    fn one_way_union() {
        // directed C4 on 10..14 feeding an acyclic triangle
        let c4: Vec<Arc> = (0..4).map(|i| Arc::new(10 + i, 10 + (i + 1) % 4)).collect();
        let top = WitnessedGraph::new(
            Orientation::from_arcs([], c4).unwrap(),
            budget(&[(10, 3), (11, 3), (12, 3), (13, 3)]),
        )
        .unwrap();
        let tri = WitnessedGraph::new(Orientation::acyclic(k3(), &[1, 2, 3]).unwrap(), budget(&[(1, 3), (2, 2), (3, 1)])).unwrap();
        let cross = [Arc::new(10, 1), Arc::new(12, 3)];
        let b = top.budget().merged(tri.budget()).unwrap();
        let u = union_one_way(&top, &tri, &cross, b.clone()).unwrap();
        assert_eq!(u.diff(), 2);
        assert_eq!(diff_enum(u.witness()).unwrap().diff, 2);
        // wrong direction
        assert!(union_one_way(&top, &tri, &[Arc::new(1, 10)], b).is_err());
        // acyclic (+) acyclic sharing the two sinks
        let path = WitnessedGraph::new(
            Orientation::from_arcs([], vec![Arc::new(7, 2), Arc::new(7, 3)]).unwrap(),
            budget(&[(7, 3), (2, 1), (3, 1)]),
        );
        assert!(path.is_ok());
    }

    #[test]
    fn sink_arc_insertion_and_removal() {
        let b = base_case();
        let with = add_arc_no_euler(&b, Arc::new(1, 2), budget(&[(1, 2), (2, 1), (3, 3)])).unwrap();
        assert_eq!(with.diff(), 1);
        assert_eq!(with.witness().out_degrees().values().collect::<Vec<_>>(), vec![1, 0, 2]);
        assert_eq!(diff_enum(with.witness()).unwrap().diff, 1);
        let back = remove_arc_no_euler(&with, Arc::new(1, 2)).unwrap();
        assert_eq!(back.witness(), b.witness());
        assert_eq!(back.diff(), b.diff());
        // head not a sink
        assert!(add_arc_no_euler(&with, Arc::new(2, 3), budget(&[(1, 2), (2, 2), (3, 3)])).is_err());

        let c4: Vec<Arc> = (0..4).map(|i| Arc::new(i, (i + 1) % 4)).collect();
        let w = WitnessedGraph::new(Orientation::from_arcs([], c4).unwrap(), budget(&[(0, 2), (1, 2), (2, 2), (3, 2)])).unwrap();
        assert_eq!(w.diff(), 2);
        assert!(matches!(
            remove_arc_no_euler(&w, Arc::new(0, 1)),
            Err(Error::CertificateViolation(_))
        ));
    }

    #[test]
    fn restriction() {
        let k4 = Graph::from_edges(0..4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let w = WitnessedGraph::new(Orientation::acyclic(k4.clone(), &[0, 1, 2, 3]).unwrap(), DegreeBudget::constant(&k4, 4)).unwrap();
        let (same, steps) = restrict_witness(&w, &k4).unwrap();
        assert_eq!(same, w);
        assert!(steps.is_empty());
        let k3 = k4.without_vertex(3).unwrap();
        let (r, steps) = restrict_witness(&w, &k3).unwrap();
        assert_eq!(steps.len(), 3);
        assert_eq!(r.graph(), &k3);
        assert!(r.budget().exceeding(w.budget()).is_empty());
        assert_eq!(diff_enum(r.witness()).unwrap().diff, r.diff());
        let iso = w.graph().with_vertex(9);
        let wi = WitnessedGraph::new(
            Orientation::new(iso.clone(), w.witness().arcs()).unwrap(),
            w.budget().with_value(9, 1),
        )
        .unwrap();
        let (r, _) = restrict_witness(&wi, &k4).unwrap();
        assert_eq!(r.diff(), wi.diff());
    }
}
