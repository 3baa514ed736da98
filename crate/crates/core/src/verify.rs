//! Certificate checking that trusts nothing produced by the prover, and
//! list-coloring oracles for the consequences of f-AT.
//!
//! Budgets are rebuilt here from scratch rather than shared with the
//! induction code.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::at_core::{diff_coeff, diff_enum, DegreeBudget, Orientation, DEFAULT_ENUM_CAP};
use crate::at_planar::{graph_digest, Certificate, CertificateKind};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::plane_graph::PlaneGraph;

pub const COLORING_VERTEX_CAP: usize = 16;
pub const EXHAUSTIVE_VERTEX_CAP: usize = 7;
pub const EXHAUSTIVE_SUM_CAP: u64 = 12;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Clause {
    pub name: String,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Verdict {
    pub pass: bool,
    pub clauses: Vec<Clause>,
}

impl Verdict {
    fn push(&mut self, name: &str, ok: bool, detail: Option<String>) {
        self.clauses.push(Clause {
            name: name.to_string(),
            ok,
            detail,
        });
        self.pass = self.clauses.iter().all(|c| c.ok);
    }

    pub fn failed(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(|c| !c.ok)
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("verdict serializes")
    }
}

fn outer_walk_edges(g: &PlaneGraph) -> BTreeSet<Edge> {
    let f = g.outer_face();
    (0..f.len())
        .filter_map(|i| Edge::try_new(f[i], f[(i + 1) % f.len()]).ok())
        .collect()
}

/// Re-checks every claim of `c` against `g`. The trace is never read.
pub fn check_certificate(c: &Certificate, g: &PlaneGraph) -> Verdict {
    let mut v = Verdict {
        pass: true,
        clauses: Vec::new(),
    };
    let graph = g.graph();

    let digest = graph_digest(g);
    v.push(
        "graph_digest",
        digest == c.graph_sha256,
        (digest != c.graph_sha256).then(|| format!("expected {digest}")),
    );

    // matching
    let mut covered = BTreeSet::new();
    let mut matching_problems = Vec::new();
    let mut matching = BTreeSet::new();
    for &e in &c.matching {
        if !graph.has_edge(e) {
            matching_problems.push(format!("{e:?} is not an edge"));
        }
        if !matching.insert(e) {
            matching_problems.push(format!("{e:?} listed twice"));
        } else if !covered.insert(e.lo()) | !covered.insert(e.hi()) {
            matching_problems.push(format!("{e:?} shares a vertex"));
        }
    }
    match c.kind {
        CertificateKind::At5 => {
            if !matching.is_empty() {
                matching_problems.push("at5 certificates carry no matching".into());
            }
            v.push("matching_valid", matching_problems.is_empty(), join(&matching_problems));
        }
        CertificateKind::At4Matching => {
            v.push("matching_valid", matching_problems.is_empty(), join(&matching_problems));
            let outer = outer_walk_edges(g);
            let e1_ok = match c.e1 {
                None => Err("no e1 given".to_string()),
                Some(e) if !matching.contains(&e) => Err(format!("{e:?} not in the matching")),
                Some(e) if !outer.contains(&e) => Err(format!("{e:?} not on the outer face")),
                Some(_) => Ok(()),
            };
            v.push("e1_in_matching_on_boundary", e1_ok.is_ok(), e1_ok.err());
        }
    }

    // arcs orient exactly the target edge set
    let target: Graph = {
        let mut t = graph.clone();
        for e in &matching {
            if t.has_edge(*e) {
                t = t.without_edge(*e).expect("edge present");
            }
        }
        t
    };
    let orientation = Orientation::new(target.clone(), c.arcs.iter().copied());
    v.push(
        "arcs_orient_target",
        orientation.is_ok(),
        orientation.as_ref().err().map(|e| e.to_string()),
    );

    // budget
    let bound = c.kind.bound();
    let keys: BTreeSet<Vertex> = c.budget.keys().copied().collect();
    let vertices: BTreeSet<Vertex> = graph.vertices().collect();
    v.push(
        "budget_covers_vertices",
        keys == vertices,
        (keys != vertices).then(|| "budget keys differ from the vertex set".to_string()),
    );
    let over: Vec<Vertex> = c
        .budget
        .iter()
        .filter(|&(_, &f)| f > bound || f == 0)
        .map(|(&x, _)| x)
        .collect();
    v.push(
        "budget_within_bound",
        over.is_empty(),
        (!over.is_empty()).then(|| format!("budget outside 1..={bound} at {over:?}")),
    );

    let Ok(o) = orientation else {
        v.push("outdegree_bounds", false, Some("no orientation to check".into()));
        v.push("diff_nonzero", false, Some("no orientation to check".into()));
        return v;
    };

    let bad: Vec<Vertex> = graph
        .vertices()
        .filter(|&x| o.out_degree(x) + 1 > c.budget.get(&x).copied().unwrap_or(0))
        .collect();
    v.push(
        "outdegree_bounds",
        bad.is_empty(),
        (!bad.is_empty()).then(|| format!("out-degree exceeds budget - 1 at {bad:?}")),
    );

    match diff_coeff(&o) {
        Ok(d) => {
            v.push("diff_nonzero", d != 0, (d == 0).then(|| "diff is 0".to_string()));
            v.push(
                "diff_matches_claim",
                d == c.diff,
                (d != c.diff).then(|| format!("computed {d}, claimed {}", c.diff)),
            );
            if o.num_arcs() <= DEFAULT_ENUM_CAP {
                match diff_enum(&o) {
                    Ok(e) => v.push(
                        "diff_enum_crosscheck",
                        e.diff == d,
                        (e.diff != d).then(|| format!("enumeration gives {}", e.diff)),
                    ),
                    Err(err) => v.push("diff_enum_crosscheck", false, Some(err.to_string())),
                }
            }
        }
        Err(err) => v.push("diff_nonzero", false, Some(err.to_string())),
    }
    v
}

fn join(xs: &[String]) -> Option<String> {
    (!xs.is_empty()).then(|| xs.join("; "))
}

/// Boundary budget rebuilt from a boundary edge `v1v2` of a
/// near-triangulation, optionally with a matching.
pub fn theorem_budget(g: &PlaneGraph, v1: Vertex, v2: Vertex, matching: Option<&[Edge]>) -> DegreeBudget {
    let boundary: BTreeSet<Vertex> = g.outer_face().iter().copied().collect();
    let covered: BTreeSet<Vertex> = matching
        .unwrap_or(&[])
        .iter()
        .flat_map(|e| [e.lo(), e.hi()])
        .collect();
    let mut f = BTreeMap::new();
    for x in g.graph().vertices() {
        let value = if x == v1 || x == v2 {
            1
        } else if boundary.contains(&x) {
            if covered.contains(&x) {
                2
            } else {
                3
            }
        } else if matching.is_some() {
            4
        } else {
            5
        };
        f.insert(x, value);
    }
    f.into()
}

/// Checks an induction output: `o` must orient `G - e1` (or `G - M`),
/// respect the rebuilt budget and have nonzero diff.
pub fn check_theorem_witness(
    g: &PlaneGraph,
    v1: Vertex,
    v2: Vertex,
    matching: Option<&[Edge]>,
    o: &Orientation,
) -> Verdict {
    let mut v = Verdict {
        pass: true,
        clauses: Vec::new(),
    };
    let e1 = Edge::new(v1, v2);
    let removed: Vec<Edge> = match matching {
        None => vec![e1],
        Some(m) => m.to_vec(),
    };
    if let Some(m) = matching {
        let mut seen = BTreeSet::new();
        let disjoint = m.iter().all(|e| seen.insert(e.lo()) && seen.insert(e.hi()));
        v.push("matching_valid", disjoint && m.iter().all(|&e| g.graph().has_edge(e)), None);
        v.push("e1_in_matching", m.contains(&e1), None);
    }
    let target = g.graph().without_edges(&removed);
    let same = target.as_ref().is_ok_and(|t| t == o.graph());
    v.push("arcs_orient_target", same, None);
    let f = theorem_budget(g, v1, v2, matching);
    let bad = f.violations(o);
    v.push(
        "outdegree_bounds",
        bad.is_empty(),
        (!bad.is_empty()).then(|| format!("{bad:?}")),
    );
    let d = diff_coeff(o);
    v.push("diff_nonzero", matches!(d, Ok(x) if x != 0), d.err().map(|e| e.to_string()));
    v
}

fn check_cap(g: &Graph) -> Result<()> {
    if g.num_vertices() > COLORING_VERTEX_CAP {
        return Err(Error::CapExceeded {
            what: "list coloring vertices",
            size: g.num_vertices(),
            cap: COLORING_VERTEX_CAP,
        });
    }
    Ok(())
}

/// Is there a proper coloring with `c(v)` taken from `lists[v]`?
pub fn list_coloring_exists(g: &Graph, lists: &BTreeMap<Vertex, Vec<u32>>) -> Result<bool> {
    check_cap(g)?;
    for x in g.vertices() {
        if !lists.contains_key(&x) {
            return Err(Error::InvalidInput(format!("no list for vertex {x}")));
        }
    }
    let mut color: BTreeMap<Vertex, u32> = BTreeMap::new();
    Ok(color_search(g, lists, &mut color))
}

fn color_search(g: &Graph, lists: &BTreeMap<Vertex, Vec<u32>>, color: &mut BTreeMap<Vertex, u32>) -> bool {
    // most constrained uncolored vertex first
    let mut best: Option<(Vertex, Vec<u32>)> = None;
    for x in g.vertices() {
        if color.contains_key(&x) {
            continue;
        }
        let used: BTreeSet<u32> = g.neighbors(x).filter_map(|u| color.get(&u).copied()).collect();
        let avail: Vec<u32> = lists[&x]
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .filter(|c| !used.contains(c))
            .collect();
        if avail.is_empty() {
            return false;
        }
        if best.as_ref().is_none_or(|(_, b)| avail.len() < b.len()) {
            best = Some((x, avail));
        }
    }
    let Some((x, avail)) = best else {
        return true;
    };
    for c in avail {
        color.insert(x, c);
        if color_search(g, lists, color) {
            return true;
        }
    }
    color.remove(&x);
    false
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ChoosabilityVerdict {
    pub pass: bool,
    pub samples: usize,
    pub seed: u64,
    pub colorable: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<BTreeMap<Vertex, Vec<u32>>>,
}

/// Random list assignments with `|L(v)| = f(v)` over the colours
/// `0..sum(f)`; each must be colorable if `g` is f-AT.
pub fn sampled_choosability_check(
    g: &Graph,
    f: &DegreeBudget,
    samples: usize,
    seed: u64,
) -> Result<ChoosabilityVerdict> {
    check_cap(g)?;
    let sizes: BTreeMap<Vertex, u32> = g
        .vertices()
        .map(|x| f.get(x).map(|k| (x, k)).ok_or_else(|| Error::InvalidInput(format!("no budget for {x}"))))
        .collect::<Result<_>>()?;
    if let Some((&x, _)) = sizes.iter().find(|&(_, &k)| k == 0) {
        let mut lists: BTreeMap<Vertex, Vec<u32>> = sizes.keys().map(|&y| (y, Vec::new())).collect();
        lists.insert(x, Vec::new());
        return Ok(ChoosabilityVerdict {
            pass: false,
            samples: 0,
            seed,
            colorable: 0,
            counterexample: Some(lists),
        });
    }
    let universe: usize = sizes.values().map(|&k| k as usize).sum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let lists: BTreeMap<Vertex, Vec<u32>> = sizes
            .iter()
            .map(|(&x, &k)| {
                let mut l: Vec<u32> = sample(&mut rng, universe, k as usize)
                    .into_iter()
                    .map(|c| c as u32)
                    .collect();
                l.sort_unstable();
                (x, l)
            })
            .collect();
        if !list_coloring_exists(g, &lists)? {
            return Ok(ChoosabilityVerdict {
                pass: false,
                samples,
                seed,
                colorable: i,
                counterexample: Some(lists),
            });
        }
    }
    Ok(ChoosabilityVerdict {
        pass: true,
        samples,
        seed,
        colorable: samples,
        counterexample: None,
    })
}

/// Whether every assignment of lists of sizes `f` admits a proper
/// coloring. Colours are introduced in order of first use, so each
/// assignment is visited once up to renaming colours. The size caps apply
/// to the input graph.
pub fn exhaustive_choosability(g: &Graph, f: &DegreeBudget) -> Result<bool> {
    if g.num_vertices() > EXHAUSTIVE_VERTEX_CAP {
        return Err(Error::CapExceeded {
            what: "exhaustive choosability vertices",
            size: g.num_vertices(),
            cap: EXHAUSTIVE_VERTEX_CAP,
        });
    }
    let mut total = 0u64;
    for x in g.vertices() {
        total += f.get(x).ok_or_else(|| Error::InvalidInput(format!("no budget for {x}")))? as u64;
    }
    if total > EXHAUSTIVE_SUM_CAP {
        return Err(Error::CapExceeded {
            what: "exhaustive choosability list total",
            size: total as usize,
            cap: EXHAUSTIVE_SUM_CAP as usize,
        });
    }
    // a vertex with more colours than remaining neighbours can always be
    // coloured last, so it does not affect the answer
    let mut g = g.clone();
    loop {
        let Some(x) = g.vertices().find(|&x| f.get(x).unwrap() as usize > g.degree(x)) else {
            break;
        };
        g = g.without_vertex(x)?;
    }
    let g = &g;
    let order: Vec<Vertex> = g.vertices().collect();
    let sizes: Vec<u32> = order.iter().map(|&x| f.get(x).unwrap()).collect();
    let mut lists = BTreeMap::new();
    Ok(all_assignments(g, &order, &sizes, 0, 0, &mut lists))
}

fn all_assignments(
    g: &Graph,
    order: &[Vertex],
    sizes: &[u32],
    i: usize,
    used: u32,
    lists: &mut BTreeMap<Vertex, Vec<u32>>,
) -> bool {
    if i == order.len() {
        return color_search(g, lists, &mut BTreeMap::new());
    }
    let k = sizes[i];
    for fresh in 0..=k {
        let old = k - fresh;
        if old > used {
            continue;
        }
        let fresh_colors: Vec<u32> = (used..used + fresh).collect();
        let mut ok = true;
        for_each_subset(used, old, &mut |subset| {
            let mut l = subset.to_vec();
            l.extend_from_slice(&fresh_colors);
            lists.insert(order[i], l);
            ok = all_assignments(g, order, sizes, i + 1, used + fresh, lists);
            ok
        });
        if !ok {
            return false;
        }
    }
    lists.remove(&order[i]);
    true
}

/// Calls `visit` on every `k`-subset of `0..n` until it returns false.
fn for_each_subset(n: u32, k: u32, visit: &mut dyn FnMut(&[u32]) -> bool) {
    fn go(start: u32, n: u32, k: u32, cur: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32]) -> bool) -> bool {
        if cur.len() as u32 == k {
            return visit(cur);
        }
        for c in start..n {
            if n - c < k - cur.len() as u32 {
                break;
            }
            cur.push(c);
            let go_on = go(c + 1, n, k, cur, visit);
            cur.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    go(0, n, k, &mut Vec::new(), visit);
}
