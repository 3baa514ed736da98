use std::collections::{BTreeMap, HashMap};

use super::{edge_order, OutDegreeVector, Orientation};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_MONOMIAL_CAP: usize = 10_000_000;

/// Coefficient of `prod x_v^d(v)` in `prod_{uv in E, u<v} (x_u - x_v)`.
pub fn coeff(graph: &Graph, d: &OutDegreeVector) -> Result<i128> {
    coeff_capped(graph, d, DEFAULT_MONOMIAL_CAP)
}

pub fn coeff_capped(graph: &Graph, d: &OutDegreeVector, cap: usize) -> Result<i128> {
    if d.len() != graph.num_vertices() || graph.vertices().any(|v| d.get(v).is_none()) {
        return Err(Error::InvalidInput(
            "exponent vector must cover exactly the graph's vertices".into(),
        ));
    }
    if d.sum() != graph.num_edges() as u64 {
        return Err(Error::Precondition(format!(
            "exponent sum {} differs from edge count {}",
            d.sum(),
            graph.num_edges()
        )));
    }
    if graph.vertices().any(|v| d.get(v).unwrap() as usize > graph.degree(v)) {
        return Ok(0);
    }
    let index: BTreeMap<_, usize> = graph.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let n = index.len();
    let target: Vec<u8> = graph
        .vertices()
        .map(|v| u8::try_from(d.get(v).unwrap()).map_err(|_| Error::Overflow("exponent")))
        .collect::<Result<_>>()?;
    let mut remaining: Vec<u8> = graph.vertices().map(|v| graph.degree(v) as u8).collect();
    if graph.max_degree() > u8::MAX as usize {
        return Err(Error::Overflow("vertex degree"));
    }

    // partial products restricted to monomials that can still reach `target`
    let mut terms: HashMap<Vec<u8>, i128> = HashMap::from([(vec![0u8; n], 1)]);
    for e in edge_order(graph) {
        let (u, v) = (index[&e.lo()], index[&e.hi()]);
        remaining[u] -= 1;
        remaining[v] -= 1;
        let alive = |x: &[u8], w: usize| x[w] <= target[w] && x[w] + remaining[w] >= target[w];
        let mut next: HashMap<Vec<u8>, i128> = HashMap::with_capacity(terms.len() * 2);
        for (mono, c) in terms {
            for (w, sign) in [(u, 1i128), (v, -1i128)] {
                let mut m = mono.clone();
                m[w] += 1;
                if !(alive(&m, u) && alive(&m, v)) {
                    continue;
                }
                let entry = next.entry(m).or_insert(0);
                *entry = entry
                    .checked_add(sign * c)
                    .ok_or(Error::Overflow("graph polynomial coefficient"))?;
            }
        }
        next.retain(|_, c| *c != 0);
        if next.len() > cap {
            return Err(Error::CapExceeded {
                what: "monomial map",
                size: next.len(),
                cap,
            });
        }
        terms = next;
    }
    Ok(terms.get(&target).copied().unwrap_or(0))
}

/// `diff(D)` through the graph polynomial: `(-1)^b * coeff(G, d+_D)`.
pub fn diff_coeff(o: &Orientation) -> Result<i128> {
    diff_coeff_capped(o, DEFAULT_MONOMIAL_CAP)
}

pub fn diff_coeff_capped(o: &Orientation, cap: usize) -> Result<i128> {
    let c = coeff_capped(o.graph(), &o.out_degrees(), cap)?;
    Ok(if o.descending_arcs().is_multiple_of(2) { c } else { -c })
}
