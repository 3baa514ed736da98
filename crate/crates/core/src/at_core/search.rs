use super::{coeff, diff_coeff, diff_enum, orientation_with_outdegrees, DegreeBudget, Orientation};
use super::OutDegreeVector;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub const BRUTE_FORCE_EDGE_CAP: usize = 20;

/// Out-degree bounds hold and `diff(D) != 0`.
pub fn is_f_at(o: &Orientation, f: &DegreeBudget) -> Result<bool> {
    if !f.violations(o).is_empty() {
        return Ok(false);
    }
    let diff = match diff_coeff(o) {
        Ok(d) => d,
        Err(Error::CapExceeded { .. }) => diff_enum(o)?.diff,
        Err(e) => return Err(e),
    };
    Ok(diff != 0)
}

/// Exhaustive search over out-degree vectors below `f`; returns an
/// orientation realizing the first vector with a nonzero coefficient.
pub fn find_f_at_orientation(g: &Graph, f: &DegreeBudget) -> Result<Option<Orientation>> {
    if g.num_edges() > BRUTE_FORCE_EDGE_CAP {
        return Err(Error::CapExceeded {
            what: "edge count for brute-force AT search",
            size: g.num_edges(),
            cap: BRUTE_FORCE_EDGE_CAP,
        });
    }
    let vs: Vec<Vertex> = g.vertices().collect();
    let mut upper = Vec::with_capacity(vs.len());
    for &v in &vs {
        let fv = f.get(v).ok_or_else(|| Error::unknown_vertex(v))?;
        if fv == 0 {
            return Ok(None);
        }
        upper.push((fv - 1).min(g.degree(v) as u32));
    }
    // suffix sums of the upper bounds for pruning
    let mut suffix = vec![0u64; vs.len() + 1];
    for i in (0..vs.len()).rev() {
        suffix[i] = suffix[i + 1] + upper[i] as u64;
    }
    let m = g.num_edges() as u64;
    let mut cur = vec![0u32; vs.len()];
    let mut found = None;
    enumerate(0, 0, m, &upper, &suffix, &mut cur, &mut |d| {
        let dv: OutDegreeVector = vs.iter().copied().zip(d.iter().copied()).collect();
        if coeff(g, &dv)? != 0 {
            found = orientation_with_outdegrees(g, &dv)?;
            debug_assert!(found.is_some());
            return Ok(true);
        }
        Ok(false)
    })?;
    Ok(found)
}

fn enumerate(
    i: usize,
    sum: u64,
    target: u64,
    upper: &[u32],
    suffix: &[u64],
    cur: &mut Vec<u32>,
    visit: &mut dyn FnMut(&[u32]) -> Result<bool>,
) -> Result<bool> {
    if i == upper.len() {
        return if sum == target { visit(cur) } else { Ok(false) };
    }
    for x in 0..=upper[i] {
        let s = sum + x as u64;
        if s > target {
            break;
        }
        if s + suffix[i + 1] < target {
            continue;
        }
        cur[i] = x;
        if enumerate(i + 1, s, target, upper, suffix, cur, visit)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Least `k` such that the graph is `k`-AT.
pub fn at_number(g: &Graph) -> Result<u32> {
    for k in 1..=g.max_degree() as u32 + 1 {
        if find_f_at_orientation(g, &DegreeBudget::constant(g, k))?.is_some() {
            return Ok(k);
        }
    }
    // degeneracy orderings give an acyclic witness below max degree + 1
    unreachable!("every graph is (max degree + 1)-AT")
}
