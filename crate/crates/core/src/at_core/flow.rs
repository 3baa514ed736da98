use std::collections::{BTreeMap, VecDeque};

use super::{Arc, OutDegreeVector, Orientation};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};

/// An orientation with exactly the prescribed out-degrees, if one exists.
///
/// Unit-capacity flow from edges to endpoints (capacity `d(v)` into the
/// sink), solved by augmenting paths that re-point already assigned edges.
pub fn orientation_with_outdegrees(g: &Graph, d: &OutDegreeVector) -> Result<Option<Orientation>> {
    if d.len() != g.num_vertices() || g.vertices().any(|v| d.get(v).is_none()) {
        return Err(Error::InvalidInput(
            "out-degree vector must cover exactly the graph's vertices".into(),
        ));
    }
    if d.sum() != g.num_edges() as u64 {
        return Err(Error::Precondition(format!(
            "out-degree sum {} differs from edge count {}",
            d.sum(),
            g.num_edges()
        )));
    }
    let mut load: BTreeMap<Vertex, u32> = g.vertices().map(|v| (v, 0)).collect();
    let mut tail: BTreeMap<Edge, Vertex> = BTreeMap::new();
    for e in g.edges() {
        // BFS over vertices; parent records (previous vertex, edge moved)
        let mut parent: BTreeMap<Vertex, Option<(Vertex, Edge)>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for x in [e.lo(), e.hi()] {
            parent.insert(x, None);
            queue.push_back(x);
        }
        let mut found = None;
        while let Some(x) = queue.pop_front() {
            if load[&x] < d.get(x).unwrap() {
                found = Some(x);
                break;
            }
            for y in g.neighbors(x) {
                let f = Edge::new(x, y);
                if tail.get(&f) == Some(&x) && !parent.contains_key(&y) {
                    parent.insert(y, Some((x, f)));
                    queue.push_back(y);
                }
            }
        }
        let Some(mut x) = found else {
            return Ok(None);
        };
        *load.get_mut(&x).unwrap() += 1;
        while let Some((prev, f)) = parent[&x] {
            tail.insert(f, x);
            x = prev;
        }
        *load.get_mut(&x).unwrap() -= 1;
        tail.insert(e, x);
        *load.get_mut(&x).unwrap() += 1;
    }
    let arcs = tail.iter().map(|(&e, &t)| Arc::new(t, e.other(t)));
    Ok(Some(Orientation::new(g.clone(), arcs)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(xs: &[(u32, u32)]) -> OutDegreeVector {
        xs.iter().copied().collect()
    }

    #[test]
    fn k3() {
        let g = Graph::from_edges([1, 2, 3], [(1, 2), (1, 3), (2, 3)]).unwrap();
        let o = orientation_with_outdegrees(&g, &dv(&[(1, 2), (2, 1), (3, 0)]))
            .unwrap()
            .unwrap();
        let arcs: Vec<_> = o.arcs().collect();
        assert_eq!(arcs, vec![Arc::new(1, 2), Arc::new(1, 3), Arc::new(2, 3)]);
        assert!(orientation_with_outdegrees(&g, &dv(&[(1, 3), (2, 0), (3, 0)]))
            .unwrap()
            .is_none());
        assert!(orientation_with_outdegrees(&g, &dv(&[(1, 1), (2, 0), (3, 0)])).is_err());
    }

    #[test]
    fn c4_balanced_is_a_directed_cycle() {
        let g = Graph::from_edges(0..4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let o = orientation_with_outdegrees(&g, &dv(&[(0, 1), (1, 1), (2, 1), (3, 1)]))
            .unwrap()
            .unwrap();
        assert!(o.out_degrees().values().all(|x| x == 1));
    }

    #[test]
    fn needs_augmenting_paths() {
        // star centre 0 with leaves 1..4 plus path 1-2; centre must have out-degree 0
        let g = Graph::from_edges(0..5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2)]).unwrap();
        let d = dv(&[(0, 0), (1, 2), (2, 1), (3, 1), (4, 1)]);
        let o = orientation_with_outdegrees(&g, &d).unwrap().unwrap();
        assert_eq!(o.out_degrees(), d);
    }
}
