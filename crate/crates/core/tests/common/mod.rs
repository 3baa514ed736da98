#![allow(dead_code)]

use atcert::plane_graph::{generate, GraphKind, NamedGraph};
use atcert::PlaneGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use atcert::at_core::{Arc, Orientation};
use atcert::{Graph, Vertex};

/// The 40-graph corpus shared by the acceptance and integration tests.
pub fn corpus() -> Vec<(String, PlaneGraph)> {
    let mut kinds: Vec<(String, GraphKind)> = Vec::new();
    for name in [
        NamedGraph::Tetrahedron,
        NamedGraph::Octahedron,
        NamedGraph::Icosahedron,
        NamedGraph::Cube,
    ] {
        kinds.push((format!("{name:?}").to_lowercase(), GraphKind::Named(name)));
    }
    for n in 4..=9 {
        kinds.push((format!("wheel{n}"), GraphKind::Wheel(n)));
    }
    for n in 5..=9 {
        kinds.push((format!("fan{n}"), GraphKind::Fan(n)));
    }
    for n in [9, 12] {
        for seed in 0..10 {
            kinds.push((format!("stacked{n}_s{seed}"), GraphKind::Stacked { n, seed }));
        }
    }
    for n in 4..=8 {
        kinds.push((format!("cycle{n}"), GraphKind::Cycle(n)));
    }
    kinds
        .into_iter()
        .map(|(name, k)| (name, generate(&k).unwrap()))
        .collect()
}

/// Random simple graph on `n` vertices with exactly `m` edges.
pub fn random_graph(rng: &mut ChaCha8Rng, n: u32, m: usize) -> Graph {
    let mut all: Vec<(Vertex, Vertex)> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            all.push((a, b));
        }
    }
    let m = m.min(all.len());
    let picked = rand::seq::index::sample(rng, all.len(), m);
    Graph::from_edges(0..n, picked.into_iter().map(|i| all[i])).unwrap()
}

pub fn random_orientation(rng: &mut ChaCha8Rng, g: &Graph) -> Orientation {
    let arcs: Vec<Arc> = g
        .edges()
        .map(|e| {
            if rng.random_bool(0.5) {
                Arc::new(e.lo(), e.hi())
            } else {
                Arc::new(e.hi(), e.lo())
            }
        })
        .collect();
    Orientation::new(g.clone(), arcs).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
