use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::PlaneGraph;
use crate::error::{Error, Result};
use crate::graph::Vertex;

const MAX_N: u32 = 100_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedGraph {
    Tetrahedron,
    Octahedron,
    Icosahedron,
    Cube,
}

impl std::str::FromStr for NamedGraph {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tetrahedron" | "k4" => Ok(NamedGraph::Tetrahedron),
            "octahedron" => Ok(NamedGraph::Octahedron),
            "icosahedron" => Ok(NamedGraph::Icosahedron),
            "cube" => Ok(NamedGraph::Cube),
            _ => Err(Error::InvalidInput(format!("unknown named graph {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GraphKind {
    /// `C_n` on vertices `0..n`.
    Cycle(u32),
    /// Hub `0` with rim `1..=n`.
    Wheel(u32),
    /// Apex `0` joined to the path `1..n`; `n` vertices in total.
    Fan(u32),
    /// Stacked triangulation on `n` vertices grown from the triangle `0,1,2`.
    Stacked { n: u32, seed: u64 },
    Named(NamedGraph),
}

fn check_n(n: u32) -> Result<()> {
    if (3..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("n = {n} out of range 3..={MAX_N}")))
    }
}

pub fn generate(kind: &GraphKind) -> Result<PlaneGraph> {
    match *kind {
        GraphKind::Cycle(n) => {
            check_n(n)?;
            let f: Vec<Vertex> = (0..n).collect();
            let r: Vec<Vertex> = (0..n).rev().collect();
            PlaneGraph::from_faces(&[f, r], 1)
        }
        GraphKind::Wheel(n) => {
            check_n(n)?;
            let mut faces: Vec<Vec<Vertex>> = (1..=n).map(|i| vec![0, i, i % n + 1]).collect();
            faces.push((1..=n).rev().collect());
            PlaneGraph::from_faces(&faces, n as usize)
        }
        GraphKind::Fan(n) => {
            check_n(n)?;
            let mut faces: Vec<Vec<Vertex>> = (1..n - 1).map(|i| vec![0, i, i + 1]).collect();
            let mut outer = vec![0];
            outer.extend((1..n).rev());
            faces.push(outer);
            let k = faces.len() - 1;
            PlaneGraph::from_faces(&faces, k)
        }
        GraphKind::Stacked { n, seed } => {
            check_n(n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // faces[0] is the outer face throughout
            let mut faces: Vec<[Vertex; 3]> = vec![[0, 2, 1], [0, 1, 2]];
            for x in 3..n {
                let i = rng.random_range(1..faces.len());
                let [a, b, c] = faces[i];
                faces[i] = [a, b, x];
                faces.push([b, c, x]);
                faces.push([c, a, x]);
            }
            let faces: Vec<Vec<Vertex>> = faces.iter().map(|f| f.to_vec()).collect();
            PlaneGraph::from_faces(&faces, 0)
        }
        GraphKind::Named(name) => {
            let faces = named_faces(name);
            let k = faces.len() - 1;
            PlaneGraph::from_faces(&faces, k)
        }
    }
}

fn named_faces(name: NamedGraph) -> Vec<Vec<Vertex>> {
    match name {
        NamedGraph::Tetrahedron => vec![vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 1], vec![1, 3, 2]],
        NamedGraph::Octahedron => {
            // apexes 0 and 5 over the square 1..=4
            let ring = |i: u32| 1 + i % 4;
            let mut f: Vec<Vec<Vertex>> = (0..4).map(|i| vec![0, ring(i), ring(i + 1)]).collect();
            f.extend((0..4).map(|i| vec![5, ring(i + 1), ring(i)]));
            f
        }
        NamedGraph::Icosahedron => {
            // 0 top, 1..=5 upper ring, 6..=10 lower ring, 11 bottom
            let up = |i: u32| 1 + i % 5;
            let lo = |i: u32| 6 + i % 5;
            let mut f: Vec<Vec<Vertex>> = Vec::new();
            for i in 0..5 {
                f.push(vec![0, up(i), up(i + 1)]);
            }
            for i in 0..5 {
                f.push(vec![up(i + 1), up(i), lo(i)]);
                f.push(vec![up(i + 1), lo(i), lo(i + 1)]);
            }
            for i in 0..5 {
                f.push(vec![11, lo(i + 1), lo(i)]);
            }
            f
        }
        NamedGraph::Cube => {
            // top square 0..4 inside bottom square 4..8
            let mut f = vec![vec![0, 1, 2, 3]];
            for i in 0..4 {
                let j = (i + 1) % 4;
                f.push(vec![i, i + 4, j + 4, j]);
            }
            f.push(vec![4, 7, 6, 5]);
            f
        }
    }
}
