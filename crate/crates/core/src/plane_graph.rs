//! Plane graphs given by rotation systems with a designated outer face.
//!
//! Face tracing convention: the dart following `u -> v` is `v -> w`, where
//! `w` is the neighbour immediately *before* `u` in the counterclockwise
//! rotation at `v`. With counterclockwise rotations this walks every face
//! with the face on the left, so bounded faces come out counterclockwise
//! and the outer face clockwise.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};

mod generate;

pub use generate::{generate, GraphKind, NamedGraph};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlaneGraph {
    graph: Graph,
    rotation: BTreeMap<Vertex, Vec<Vertex>>,
    outer_face: Vec<Vertex>,
}

/// The outer cycle of a 2-connected plane graph, read from `v1` towards `v2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundaryWalk {
    vertices: Vec<Vertex>,
}

impl BoundaryWalk {
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn v1(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn v2(&self) -> Vertex {
        self.vertices[1]
    }

    /// The boundary neighbour of `v1` other than `v2`.
    pub fn vn(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    /// `v_{n-1}`; equals `v2` on a triangle.
    pub fn before_vn(&self) -> Vertex {
        self.vertices[self.vertices.len() - 2]
    }

    pub fn e1(&self) -> Edge {
        Edge::new(self.v1(), self.v2())
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    /// True when `e` joins two cyclically consecutive walk vertices.
    pub fn is_walk_edge(&self, e: Edge) -> bool {
        let n = self.vertices.len();
        match (self.position(e.lo()), self.position(e.hi())) {
            (Some(i), Some(j)) => (i + 1) % n == j || (j + 1) % n == i,
            _ => false,
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| Edge::new(self.vertices[i], self.vertices[(i + 1) % n]))
    }
}

/// The two sides of a boundary chord. `part1` contains the designated edge.
#[derive(Clone, Debug)]
pub struct ChordSplit {
    pub chord: Edge,
    pub part1: PlaneGraph,
    pub part2: PlaneGraph,
}

/// Result of removing `v_n` from the boundary.
#[derive(Clone, Debug)]
pub struct BoundaryDeletion {
    pub graph: PlaneGraph,
    pub removed: Vertex,
    /// Neighbours of the removed vertex in rotation order, `v1` first and
    /// `v_{n-1}` last; the entries in between were interior.
    pub neighbors: Vec<Vertex>,
}

impl BoundaryDeletion {
    /// The previously interior neighbours `u_1, ..., u_k`.
    pub fn interior_neighbors(&self) -> &[Vertex] {
        &self.neighbors[1..self.neighbors.len() - 1]
    }
}

type Darts = HashMap<(Vertex, Vertex), usize>;

fn dart_index(rotation: &BTreeMap<Vertex, Vec<Vertex>>) -> Darts {
    // (v, u) -> position of u in rotation[v]
    let mut idx = HashMap::new();
    for (&v, rot) in rotation {
        for (i, &u) in rot.iter().enumerate() {
            idx.insert((v, u), i);
        }
    }
    idx
}

fn next_dart(rotation: &BTreeMap<Vertex, Vec<Vertex>>, idx: &Darts, u: Vertex, v: Vertex) -> Vertex {
    let rot = &rotation[&v];
    let i = idx[&(v, u)];
    rot[(i + rot.len() - 1) % rot.len()]
}

fn trace(rotation: &BTreeMap<Vertex, Vec<Vertex>>) -> Vec<Vec<Vertex>> {
    let idx = dart_index(rotation);
    let mut seen: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    let mut faces = Vec::new();
    for (&u, rot) in rotation {
        let mut starts: Vec<Vertex> = rot.clone();
        starts.sort_unstable();
        for v in starts {
            if seen.contains(&(u, v)) {
                continue;
            }
            let mut walk = Vec::new();
            let (mut a, mut b) = (u, v);
            while seen.insert((a, b)) {
                walk.push(a);
                let c = next_dart(rotation, &idx, a, b);
                a = b;
                b = c;
            }
            faces.push(walk);
        }
    }
    faces
}

/// Offset `k` such that `walk` equals `face` rotated left by `k`.
fn cyclic_offset(face: &[Vertex], walk: &[Vertex]) -> Option<usize> {
    if face.len() != walk.len() {
        return None;
    }
    let n = face.len();
    (0..n).find(|&k| (0..n).all(|i| face[(i + k) % n] == walk[i]))
}

fn face_contains_dart(face: &[Vertex], a: Vertex, b: Vertex) -> bool {
    let n = face.len();
    (0..n).any(|i| face[i] == a && face[(i + 1) % n] == b)
}

impl PlaneGraph {
    /// Validates and builds a plane graph from counterclockwise rotations.
    /// The outer face may be given in either direction; it is stored in
    /// tracing direction.
    pub fn new(rotation: BTreeMap<Vertex, Vec<Vertex>>, outer_face: Vec<Vertex>) -> Result<Self> {
        let mut edges = BTreeSet::new();
        for (&v, rot) in &rotation {
            let distinct: BTreeSet<_> = rot.iter().collect();
            if distinct.len() != rot.len() {
                return Err(Error::InvalidInput(format!(
                    "rotation at {v} repeats a neighbour"
                )));
            }
            for &u in rot {
                if u == v {
                    return Err(Error::InvalidInput(format!("loop at vertex {v}")));
                }
                let back = rotation.get(&u).ok_or_else(|| Error::unknown_vertex(u))?;
                if !back.contains(&v) {
                    return Err(Error::InvalidInput(format!(
                        "rotation at {u} is missing neighbour {v}"
                    )));
                }
                edges.insert(Edge::new(u, v));
            }
        }
        let graph = Graph::from_edges(
            rotation.keys().copied(),
            edges.iter().map(|e| (e.lo(), e.hi())),
        )?;

        let faces = trace(&rotation);
        check_euler(&graph, &faces)?;

        let outer_face = if graph.num_edges() == 0 {
            match outer_face.as_slice() {
                [v] if graph.has_vertex(*v) => outer_face,
                [] if graph.num_vertices() == 0 => outer_face,
                _ => {
                    return Err(Error::EmbeddingInvalid(
                        "outer face of an edgeless graph must be a single vertex".into(),
                    ))
                }
            }
        } else {
            let reversed: Vec<Vertex> = outer_face.iter().rev().copied().collect();
            let direct = faces.iter().find_map(|f| cyclic_offset(f, &outer_face).map(|_| f));
            match direct {
                Some(_) => outer_face,
                None => {
                    let face = faces
                        .iter()
                        .find(|f| cyclic_offset(f, &reversed).is_some())
                        .ok_or_else(|| {
                            Error::EmbeddingInvalid(format!(
                                "outer face {outer_face:?} is not a face of the rotation system"
                            ))
                        })?;
                    // keep the caller's starting vertex
                    let start = outer_face[0];
                    let k = face.iter().position(|&x| x == start).unwrap();
                    let n = face.len();
                    (0..n).map(|i| face[(i + k) % n]).collect()
                }
            }
        };
        Ok(PlaneGraph {
            graph,
            rotation,
            outer_face,
        })
    }

    /// Builds a plane graph from a consistently oriented list of face
    /// walks (every dart in exactly one face); `faces[outer]` is the outer face.
    pub fn from_faces(faces: &[Vec<Vertex>], outer: usize) -> Result<Self> {
        if outer >= faces.len() {
            return Err(Error::InvalidInput("outer face index out of range".into()));
        }
        // succ[v][w] = u  means u follows w in the ccw rotation at v
        let mut succ: BTreeMap<Vertex, BTreeMap<Vertex, Vertex>> = BTreeMap::new();
        let mut darts = BTreeSet::new();
        for face in faces {
            let m = face.len();
            if m < 2 {
                return Err(Error::InvalidInput("face walk shorter than 2".into()));
            }
            for i in 0..m {
                let (prev, v, next) = (face[(i + m - 1) % m], face[i], face[(i + 1) % m]);
                if !darts.insert((v, next)) {
                    return Err(Error::EmbeddingInvalid(format!(
                        "dart {v}->{next} appears in two faces"
                    )));
                }
                if succ.entry(v).or_default().insert(next, prev).is_some() {
                    return Err(Error::EmbeddingInvalid(format!("corner conflict at {v}")));
                }
            }
        }
        let mut rotation = BTreeMap::new();
        for (&v, s) in &succ {
            let start = *s.keys().next().unwrap();
            let mut rot = vec![start];
            let mut cur = s[&start];
            while cur != start {
                if rot.len() > s.len() {
                    return Err(Error::EmbeddingInvalid(format!("corners at {v} do not close")));
                }
                rot.push(cur);
                cur = *s.get(&cur).ok_or_else(|| {
                    Error::EmbeddingInvalid(format!("corners at {v} do not close"))
                })?;
            }
            if rot.len() != s.len() {
                return Err(Error::EmbeddingInvalid(format!(
                    "vertex {v} is pinched (corners form several cycles)"
                )));
            }
            rotation.insert(v, rot);
        }
        PlaneGraph::new(rotation, faces[outer].clone())
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        self.rotation.get(&v).map_or(&[], Vec::as_slice)
    }

    pub fn rotations(&self) -> &BTreeMap<Vertex, Vec<Vertex>> {
        &self.rotation
    }

    pub fn outer_face(&self) -> &[Vertex] {
        &self.outer_face
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.num_vertices()
    }

    pub fn num_edges(&self) -> usize {
        self.graph.num_edges()
    }

    /// All face walks; each dart appears in exactly one walk.
    pub fn trace_faces(&self) -> Vec<Vec<Vertex>> {
        trace(&self.rotation)
    }

    fn outer_index(&self, faces: &[Vec<Vertex>]) -> usize {
        faces
            .iter()
            .position(|f| cyclic_offset(f, &self.outer_face).is_some())
            .expect("outer face is a traced face")
    }

    /// Inner faces (all traced faces but the outer one).
    pub fn inner_faces(&self) -> Vec<Vec<Vertex>> {
        let mut faces = self.trace_faces();
        if self.graph.num_edges() > 0 {
            let k = self.outer_index(&faces);
            faces.remove(k);
        }
        faces
    }

    pub fn is_2_connected(&self) -> bool {
        self.graph.is_2_connected()
    }

    pub fn is_near_triangulation(&self) -> bool {
        self.is_2_connected() && self.inner_faces().iter().all(|f| f.len() == 3)
    }

    /// Outer edges in ascending order.
    pub fn outer_edges(&self) -> BTreeSet<Edge> {
        let n = self.outer_face.len();
        (0..n)
            .filter(|&i| self.outer_face[i] != self.outer_face[(i + 1) % n])
            .map(|i| Edge::new(self.outer_face[i], self.outer_face[(i + 1) % n]))
            .collect()
    }

    /// The outer cycle started at `v1` heading to `v2`.
    pub fn boundary(&self, v1: Vertex, v2: Vertex) -> Result<BoundaryWalk> {
        let face = &self.outer_face;
        let n = face.len();
        let distinct: BTreeSet<_> = face.iter().collect();
        if n < 3 || distinct.len() != n {
            return Err(Error::NotTwoConnected(format!(
                "outer face {face:?} is not a simple cycle"
            )));
        }
        let i = face.iter().position(|&x| x == v1).ok_or_else(|| {
            Error::Precondition(format!("{v1} is not a boundary vertex"))
        })?;
        let vertices: Vec<Vertex> = if face[(i + 1) % n] == v2 {
            (0..n).map(|k| face[(i + k) % n]).collect()
        } else if face[(i + n - 1) % n] == v2 {
            (0..n).map(|k| face[(i + n - k) % n]).collect()
        } else {
            return Err(Error::Precondition(format!(
                "{v1}{v2} is not a boundary edge"
            )));
        };
        Ok(BoundaryWalk { vertices })
    }

    /// Smallest `(x, y)` edge joining two boundary vertices that is not a
    /// boundary edge.
    pub fn find_chord(&self, b: &BoundaryWalk) -> Option<Edge> {
        let on: BTreeSet<Vertex> = b.vertices.iter().copied().collect();
        self.graph
            .edges()
            .find(|&e| on.contains(&e.lo()) && on.contains(&e.hi()) && !b.is_walk_edge(e))
    }

    /// Restriction of the embedding to a subgraph. The outer face of the
    /// result is the traced face containing the dart `outer_dart`.
    fn restrict(
        &self,
        vertices: &BTreeSet<Vertex>,
        edges: &BTreeSet<Edge>,
        outer_dart: (Vertex, Vertex),
    ) -> Result<PlaneGraph> {
        let rotation: BTreeMap<Vertex, Vec<Vertex>> = vertices
            .iter()
            .map(|&v| {
                let rot = self
                    .rotation(v)
                    .iter()
                    .copied()
                    .filter(|&u| edges.contains(&Edge::new(u, v)))
                    .collect();
                (v, rot)
            })
            .collect();
        let faces = trace(&rotation);
        let outer = faces
            .iter()
            .find(|f| face_contains_dart(f, outer_dart.0, outer_dart.1))
            .ok_or_else(|| Error::EmbeddingInvalid("restricted outer face not found".into()))?
            .clone();
        PlaneGraph::new(rotation, outer)
    }

    /// An outer-face dart (in tracing direction) along the edge `e`.
    fn outer_dart_on(&self, e: Edge) -> Option<(Vertex, Vertex)> {
        let n = self.outer_face.len();
        (0..n)
            .map(|i| (self.outer_face[i], self.outer_face[(i + 1) % n]))
            .find(|&(a, b)| a != b && Edge::new(a, b) == e)
    }

    /// Splits along a boundary chord. `part1` is the side containing `e1`.
    pub fn split_at_chord(&self, b: &BoundaryWalk, chord: Edge) -> Result<ChordSplit> {
        if !self.graph.has_edge(chord) || b.is_walk_edge(chord) {
            return Err(Error::Precondition(format!("{chord:?} is not a boundary chord")));
        }
        let (Some(px), Some(py)) = (b.position(chord.lo()), b.position(chord.hi())) else {
            return Err(Error::Precondition(format!("{chord:?} is not a boundary chord")));
        };
        let n = b.len();
        let side = |from: usize, to: usize| -> Vec<Vertex> {
            let mut path = vec![b.vertices[from]];
            let mut i = from;
            while i != to {
                i = (i + 1) % n;
                path.push(b.vertices[i]);
            }
            path
        };
        let (side_a, side_b) = (side(px, py), side(py, px));
        // the side whose path runs through positions 0 -> 1
        let a_has_e1 = {
            let len = side_a.len();
            (0..len - 1).any(|i| Edge::new(side_a[i], side_a[i + 1]) == b.e1())
        };
        let (path1, path2) = if a_has_e1 { (side_a, side_b) } else { (side_b, side_a) };

        let faces = self.trace_faces();
        let outer = self.outer_index(&faces);
        let mut face_of: HashMap<(Vertex, Vertex), usize> = HashMap::new();
        for (fi, f) in faces.iter().enumerate() {
            let m = f.len();
            for i in 0..m {
                face_of.insert((f[i], f[(i + 1) % m]), fi);
            }
        }
        let grow = |path: &[Vertex]| -> Result<(BTreeSet<Vertex>, BTreeSet<Edge>)> {
            let (p, q) = (path[0], path[1]);
            let seed = [face_of[&(p, q)], face_of[&(q, p)]]
                .into_iter()
                .find(|&f| f != outer)
                .ok_or_else(|| Error::EmbeddingInvalid("boundary edge with no inner face".into()))?;
            let mut seen = BTreeSet::from([seed]);
            let mut queue = VecDeque::from([seed]);
            while let Some(fi) = queue.pop_front() {
                let f = &faces[fi];
                let m = f.len();
                for i in 0..m {
                    let (a, c) = (f[i], f[(i + 1) % m]);
                    if Edge::new(a, c) == chord {
                        continue;
                    }
                    let g = face_of[&(c, a)];
                    if g != outer && seen.insert(g) {
                        queue.push_back(g);
                    }
                }
            }
            let mut vs = BTreeSet::new();
            let mut es = BTreeSet::new();
            for &fi in &seen {
                let f = &faces[fi];
                let m = f.len();
                for i in 0..m {
                    vs.insert(f[i]);
                    es.insert(Edge::new(f[i], f[(i + 1) % m]));
                }
            }
            Ok((vs, es))
        };
        let (v1, e1s) = grow(&path1)?;
        let (v2, e2s) = grow(&path2)?;
        let shared: BTreeSet<_> = v1.intersection(&v2).copied().collect();
        if shared != BTreeSet::from([chord.lo(), chord.hi()])
            || e1s.intersection(&e2s).count() != 1
            || v1.len() + v2.len() != self.num_vertices() + 2
        {
            return Err(Error::NotTwoConnected(format!(
                "chord {chord:?} does not split the graph into two sides"
            )));
        }
        let dart = |path: &[Vertex]| {
            self.outer_dart_on(Edge::new(path[0], path[1]))
                .expect("side edge lies on the outer face")
        };
        let part1 = self.restrict(&v1, &e1s, dart(&path1))?;
        let part2 = self.restrict(&v2, &e2s, dart(&path2))?;
        Ok(ChordSplit {
            chord,
            part1,
            part2,
        })
    }

    /// Removes `v_n` from a chordless near-triangulation with at least four
    /// vertices.
    pub fn delete_boundary_vertex(&self, b: &BoundaryWalk) -> Result<BoundaryDeletion> {
        if self.num_vertices() < 4 {
            return Err(Error::Precondition(
                "boundary-vertex deletion needs at least 4 vertices".into(),
            ));
        }
        if let Some(c) = self.find_chord(b) {
            return Err(Error::Precondition(format!("boundary has chord {c:?}")));
        }
        if !self.is_near_triangulation() {
            return Err(Error::Precondition("graph is not a near-triangulation".into()));
        }
        let (vn, v1, vprev) = (b.vn(), b.v1(), b.before_vn());
        let rot = self.rotation(vn);
        let m = rot.len();
        let i = rot.iter().position(|&x| x == v1).expect("v1 adjacent to v_n");
        let step = if m >= 3 && rot[(i + 1) % m] == vprev { m - 1 } else { 1 };
        let mut neighbors = Vec::with_capacity(m);
        let mut j = i;
        loop {
            neighbors.push(rot[j]);
            if rot[j] == vprev {
                break;
            }
            j = (j + step) % m;
        }
        if neighbors.len() != m {
            return Err(Error::EmbeddingInvalid(format!(
                "rotation at {vn} does not run from {v1} to {vprev}"
            )));
        }
        let vertices: BTreeSet<Vertex> = self.graph.vertices().filter(|&v| v != vn).collect();
        let edges: BTreeSet<Edge> = self.graph.edges().filter(|e| !e.contains(vn)).collect();
        let dart = self
            .outer_dart_on(b.e1())
            .expect("e1 lies on the outer face");
        let graph = self.restrict(&vertices, &edges, dart)?;
        Ok(BoundaryDeletion {
            graph,
            removed: vn,
            neighbors,
        })
    }

    /// Triangulates every inner face of a 2-connected plane graph.
    pub fn triangulate_inner_faces(&self) -> Result<PlaneGraph> {
        if !self.is_2_connected() {
            return Err(Error::NotTwoConnected(
                "inner-face triangulation needs a 2-connected graph".into(),
            ));
        }
        self.triangulate_faces(false)
    }

    /// Extends a connected plane graph with at least three vertices to a
    /// near-triangulation on the same vertex set; 2-connected inputs keep
    /// their outer face, others are triangulated completely.
    pub fn to_near_triangulation(&self) -> Result<PlaneGraph> {
        if self.num_vertices() < 3 || !self.graph.is_connected() {
            return Err(Error::Precondition(
                "need a connected graph with at least 3 vertices".into(),
            ));
        }
        if self.is_2_connected() {
            self.triangulate_faces(false)
        } else {
            self.triangulate_faces(true)
        }
    }

    fn triangulate_faces(&self, include_outer: bool) -> Result<PlaneGraph> {
        let mut rotation = self.rotation.clone();
        let mut edges: BTreeSet<Edge> = self.graph.edges().collect();
        let faces = self.trace_faces();
        let outer = self.outer_index(&faces);
        let mut new_outer = self.outer_face.clone();
        for (fi, face) in faces.into_iter().enumerate() {
            if fi == outer && !include_outer {
                continue;
            }
            let rest = triangulate_walk(face, &mut rotation, &mut edges)?;
            if fi == outer {
                new_outer = rest;
            }
        }
        if include_outer {
            // keep an original edge on the new outer triangle
            let (a, b) = (self.outer_face[0], self.outer_face[1 % self.outer_face.len()]);
            let probe = PlaneGraph::new(rotation.clone(), new_outer)?;
            new_outer = probe
                .trace_faces()
                .into_iter()
                .find(|f| (0..f.len()).any(|i| f[i] == a && f[(i + 1) % f.len()] == b))
                .ok_or_else(|| Error::EmbeddingInvalid("outer dart lost while triangulating".into()))?;
        }
        PlaneGraph::new(rotation, new_outer)
    }

    /// Canonical form used for digests: ascending vertex ids, rotations
    /// started at their smallest neighbour.
    pub fn canonical(&self) -> PlaneGraph {
        let rotation = self
            .rotation
            .iter()
            .map(|(&v, rot)| {
                let k = rot
                    .iter()
                    .enumerate()
                    .min_by_key(|&(_, &u)| u)
                    .map_or(0, |(i, _)| i);
                let mut r = rot.clone();
                r.rotate_left(k);
                (v, r)
            })
            .collect();
        let mut outer_face = self.outer_face.clone();
        if let Some(k) = outer_face
            .iter()
            .enumerate()
            .min_by_key(|&(_, &u)| u)
            .map(|(i, _)| i)
        {
            outer_face.rotate_left(k);
        }
        PlaneGraph {
            graph: self.graph.clone(),
            rotation,
            outer_face,
        }
    }
}

fn check_euler(graph: &Graph, faces: &[Vec<Vertex>]) -> Result<()> {
    let comps = graph.components();
    let mut comp_of = BTreeMap::new();
    for (ci, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of.insert(v, ci);
        }
    }
    let mut face_count = vec![0i64; comps.len()];
    for f in faces {
        face_count[comp_of[&f[0]]] += 1;
    }
    for (ci, c) in comps.iter().enumerate() {
        let nv = c.len() as i64;
        let ne: i64 = c.iter().map(|&v| graph.degree(v) as i64).sum::<i64>() / 2;
        let nf = if ne == 0 { 1 } else { face_count[ci] };
        if nv - ne + nf != 2 {
            return Err(Error::EmbeddingInvalid(format!(
                "component containing {} has V-E+F = {} (not planar rotation)",
                c[0],
                nv - ne + nf
            )));
        }
    }
    Ok(())
}

/// Adds the chord `walk[i]`-`walk[i+2]` inside the face, cutting off the
/// triangle `walk[i], walk[i+1], walk[i+2]`.
fn insert_ear(
    walk: &mut Vec<Vertex>,
    i: usize,
    rotation: &mut BTreeMap<Vertex, Vec<Vertex>>,
    edges: &mut BTreeSet<Edge>,
) {
    let m = walk.len();
    let (a, b, c) = (walk[i], walk[(i + 1) % m], walk[(i + 2) % m]);
    // at a: b sits just before the incoming neighbour; c goes right after b
    let ra = rotation.get_mut(&a).unwrap();
    let pb = ra.iter().position(|&x| x == b).unwrap();
    ra.insert(pb + 1, c);
    // at c: a goes right before b
    let rc = rotation.get_mut(&c).unwrap();
    let pb = rc.iter().position(|&x| x == b).unwrap();
    rc.insert(pb, a);
    edges.insert(Edge::new(a, c));
    walk.remove((i + 1) % m);
}

fn triangulate_walk(
    mut walk: Vec<Vertex>,
    rotation: &mut BTreeMap<Vertex, Vec<Vertex>>,
    edges: &mut BTreeSet<Edge>,
) -> Result<Vec<Vertex>> {
    let valid = |walk: &[Vertex], i: usize, edges: &BTreeSet<Edge>| {
        let m = walk.len();
        let (a, c) = (walk[i], walk[(i + 2) % m]);
        a != c && !edges.contains(&Edge::new(a, c))
    };
    while walk.len() > 3 {
        let m = walk.len();
        // fan from the lowest id vertex, falling back to any valid ear
        let low = (0..m).min_by_key(|&i| walk[i]).unwrap();
        let pick = (0..m)
            .map(|k| (low + k) % m)
            .find(|&i| valid(&walk, i, edges))
            .ok_or_else(|| {
                Error::EmbeddingInvalid(format!("face {walk:?} admits no chord (internal error)"))
            })?;
        insert_ear(&mut walk, pick, rotation, edges);
    }
    Ok(walk)
}
