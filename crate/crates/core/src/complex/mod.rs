//! Triangulations of compact surfaces with (possibly empty) boundary.
//!
//! A [`Triangulation`] is stored as a list of vertex triples. Everything
//! else (edges, the faces around each edge, the rotation of neighbours
//! around each vertex) is derived once in [`Triangulation::build`] and the
//! value is immutable afterwards.

pub mod canon;
pub mod io;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

pub use canon::{canonical_form, is_equivalent, CanonicalForm};

pub type VertexId = u32;

/// A face as an (unordered) triple of vertex ids.
pub type Face = [VertexId; 3];

/// Returns the face with its vertices in increasing order.
pub fn sorted_face(f: Face) -> Face {
    let mut f = f;
    f.sort_unstable();
    f
}

/// An unordered pair of distinct vertices, stored with the smaller id first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(VertexId, VertexId);

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Edge {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn endpoints(self) -> (VertexId, VertexId) {
        (self.0, self.1)
    }

    pub fn contains(self, v: VertexId) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`, if `v` is an endpoint.
    pub fn other(self, v: VertexId) -> Option<VertexId> {
        if self.0 == v {
            Some(self.1)
        } else if self.1 == v {
            Some(self.0)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("triangulation has no faces")]
    Empty,
    #[error("face {0:?} repeats a vertex")]
    InvalidFace(Face),
    #[error("faces {0:?} and {1:?} share two edges")]
    TwoFacesShareTwoEdges(Face, Face),
    #[error("edge {0} lies in {1} faces")]
    NonManifoldEdge(Edge, usize),
    #[error("complex is disconnected")]
    DisconnectedComplex,
    #[error("link of vertex {0} is neither a single path nor a single cycle")]
    BadVertexLink(VertexId),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QueryError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(Edge),
    #[error("triangulation has empty boundary")]
    EmptyBoundary,
}

/// The neighbours of a vertex in rotation order.
///
/// Inner vertices have a cyclic link, boundary vertices a linear one whose
/// two ends are the boundary neighbours.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rotation {
    Cycle(Vec<VertexId>),
    Path(Vec<VertexId>),
}

impl Rotation {
    pub fn vertices(&self) -> &[VertexId] {
        match self {
            Rotation::Cycle(v) | Rotation::Path(v) => v,
        }
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self, Rotation::Cycle(_))
    }

    pub fn len(&self) -> usize {
        self.vertices().len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices().is_empty()
    }

    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.vertices().iter().position(|&w| w == v)
    }
}

impl fmt::Display for Rotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.vertices().iter().map(|v| v.to_string()).collect();
        match self {
            Rotation::Cycle(_) => write!(f, "cycle({})", ids.join(" ")),
            Rotation::Path(_) => write!(f, "path({})", ids.join(" ")),
        }
    }
}

/// (Euler characteristic, orientability, number of boundary components).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceClass {
    pub euler_characteristic: i64,
    pub orientable: bool,
    pub boundary_components: usize,
}

impl SurfaceClass {
    pub fn is_disk(&self) -> bool {
        self.euler_characteristic == 1 && self.boundary_components == 1
    }

    /// Short filesystem-friendly key, e.g. `chi0-n-b1`.
    pub fn key(&self) -> String {
        format!(
            "chi{}-{}-b{}",
            self.euler_characteristic,
            if self.orientable { "o" } else { "n" },
            self.boundary_components
        )
    }
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "chi={} orientable={} boundary_components={}",
            self.euler_characteristic, self.orientable, self.boundary_components
        )
    }
}

/// Boundary cycles and boundary edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryGraph {
    pub cycles: Vec<Vec<VertexId>>,
    pub edges: Vec<Edge>,
}

/// Degree classes: F°²(4) has minimum degree ≥ 3 and inner degrees ≥ 4,
/// F²(4) has minimum degree ≥ 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Class {
    /// F°²(4)
    F0,
    /// F²(4)
    F4,
}

impl Class {
    pub fn contains(self, t: &Triangulation) -> bool {
        match (self, t.class_membership()) {
            (_, Membership::F4) => true,
            (Class::F0, Membership::F0) => true,
            _ => false,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Class::F0 => "f0",
            Class::F4 => "f4",
        }
    }

    pub fn parse(s: &str) -> Option<Class> {
        match s {
            "f0" => Some(Class::F0),
            "f4" => Some(Class::F4),
            _ => None,
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The strongest degree class a triangulation belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    F4,
    F0,
    Neither,
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Membership::F4 => "f4",
            Membership::F0 => "f0",
            Membership::Neither => "neither",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Triangulation {
    faces: Vec<Face>,
    face_set: BTreeSet<Face>,
    vertices: Vec<VertexId>,
    edge_faces: BTreeMap<Edge, Vec<usize>>,
    rotations: BTreeMap<VertexId, Rotation>,
}

impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.faces == other.faces
    }
}

impl Eq for Triangulation {}

impl Triangulation {
    /// Validates a face list and derives all incidence data.
    pub fn build(faces: Vec<Face>) -> Result<Triangulation, BuildError> {
        if faces.is_empty() {
            return Err(BuildError::Empty);
        }
        let mut face_set = BTreeSet::new();
        let mut first_seen: BTreeMap<Face, Face> = BTreeMap::new();
        for &f in &faces {
            if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
                return Err(BuildError::InvalidFace(f));
            }
            let s = sorted_face(f);
            if let Some(&prev) = first_seen.get(&s) {
                return Err(BuildError::TwoFacesShareTwoEdges(prev, f));
            }
            first_seen.insert(s, f);
            face_set.insert(s);
        }

        let mut edge_faces: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
        let mut link_edges: BTreeMap<VertexId, Vec<(VertexId, VertexId)>> = BTreeMap::new();
        for (i, &[a, b, c]) in faces.iter().enumerate() {
            for (u, v, w) in [(a, b, c), (b, c, a), (c, a, b)] {
                edge_faces.entry(Edge::new(u, v)).or_default().push(i);
                link_edges.entry(w).or_default().push((u, v));
            }
        }
        for (&e, fs) in &edge_faces {
            if fs.len() > 2 {
                return Err(BuildError::NonManifoldEdge(e, fs.len()));
            }
        }

        let mut rotations = BTreeMap::new();
        for (&v, ls) in &link_edges {
            let rot = rotation_from_link(ls).ok_or(BuildError::BadVertexLink(v))?;
            rotations.insert(v, rot);
        }
        let vertices: Vec<VertexId> = rotations.keys().copied().collect();

        // connectivity over the 1-skeleton
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([vertices[0]]);
        seen.insert(vertices[0]);
        while let Some(v) = queue.pop_front() {
            for &w in rotations[&v].vertices() {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        if seen.len() != vertices.len() {
            return Err(BuildError::DisconnectedComplex);
        }

        Ok(Triangulation {
            faces,
            face_set,
            vertices,
            edge_faces,
            rotations,
        })
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Vertex ids in increasing order.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edge_faces.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// Edges in increasing order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edge_faces.keys().copied()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.rotations.contains_key(&v)
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        a != b && self.edge_faces.contains_key(&Edge::new(a, b))
    }

    pub fn has_face(&self, a: VertexId, b: VertexId, c: VertexId) -> bool {
        self.face_set.contains(&sorted_face([a, b, c]))
    }

    /// Smallest non-negative id not used by any vertex.
    pub fn fresh_vertex(&self) -> VertexId {
        let mut candidate = 0;
        for &v in &self.vertices {
            if v == candidate {
                candidate += 1;
            } else if v > candidate {
                break;
            }
        }
        candidate
    }

    /// `k` fresh ids, smallest first.
    pub fn fresh_vertices(&self, k: usize) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(k);
        let mut candidate = 0;
        let mut it = self.vertices.iter().peekable();
        while out.len() < k {
            while let Some(&&v) = it.peek() {
                if v < candidate {
                    it.next();
                } else {
                    break;
                }
            }
            if it.peek().map(|&&v| v) != Some(candidate) {
                out.push(candidate);
            }
            candidate += 1;
        }
        out
    }

    /// Apexes of the faces containing `e` (one for a boundary edge, two otherwise).
    pub fn apexes(&self, e: Edge) -> Result<Vec<VertexId>, QueryError> {
        let fs = self.edge_faces.get(&e).ok_or(QueryError::UnknownEdge(e))?;
        Ok(fs
            .iter()
            .map(|&i| {
                *self.faces[i]
                    .iter()
                    .find(|&&w| !e.contains(w))
                    .expect("face contains a third vertex")
            })
            .collect())
    }

    /// Indices (into [`Triangulation::faces`]) of the faces containing `e`.
    pub fn faces_of_edge(&self, e: Edge) -> Option<&[usize]> {
        self.edge_faces.get(&e).map(|v| v.as_slice())
    }

    pub fn rotation(&self, v: VertexId) -> Option<&Rotation> {
        self.rotations.get(&v)
    }

    /// Neighbours in rotation order.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        self.rotations.get(&v).map(|r| r.vertices()).unwrap_or(&[])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    pub fn link(&self, v: VertexId) -> Result<Rotation, QueryError> {
        self.rotations
            .get(&v)
            .cloned()
            .ok_or(QueryError::UnknownVertex(v))
    }

    pub fn is_boundary_vertex(&self, v: VertexId) -> bool {
        matches!(self.rotations.get(&v), Some(Rotation::Path(_)))
    }

    pub fn is_inner_vertex(&self, v: VertexId) -> bool {
        matches!(self.rotations.get(&v), Some(Rotation::Cycle(_)))
    }

    pub fn is_boundary_edge(&self, e: Edge) -> bool {
        self.edge_faces.get(&e).map(|f| f.len() == 1).unwrap_or(false)
    }

    pub fn is_inner_edge(&self, e: Edge) -> bool {
        self.edge_faces.get(&e).map(|f| f.len() == 2).unwrap_or(false)
    }

    pub fn boundary_edges(&self) -> Vec<Edge> {
        self.edge_faces
            .iter()
            .filter(|(_, f)| f.len() == 1)
            .map(|(&e, _)| e)
            .collect()
    }

    pub fn boundary_vertices(&self) -> Vec<VertexId> {
        self.vertices
            .iter()
            .copied()
            .filter(|&v| self.is_boundary_vertex(v))
            .collect()
    }

    pub fn has_boundary(&self) -> bool {
        self.rotations.values().any(|r| !r.is_cyclic())
    }

    /// The two boundary neighbours of a boundary vertex.
    pub fn boundary_neighbors(&self, v: VertexId) -> Option<(VertexId, VertexId)> {
        match self.rotations.get(&v)? {
            Rotation::Path(p) => Some((p[0], p[p.len() - 1])),
            Rotation::Cycle(_) => None,
        }
    }

    /// Boundary edges assembled into cycles. Each cycle starts at its
    /// smallest vertex and proceeds towards the smaller boundary neighbour.
    pub fn boundary(&self) -> BoundaryGraph {
        let edges = self.boundary_edges();
        let mut cycles = Vec::new();
        let mut used = BTreeSet::new();
        for v in self.boundary_vertices() {
            if used.contains(&v) {
                continue;
            }
            let (p, q) = self.boundary_neighbors(v).expect("boundary vertex");
            let mut cycle = vec![v];
            used.insert(v);
            let mut prev = v;
            let mut cur = p.min(q);
            while cur != v {
                cycle.push(cur);
                used.insert(cur);
                let (a, b) = self.boundary_neighbors(cur).expect("boundary vertex");
                let next = if a != prev { a } else { b };
                prev = cur;
                cur = next;
            }
            cycles.push(cycle);
        }
        BoundaryGraph { cycles, edges }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_faces() as i64
    }

    /// Orientability by propagating a face orientation across inner edges.
    pub fn is_orientable(&self) -> bool {
        let n = self.faces.len();
        let mut orient: Vec<Option<Face>> = vec![None; n];
        for root in 0..n {
            if orient[root].is_some() {
                continue;
            }
            orient[root] = Some(self.faces[root]);
            let mut queue = VecDeque::from([root]);
            while let Some(i) = queue.pop_front() {
                let [a, b, c] = orient[i].expect("oriented");
                for (u, v) in [(a, b), (b, c), (c, a)] {
                    for &j in &self.edge_faces[&Edge::new(u, v)] {
                        if j == i {
                            continue;
                        }
                        // neighbour must traverse the shared edge as v -> u
                        let f = self.faces[j];
                        let w = *f.iter().find(|&&w| w != u && w != v).expect("third vertex");
                        let wanted = [v, u, w];
                        match orient[j] {
                            None => {
                                orient[j] = Some(wanted);
                                queue.push_back(j);
                            }
                            Some(g) => {
                                if !same_cyclic(g, wanted) {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    pub fn classify(&self) -> SurfaceClass {
        SurfaceClass {
            euler_characteristic: self.euler_characteristic(),
            orientable: self.is_orientable(),
            boundary_components: self.boundary().cycles.len(),
        }
    }

    pub fn is_disk(&self) -> bool {
        self.classify().is_disk()
    }

    /// Graph distances from a set of sources (vertices not reached are absent).
    pub fn distances_from(&self, sources: &[VertexId]) -> BTreeMap<VertexId, usize> {
        let mut dist = BTreeMap::new();
        let mut queue = VecDeque::new();
        for &s in sources {
            if self.contains_vertex(s) && !dist.contains_key(&s) {
                dist.insert(s, 0);
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            let d = dist[&v];
            for &w in self.neighbors(v) {
                if !dist.contains_key(&w) {
                    dist.insert(w, d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Minimum number of edges joining `e` to the boundary.
    pub fn edge_distance_to_boundary(&self, e: Edge) -> Result<usize, QueryError> {
        if !self.edge_faces.contains_key(&e) {
            return Err(QueryError::UnknownEdge(e));
        }
        let boundary = self.boundary_vertices();
        if boundary.is_empty() {
            return Err(QueryError::EmptyBoundary);
        }
        let dist = self.distances_from(&boundary);
        let (a, b) = e.endpoints();
        Ok(dist[&a].min(dist[&b]))
    }

    pub fn min_degree(&self) -> usize {
        self.vertices
            .iter()
            .map(|&v| self.degree(v))
            .min()
            .unwrap_or(0)
    }

    pub fn class_membership(&self) -> Membership {
        let mut all_four = true;
        for &v in &self.vertices {
            let d = self.degree(v);
            if d < 3 || (d < 4 && self.is_inner_vertex(v)) {
                return Membership::Neither;
            }
            if d < 4 {
                all_four = false;
            }
        }
        if all_four {
            Membership::F4
        } else {
            Membership::F0
        }
    }

    /// Serialises to the `.tri` text format.
    pub fn to_tri_string(&self) -> String {
        io::serialize(self)
    }
}

fn same_cyclic(f: Face, g: Face) -> bool {
    f == g || f == [g[1], g[2], g[0]] || f == [g[2], g[0], g[1]]
}

/// Assembles the link edges of a vertex into a single path or cycle.
fn rotation_from_link(ls: &[(VertexId, VertexId)]) -> Option<Rotation> {
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &(u, v) in ls {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    if adj.values().any(|n| n.len() > 2) {
        return None;
    }
    let ends: Vec<VertexId> = adj
        .iter()
        .filter(|(_, n)| n.len() == 1)
        .map(|(&v, _)| v)
        .collect();
    let (start, cyclic) = match ends.len() {
        0 => (*adj.keys().next()?, true),
        2 => (ends[0], false),
        _ => return None,
    };
    let mut walk = vec![start];
    let mut prev = start;
    let mut cur = if cyclic {
        *adj[&start].iter().min()?
    } else {
        adj[&start][0]
    };
    while cur != start {
        walk.push(cur);
        let next = adj[&cur].iter().copied().find(|&w| w != prev);
        prev = cur;
        match next {
            Some(n) => cur = n,
            None => break,
        }
        if walk.len() > adj.len() {
            return None;
        }
    }
    if walk.len() != adj.len() {
        return None;
    }
    Some(if cyclic {
        Rotation::Cycle(walk)
    } else {
        Rotation::Path(walk)
    })
}
