use std::fmt;

use super::{Move, MoveKind, SurgeryError};
use crate::complex::{sorted_face, Edge, Face, Triangulation, VertexId};

/// Why an edge cannot be contracted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Blocker {
    /// The edge lies in a 3-cycle that bounds no face (holes of length 3 included).
    CriticalCycle([VertexId; 3]),
    InnerEdgeBothEndpointsOnBoundary,
    SingleTriangle,
    /// The boundary of the tetrahedron: every contraction collapses it.
    Tetrahedron,
}

impl fmt::Display for Blocker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Blocker::CriticalCycle(c) => write!(f, "critical cycle {}-{}-{}", c[0], c[1], c[2]),
            Blocker::InnerEdgeBothEndpointsOnBoundary => {
                f.write_str("inner edge with both endpoints on the boundary")
            }
            Blocker::SingleTriangle => f.write_str("single triangle"),
            Blocker::Tetrahedron => f.write_str("tetrahedron"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionWitness {
    pub edge: Edge,
    pub apexes: Vec<VertexId>,
    pub blocked_by: Option<Blocker>,
}

impl ContractionWitness {
    pub fn is_contractible(&self) -> bool {
        self.blocked_by.is_none()
    }
}

/// The 3-cycles through `e` that are not faces, as sorted triples.
pub fn critical_3cycles_through(t: &Triangulation, e: Edge) -> Result<Vec<[VertexId; 3]>, SurgeryError> {
    let apexes = t.apexes(e).map_err(|_| SurgeryError::UnknownEdge(e))?;
    let (u, v) = e.endpoints();
    let nv = t.neighbors(v);
    let mut out: Vec<[VertexId; 3]> = t
        .neighbors(u)
        .iter()
        .copied()
        .filter(|w| *w != v && nv.contains(w) && !apexes.contains(w))
        .map(|w| sorted_face([u, v, w]))
        .collect();
    out.sort_unstable();
    Ok(out)
}

pub fn is_contractible(t: &Triangulation, e: Edge) -> Result<ContractionWitness, SurgeryError> {
    let apexes = t.apexes(e).map_err(|_| SurgeryError::UnknownEdge(e))?;
    let (u, v) = e.endpoints();
    let blocked_by = if t.num_faces() == 1 {
        Some(Blocker::SingleTriangle)
    } else if t.num_vertices() == 4 && t.num_faces() == 4 {
        Some(Blocker::Tetrahedron)
    } else if let Some(&c) = critical_3cycles_through(t, e)?.first() {
        Some(Blocker::CriticalCycle(c))
    } else if t.is_inner_edge(e) && t.is_boundary_vertex(u) && t.is_boundary_vertex(v) {
        Some(Blocker::InnerEdgeBothEndpointsOnBoundary)
    } else {
        None
    };
    Ok(ContractionWitness {
        edge: e,
        apexes,
        blocked_by,
    })
}

/// Contracts `e`, keeping the smaller endpoint id.
pub fn contract(t: &Triangulation, e: Edge) -> Result<(Triangulation, Move), SurgeryError> {
    let w = is_contractible(t, e)?;
    if !w.is_contractible() {
        return Err(SurgeryError::NotContractible(w));
    }
    let m = contraction_move(t, e);
    let u = m.apply(t)?;
    debug_assert_eq!(u.classify(), t.classify());
    Ok((u, m))
}

/// The R1 move for `e` without any contractibility check.
pub(crate) fn contraction_move(t: &Triangulation, e: Edge) -> Move {
    let (keep, gone) = e.endpoints();
    let mut removed = Vec::new();
    let mut added = Vec::new();
    for &f in t.faces() {
        if f.contains(&gone) {
            removed.push(f);
            if !f.contains(&keep) {
                added.push(f.map(|x| if x == gone { keep } else { x }));
            }
        }
    }
    Move::new(MoveKind::R1, vec![keep, gone], removed, added)
}

/// Reference contraction: identify the endpoints in the face list, drop
/// degenerate faces and rebuild. `None` unless the result is a valid
/// triangulation of the same surface.
pub fn contract_by_identification(t: &Triangulation, e: Edge) -> Option<Triangulation> {
    let (keep, gone) = e.endpoints();
    let u = Triangulation::build(identify(t.faces(), keep, gone)).ok()?;
    (u.classify() == t.classify()).then_some(u)
}

/// Renames `gone` to `keep` in a face list and drops faces that degenerate.
pub fn identify(faces: &[Face], keep: VertexId, gone: VertexId) -> Vec<Face> {
    faces
        .iter()
        .map(|f| f.map(|x| if x == gone { keep } else { x }))
        .filter(|f| f[0] != f[1] && f[1] != f[2] && f[0] != f[2])
        .collect()
}

/// Contractible, and every vertex whose degree changes ends with degree
/// at least `k`. When `t` already has minimum degree `k` this is the same
/// as asking for minimum degree `k` after the contraction.
pub fn k_contractible(t: &Triangulation, e: Edge, k: usize) -> Result<bool, SurgeryError> {
    let w = is_contractible(t, e)?;
    if !w.is_contractible() {
        return Ok(false);
    }
    let (u, v) = e.endpoints();
    let merged = t.degree(u) + t.degree(v) - if t.is_boundary_edge(e) { 3 } else { 4 };
    Ok(merged >= k && w.apexes.iter().all(|&x| t.degree(x) > k))
}
