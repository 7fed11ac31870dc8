//! Triodes, triode-detecting edges and flags.

use crate::complex::{Class, Edge, Triangulation, VertexId};
use crate::surgery::{contract, SurgeryError};

use super::rebuild_in_class;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag {
    pub center: VertexId,
    /// `x1, a, b, x2`: `a` and `b` are the triodes.
    pub rim: [VertexId; 4],
    pub removable: bool,
    /// The rim closes up on the boundary: the flag is the whole complex.
    pub whole: bool,
}

impl Flag {
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut v = vec![self.center];
        v.extend(self.rim);
        v.sort_unstable();
        v
    }
}

/// Boundary vertices of degree 3.
pub fn find_triodes(t: &Triangulation) -> Vec<VertexId> {
    t.vertices()
        .iter()
        .copied()
        .filter(|&v| t.degree(v) == 3 && t.is_boundary_vertex(v))
        .collect()
}

/// `e` is contractible and every vertex it leaves with degree below 4 is a
/// boundary vertex of degree 3 (so 4-contractible edges qualify too).
pub fn is_triode_detecting(t: &Triangulation, e: Edge) -> Result<bool, SurgeryError> {
    let (u, m) = contract(t, e)?;
    let mut touched: Vec<VertexId> = m.added.iter().flatten().copied().collect();
    touched.sort_unstable();
    touched.dedup();
    Ok(touched.into_iter().all(|v| {
        let d = u.degree(v);
        d >= 4 || (d == 3 && u.is_boundary_vertex(v))
    }))
}

fn independent_of_degree_four(t: &Triangulation, x: VertexId) -> bool {
    t.neighbors(x).iter().all(|&w| t.degree(w) != 4)
}

pub fn find_flags(t: &Triangulation) -> Vec<Flag> {
    let mut out = Vec::new();
    for &x in t.vertices() {
        if t.degree(x) != 4 || !t.is_inner_vertex(x) || !independent_of_degree_four(t, x) {
            continue;
        }
        let r = t.neighbors(x);
        let readings = (0..4).flat_map(|s| {
            [
                [r[s], r[(s + 1) % 4], r[(s + 2) % 4], r[(s + 3) % 4]],
                [r[(s + 3) % 4], r[(s + 2) % 4], r[(s + 1) % 4], r[s]],
            ]
        });
        for [x1, a, b, x2] in readings {
            let bnd = |p, q| t.is_boundary_edge(Edge::new(p, q));
            if !(bnd(x1, a) && bnd(a, b) && bnd(b, x2)) || t.degree(a) != 3 || t.degree(b) != 3 {
                continue;
            }
            if !t.is_boundary_vertex(x1) || !t.is_boundary_vertex(x2) {
                continue;
            }
            let whole = bnd(x1, x2);
            // the rim read in either direction is the same flag; keep x1 < x2
            if x1 > x2 && !whole {
                continue;
            }
            let removable = !whole && remove_flag_faces(t, x, [x1, a, b, x2]).is_some();
            out.push(Flag {
                center: x,
                rim: [x1, a, b, x2],
                removable,
                whole,
            });
            if whole {
                break;
            }
        }
    }
    out.sort();
    out
}

fn remove_flag_faces(t: &Triangulation, x: VertexId, rim: [VertexId; 4]) -> Option<Triangulation> {
    let gone = [x, rim[1], rim[2]];
    let faces = t
        .faces()
        .iter()
        .copied()
        .filter(|f| !f.iter().any(|v| gone.contains(v)))
        .collect();
    rebuild_in_class(t, faces, Class::F0)
}

/// `G - {x, a, b}`, if it stays in F°²(4).
pub fn remove_flag(t: &Triangulation, f: &Flag) -> Option<Triangulation> {
    if f.whole {
        return None;
    }
    remove_flag_faces(t, f.center, f.rim)
}
