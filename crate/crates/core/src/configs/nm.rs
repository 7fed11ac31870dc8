//! N-components (double contraction sites) and M-components.

use crate::complex::{Class, Edge, Face, Triangulation, VertexId};
use crate::surgery::{identify, is_contractible, k_contractible};

use super::rebuild_in_class;

/// Faces `x z y` and `x z v` sharing the edge `xz`; `xy` and `zv` are the
/// two non-incident edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NComponent {
    pub x: VertexId,
    pub z: VertexId,
    pub y: VertexId,
    pub v: VertexId,
    pub contractible: bool,
}

impl NComponent {
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut out = vec![self.x, self.z, self.y, self.v];
        out.sort_unstable();
        out
    }

    pub fn edges(&self) -> [Edge; 2] {
        [Edge::new(self.x, self.y), Edge::new(self.z, self.v)]
    }
}

/// Face `abx` with `x` 4-valent on the boundary, link path `x1 a b x2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MComponent {
    pub a: VertexId,
    pub b: VertexId,
    pub x: VertexId,
    pub x1: VertexId,
    pub x2: VertexId,
}

impl MComponent {
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut out = vec![self.a, self.b, self.x, self.x1, self.x2];
        out.sort_unstable();
        out
    }

    pub fn center_edge(&self) -> Edge {
        Edge::new(self.a, self.b)
    }
}

pub fn find_n_components(t: &Triangulation) -> Vec<NComponent> {
    let mut out = Vec::new();
    let contractible = |e: Edge| is_contractible(t, e).map(|w| w.is_contractible()).unwrap_or(false);
    for e in t.edges() {
        let ap = t.apexes(e).expect("edge of t");
        let &[p, q] = ap.as_slice() else { continue };
        // swapping x and z together with y and v names the same pair
        let (x, z) = e.endpoints();
        for (y, v) in [(p, q), (q, p)] {
            let (e1, e2) = (Edge::new(x, y), Edge::new(z, v));
            if !contractible(e1) || !contractible(e2) {
                continue;
            }
            let b1 = t.is_boundary_edge(e1);
            let b2 = t.is_boundary_edge(e2);
            if !b1 && !b2 {
                continue;
            }
            let heavy_inner = [x, y, z, v]
                .iter()
                .any(|&s| t.is_inner_vertex(s) && t.degree(s) >= 5);
            out.push(NComponent {
                x,
                z,
                y,
                v,
                contractible: (b1 && b2) || heavy_inner,
            });
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Contracts `xy` and `zv` at once, keeping the smaller id of each pair.
pub fn double_contraction_faces(t: &Triangulation, n: &NComponent) -> Vec<Face> {
    let (k1, g1) = (n.x.min(n.y), n.x.max(n.y));
    let (k2, g2) = (n.z.min(n.v), n.z.max(n.v));
    identify(&identify(t.faces(), k1, g1), k2, g2)
}

pub fn double_contraction(t: &Triangulation, n: &NComponent) -> Option<Triangulation> {
    rebuild_in_class(t, double_contraction_faces(t, n), Class::F4)
}

pub fn find_m_components(t: &Triangulation) -> Vec<MComponent> {
    let mut out = Vec::new();
    for &x in t.vertices() {
        if t.degree(x) != 4 || !t.is_boundary_vertex(x) {
            continue;
        }
        let p = t.neighbors(x);
        for [x1, a, b, x2] in [[p[0], p[1], p[2], p[3]], [p[3], p[2], p[1], p[0]]] {
            let ab = Edge::new(a, b);
            if !t.is_boundary_edge(ab) || !t.is_inner_edge(Edge::new(x1, x2)) {
                continue;
            }
            let cn4c = is_contractible(t, ab).map(|w| w.is_contractible()).unwrap_or(false)
                && !k_contractible(t, ab, 4).unwrap_or(false);
            if !cn4c || t.has_face(x, x1, x2) {
                continue;
            }
            if a > b {
                // the same component read from the other end
                continue;
            }
            out.push(MComponent { a, b, x, x1, x2 });
        }
    }
    out.sort();
    out
}
