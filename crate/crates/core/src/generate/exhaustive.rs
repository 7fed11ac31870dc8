//! Exhaustive search for small triangulations, independent of the moves.
//!
//! Closed surfaces are grown one face at a time: the smallest vertex with
//! an edge lying in only one face has that edge closed off by a new face,
//! trying every admissible third vertex. A vertex link may be a union of
//! paths while it grows and must end as a single cycle. Vertices are
//! numbered in order of appearance. A surface with one boundary component
//! and `n` vertices is a closed surface with `n + 1` vertices minus the
//! open star of a vertex, so the bounded case reduces to the closed one.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{canonical_form, CanonicalForm, Class, Edge, Face, Triangulation, VertexId};
use crate::surgery::is_contractible;

struct Search {
    max_vertices: usize,
    max_faces: usize,
    chi: i64,
    faces: Vec<Face>,
    edge_count: BTreeMap<Edge, u8>,
    /// Per vertex, the link edges seen so far as an adjacency list.
    link: Vec<Vec<Vec<usize>>>,
    closed: Vec<bool>,
    used: usize,
    found: BTreeSet<CanonicalForm>,
}

impl Search {
    fn link_deg(&self, x: usize, a: usize) -> usize {
        self.link[x][a].len()
    }

    /// The far end of the link path of `x` starting at `a`.
    fn path_end(&self, x: usize, a: usize) -> usize {
        let (mut prev, mut cur) = (usize::MAX, a);
        loop {
            let next = self.link[x][cur].iter().copied().find(|&n| n != prev);
            match next {
                Some(n) if n != a => {
                    prev = cur;
                    cur = n;
                }
                _ => return cur,
            }
        }
    }

    fn link_size(&self, x: usize) -> usize {
        self.link[x].iter().filter(|l| !l.is_empty()).count()
    }

    /// Whether link edge `a b` may be added at `x`, and whether it closes
    /// the link into its final cycle.
    fn link_ok(&self, x: usize, a: usize, b: usize) -> Option<bool> {
        if self.closed[x] || self.link_deg(x, a) >= 2 || self.link_deg(x, b) >= 2 {
            return None;
        }
        if self.link_deg(x, a) == 1 && self.link_deg(x, b) == 1 && self.path_end(x, a) == b {
            // closing a cycle: it must be the whole link
            let cycle_len = {
                let (mut prev, mut cur, mut len) = (usize::MAX, a, 1);
                while cur != b {
                    let n = self.link[x][cur].iter().copied().find(|&n| n != prev).expect("path");
                    prev = cur;
                    cur = n;
                    len += 1;
                }
                len
            };
            return (cycle_len == self.link_size(x)).then_some(true);
        }
        Some(false)
    }

    fn open_edge(&self) -> Option<Edge> {
        self.edge_count.iter().find(|(_, &c)| c == 1).map(|(&e, _)| e)
    }

    fn add(&mut self, f: [usize; 3]) -> Option<[bool; 3]> {
        let [p, q, r] = f;
        let mut closes = [false; 3];
        for (i, (x, a, b)) in [(p, q, r), (q, p, r), (r, p, q)].into_iter().enumerate() {
            closes[i] = self.link_ok(x, a, b)?;
        }
        for (x, a, b) in [(p, q, r), (q, p, r), (r, p, q)] {
            self.link[x][a].push(b);
            self.link[x][b].push(a);
        }
        for (i, &x) in f.iter().enumerate() {
            if closes[i] {
                self.closed[x] = true;
            }
        }
        for (a, b) in [(p, q), (q, r), (p, r)] {
            *self.edge_count.entry(Edge::new(a as VertexId, b as VertexId)).or_insert(0) += 1;
        }
        self.faces.push([p as VertexId, q as VertexId, r as VertexId]);
        Some(closes)
    }

    fn undo(&mut self, f: [usize; 3], closes: [bool; 3]) {
        let [p, q, r] = f;
        self.faces.pop();
        for (a, b) in [(p, q), (q, r), (p, r)] {
            let e = Edge::new(a as VertexId, b as VertexId);
            let c = self.edge_count.get_mut(&e).expect("edge present");
            *c -= 1;
            if *c == 0 {
                self.edge_count.remove(&e);
            }
        }
        for (i, &x) in f.iter().enumerate() {
            if closes[i] {
                self.closed[x] = false;
            }
        }
        for (x, a, b) in [(p, q, r), (q, p, r), (r, p, q)] {
            self.link[x][a].pop();
            self.link[x][b].pop();
        }
    }

    fn run(&mut self) {
        let Some(e) = self.open_edge() else {
            let v = self.used as i64;
            if v - (self.faces.len() as i64) / 2 == self.chi {
                let t = Triangulation::build(self.faces.clone()).expect("closed search yields a surface");
                self.found.insert(canonical_form(&t));
            }
            return;
        };
        if self.faces.len() >= self.max_faces {
            return;
        }
        let (u, v) = e.endpoints();
        let (u, v) = (u as usize, v as usize);
        let top = if self.used < self.max_vertices { self.used + 1 } else { self.used };
        for w in 0..top {
            if w == u || w == v || self.link[u][v].contains(&w) {
                continue;
            }
            let ew = [Edge::new(u as VertexId, w as VertexId), Edge::new(v as VertexId, w as VertexId)];
            if ew.iter().any(|e| self.edge_count.get(e).copied().unwrap_or(0) >= 2) {
                continue;
            }
            let fresh = w == self.used;
            if fresh {
                self.used += 1;
            }
            let f = [u, v, w];
            if let Some(closes) = self.add(f) {
                self.run();
                self.undo(f, closes);
            }
            if fresh {
                self.used -= 1;
            }
        }
    }
}

/// Every closed connected triangulated surface with Euler characteristic
/// `chi` and at most `max_vertices` vertices, up to equivalence.
pub fn closed_surfaces(max_vertices: usize, chi: i64) -> BTreeSet<CanonicalForm> {
    if max_vertices < 4 {
        return BTreeSet::new();
    }
    let n = max_vertices;
    let mut s = Search {
        max_vertices: n,
        // F = 2(V - chi)
        max_faces: (2 * (n as i64 - chi)).max(0) as usize,
        chi,
        faces: Vec::new(),
        edge_count: BTreeMap::new(),
        link: vec![vec![Vec::new(); n]; n],
        closed: vec![false; n],
        used: 3,
        found: BTreeSet::new(),
    };
    s.add([0, 1, 2]).expect("first face");
    s.run();
    s.found
}

/// `t` minus the open star of `v`.
pub fn puncture(t: &Triangulation, v: VertexId) -> Option<Triangulation> {
    let faces: Vec<Face> = t.faces().iter().copied().filter(|f| !f.contains(&v)).collect();
    Triangulation::build(faces).ok()
}

/// Every triangulation with one boundary component and at most
/// `max_vertices` vertices that caps off to a closed surface of Euler
/// characteristic `closed_chi`, up to equivalence.
pub fn punctured_surfaces(max_vertices: usize, closed_chi: i64) -> BTreeSet<CanonicalForm> {
    let mut out = BTreeSet::new();
    for code in closed_surfaces(max_vertices + 1, closed_chi) {
        let t = code.to_triangulation().expect("valid code");
        for &v in t.vertices() {
            if let Some(u) = puncture(&t, v) {
                out.insert(canonical_form(&u));
            }
        }
    }
    out
}

/// Triangulations of `class` with no contractible edge among the given
/// candidates.
pub fn irreducible_members(codes: &BTreeSet<CanonicalForm>, class: Class) -> Vec<CanonicalForm> {
    codes
        .iter()
        .filter(|c| {
            let t = c.to_triangulation().expect("valid code");
            class.contains(&t)
                && t.edges()
                    .all(|e| !is_contractible(&t, e).map(|w| w.is_contractible()).unwrap_or(false))
        })
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn counts(codes: &BTreeSet<CanonicalForm>) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for c in codes {
            *m.entry(c.num_vertices()).or_insert(0) += 1;
        }
        m
    }

    #[test]
    fn small_spheres_and_projective_planes() {
        // 1, 1, 2, 5, 14 triangulated spheres with 4..8 vertices
        let s = closed_surfaces(8, 2);
        assert_eq!(counts(&s), BTreeMap::from([(4, 1), (5, 1), (6, 2), (7, 5), (8, 14)]));
        assert!(s.contains(&canonical_form(&fixtures::sphere_oct())));
        // the 6-vertex projective plane is the smallest
        let p = closed_surfaces(7, 1);
        assert_eq!(counts(&p), BTreeMap::from([(6, 1), (7, 3)]));
    }

    #[test]
    fn m1_is_a_punctured_projective_plane() {
        let m = punctured_surfaces(6, 1);
        assert!(m.contains(&canonical_form(&fixtures::mobius_m1())));
        for c in &m {
            let s = c.to_triangulation().unwrap().classify();
            assert_eq!((s.euler_characteristic, s.orientable, s.boundary_components), (0, false, 1));
        }
        let irr = irreducible_members(&m, Class::F0);
        assert!(irr.contains(&canonical_form(&fixtures::mobius_m1())));
    }
}
