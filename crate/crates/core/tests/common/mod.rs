//! Helpers shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use trisurg::complex::{canonical_form, CanonicalForm, Face, Triangulation};

/// Every triangulated disk with at most `max_vertices` vertices, up to
/// equivalence. Built without any of the library's moves: triangulated
/// disks are shellable, so each one arises from a single triangle by
/// gluing triangles along one boundary edge (a new vertex) or along two
/// consecutive boundary edges (closing an ear), staying a disk throughout.
pub fn all_disks(max_vertices: usize) -> BTreeSet<CanonicalForm> {
    let start = canonical_form(&Triangulation::build(vec![[1, 2, 3]]).unwrap());
    let mut seen = BTreeSet::from([start.clone()]);
    let mut frontier = vec![start];
    while let Some(code) = frontier.pop() {
        let t = code.to_triangulation().unwrap();
        let mut next: Vec<Vec<Face>> = Vec::new();
        let fresh = t.fresh_vertex();
        if t.num_vertices() < max_vertices {
            for e in t.boundary_edges() {
                let (a, b) = e.endpoints();
                let mut f = t.faces().to_vec();
                f.push([a, b, fresh]);
                next.push(f);
            }
        }
        for v in t.boundary_vertices() {
            let (p, q) = t.boundary_neighbors(v).unwrap();
            if !t.has_edge(p, q) {
                let mut f = t.faces().to_vec();
                f.push([p, v, q]);
                next.push(f);
            }
        }
        for faces in next {
            let Ok(u) = Triangulation::build(faces) else { continue };
            if !u.classify().is_disk() {
                continue;
            }
            let c = canonical_form(&u);
            if seen.insert(c.clone()) {
                frontier.push(c);
            }
        }
    }
    seen
}
