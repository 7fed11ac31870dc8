//! Octahedron and quasi-octahedron components.
//!
//! Both are built on the same six-vertex cluster: a 3-cycle `v1 v2 v3` of
//! 4-valent vertices together with the unique vertices `a_i` adjacent to
//! `v_j` and `v_k`. Indices line up: `a[i]` is opposite `v[i]`.

use crate::complex::{Class, Edge, Face, Triangulation, VertexId};
use crate::surgery::identify;

use super::rebuild_in_class;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OctahedronComponent {
    pub center: [VertexId; 3],
    pub remaining: [VertexId; 3],
    /// 1: no `v_i` on the boundary; 2, 3, 4: one, two, three of them, with
    /// the boundary equal to the corresponding 3-cycle.
    pub boundary_case: u8,
    pub external: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuasiOctahedronComponent {
    pub center: [VertexId; 3],
    pub remaining: [VertexId; 3],
    /// 1: the `a`-cycle exists but is no face; 2: one `a`-edge is missing.
    pub variant: u8,
}

/// A cluster that is neither kind of component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClusterDiagnosis {
    pub center: [VertexId; 3],
    pub remaining: [VertexId; 3],
    /// Pairs `a_i a_j` that are not edges.
    pub missing: Vec<Edge>,
    pub note: &'static str,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OctahedronStatus {
    Removable,
    Redundant,
    /// Neither removable nor redundant; the `a` vertex of degree 5 if any.
    Neither { blocker: Option<VertexId> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuasiStatus {
    RemovableCase1,
    RemovableCase2,
    NonRemovable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Cluster {
    Octahedron(OctahedronComponent),
    Quasi(QuasiOctahedronComponent),
    Other(ClusterDiagnosis),
}

impl OctahedronComponent {
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut v: Vec<VertexId> = self.center.iter().chain(&self.remaining).copied().collect();
        v.sort_unstable();
        v
    }

    /// The `a_j` with both `a_i a_j` and `a_j a_k` on the boundary.
    pub fn external_vertex(&self, t: &Triangulation) -> Option<VertexId> {
        let a = self.remaining;
        (0..3).map(|j| a[j]).find(|&aj| {
            a.iter()
                .filter(|&&x| x != aj)
                .all(|&x| t.is_boundary_edge(Edge::new(x, aj)))
        })
    }

    /// Edges with both ends in the component.
    pub fn edges(&self, t: &Triangulation) -> Vec<Edge> {
        induced_edges(t, &self.vertices())
    }
}

impl QuasiOctahedronComponent {
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut v: Vec<VertexId> = self.center.iter().chain(&self.remaining).copied().collect();
        v.sort_unstable();
        v
    }

    pub fn edges(&self, t: &Triangulation) -> Vec<Edge> {
        induced_edges(t, &self.vertices())
    }

    /// Index of the center vertex on the boundary (exactly one for variant 1).
    pub fn boundary_center(&self, t: &Triangulation) -> Option<usize> {
        (0..3).find(|&i| t.is_boundary_vertex(self.center[i]))
    }
}

fn induced_edges(t: &Triangulation, vs: &[VertexId]) -> Vec<Edge> {
    let mut out = Vec::new();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            if t.has_edge(a, b) {
                out.push(Edge::new(a, b));
            }
        }
    }
    out
}

fn common_neighbors(t: &Triangulation, a: VertexId, b: VertexId) -> Vec<VertexId> {
    let nb = t.neighbors(b);
    let mut out: Vec<VertexId> = t.neighbors(a).iter().copied().filter(|w| nb.contains(w)).collect();
    out.sort_unstable();
    out
}

/// Every 3-cycle of 4-valent vertices, as a sorted triple.
fn four_valent_triangles(t: &Triangulation) -> Vec<[VertexId; 3]> {
    let mut out = Vec::new();
    for &v1 in t.vertices() {
        if t.degree(v1) != 4 {
            continue;
        }
        for &v2 in t.neighbors(v1) {
            if v2 <= v1 || t.degree(v2) != 4 {
                continue;
            }
            for v3 in common_neighbors(t, v1, v2) {
                if v3 > v2 && t.degree(v3) == 4 {
                    out.push([v1, v2, v3]);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

fn remaining_of(t: &Triangulation, v: [VertexId; 3]) -> Option<[VertexId; 3]> {
    let mut a = [0; 3];
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let c: Vec<VertexId> = common_neighbors(t, v[j], v[k])
            .into_iter()
            .filter(|&w| w != v[i])
            .collect();
        if c.len() != 1 || v.contains(&c[0]) {
            return None;
        }
        a[i] = c[0];
    }
    if a[0] == a[1] || a[1] == a[2] || a[0] == a[2] {
        return None;
    }
    Some(a)
}

fn boundary_is(t: &Triangulation, cycle: [VertexId; 3]) -> bool {
    let b = t.boundary();
    if b.cycles.len() != 1 || b.cycles[0].len() != 3 {
        return false;
    }
    let mut c = b.cycles[0].clone();
    c.sort_unstable();
    let mut want = cycle;
    want.sort_unstable();
    c == want
}

pub(crate) fn clusters(t: &Triangulation) -> Vec<Cluster> {
    four_valent_triangles(t)
        .into_iter()
        .filter_map(|v| remaining_of(t, v).map(|a| classify_cluster(t, v, a)))
        .collect()
}

fn classify_cluster(t: &Triangulation, v: [VertexId; 3], a: [VertexId; 3]) -> Cluster {
    let on_b: Vec<usize> = (0..3).filter(|&i| t.is_boundary_vertex(v[i])).collect();
    // a-edge opposite index k joins a_i and a_j
    let missing: Vec<usize> = (0..3)
        .filter(|&k| !t.has_edge(a[(k + 1) % 3], a[(k + 2) % 3]))
        .collect();
    let missing_edges = missing
        .iter()
        .map(|&k| Edge::new(a[(k + 1) % 3], a[(k + 2) % 3]))
        .collect();
    let other = |note| {
        Cluster::Other(ClusterDiagnosis {
            center: v,
            remaining: a,
            missing: missing_edges,
            note,
        })
    };
    match missing.len() {
        0 => {
            let case = match on_b.as_slice() {
                [] => Some(1),
                &[i] if boundary_is(t, [v[i], a[(i + 1) % 3], a[(i + 2) % 3]]) => Some(2),
                &[i, j] => {
                    let k = 3 - i - j;
                    boundary_is(t, [v[i], v[j], a[k]]).then_some(3)
                }
                [_, _, _] if boundary_is(t, v) => Some(4),
                _ => None,
            };
            if let Some(boundary_case) = case {
                let o = OctahedronComponent {
                    center: v,
                    remaining: a,
                    boundary_case,
                    external: false,
                };
                let external = boundary_case == 1 && o.external_vertex(t).is_some();
                return Cluster::Octahedron(OctahedronComponent { external, ..o });
            }
            if let &[i] = on_b.as_slice() {
                let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                if !t.has_face(a[0], a[1], a[2]) && !t.is_boundary_edge(Edge::new(a[j], a[k])) {
                    return Cluster::Quasi(QuasiOctahedronComponent {
                        center: v,
                        remaining: a,
                        variant: 1,
                    });
                }
            }
            other("a-cycle present but no octahedron or quasi-octahedron case applies")
        }
        1 => {
            let k = missing[0];
            if t.is_boundary_vertex(v[k]) && all_triangles_are_faces(t, v, a) {
                Cluster::Quasi(QuasiOctahedronComponent {
                    center: v,
                    remaining: a,
                    variant: 2,
                })
            } else {
                other("one a-edge missing but not a quasi-octahedron")
            }
        }
        2 => other("only one a-edge: its opposite a-vertex has boundary degree 2"),
        _ => other("no a-edges: the cluster is the whole disk"),
    }
}

fn all_triangles_are_faces(t: &Triangulation, v: [VertexId; 3], a: [VertexId; 3]) -> bool {
    let vs: Vec<VertexId> = v.iter().chain(&a).copied().collect();
    for i in 0..6 {
        for j in i + 1..6 {
            if !t.has_edge(vs[i], vs[j]) {
                continue;
            }
            for k in j + 1..6 {
                if t.has_edge(vs[i], vs[k]) && t.has_edge(vs[j], vs[k]) && !t.has_face(vs[i], vs[j], vs[k]) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn find_octahedra(t: &Triangulation) -> Vec<OctahedronComponent> {
    clusters(t)
        .into_iter()
        .filter_map(|c| match c {
            Cluster::Octahedron(o) => Some(o),
            _ => None,
        })
        .collect()
}

pub fn find_quasi_octahedra(t: &Triangulation) -> Vec<QuasiOctahedronComponent> {
    clusters(t)
        .into_iter()
        .filter_map(|c| match c {
            Cluster::Quasi(q) => Some(q),
            _ => None,
        })
        .collect()
}

/// Clusters that match neither definition, e.g. the degenerate cases with
/// two or three `a`-edges missing.
pub fn cluster_diagnoses(t: &Triangulation) -> Vec<ClusterDiagnosis> {
    clusters(t)
        .into_iter()
        .filter_map(|c| match c {
            Cluster::Other(d) => Some(d),
            _ => None,
        })
        .collect()
}

fn without(t: &Triangulation, gone: &[VertexId]) -> Vec<Face> {
    t.faces()
        .iter()
        .copied()
        .filter(|f| !f.iter().any(|x| gone.contains(x)))
        .collect()
}

/// Face list of `G - {v1, v2, v3}`, closing the `a`-triangle with a face
/// when it is not one already.
pub fn octahedron_removal_faces(t: &Triangulation, o: &OctahedronComponent) -> Vec<Vec<Face>> {
    let base = without(t, &o.center);
    let a = o.remaining;
    let mut out = Vec::new();
    if !t.has_face(a[0], a[1], a[2]) {
        let mut filled = base.clone();
        filled.push(a);
        out.push(filled);
    }
    out.push(base);
    out
}

/// Face list of `G - {a_j, v1, v2, v3}` for the external vertex `a_j`.
pub fn redundant_deletion_faces(t: &Triangulation, o: &OctahedronComponent) -> Option<Vec<Face>> {
    if !o.external {
        return None;
    }
    let aj = o.external_vertex(t)?;
    let gone = [o.center[0], o.center[1], o.center[2], aj];
    Some(without(t, &gone))
}

/// The result of removing `o` within `class`, if that stays in the class.
pub fn remove_octahedron(t: &Triangulation, o: &OctahedronComponent, class: Class) -> Option<Triangulation> {
    octahedron_removal_faces(t, o)
        .into_iter()
        .find_map(|faces| rebuild_in_class(t, faces, class))
}

pub fn delete_redundant_octahedron(
    t: &Triangulation,
    o: &OctahedronComponent,
    class: Class,
) -> Option<Triangulation> {
    redundant_deletion_faces(t, o).and_then(|faces| rebuild_in_class(t, faces, class))
}

pub fn octahedron_status(t: &Triangulation, o: &OctahedronComponent, class: Class) -> OctahedronStatus {
    if remove_octahedron(t, o, class).is_some() {
        return OctahedronStatus::Removable;
    }
    if delete_redundant_octahedron(t, o, class).is_some() {
        return OctahedronStatus::Redundant;
    }
    OctahedronStatus::Neither {
        blocker: o.remaining.iter().copied().find(|&x| t.degree(x) == 5),
    }
}

/// Candidate results of removing a quasi-octahedron, in the order case 1
/// (delete the center, with or without closing the `a`-triangle) then
/// case 2 (delete two center vertices and contract `a_i v_k`).
pub fn quasi_removal_candidates(t: &Triangulation, q: &QuasiOctahedronComponent) -> Vec<(QuasiStatus, Vec<Face>)> {
    let (v, a) = (q.center, q.remaining);
    let mut out = Vec::new();
    let base = without(t, &v);
    out.push((QuasiStatus::RemovableCase1, base.clone()));
    let missing_face = !t.has_face(a[0], a[1], a[2]);
    let cycle = (0..3).all(|k| t.has_edge(a[k], a[(k + 1) % 3]));
    let mut filled = base;
    if missing_face && !cycle {
        // embedding in a boundary face: the face a1 a2 a3 returns
        filled.push(a);
        out.push((QuasiStatus::RemovableCase2, filled));
    } else if missing_face {
        filled.push(a);
        out.push((QuasiStatus::RemovableCase1, filled));
    }
    for k in 0..3 {
        if !t.is_boundary_vertex(v[k]) {
            continue;
        }
        for i in [(k + 1) % 3, (k + 2) % 3] {
            let j = 3 - i - k;
            if !t.has_edge(a[i], v[k]) {
                continue;
            }
            let faces = identify(&without(t, &[v[i], v[j]]), a[i], v[k]);
            out.push((QuasiStatus::RemovableCase2, faces));
        }
    }
    out
}

pub fn remove_quasi_octahedron(
    t: &Triangulation,
    q: &QuasiOctahedronComponent,
) -> Option<(QuasiStatus, Triangulation)> {
    quasi_removal_candidates(t, q)
        .into_iter()
        .find_map(|(s, faces)| rebuild_in_class(t, faces, Class::F4).map(|u| (s, u)))
}

pub fn quasi_status(t: &Triangulation, q: &QuasiOctahedronComponent) -> QuasiStatus {
    remove_quasi_octahedron(t, q)
        .map(|(s, _)| s)
        .unwrap_or(QuasiStatus::NonRemovable)
}
