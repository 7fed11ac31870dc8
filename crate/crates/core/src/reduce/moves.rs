//! The reductions R1–R6 and flag removal, and the expansions that undo them.

use crate::complex::{is_equivalent, sorted_face, Class, Edge, Face, Triangulation, VertexId};
use crate::configs::{
    delete_redundant_octahedron, double_contraction, find_flags, find_n_components, find_octahedra,
    find_quasi_octahedra, rebuild_in_class, remove_flag, remove_octahedron, remove_quasi_octahedron,
    OctahedronComponent,
};
use crate::surgery::{contract, split_specs, split_vertex, Move, MoveKind, SplitSpec, SurgeryError};

use super::{ReduceError, Site};

fn precondition(msg: impl Into<String>) -> ReduceError {
    ReduceError::SitePreconditionFailed(msg.into())
}

/// Move kinds usable within `class`, reductions first.
pub fn alphabet(class: Class) -> &'static [MoveKind] {
    use MoveKind::*;
    match class {
        Class::F0 => &[R1, R2, RF, E1, E2, EF],
        Class::F4 => &[R1, R2, R3, R4, R5, R6, E1, E2, E3, E4, E5, E6],
    }
}

fn check_kind(kind: MoveKind, class: Class) -> Result<(), ReduceError> {
    if alphabet(class).contains(&kind) {
        Ok(())
    } else {
        Err(precondition(format!("{kind} is not a move of class {class}")))
    }
}

fn without(t: &Triangulation, gone: &[VertexId]) -> Vec<Face> {
    t.faces()
        .iter()
        .copied()
        .filter(|f| !f.iter().any(|x| gone.contains(x)))
        .collect()
}

fn sorted3(mut c: [VertexId; 3]) -> [VertexId; 3] {
    c.sort_unstable();
    c
}

fn octahedron_at(t: &Triangulation, c: [VertexId; 3]) -> Result<OctahedronComponent, ReduceError> {
    let c = sorted3(c);
    find_octahedra(t)
        .into_iter()
        .find(|o| o.center == c)
        .ok_or_else(|| precondition(format!("no octahedron centered at {c:?}")))
}

fn in_class(t: &Triangulation, faces: Vec<Face>, class: Class) -> Result<Triangulation, ReduceError> {
    rebuild_in_class(t, faces, class).ok_or(ReduceError::ClassViolation(class))
}

fn finish(
    t: &Triangulation,
    kind: MoveKind,
    site: Vec<VertexId>,
    faces: Vec<Face>,
    class: Class,
) -> Result<(Triangulation, Move), ReduceError> {
    let u = in_class(t, faces, class)?;
    let m = Move::from_diff(kind, site, t, u.faces());
    Ok((u, m))
}

/// Indices `k` whose `a`-edge (the one opposite `a[k]`) is a boundary edge.
fn boundary_a_edges(t: &Triangulation, o: &OctahedronComponent) -> Vec<usize> {
    let a = o.remaining;
    (0..3)
        .filter(|&k| t.is_boundary_edge(Edge::new(a[(k + 1) % 3], a[(k + 2) % 3])))
        .collect()
}

/// The seven faces of an octahedron minus the face `a1 a2 a3`; `v[i]` is
/// opposite `a[i]`.
fn open_octahedron(v: [VertexId; 3], a: [VertexId; 3]) -> Vec<Face> {
    vec![
        [v[0], v[1], v[2]],
        [v[0], v[1], a[2]],
        [v[1], v[2], a[0]],
        [v[0], v[2], a[1]],
        [v[0], a[1], a[2]],
        [v[1], a[0], a[2]],
        [v[2], a[0], a[1]],
    ]
}

/// The six faces of a quasi-octahedron whose edge `a1 a2` is absent.
fn open_quasi(v: [VertexId; 3], a: [VertexId; 3]) -> Vec<Face> {
    let mut f = open_octahedron(v, a);
    f.pop();
    f
}

/// Applies reduction `kind` at `site`; the result must lie in `class`.
pub fn apply_r(
    t: &Triangulation,
    kind: MoveKind,
    site: &Site,
    class: Class,
) -> Result<(Triangulation, Move), ReduceError> {
    check_kind(kind, class)?;
    match (kind, site) {
        (MoveKind::R1, Site::Edge(e)) => {
            let (u, m) = contract(t, *e)?;
            if !class.contains(&u) {
                return Err(ReduceError::ClassViolation(class));
            }
            Ok((u, m))
        }
        (MoveKind::R2, Site::Center(c)) => {
            let o = octahedron_at(t, *c)?;
            let u = remove_octahedron(t, &o, class)
                .or_else(|| delete_redundant_octahedron(t, &o, class))
                .ok_or(ReduceError::ClassViolation(class))?;
            let mut s = o.center.to_vec();
            s.extend(o.remaining);
            let m = Move::from_diff(MoveKind::R2, s, t, u.faces());
            Ok((u, m))
        }
        (MoveKind::R3, Site::Center(c)) => fold(t, *c),
        (MoveKind::R4, Site::Center(c)) => {
            let c = sorted3(*c);
            let q = find_quasi_octahedra(t)
                .into_iter()
                .find(|q| q.center == c)
                .ok_or_else(|| precondition(format!("no quasi-octahedron centered at {c:?}")))?;
            let (_, u) = remove_quasi_octahedron(t, &q).ok_or(ReduceError::ClassViolation(class))?;
            let mut s = q.center.to_vec();
            s.extend(q.remaining);
            let m = Move::from_diff(MoveKind::R4, s, t, u.faces());
            Ok((u, m))
        }
        (MoveKind::R5, Site::Center(c)) => replace_boundary_octahedron(t, *c),
        (MoveKind::R6, &Site::NComponent { x, z, y, v }) => {
            let n = find_n_components(t)
                .into_iter()
                .find(|n| (n.x, n.z, n.y, n.v) == (x, z, y, v))
                .ok_or_else(|| precondition("not an N-component"))?;
            if !n.contractible {
                return Err(precondition("N-component is not contractible"));
            }
            let u = double_contraction(t, &n).ok_or(ReduceError::ClassViolation(class))?;
            let m = Move::from_diff(MoveKind::R6, vec![x, z, y, v], t, u.faces());
            Ok((u, m))
        }
        (MoveKind::RF, &Site::Flag(x)) => {
            let f = find_flags(t)
                .into_iter()
                .find(|f| f.center == x && f.removable)
                .ok_or_else(|| precondition(format!("no removable flag centered at {x}")))?;
            let u = remove_flag(t, &f).ok_or(ReduceError::ClassViolation(class))?;
            let mut s = vec![f.center];
            s.extend(f.rim);
            let m = Move::from_diff(MoveKind::RF, s, t, u.faces());
            Ok((u, m))
        }
        _ => Err(precondition(format!("{kind} does not take site {site:?}"))),
    }
}

/// Folding: delete an external octahedron (its external vertex has degree
/// 4 and another `a` has degree 6) and add an octahedron into the face
/// beyond its inner `a`-edge.
fn fold(t: &Triangulation, c: [VertexId; 3]) -> Result<(Triangulation, Move), ReduceError> {
    let o = octahedron_at(t, c)?;
    let a = o.remaining;
    let on_b = boundary_a_edges(t, &o);
    if on_b.len() != 2 {
        return Err(precondition("octahedron is not external"));
    }
    let k = 3 - on_b[0] - on_b[1];
    // the external vertex is the one shared by both boundary a-edges
    let ext = a[k];
    let (p, q) = (a[(k + 1) % 3], a[(k + 2) % 3]);
    if t.degree(ext) != 4 || (t.degree(p) != 6 && t.degree(q) != 6) {
        return Err(precondition("folding needs deg(a3) = 4 and deg(a1) or deg(a2) = 6"));
    }
    let inner_v = o.center[k];
    let apexes = t.apexes(Edge::new(p, q)).map_err(|_| precondition("missing a-edge"))?;
    let w = apexes
        .into_iter()
        .find(|&x| x != inner_v && x != ext)
        .ok_or_else(|| precondition("inner a-edge has no outer face"))?;
    let mut faces = without(t, &[ext, o.center[0], o.center[1], o.center[2]]);
    let target = sorted_face([p, q, w]);
    let before = faces.len();
    faces.retain(|f| sorted_face(*f) != target);
    if faces.len() + 1 != before {
        return Err(precondition("no face on the inner a-edge"));
    }
    let nv = t.fresh_vertices(3);
    faces.extend(octahedron_into(&nv, [p, q, w]));
    let mut s = o.center.to_vec();
    s.extend(o.remaining);
    s.push(w);
    finish(t, MoveKind::R3, s, faces, Class::F4)
}

fn octahedron_into(nv: &[VertexId], f: Face) -> Vec<Face> {
    open_octahedron([nv[0], nv[1], nv[2]], f)
}

/// Replacement of a boundary octahedron: only `a1 a2` is a boundary edge
/// and `deg(a2) = 5`; drop the face on `a1 a2` and contract `a2 v` for the
/// neighbour `v` of `a2` outside the octahedron.
fn replace_boundary_octahedron(t: &Triangulation, c: [VertexId; 3]) -> Result<(Triangulation, Move), ReduceError> {
    let o = octahedron_at(t, c)?;
    if o.boundary_case != 1 {
        return Err(precondition("center touches the boundary"));
    }
    let on_b = boundary_a_edges(t, &o);
    let &[k] = on_b.as_slice() else {
        return Err(precondition("needs exactly one boundary a-edge"));
    };
    let a = o.remaining;
    let verts = o.vertices();
    for (a1, a2) in [(a[(k + 1) % 3], a[(k + 2) % 3]), (a[(k + 2) % 3], a[(k + 1) % 3])] {
        if t.degree(a2) != 5 {
            continue;
        }
        let outside: Vec<VertexId> = t.neighbors(a2).iter().copied().filter(|x| !verts.contains(x)).collect();
        let &[v] = outside.as_slice() else { continue };
        let face = [o.center[k], a1, a2];
        let drop = Move::new(MoveKind::R5, vec![], vec![face], vec![]);
        let Ok(mid) = drop.apply(t) else { continue };
        if mid.classify() != t.classify() {
            continue;
        }
        let Ok((u, _)) = contract(&mid, Edge::new(a2, v)) else { continue };
        if !Class::F4.contains(&u) {
            continue;
        }
        let mut s = o.center.to_vec();
        s.extend([a1, a2, v]);
        let m = Move::from_diff(MoveKind::R5, s, t, u.faces());
        return Ok((u, m));
    }
    Err(precondition("no a-vertex of degree 5 with a single outside neighbour"))
}

/// Applies expansion `kind` at `site`; the result must lie in `class`.
pub fn apply_e(
    t: &Triangulation,
    kind: MoveKind,
    site: &Site,
    class: Class,
) -> Result<(Triangulation, Move), ReduceError> {
    check_kind(kind, class)?;
    match (kind, site) {
        (MoveKind::E1, Site::Split { v, spec }) => {
            let (u, m) = split_vertex(t, *v, spec, None)?;
            if !class.contains(&u) {
                return Err(ReduceError::ClassViolation(class));
            }
            Ok((u, m))
        }
        (MoveKind::E2, &Site::Face(f)) => {
            if !t.has_face(f[0], f[1], f[2]) {
                return Err(precondition(format!("{f:?} is not a face")));
            }
            let nv = t.fresh_vertices(3);
            let mut faces: Vec<Face> = t.faces().iter().copied().filter(|x| sorted_face(*x) != sorted_face(f)).collect();
            faces.extend(octahedron_into(&nv, f));
            let mut s = f.to_vec();
            s.extend(&nv);
            finish(t, MoveKind::E2, s, faces, class)
        }
        (MoveKind::E2, &Site::BoundaryEdge(e)) => {
            if !t.is_boundary_edge(e) {
                return Err(precondition(format!("{e} is not a boundary edge")));
            }
            let (a1, a2) = e.endpoints();
            let nv = t.fresh_vertices(4);
            let mut faces = t.faces().to_vec();
            faces.extend(open_octahedron([nv[1], nv[2], nv[3]], [a1, a2, nv[0]]));
            finish(t, MoveKind::E2, vec![a1, a2, nv[0], nv[1], nv[2], nv[3]], faces, class)
        }
        (MoveKind::E3, Site::Center(c)) => unfold(t, *c),
        (MoveKind::E4, &Site::BoundaryPath([a1, a3, a2])) => {
            let ok = t.is_boundary_edge(Edge::new(a1, a3))
                && t.is_boundary_edge(Edge::new(a3, a2))
                && t.is_inner_edge(Edge::new(a1, a2));
            if !ok {
                return Err(precondition("needs boundary edges a1a3, a3a2 and an inner edge a1a2"));
            }
            let nv = t.fresh_vertices(3);
            let mut faces = t.faces().to_vec();
            faces.extend(open_quasi([nv[0], nv[1], nv[2]], [a1, a2, a3]));
            finish(t, MoveKind::E4, vec![a1, a3, a2, nv[0], nv[1], nv[2]], faces, class)
        }
        (MoveKind::E4, &Site::Face([a1, a2, a3])) => {
            if !t.has_face(a1, a2, a3) || !t.is_boundary_edge(Edge::new(a1, a2)) {
                return Err(precondition("needs a face a1a2a3 with a1a2 on the boundary"));
            }
            let nv = t.fresh_vertices(3);
            let gone = sorted_face([a1, a2, a3]);
            let mut faces: Vec<Face> = t.faces().iter().copied().filter(|x| sorted_face(*x) != gone).collect();
            faces.extend(open_quasi([nv[0], nv[1], nv[2]], [a1, a2, a3]));
            finish(t, MoveKind::E4, vec![a1, a2, a3, nv[0], nv[1], nv[2]], faces, class)
        }
        (MoveKind::E5, &Site::Unfold { v, end }) => replace_quasi(t, v, end),
        (MoveKind::E6, Site::DoubleSplit { x, first, z, second }) => double_split(t, *x, first, *z, second),
        (MoveKind::EF, &Site::BoundaryEdge(e)) => {
            if !t.is_boundary_edge(e) {
                return Err(precondition(format!("{e} is not a boundary edge")));
            }
            let (x1, x2) = e.endpoints();
            let nv = t.fresh_vertices(3);
            let (x, a, b) = (nv[0], nv[1], nv[2]);
            let mut faces = t.faces().to_vec();
            faces.extend([[x, x1, a], [x, a, b], [x, b, x2], [x, x2, x1]]);
            finish(t, MoveKind::EF, vec![x, x1, a, b, x2], faces, class)
        }
        _ => Err(precondition(format!("{kind} does not take site {site:?}"))),
    }
}

/// Unfolding: an octahedron with exactly one boundary `a`-edge is removed
/// (closing its `a`-triangle) and added back along that boundary edge.
fn unfold(t: &Triangulation, c: [VertexId; 3]) -> Result<(Triangulation, Move), ReduceError> {
    let o = octahedron_at(t, c)?;
    if o.boundary_case != 1 {
        return Err(precondition("center touches the boundary"));
    }
    let on_b = boundary_a_edges(t, &o);
    let &[k] = on_b.as_slice() else {
        return Err(precondition("needs exactly one boundary a-edge"));
    };
    let a = o.remaining;
    if t.has_face(a[0], a[1], a[2]) {
        return Err(precondition("a-triangle is already a face"));
    }
    let mut faces = without(t, &o.center);
    faces.push(a);
    let nv = t.fresh_vertices(4);
    let (a1, a2) = (a[(k + 1) % 3], a[(k + 2) % 3]);
    faces.extend(open_octahedron([nv[1], nv[2], nv[3]], [a1, a2, nv[0]]));
    let mut s = o.center.to_vec();
    s.extend(o.remaining);
    s.extend(&nv);
    finish(t, MoveKind::E3, s, faces, Class::F4)
}

/// Replacement of a quasi-octahedron by a boundary octahedron. `v` is a
/// boundary vertex of degree 4 whose link path `end, v2, v1, w` runs
/// through two 4-valent vertices; `w` is split along its boundary edge to
/// `v` and the new vertex is closed off with the face `end v new`.
fn replace_quasi(t: &Triangulation, v: VertexId, end: VertexId) -> Result<(Triangulation, Move), ReduceError> {
    let rot = t.rotation(v).ok_or_else(|| precondition(format!("unknown vertex {v}")))?;
    if rot.is_cyclic() || rot.len() != 4 {
        return Err(precondition("needs a boundary vertex of degree 4"));
    }
    let mut p = rot.vertices().to_vec();
    if p[0] != end {
        p.reverse();
    }
    if p[0] != end {
        return Err(precondition("end is not an end of the link path"));
    }
    let (v2, v1, w) = (p[1], p[2], p[3]);
    if t.degree(v1) != 4 || t.degree(v2) != 4 {
        return Err(precondition("link path must pass two 4-valent vertices"));
    }
    let a3 = t
        .neighbors(v1)
        .iter()
        .copied()
        .find(|&x| x != v && x != v2 && t.has_edge(x, v2))
        .ok_or_else(|| precondition("no common neighbour opposite v"))?;
    let (mid, m1) = split_vertex(t, w, &SplitSpec::along_boundary(vec![v, v1, a3]), None)?;
    let n = m1.site[1];
    let close = Move::new(MoveKind::E5, vec![], vec![], vec![[end, v, n]]);
    let u = close.apply(&mid)?;
    if u.classify() != t.classify() {
        return Err(SurgeryError::SurfaceChanged.into());
    }
    finish(t, MoveKind::E5, vec![v, end, w, n], u.faces().to_vec(), Class::F4)
}

/// Two splittings whose new edges `x y` and `z v` are the non-incident
/// edges of an N-component that a double contraction undoes.
fn double_split(
    t: &Triangulation,
    x: VertexId,
    first: &SplitSpec,
    z: VertexId,
    second: &SplitSpec,
) -> Result<(Triangulation, Move), ReduceError> {
    if !first.pivots().contains(&z) || !second.pivots().contains(&x) {
        return Err(precondition("each split must pivot on the other split vertex"));
    }
    if !first.boundary_edge && !second.boundary_edge {
        return Err(precondition("one of the new edges must lie on the boundary"));
    }
    let (mid, m1) = split_vertex(t, x, first, None)?;
    let (u, m2) = split_vertex(&mid, z, second, None)?;
    let (y, v) = (m1.site[1], m2.site[1]);
    if !Class::F4.contains(&u) {
        return Err(ReduceError::ClassViolation(Class::F4));
    }
    let mut want = [Edge::new(x, y), Edge::new(z, v)];
    want.sort();
    let undone = find_n_components(&u).into_iter().any(|n| {
        let mut got = n.edges();
        got.sort();
        n.contractible && got == want && double_contraction(&u, &n).is_some_and(|back| is_equivalent(&back, t))
    });
    if !undone {
        return Err(precondition("the double contraction does not undo this double splitting"));
    }
    let m = Move::from_diff(MoveKind::E6, vec![x, z, y, v], t, u.faces());
    Ok((u, m))
}

/// Every expansion site of `class` except double splittings, in a fixed
/// order. Sites are not checked; `apply_e` may still reject them.
pub fn expansion_sites(t: &Triangulation, class: Class) -> Vec<(MoveKind, Site)> {
    let mut out = Vec::new();
    for &v in t.vertices() {
        for spec in split_specs(t, v) {
            out.push((MoveKind::E1, Site::Split { v, spec }));
        }
    }
    for &f in t.faces() {
        out.push((MoveKind::E2, Site::Face(f)));
    }
    let bedges = t.boundary_edges();
    for &e in &bedges {
        out.push((MoveKind::E2, Site::BoundaryEdge(e)));
    }
    match class {
        Class::F0 => {
            for &e in &bedges {
                out.push((MoveKind::EF, Site::BoundaryEdge(e)));
            }
        }
        Class::F4 => {
            for o in find_octahedra(t) {
                if boundary_a_edges(t, &o).len() == 1 {
                    out.push((MoveKind::E3, Site::Center(o.center)));
                }
            }
            for a3 in t.boundary_vertices() {
                if let Some((p, q)) = t.boundary_neighbors(a3) {
                    if t.is_inner_edge(Edge::new(p, q)) {
                        out.push((MoveKind::E4, Site::BoundaryPath([p, a3, q])));
                    }
                }
            }
            for &e in &bedges {
                let (a1, a2) = e.endpoints();
                for a3 in t.apexes(e).unwrap_or_default() {
                    out.push((MoveKind::E4, Site::Face([a1, a2, a3])));
                }
            }
            for v in t.boundary_vertices() {
                if t.degree(v) != 4 {
                    continue;
                }
                let r = t.neighbors(v);
                for end in [r[0], r[3]] {
                    out.push((MoveKind::E5, Site::Unfold { v, end }));
                }
            }
        }
    }
    out
}

/// Double-splitting sites: `x` split with a pivot `z`, then `z` split with
/// pivot `x`, at least one of the two along a boundary edge.
pub fn double_split_sites(t: &Triangulation) -> Vec<Site> {
    let mut out = Vec::new();
    for &x in t.vertices() {
        for first in split_specs(t, x) {
            for z in first.pivots() {
                let Ok((mid, _)) = split_vertex(t, x, &first, None) else { continue };
                for second in split_specs(&mid, z) {
                    if !second.pivots().contains(&x) || !(first.boundary_edge || second.boundary_edge) {
                        continue;
                    }
                    out.push(Site::DoubleSplit {
                        x,
                        first: first.clone(),
                        z,
                        second,
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::canonical_form;
    use crate::configs::find_m_components;
    use crate::fixtures;

    fn fixture(name: &str) -> Triangulation {
        fixtures::by_name(name).unwrap()
    }

    #[test]
    fn octahedron_addition_into_a_face_and_back() {
        let d = fixtures::disk_oct();
        let (u, m) = apply_e(&d, MoveKind::E2, &Site::Face([1, 3, 4]), Class::F4).unwrap();
        assert_eq!(u.num_vertices(), 9);
        assert!(u.is_disk() && Class::F4.contains(&u));
        let nv = m.created_vertices();
        assert_eq!(nv, vec![0, 7, 8]);
        let (back, r) = apply_r(&u, MoveKind::R2, &Site::Center([0, 7, 8]), Class::F4).unwrap();
        assert!(is_equivalent(&back, &d));
        assert!(is_equivalent(&r.inverse().apply(&back).unwrap(), &u));
    }

    #[test]
    fn octahedron_addition_along_a_boundary_edge_is_redundant() {
        let m1 = fixtures::mobius_m1();
        let (u, _) = apply_e(&m1, MoveKind::E2, &Site::BoundaryEdge(Edge::new(1, 3)), Class::F4).unwrap();
        assert_eq!(u.num_vertices(), 9);
        let ext: Vec<_> = find_octahedra(&u).into_iter().filter(|o| o.external).collect();
        assert_eq!(ext.len(), 1);
        let (back, _) = apply_r(&u, MoveKind::R2, &Site::Center(ext[0].center), Class::F4).unwrap();
        assert!(is_equivalent(&back, &m1));
    }

    #[test]
    fn folding_and_unfolding() {
        let t = fixture("mobius_r3");
        let o = find_octahedra(&t).into_iter().find(|o| fold(&t, o.center).is_ok()).unwrap();
        let (u, m) = apply_r(&t, MoveKind::R3, &Site::Center(o.center), Class::F4).unwrap();
        // the external vertex goes with the folded octahedron
        assert_eq!(u.num_vertices() + 1, t.num_vertices());
        assert_eq!(u.classify(), t.classify());
        assert_eq!(m.kind, MoveKind::R3);
        let nv: Vec<VertexId> = u.vertices().iter().copied().filter(|v| !t.contains_vertex(*v)).collect();
        let (back, _) = apply_e(&u, MoveKind::E3, &Site::Center([nv[0], nv[1], nv[2]]), Class::F4).unwrap();
        assert!(is_equivalent(&back, &t));
    }

    #[test]
    fn boundary_octahedron_replacement_leaves_a_quasi_octahedron() {
        let t = fixture("mobius_r5");
        let (u, m) = find_octahedra(&t)
            .into_iter()
            .find_map(|o| apply_r(&t, MoveKind::R5, &Site::Center(o.center), Class::F4).ok())
            .unwrap();
        assert_eq!(u.num_vertices() + 1, t.num_vertices());
        let quasi = find_quasi_octahedra(&u);
        assert_eq!(quasi.len(), 1);
        assert_eq!(m.kind, MoveKind::R5);
        // replacing the quasi-octahedron restores the boundary octahedron
        let v = quasi[0].center[quasi[0].boundary_center(&u).unwrap()];
        let restored = u.neighbors(v).iter().any(|&end| {
            apply_e(&u, MoveKind::E5, &Site::Unfold { v, end }, Class::F4)
                .is_ok_and(|(w, _)| is_equivalent(&w, &t))
        });
        assert!(restored);
    }

    #[test]
    fn double_contraction_and_double_splitting() {
        let t = fixture("mobius_n");
        let n = find_n_components(&t).into_iter().find(|n| n.contractible).unwrap();
        let site = Site::NComponent {
            x: n.x,
            z: n.z,
            y: n.y,
            v: n.v,
        };
        let (u, _) = apply_r(&t, MoveKind::R6, &site, Class::F4).unwrap();
        assert_eq!(u.num_vertices() + 2, t.num_vertices());
        assert_eq!(u.classify(), t.classify());
        let want = canonical_form(&t);
        let found = double_split_sites(&u)
            .into_iter()
            .any(|s| apply_e(&u, MoveKind::E6, &s, Class::F4).is_ok_and(|(w, _)| canonical_form(&w) == want));
        assert!(found);
    }

    #[test]
    fn quasi_octahedron_addition_both_ways() {
        let k7 = fixtures::punctured_torus_k7();
        let (a1, a3) = k7.boundary_neighbors(1).map(|(p, _)| (p, 1)).unwrap();
        let (_, a2) = k7.boundary_neighbors(1).unwrap();
        let (u, m) = apply_e(&k7, MoveKind::E4, &Site::BoundaryPath([a1, a3, a2]), Class::F4).unwrap();
        let q = find_quasi_octahedra(&u);
        assert_eq!(q.len(), 1);
        assert_eq!(q[0].center.to_vec(), m.site[3..].to_vec());
        assert_eq!(q[0].variant, 1);
        let (back, _) = apply_r(&u, MoveKind::R4, &Site::Center(q[0].center), Class::F4).unwrap();
        assert!(is_equivalent(&back, &k7));

        let m1 = fixtures::mobius_m1();
        let face = [1, 3, m1.apexes(Edge::new(1, 3)).unwrap()[0]];
        let (u, _) = apply_e(&m1, MoveKind::E4, &Site::Face(face), Class::F4).unwrap();
        let q = find_quasi_octahedra(&u);
        assert_eq!(q.len(), 1);
        assert_eq!(q[0].variant, 2);
        let (back, _) = apply_r(&u, MoveKind::R4, &Site::Center(q[0].center), Class::F4).unwrap();
        assert!(is_equivalent(&back, &m1));
    }

    #[test]
    fn flag_addition_and_removal() {
        let d = fixtures::disk_oct();
        let (u, _) = apply_e(&d, MoveKind::EF, &Site::BoundaryEdge(Edge::new(2, 6)), Class::F0).unwrap();
        assert!(is_equivalent(&u, &fixtures::flag_ext()));
        let x = find_flags(&u)[0].center;
        let (back, _) = apply_r(&u, MoveKind::RF, &Site::Flag(x), Class::F0).unwrap();
        assert!(is_equivalent(&back, &d));
        // a flag has triodes, so it never enters F²(4)
        assert!(apply_e(&d, MoveKind::EF, &Site::BoundaryEdge(Edge::new(2, 6)), Class::F4).is_err());
    }

    #[test]
    fn preconditions() {
        let d = fixtures::disk_oct();
        let err = apply_e(&d, MoveKind::E2, &Site::Face([1, 2, 4]), Class::F4).unwrap_err();
        assert!(matches!(err, ReduceError::SitePreconditionFailed(_)));
        let err = apply_r(&d, MoveKind::R3, &Site::Center([1, 3, 4]), Class::F0).unwrap_err();
        assert!(matches!(err, ReduceError::SitePreconditionFailed(_)));
        let err = apply_r(&d, MoveKind::R2, &Site::Edge(Edge::new(1, 2)), Class::F4).unwrap_err();
        assert!(matches!(err, ReduceError::SitePreconditionFailed(_)));
        // the octahedron disk is not removable within F²(4)
        let err = apply_r(&d, MoveKind::R2, &Site::Center([1, 3, 4]), Class::F4).unwrap_err();
        assert_eq!(err, ReduceError::ClassViolation(Class::F4));
        // contracting an inner DISK_OCT edge drops an apex to degree 3
        let err = apply_r(&d, MoveKind::R1, &Site::Edge(Edge::new(1, 3)), Class::F4).unwrap_err();
        assert_eq!(err, ReduceError::ClassViolation(Class::F4));
    }

    fn touches(m: &Move, vs: &[VertexId]) -> bool {
        m.removed.iter().chain(&m.added).flatten().any(|v| vs.contains(v))
    }

    #[test]
    fn m_component_survives_reductions_elsewhere() {
        let t = fixtures::mobius_m();
        let ms = find_m_components(&t);
        assert_eq!(ms.len(), 1);
        let mv = ms[0].vertices();
        let mut far = 0;
        for &f in t.faces() {
            if f.iter().any(|v| mv.contains(v)) {
                continue;
            }
            let (u, _) = apply_e(&t, MoveKind::E2, &Site::Face(f), Class::F4).unwrap();
            for (w, m) in crate::reduce::reductions(&u, Class::F4) {
                if !touches(&m, &mv) {
                    far += 1;
                    assert!(find_m_components(&w).contains(&ms[0]), "{} destroyed {:?}", m.to_line(), ms[0]);
                }
            }
        }
        assert!(far > 0);
    }

    #[test]
    fn quasi_removal_through_the_m_vertices_breaks_it() {
        // both quasi-octahedra share a, x1 and x2 with the M-component;
        // removing one closes a critical 3-cycle through ab
        let t = fixtures::mobius_m();
        let m0 = find_m_components(&t)[0].clone();
        let all: Vec<_> = crate::reduce::reductions(&t, Class::F4).collect();
        assert!(!all.is_empty());
        for (u, m) in all {
            assert_eq!(m.kind, MoveKind::R4);
            assert!(touches(&m, &m0.vertices()));
            assert!(find_m_components(&u).is_empty());
            assert!(!crate::surgery::is_contractible(&u, m0.center_edge()).unwrap().is_contractible());
        }
    }

    #[test]
    fn expansion_sites_all_revalidate() {
        for (t, class) in [
            (fixtures::disk_oct(), Class::F4),
            (fixtures::mobius_m1(), Class::F4),
            (fixtures::flag5(), Class::F0),
        ] {
            let mut kinds = std::collections::BTreeSet::new();
            for (k, s) in expansion_sites(&t, class) {
                if let Ok((u, m)) = apply_e(&t, k, &s, class) {
                    assert!(class.contains(&u));
                    assert_eq!(u.classify(), t.classify());
                    assert!(is_equivalent(&m.inverse().apply(&u).unwrap(), &t));
                    kinds.insert(k);
                }
            }
            assert!(kinds.contains(&MoveKind::E2));
            assert!(kinds.contains(&MoveKind::E1));
        }
        // a closed surface only admits splittings and octahedra in faces
        let s = fixtures::sphere_oct();
        for (k, site) in expansion_sites(&s, Class::F4) {
            assert!(matches!(k, MoveKind::E1 | MoveKind::E2), "{k} {site:?}");
        }
    }
}
