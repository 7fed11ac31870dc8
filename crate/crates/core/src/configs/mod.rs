//! Named local configurations and the search for one near a contractible
//! edge whose contraction would create a vertex of degree 3.

mod flag;
mod nm;
mod octa;

use std::fmt;

use thiserror::Error;

use crate::complex::{Class, Edge, Face, Triangulation, VertexId};
use crate::surgery::{is_contractible, k_contractible};

pub use flag::{find_flags, find_triodes, is_triode_detecting, remove_flag, Flag};
pub use nm::{
    double_contraction, double_contraction_faces, find_m_components, find_n_components, MComponent,
    NComponent,
};
pub use octa::{
    cluster_diagnoses, delete_redundant_octahedron, find_octahedra, find_quasi_octahedra,
    octahedron_removal_faces, octahedron_status, quasi_removal_candidates, quasi_status,
    redundant_deletion_faces, remove_octahedron, remove_quasi_octahedron, ClusterDiagnosis,
    OctahedronComponent, OctahedronStatus, QuasiOctahedronComponent, QuasiStatus,
};

/// Builds `faces` and keeps the result only if it triangulates the same
/// surface as `t` and lies in `class`.
pub(crate) fn rebuild_in_class(t: &Triangulation, faces: Vec<Face>, class: Class) -> Option<Triangulation> {
    let u = Triangulation::build(faces).ok()?;
    (u.classify() == t.classify() && class.contains(&u)).then_some(u)
}

/// Contractible but not 4-contractible.
pub fn is_cn4c(t: &Triangulation, e: Edge) -> bool {
    is_contractible(t, e).map(|w| w.is_contractible()).unwrap_or(false)
        && !k_contractible(t, e, 4).unwrap_or(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FindingKind {
    FourContractibleEdge,
    TriodeDetectingEdge,
    Flag,
    Octahedron,
    QuasiOctahedron,
    NComponent,
    MComponent,
    WholeComplexIsFlag,
    WholeComplexIsOctahedron,
}

impl FindingKind {
    pub fn allowed_in(self, class: Class) -> bool {
        use FindingKind::*;
        match class {
            Class::F0 => matches!(
                self,
                FourContractibleEdge
                    | TriodeDetectingEdge
                    | Flag
                    | Octahedron
                    | WholeComplexIsFlag
                    | WholeComplexIsOctahedron
            ),
            Class::F4 => matches!(
                self,
                FourContractibleEdge | Octahedron | QuasiOctahedron | NComponent | MComponent
            ),
        }
    }
}

impl fmt::Display for FindingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A configuration found near a queried edge. `witness` lists its vertices
/// in a kind-specific order: edge ends; center then remaining vertices;
/// center then rim; `x z y v`; `a b x x1 x2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Finding {
    pub kind: FindingKind,
    pub distance_from_query: u8,
    pub witness: Vec<VertexId>,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @", self.kind)?;
        for v in &self.witness {
            write!(f, " {v}")?;
        }
        write!(f, " d={}", self.distance_from_query)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocateError {
    #[error("edge {0} is not contractible-but-not-4-contractible")]
    NotCnkc(Edge),
    #[error("edge {0} is farther than 1 from the boundary")]
    PreconditionDistance(Edge),
    #[error("no configuration found near {0}")]
    NoFinding(Edge),
}

/// Every class-appropriate configuration within distance 1 of `e`, in
/// reporting order (kind, distance, witness).
pub fn findings_near(t: &Triangulation, e: Edge, class: Class) -> Vec<Finding> {
    let (a, b) = e.endpoints();
    let dist = t.distances_from(&[a, b]);
    let near = |vs: &[VertexId]| -> Option<u8> {
        let d = vs.iter().filter_map(|v| dist.get(v)).min().copied()?;
        (d <= 1).then_some(d as u8)
    };
    let mut out = Vec::new();
    let mut push = |kind: FindingKind, witness: Vec<VertexId>| {
        if let Some(d) = near(&witness) {
            out.push(Finding {
                kind,
                distance_from_query: d,
                witness,
            });
        }
    };
    for edge in t.edges() {
        let (u, v) = edge.endpoints();
        if dist.get(&u).copied().unwrap_or(usize::MAX).min(dist.get(&v).copied().unwrap_or(usize::MAX)) > 1 {
            continue;
        }
        if k_contractible(t, edge, 4).unwrap_or(false) {
            push(FindingKind::FourContractibleEdge, vec![u, v]);
        } else if class == Class::F0
            && is_contractible(t, edge).map(|w| w.is_contractible()).unwrap_or(false)
            && is_triode_detecting(t, edge).unwrap_or(false)
        {
            push(FindingKind::TriodeDetectingEdge, vec![u, v]);
        }
    }
    let whole_disk = t.is_disk();
    for o in find_octahedra(t) {
        let mut w: Vec<VertexId> = o.center.to_vec();
        w.extend(o.remaining);
        let kind = if class == Class::F0 && whole_disk && o.vertices().len() == t.num_vertices() {
            FindingKind::WholeComplexIsOctahedron
        } else {
            FindingKind::Octahedron
        };
        push(kind, w);
    }
    if class == Class::F0 {
        for f in find_flags(t) {
            let mut w = vec![f.center];
            w.extend(f.rim);
            let kind = if f.whole {
                FindingKind::WholeComplexIsFlag
            } else {
                FindingKind::Flag
            };
            push(kind, w);
        }
    }
    if class == Class::F4 {
        for q in find_quasi_octahedra(t) {
            let mut w: Vec<VertexId> = q.center.to_vec();
            w.extend(q.remaining);
            push(FindingKind::QuasiOctahedron, w);
        }
        for n in find_n_components(t) {
            push(FindingKind::NComponent, vec![n.x, n.z, n.y, n.v]);
        }
        for m in find_m_components(t) {
            push(FindingKind::MComponent, vec![m.a, m.b, m.x, m.x1, m.x2]);
        }
    }
    out.sort_by(|p, q| {
        (p.kind, p.distance_from_query, &p.witness).cmp(&(q.kind, q.distance_from_query, &q.witness))
    });
    out.dedup();
    out
}

/// For a cn4c-edge at distance at most 1 from the boundary, the first
/// class-appropriate configuration within distance 1 of it.
pub fn locate_near_cn4c(t: &Triangulation, e: Edge, class: Class) -> Result<Finding, LocateError> {
    if !is_cn4c(t, e) {
        return Err(LocateError::NotCnkc(e));
    }
    match t.edge_distance_to_boundary(e) {
        Ok(d) if d <= 1 => {}
        _ => return Err(LocateError::PreconditionDistance(e)),
    }
    findings_near(t, e, class)
        .into_iter()
        .next()
        .ok_or(LocateError::NoFinding(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn disk_oct_clusters() {
        let d = fixtures::disk_oct();
        let os = find_octahedra(&d);
        // one octahedron, seen from each of its eight 3-cycles
        assert_eq!(os.len(), 8);
        assert!(os.iter().all(|o| o.vertices() == vec![1, 2, 3, 4, 5, 6]));
        let inner = os.iter().find(|o| o.center == [1, 3, 4]).unwrap();
        assert_eq!(inner.remaining, [5, 6, 2]);
        assert_eq!(inner.boundary_case, 1);
        // all three a-edges lie on the boundary hole
        assert!(inner.external);
        let hole = os.iter().find(|o| o.center == [2, 5, 6]).unwrap();
        assert_eq!(hole.boundary_case, 4);
        let mut cases: Vec<u8> = os.iter().map(|o| o.boundary_case).collect();
        cases.sort_unstable();
        cases.dedup();
        assert_eq!(cases, vec![1, 2, 3, 4]);
        assert!(find_quasi_octahedra(&d).is_empty());
        for o in &os {
            assert_eq!(octahedron_status(&d, o, Class::F4), OctahedronStatus::Neither { blocker: None });
        }
    }

    #[test]
    fn sphere_octahedron_is_not_removable() {
        let s = fixtures::sphere_oct();
        let os = find_octahedra(&s);
        assert_eq!(os.len(), 8);
        for o in &os {
            assert_eq!(o.boundary_case, 1);
            assert!(remove_octahedron(&s, o, Class::F4).is_none());
            assert!(remove_octahedron(&s, o, Class::F0).is_none());
        }
    }

    #[test]
    fn mobius_m1_has_nothing() {
        let m = fixtures::mobius_m1();
        assert!(find_octahedra(&m).is_empty());
        assert!(find_quasi_octahedra(&m).is_empty());
        assert!(find_n_components(&m).is_empty());
        assert!(find_m_components(&m).is_empty());
        for e in m.edges() {
            assert_eq!(locate_near_cn4c(&m, e, Class::F4), Err(LocateError::NotCnkc(e)));
        }
    }

    #[test]
    fn octahedron_edges_are_not_four_contractible() {
        for t in [fixtures::disk_oct(), fixtures::sphere_oct()] {
            for o in find_octahedra(&t) {
                for e in o.edges(&t) {
                    assert!(!k_contractible(&t, e, 4).unwrap());
                }
            }
        }
    }

    #[test]
    fn locator_on_attached_flag() {
        let t = fixtures::flag_ext();
        let mut hits = 0;
        for e in t.edges() {
            if !is_cn4c(&t, e) || t.edge_distance_to_boundary(e).unwrap() > 1 {
                continue;
            }
            let f = locate_near_cn4c(&t, e, Class::F0).unwrap();
            assert!(f.kind.allowed_in(Class::F0));
            assert!(f.distance_from_query <= 1);
            hits += 1;
        }
        assert!(hits > 0);
        let all = findings_near(&t, Edge::new(8, 9), Class::F0);
        assert!(all.iter().any(|f| f.kind == FindingKind::Flag && f.witness == vec![7, 2, 8, 9, 6]));
    }

    #[test]
    fn finding_line_format() {
        let f = Finding {
            kind: FindingKind::Flag,
            distance_from_query: 0,
            witness: vec![7, 2, 8, 9, 6],
        };
        assert_eq!(f.to_string(), "Flag @ 7 2 8 9 6 d=0");
    }

    #[test]
    fn locator_preconditions() {
        let d = fixtures::disk_oct();
        assert_eq!(
            locate_near_cn4c(&d, Edge::new(2, 6), Class::F4),
            Err(LocateError::NotCnkc(Edge::new(2, 6)))
        );
    }

    fn build(faces: &[Face]) -> Triangulation {
        Triangulation::build(faces.to_vec()).unwrap()
    }

    #[test]
    fn missing_a_edge_leaves_boundary_spokes() {
        let inputs = [
            fixtures::punctured_torus_quasi(),
            build(fixtures::MOBIUS_R5),
            fixtures::mobius_m(),
        ];
        let mut seen = 0;
        for t in &inputs {
            for q in find_quasi_octahedra(t) {
                let (v, a) = (q.center, q.remaining);
                assert!(v.iter().all(|&x| t.degree(x) == 4));
                for k in 0..3 {
                    let (ai, aj) = (a[(k + 1) % 3], a[(k + 2) % 3]);
                    if !t.has_edge(ai, aj) {
                        assert_eq!(q.variant, 2);
                        assert!(t.is_boundary_edge(Edge::new(ai, v[k])));
                        assert!(t.is_boundary_edge(Edge::new(aj, v[k])));
                        seen += 1;
                    }
                }
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn n_component_double_contraction() {
        let t = build(fixtures::MOBIUS_N);
        let ns: Vec<_> = find_n_components(&t).into_iter().filter(|n| n.contractible).collect();
        assert!(!ns.is_empty());
        for n in &ns {
            for e in n.edges() {
                assert!(t.has_edge(e.endpoints().0, e.endpoints().1));
            }
            let u = double_contraction(&t, n).unwrap();
            assert_eq!(u.num_vertices(), t.num_vertices() - 2);
            assert_eq!(u.classify(), t.classify());
            assert!(Class::F4.contains(&u));
        }
        assert!(findings_near(&t, ns[0].edges()[0], Class::F4)
            .iter()
            .any(|f| f.kind == FindingKind::NComponent));
    }

    #[test]
    fn m_component_roles() {
        let t = fixtures::mobius_m();
        let ms = find_m_components(&t);
        assert!(ms.iter().any(|m| (m.a, m.b, m.x, m.x1, m.x2) == (2, 5, 6, 3, 4)));
        for m in &ms {
            let c = m.center_edge();
            assert!(t.has_edge(c.endpoints().0, c.endpoints().1));
        }
    }
}
