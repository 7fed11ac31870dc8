use super::{Move, MoveKind, SurgeryError};
use crate::complex::{Face, Rotation, Triangulation, VertexId};

/// Which part of a link moves to the new vertex.
///
/// `arc` is a run of consecutive link neighbours (in either rotation
/// direction). The faces of `v` spanned by consecutive arc members move to
/// the new vertex `v'`, and `v v'` is closed off by faces through the
/// pivots:
///
/// * `boundary_edge = false`: both arc ends are pivots and `v v'` becomes
///   an inner edge; `v'` is an inner vertex.
/// * `boundary_edge = true`: `v` is a boundary vertex, the arc starts at
///   one end of its link path, the other arc end is the only pivot and
///   `v v'` becomes a boundary edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplitSpec {
    pub arc: Vec<VertexId>,
    pub boundary_edge: bool,
}

impl SplitSpec {
    pub fn inner(arc: Vec<VertexId>) -> SplitSpec {
        SplitSpec {
            arc,
            boundary_edge: false,
        }
    }

    pub fn along_boundary(arc: Vec<VertexId>) -> SplitSpec {
        SplitSpec {
            arc,
            boundary_edge: true,
        }
    }

    pub fn pivots(&self) -> Vec<VertexId> {
        match (self.boundary_edge, self.arc.as_slice()) {
            (_, []) => vec![],
            (true, a) => vec![a[a.len() - 1]],
            (false, a) => vec![a[0], a[a.len() - 1]],
        }
    }
}

fn bad(msg: impl Into<String>) -> SurgeryError {
    SurgeryError::BadPartition(msg.into())
}

/// Checks that `arc` runs through consecutive rotation positions.
fn check_arc(rot: &Rotation, arc: &[VertexId]) -> Result<Vec<usize>, SurgeryError> {
    let n = rot.len();
    let pos = arc
        .iter()
        .map(|&w| rot.position(w).ok_or_else(|| bad(format!("{w} is not a neighbour"))))
        .collect::<Result<Vec<_>, _>>()?;
    let mut seen = pos.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != pos.len() {
        return Err(bad("arc repeats a neighbour"));
    }
    if pos.len() < 2 {
        return Ok(pos);
    }
    let step = |a: usize, b: usize, fwd: bool| -> bool {
        if rot.is_cyclic() {
            if fwd {
                (a + 1) % n == b
            } else {
                (b + 1) % n == a
            }
        } else if fwd {
            a + 1 == b
        } else {
            b + 1 == a
        }
    };
    let fwd = step(pos[0], pos[1], true);
    if !pos.windows(2).all(|w| step(w[0], w[1], fwd)) {
        return Err(bad("arc is not contiguous in the link"));
    }
    Ok(pos)
}

/// Splits `v` according to `spec`; with `k`, both halves must end with
/// degree at least `k`. The new vertex takes the smallest unused id.
pub fn split_vertex(
    t: &Triangulation,
    v: VertexId,
    spec: &SplitSpec,
    k: Option<usize>,
) -> Result<(Triangulation, Move), SurgeryError> {
    let rot = t.rotation(v).ok_or(SurgeryError::UnknownVertex(v))?;
    let arc = &spec.arc;
    if arc.is_empty() {
        return Err(bad("empty arc"));
    }
    let pos = check_arc(rot, arc)?;
    let last = rot.len() - 1;
    if spec.boundary_edge {
        if rot.is_cyclic() {
            return Err(bad("inner vertex has no boundary edge to split along"));
        }
        if pos[0] != 0 && pos[0] != last {
            return Err(bad("arc must start at an end of the link path"));
        }
    } else {
        if arc.len() < 2 {
            return Err(bad("an inner split needs two pivots"));
        }
    }
    let w = t.fresh_vertex();
    let mut removed: Vec<Face> = Vec::new();
    let mut added: Vec<Face> = Vec::new();
    for pair in arc.windows(2) {
        removed.push([v, pair[0], pair[1]]);
        added.push([w, pair[0], pair[1]]);
    }
    let pivots = spec.pivots();
    for &p in &pivots {
        added.push([v, w, p]);
    }
    let dv = t.degree(v) + if spec.boundary_edge { 2 } else { 3 } - arc.len();
    let dw = arc.len() + 1;
    if let Some(k) = k {
        if dv < k || dw < k {
            return Err(SurgeryError::DegreeViolation(k));
        }
    }
    let mut site = vec![v, w];
    site.extend(&pivots);
    let m = Move::new(MoveKind::E1, site, removed, added);
    let u = m.apply(t)?;
    if u.classify() != t.classify() {
        return Err(SurgeryError::SurfaceChanged);
    }
    debug_assert_eq!(u.degree(v), dv);
    debug_assert_eq!(u.degree(w), dw);
    Ok((u, m))
}

/// Every split of `v`, in rotation order.
pub fn split_specs(t: &Triangulation, v: VertexId) -> Vec<SplitSpec> {
    let Some(rot) = t.rotation(v) else { return vec![] };
    let r = rot.vertices();
    let n = r.len();
    let mut out = Vec::new();
    if rot.is_cyclic() {
        for start in 0..n {
            for len in 2..=n {
                out.push(SplitSpec::inner((0..len).map(|i| r[(start + i) % n]).collect()));
            }
        }
    } else {
        for i in 0..n {
            for j in i + 1..n {
                out.push(SplitSpec::inner(r[i..=j].to_vec()));
            }
        }
        for j in 0..n {
            out.push(SplitSpec::along_boundary(r[..=j].to_vec()));
            out.push(SplitSpec::along_boundary(r[n - 1 - j..].iter().rev().copied().collect()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{canonical_form, is_equivalent, Class, Edge};
    use crate::fixtures;
    use crate::surgery::contract;

    #[test]
    fn disk_oct_four_splitting() {
        let d = fixtures::disk_oct();
        let spec = SplitSpec::inner(vec![2, 3, 4]);
        let (u, m) = split_vertex(&d, 1, &spec, Some(4)).unwrap();
        assert_eq!(u.num_vertices(), 7);
        assert!(u.is_disk());
        assert!(u.min_degree() >= 4);
        assert_eq!(m.site, vec![1, 0, 2, 4]);
        let back = m.inverse().apply(&u).unwrap();
        assert!(is_equivalent(&back, &d));
    }

    #[test]
    fn contract_then_split_round_trip() {
        let f = fixtures::flag5();
        let (u, m) = contract(&f, Edge::new(5, 2)).unwrap();
        let back = m.inverse().apply(&u).unwrap();
        assert_eq!(canonical_form(&back), canonical_form(&f));
        // the same split phrased as a spec: 2 regains the faces towards 1
        let link = u.link(2).unwrap();
        assert_eq!(link.vertices().len(), 3);
    }

    #[test]
    fn three_splitting_a_triode_stays_in_f0() {
        let f = fixtures::flag5();
        let [x, x1, a, _, _] = fixtures::FLAG5_ROLES;
        // a has link path x1 - x - b; peel x1 off along the boundary
        let spec = SplitSpec::along_boundary(vec![x1, x]);
        let (u, _) = split_vertex(&f, a, &spec, Some(3)).unwrap();
        assert!(Class::F0.contains(&u), "{:?}", u.faces());
    }

    #[test]
    fn bad_partitions() {
        let d = fixtures::disk_oct();
        assert!(matches!(
            split_vertex(&d, 1, &SplitSpec::inner(vec![2, 4]), None),
            Err(SurgeryError::BadPartition(_))
        ));
        assert!(matches!(
            split_vertex(&d, 1, &SplitSpec::inner(vec![2]), None),
            Err(SurgeryError::BadPartition(_))
        ));
        assert!(matches!(
            split_vertex(&d, 1, &SplitSpec::along_boundary(vec![2, 3]), None),
            Err(SurgeryError::BadPartition(_))
        ));
        assert!(matches!(
            split_vertex(&d, 1, &SplitSpec::inner(vec![2, 3]), Some(4)),
            Err(SurgeryError::DegreeViolation(4))
        ));
        assert_eq!(
            split_vertex(&d, 9, &SplitSpec::inner(vec![2, 3]), None).unwrap_err(),
            SurgeryError::UnknownVertex(9)
        );
    }

    #[test]
    fn every_split_inverts_by_contraction() {
        for t in fixtures::all() {
            for &v in t.vertices() {
                for spec in split_specs(&t, v) {
                    let Ok((u, m)) = split_vertex(&t, v, &spec, None) else { continue };
                    let w = m.site[1];
                    let (back, _) = contract(&u, Edge::new(v, w)).unwrap();
                    assert!(is_equivalent(&back, &t), "{spec:?} at {v}");
                }
            }
        }
    }
}
