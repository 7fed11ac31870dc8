//! Greedy reduction drivers and minimality certificates.

use std::collections::HashSet;
use std::fmt;

use crate::complex::{canonical_form, is_equivalent, Class, Edge, Triangulation};
use crate::configs::{find_flags, find_m_components, find_n_components, find_octahedra, find_quasi_octahedra, quasi_status, QuasiStatus};
use crate::fixtures;
use crate::surgery::{diagonal_flip, is_contractible, k_contractible, Move, MoveKind};

use super::{apply_r, ReduceError, ReductionTrace, Site};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Housing {
    QuasiOctahedron,
    MComponent,
    /// The terminal is the base disk itself.
    DiskBase,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// No contractible edge at all.
    Irreducible,
    /// No reduction applies and every contractible edge is housed.
    FourMinimal,
    /// A disk terminal equivalent to one of the base disks.
    DiskBase,
    /// No reduction applies but some contractible edge is unhoused.
    Stuck,
    NotMinimal(Move),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityCertificate {
    pub verdict: Verdict,
    pub residual_contractibles: Vec<(Edge, Option<Housing>)>,
}

impl MinimalityCertificate {
    /// Irreducible, or four-minimal with every residual edge housed.
    pub fn is_sound(&self) -> bool {
        match self.verdict {
            Verdict::Irreducible => self.residual_contractibles.is_empty(),
            Verdict::FourMinimal | Verdict::DiskBase => self.residual_contractibles.iter().all(|(_, h)| h.is_some()),
            _ => false,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::NotMinimal(m) => write!(f, "NotMinimal({})", m.to_line()),
            other => fmt::Debug::fmt(other, f),
        }
    }
}

fn contractible(t: &Triangulation, e: Edge) -> bool {
    is_contractible(t, e).map(|w| w.is_contractible()).unwrap_or(false)
}

fn contractible_edges(t: &Triangulation) -> Vec<Edge> {
    t.edges().filter(|&e| contractible(t, e)).collect()
}

/// Every applicable reduction of `class`, lazily, in priority order.
///
/// F²(4): R1 (4-contractions), R2, R5, R3, R4, R6. F°²(4): 4-contractions,
/// other in-class contractions, flag removal, octahedron removal or
/// redundant deletion. Sites are scanned in increasing order.
pub fn reductions(t: &Triangulation, class: Class) -> Box<dyn Iterator<Item = (Triangulation, Move)> + '_> {
    let r1_four = t
        .edges()
        .filter(move |&e| k_contractible(t, e, 4).unwrap_or(false))
        .filter_map(move |e| apply_r(t, MoveKind::R1, &Site::Edge(e), class).ok());
    let centers = |kind: MoveKind| {
        std::iter::once(())
            .flat_map(move |_| find_octahedra(t))
            .filter_map(move |o| apply_r(t, kind, &Site::Center(o.center), class).ok())
    };
    match class {
        Class::F4 => {
            let quasi = std::iter::once(())
                .flat_map(move |_| find_quasi_octahedra(t))
                .filter_map(move |q| apply_r(t, MoveKind::R4, &Site::Center(q.center), class).ok());
            let double = std::iter::once(())
                .flat_map(move |_| find_n_components(t))
                .filter(|n| n.contractible)
                .filter_map(move |n| {
                    let site = Site::NComponent {
                        x: n.x,
                        z: n.z,
                        y: n.y,
                        v: n.v,
                    };
                    apply_r(t, MoveKind::R6, &site, class).ok()
                });
            Box::new(
                r1_four
                    .chain(centers(MoveKind::R2))
                    .chain(centers(MoveKind::R5))
                    .chain(centers(MoveKind::R3))
                    .chain(quasi)
                    .chain(double),
            )
        }
        Class::F0 => {
            let r1_any = t
                .edges()
                .filter(move |&e| !k_contractible(t, e, 4).unwrap_or(true))
                .filter_map(move |e| apply_r(t, MoveKind::R1, &Site::Edge(e), class).ok());
            let flags = std::iter::once(())
                .flat_map(move |_| find_flags(t))
                .filter(|f| f.removable)
                .filter_map(move |f| apply_r(t, MoveKind::RF, &Site::Flag(f.center), class).ok());
            Box::new(r1_four.chain(r1_any).chain(flags).chain(centers(MoveKind::R2)))
        }
    }
}

pub fn next_reduction(t: &Triangulation, class: Class) -> Option<(Triangulation, Move)> {
    reductions(t, class).next()
}

fn check_input(t: &Triangulation, class: Class) -> Result<(), ReduceError> {
    if !class.contains(t) {
        return Err(ReduceError::ClassViolation(class));
    }
    if class == Class::F0 && t.classify().boundary_components > 1 {
        return Err(ReduceError::NonPuncturedInput);
    }
    Ok(())
}

/// Applies reductions (and, with `flips`, unlocking flips) until none is
/// left. States already visited are never re-entered.
fn drive(t: &Triangulation, class: Class, flips: bool) -> (Triangulation, ReductionTrace) {
    let mut visited = HashSet::from([canonical_form(t)]);
    let mut cur = t.clone();
    let mut moves = Vec::new();
    loop {
        let step = reductions(&cur, class).find(|(u, _)| visited.insert(canonical_form(u)));
        let step = match step {
            Some(s) => Some(s),
            None if flips => unlocking_flip(&cur, &mut visited),
            None => None,
        };
        let Some((u, m)) = step else { break };
        moves.push(m);
        cur = u;
    }
    let trace = ReductionTrace {
        class,
        flips_allowed: flips,
        initial: canonical_form(t),
        moves,
        terminal: canonical_form(&cur),
    };
    (cur, trace)
}

/// Flips suggested by the residual configurations: `xa` or `xb` in an
/// M-component when that end has degree at least 5, and the `a`-edges of
/// quasi-octahedra.
fn recipe_flips(t: &Triangulation) -> Vec<Edge> {
    let mut out = Vec::new();
    for m in find_m_components(t) {
        for end in [m.a, m.b] {
            if t.degree(end) >= 5 {
                out.push(Edge::new(m.x, end));
            }
        }
    }
    for q in find_quasi_octahedra(t) {
        let a = q.remaining;
        for k in 0..3 {
            let e = Edge::new(a[(k + 1) % 3], a[(k + 2) % 3]);
            if t.is_inner_edge(e) {
                out.push(e);
            }
        }
    }
    out
}

/// An in-class flip after which some reduction applies: recipe flips
/// first, then every inner edge in order.
fn unlocking_flip(t: &Triangulation, visited: &mut HashSet<crate::complex::CanonicalForm>) -> Option<(Triangulation, Move)> {
    if contractible_edges(t).is_empty() {
        return None;
    }
    let mut seen = HashSet::new();
    let candidates = recipe_flips(t).into_iter().chain(t.edges().filter(|&e| t.is_inner_edge(e)));
    for e in candidates {
        if !seen.insert(e) {
            continue;
        }
        let Ok((u, m)) = diagonal_flip(t, e) else { continue };
        if !Class::F4.contains(&u) || visited.contains(&canonical_form(&u)) {
            continue;
        }
        if next_reduction(&u, Class::F4).is_some() {
            visited.insert(canonical_form(&u));
            return Some((u, m));
        }
    }
    None
}

/// Greedy reduction within F°²(4). For a non-disk the terminal has no
/// contractible edge; a disk ends at a flag or an octahedron.
pub fn reduce_to_irreducible(t: &Triangulation) -> Result<(Triangulation, ReductionTrace), ReduceError> {
    check_input(t, Class::F0)?;
    Ok(drive(t, Class::F0, false))
}

/// Greedy 4-reduction within F²(4), optionally with flips, and the
/// certificate of the terminal.
pub fn reduce_to_4minimal(
    t: &Triangulation,
    flips_allowed: bool,
) -> Result<(Triangulation, ReductionTrace, MinimalityCertificate), ReduceError> {
    check_input(t, Class::F4)?;
    let (u, trace) = drive(t, Class::F4, flips_allowed);
    let cert = certify(&u, Class::F4);
    Ok((u, trace, cert))
}

fn is_disk_base(t: &Triangulation, class: Class) -> bool {
    if !t.is_disk() {
        return false;
    }
    let oct = is_equivalent(t, &fixtures::disk_oct());
    match class {
        Class::F4 => oct,
        Class::F0 => oct || is_equivalent(t, &fixtures::flag5()),
    }
}

fn housing(t: &Triangulation, e: Edge) -> Option<Housing> {
    let (p, q) = e.endpoints();
    let quasi = find_quasi_octahedra(t).into_iter().any(|qo| {
        let vs = qo.vertices();
        vs.contains(&p) && vs.contains(&q) && quasi_status(t, &qo) == QuasiStatus::NonRemovable
    });
    if quasi {
        return Some(Housing::QuasiOctahedron);
    }
    find_m_components(t)
        .into_iter()
        .any(|m| m.center_edge() == e)
        .then_some(Housing::MComponent)
}

/// Independent re-check of a terminal: the first applicable reduction if
/// any, otherwise every contractible edge with its housing.
pub fn certify(t: &Triangulation, class: Class) -> MinimalityCertificate {
    if let Some((_, m)) = next_reduction(t, class) {
        return MinimalityCertificate {
            verdict: Verdict::NotMinimal(m),
            residual_contractibles: Vec::new(),
        };
    }
    let edges = contractible_edges(t);
    if edges.is_empty() {
        return MinimalityCertificate {
            verdict: Verdict::Irreducible,
            residual_contractibles: Vec::new(),
        };
    }
    if is_disk_base(t, class) {
        return MinimalityCertificate {
            verdict: Verdict::DiskBase,
            residual_contractibles: edges.into_iter().map(|e| (e, Some(Housing::DiskBase))).collect(),
        };
    }
    let residual: Vec<(Edge, Option<Housing>)> = edges
        .into_iter()
        .map(|e| (e, if class == Class::F4 { housing(t, e) } else { None }))
        .collect();
    let verdict = if residual.iter().all(|(_, h)| h.is_some()) {
        Verdict::FourMinimal
    } else {
        Verdict::Stuck
    };
    MinimalityCertificate {
        verdict,
        residual_contractibles: residual,
    }
}
