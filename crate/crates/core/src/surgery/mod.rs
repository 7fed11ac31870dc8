//! Reversible local surgeries: edge contraction, vertex splitting and
//! diagonal flips, plus the [`Move`] record shared by every reduction and
//! expansion.
//!
//! A move is stored as the faces it removes and the faces it adds, so it
//! can be replayed and inverted without re-deriving anything.

mod contract;
mod flip;
mod split;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::complex::{sorted_face, BuildError, Edge, Face, Triangulation, VertexId};

pub use contract::{
    contract, contract_by_identification, critical_3cycles_through, identify, is_contractible,
    k_contractible, Blocker, ContractionWitness,
};
pub use flip::diagonal_flip;
pub use split::{split_specs, split_vertex, SplitSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurgeryError {
    #[error("unknown edge {0}")]
    UnknownEdge(Edge),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("edge {} is not contractible: {}", .0.edge, .0.blocked_by.map(|b| b.to_string()).unwrap_or_default())]
    NotContractible(ContractionWitness),
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("splitting leaves a vertex of degree below {0}")]
    DegreeViolation(usize),
    #[error("flipping {0} would duplicate an existing edge")]
    FlipCreatesMultiEdge(Edge),
    #[error("cannot flip boundary edge {0}")]
    BoundaryEdgeFlip(Edge),
    #[error("face {0:?} is not present")]
    MissingFace(Face),
    #[error("move changes the surface")]
    SurfaceChanged,
    #[error(transparent)]
    Build(#[from] BuildError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    /// Flag removal.
    RF,
    Flip,
    E1,
    E2,
    E3,
    E4,
    E5,
    E6,
    /// Flag addition.
    EF,
}

const KIND_NAMES: [(MoveKind, &str); 15] = [
    (MoveKind::R1, "R1"),
    (MoveKind::R2, "R2"),
    (MoveKind::R3, "R3"),
    (MoveKind::R4, "R4"),
    (MoveKind::R5, "R5"),
    (MoveKind::R6, "R6"),
    (MoveKind::RF, "RF"),
    (MoveKind::Flip, "Flip"),
    (MoveKind::E1, "E1"),
    (MoveKind::E2, "E2"),
    (MoveKind::E3, "E3"),
    (MoveKind::E4, "E4"),
    (MoveKind::E5, "E5"),
    (MoveKind::E6, "E6"),
    (MoveKind::EF, "EF"),
];

impl MoveKind {
    pub fn inverse(self) -> MoveKind {
        use MoveKind::*;
        match self {
            R1 => E1,
            R2 => E2,
            R3 => E3,
            R4 => E4,
            R5 => E5,
            R6 => E6,
            RF => EF,
            Flip => Flip,
            E1 => R1,
            E2 => R2,
            E3 => R3,
            E4 => R4,
            E5 => R5,
            E6 => R6,
            EF => RF,
        }
    }

    pub fn is_reduction(self) -> bool {
        use MoveKind::*;
        matches!(self, R1 | R2 | R3 | R4 | R5 | R6 | RF)
    }

    pub fn is_expansion(self) -> bool {
        use MoveKind::*;
        matches!(self, E1 | E2 | E3 | E4 | E5 | E6 | EF)
    }

    pub fn as_str(self) -> &'static str {
        KIND_NAMES.iter().find(|(k, _)| *k == self).map(|(_, s)| *s).expect("named")
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MoveKind {
    type Err = MoveParseError;

    fn from_str(s: &str) -> Result<MoveKind, MoveParseError> {
        KIND_NAMES
            .iter()
            .find(|(_, n)| *n == s)
            .map(|(k, _)| *k)
            .ok_or_else(|| MoveParseError(format!("unknown move kind `{s}`")))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("bad move line: {0}")]
pub struct MoveParseError(pub String);

/// A recorded surgery: the faces it removes and the faces it adds.
///
/// `site` lists the vertices the move is anchored at (for example the kept
/// and removed endpoint of a contraction); it is informative only.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub kind: MoveKind,
    pub site: Vec<VertexId>,
    pub removed: Vec<Face>,
    pub added: Vec<Face>,
}

impl Move {
    pub fn new(kind: MoveKind, site: Vec<VertexId>, removed: Vec<Face>, added: Vec<Face>) -> Move {
        Move {
            kind,
            site,
            removed,
            added,
        }
    }

    /// Builds a move from a before/after pair of face sets; faces common to
    /// both are left alone.
    pub fn from_diff(kind: MoveKind, site: Vec<VertexId>, before: &Triangulation, after: &[Face]) -> Move {
        let after_set: std::collections::BTreeSet<Face> =
            after.iter().map(|&f| sorted_face(f)).collect();
        let removed = before
            .faces()
            .iter()
            .copied()
            .filter(|f| !after_set.contains(&sorted_face(*f)))
            .collect();
        let added = after
            .iter()
            .copied()
            .filter(|f| !before.has_face(f[0], f[1], f[2]))
            .collect();
        Move::new(kind, site, removed, added)
    }

    /// Removes `removed` (each must be present), appends `added` and rebuilds.
    pub fn apply(&self, t: &Triangulation) -> Result<Triangulation, SurgeryError> {
        let mut drop: Vec<Face> = self.removed.iter().map(|&f| sorted_face(f)).collect();
        drop.sort_unstable();
        for (i, f) in drop.iter().enumerate() {
            if !t.has_face(f[0], f[1], f[2]) || (i > 0 && drop[i - 1] == *f) {
                return Err(SurgeryError::MissingFace(*f));
            }
        }
        let mut faces: Vec<Face> = t
            .faces()
            .iter()
            .copied()
            .filter(|f| drop.binary_search(&sorted_face(*f)).is_err())
            .collect();
        faces.extend_from_slice(&self.added);
        Ok(Triangulation::build(faces)?)
    }

    pub fn inverse(&self) -> Move {
        Move::new(
            self.kind.inverse(),
            self.site.clone(),
            self.added.clone(),
            self.removed.clone(),
        )
    }

    /// Vertices that appear in added faces but not in removed ones.
    pub fn created_vertices(&self) -> Vec<VertexId> {
        let old: std::collections::BTreeSet<VertexId> = self.removed.iter().flatten().copied().collect();
        let mut new: Vec<VertexId> = self
            .added
            .iter()
            .flatten()
            .copied()
            .filter(|v| !old.contains(v))
            .collect();
        new.sort_unstable();
        new.dedup();
        new
    }

    /// One trace line: `<kind> <site ids...> | -a,b,c ... +d,e,f ...`.
    pub fn to_line(&self) -> String {
        let mut s = self.kind.to_string();
        for v in &self.site {
            s.push(' ');
            s.push_str(&v.to_string());
        }
        s.push_str(" |");
        for (sign, list) in [('-', &self.removed), ('+', &self.added)] {
            for f in list {
                s.push_str(&format!(" {sign}{},{},{}", f[0], f[1], f[2]));
            }
        }
        s
    }

    pub fn parse_line(line: &str) -> Result<Move, MoveParseError> {
        let bad = || MoveParseError(line.to_string());
        let (head, tail) = line.split_once('|').ok_or_else(bad)?;
        let mut head = head.split_whitespace();
        let kind: MoveKind = head.next().ok_or_else(bad)?.parse()?;
        let site = head
            .map(|t| t.parse::<VertexId>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        let mut removed = Vec::new();
        let mut added = Vec::new();
        for tok in tail.split_whitespace() {
            let (list, body) = match tok.split_at(1) {
                ("-", b) => (&mut removed, b),
                ("+", b) => (&mut added, b),
                _ => return Err(bad()),
            };
            let ids = body
                .split(',')
                .map(|t| t.parse::<VertexId>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?;
            let face: Face = ids.try_into().map_err(|_| bad())?;
            list.push(face);
        }
        Ok(Move::new(kind, site, removed, added))
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::is_equivalent;
    use crate::fixtures;

    #[test]
    fn line_round_trip() {
        let m = Move::new(MoveKind::E2, vec![3, 0], vec![[1, 2, 3]], vec![[0, 1, 2], [0, 2, 3]]);
        let line = m.to_line();
        assert_eq!(line, "E2 3 0 | -1,2,3 +0,1,2 +0,2,3");
        assert_eq!(Move::parse_line(&line).unwrap(), m);
        assert!(Move::parse_line("Q1 | +1,2,3").is_err());
        assert!(Move::parse_line("R1 1 2 | *1,2,3").is_err());
        assert!(Move::parse_line("R1 1 2 | +1,2").is_err());
    }

    #[test]
    fn kinds_invert() {
        for (k, name) in KIND_NAMES {
            assert_eq!(k.inverse().inverse(), k);
            assert_eq!(name.parse::<MoveKind>().unwrap(), k);
        }
        assert_eq!(MoveKind::R3.inverse(), MoveKind::E3);
        assert_eq!(MoveKind::Flip.inverse(), MoveKind::Flip);
    }

    #[test]
    fn apply_rejects_missing_faces() {
        let t = fixtures::disk_oct();
        let m = Move::new(MoveKind::Flip, vec![], vec![[1, 2, 5]], vec![]);
        assert_eq!(m.apply(&t), Err(SurgeryError::MissingFace([1, 2, 5])));
    }

    #[test]
    fn inverse_restores() {
        let t = fixtures::flag5();
        let (u, m) = contract(&t, Edge::new(5, 2)).unwrap();
        let back = m.inverse().apply(&u).unwrap();
        assert!(is_equivalent(&back, &t));
        assert_eq!(m.created_vertices(), Vec::<VertexId>::new());
        assert_eq!(m.inverse().created_vertices(), vec![5]);
    }
}
