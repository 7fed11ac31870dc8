//! Reduction drivers for the two degree classes, minimality certificates
//! and replayable traces.
//!
//! Reductions and expansions are addressed by a [`Site`]; [`apply_r`] and
//! [`apply_e`] check the site's conditions and return the recorded
//! [`Move`](crate::surgery::Move).

mod driver;
mod moves;
mod trace;

use thiserror::Error;

use crate::complex::{Class, Edge, Face, VertexId};
use crate::surgery::{SplitSpec, SurgeryError};

pub use driver::{
    certify, next_reduction, reduce_to_4minimal, reduce_to_irreducible, reductions, Housing,
    MinimalityCertificate, Verdict,
};
pub use moves::{alphabet, apply_e, apply_r, double_split_sites, expansion_sites};
pub use trace::{ReductionTrace, ReplayError, TraceParseError};

/// Where a reduction or expansion acts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Site {
    /// R1 contraction, diagonal flip.
    Edge(Edge),
    /// Octahedron or quasi-octahedron center (R2–R5, E3).
    Center([VertexId; 3]),
    /// R6: faces `x z y`, `x z v`; contracts `xy` and `zv`.
    NComponent {
        x: VertexId,
        z: VertexId,
        y: VertexId,
        v: VertexId,
    },
    /// Flag removal by center.
    Flag(VertexId),
    Split { v: VertexId, spec: SplitSpec },
    /// E2 into a face; E4 into a boundary face whose first two vertices
    /// span the boundary edge.
    Face(Face),
    /// E2 or flag addition along a boundary edge.
    BoundaryEdge(Edge),
    /// E4 along the boundary path `a1 a3 a2`.
    BoundaryPath([VertexId; 3]),
    /// E5 at a 4-valent boundary vertex, read from the given end of its
    /// link path.
    Unfold { v: VertexId, end: VertexId },
    /// E6: split `x` with pivot `z`, then `z` with pivot `x`.
    DoubleSplit {
        x: VertexId,
        first: SplitSpec,
        z: VertexId,
        second: SplitSpec,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error("site precondition failed: {0}")]
    SitePreconditionFailed(String),
    #[error("not in class {0}")]
    ClassViolation(Class),
    #[error("input has more than one boundary component")]
    NonPuncturedInput,
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
}
