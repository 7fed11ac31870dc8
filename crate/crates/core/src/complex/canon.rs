//! Canonical codes for triangulations up to relabelling and reflection.
//!
//! Every flag (vertex, neighbour, face through both) determines a
//! breadth-first numbering of the vertices: each vertex is entered through
//! a flag, its neighbours are visited in rotation order starting from the
//! entering neighbour and moving towards the entering face, and each newly
//! seen neighbour is entered through the face it shares with its
//! predecessor in that walk. A face set is determined by the numbering, so
//! the code is the smallest sorted relabelled face list over all starting
//! flags. Flags of both orientations are tried, which closes the code under
//! reflection.

use std::fmt;

use thiserror::Error;

use super::{BuildError, Face, Triangulation, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    code: Vec<u8>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodeError {
    #[error("invalid hex: {0}")]
    Hex(String),
    #[error("truncated or malformed code")]
    Malformed,
    #[error(transparent)]
    Build(#[from] BuildError),
}

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.code
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.code)
    }

    pub fn from_hex(s: &str) -> Result<CanonicalForm, CodeError> {
        let code = hex::decode(s.trim()).map_err(|e| CodeError::Hex(e.to_string()))?;
        let form = CanonicalForm { code };
        form.decode()?;
        Ok(form)
    }

    fn read_u16(&self, i: usize) -> Option<u16> {
        let b = self.code.get(2 * i..2 * i + 2)?;
        Some(u16::from_be_bytes([b[0], b[1]]))
    }

    fn decode(&self) -> Result<(usize, Vec<Face>), CodeError> {
        if self.code.len() % 2 != 0 {
            return Err(CodeError::Malformed);
        }
        let n = self.read_u16(0).ok_or(CodeError::Malformed)? as usize;
        let f = self.read_u16(1).ok_or(CodeError::Malformed)? as usize;
        if self.code.len() != 4 + 6 * f {
            return Err(CodeError::Malformed);
        }
        let mut faces = Vec::with_capacity(f);
        for k in 0..f {
            let mut face = [0; 3];
            for (j, slot) in face.iter_mut().enumerate() {
                let v = self.read_u16(2 + 3 * k + j).ok_or(CodeError::Malformed)?;
                if v as usize >= n {
                    return Err(CodeError::Malformed);
                }
                *slot = v as VertexId;
            }
            faces.push(face);
        }
        Ok((n, faces))
    }

    pub fn num_vertices(&self) -> usize {
        self.read_u16(0).unwrap_or(0) as usize
    }

    /// The canonically labelled face list (vertices `0..n`).
    pub fn faces(&self) -> Vec<Face> {
        self.decode().map(|(_, f)| f).unwrap_or_default()
    }

    /// The canonical representative.
    pub fn to_triangulation(&self) -> Result<Triangulation, CodeError> {
        let (_, faces) = self.decode()?;
        Ok(Triangulation::build(faces)?)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Dense copy of the rotation system used during labelling.
struct Dense {
    rot: Vec<(bool, Vec<usize>)>,
    boundary: Vec<bool>,
    faces: Vec<[usize; 3]>,
}

impl Dense {
    fn new(t: &Triangulation) -> Dense {
        let verts = t.vertices();
        let idx = |v: VertexId| verts.binary_search(&v).expect("vertex present");
        let rot = verts
            .iter()
            .map(|&v| {
                let r = t.rotation(v).expect("vertex present");
                (r.is_cyclic(), r.vertices().iter().map(|&w| idx(w)).collect())
            })
            .collect();
        let boundary = verts.iter().map(|&v| t.is_boundary_vertex(v)).collect();
        let faces = t
            .faces()
            .iter()
            .map(|f| [idx(f[0]), idx(f[1]), idx(f[2])])
            .collect();
        Dense { rot, boundary, faces }
    }

    fn invariant(&self, v: usize) -> (usize, bool) {
        (self.rot[v].1.len(), self.boundary[v])
    }

    /// Neighbours of `v` starting at `first` and heading towards `toward`,
    /// each paired with the link neighbour it is entered through.
    fn walk(&self, v: usize, first: usize, toward: usize, out: &mut Vec<(usize, usize)>) {
        out.clear();
        let (cyclic, ref r) = self.rot[v];
        let n = r.len();
        let p = r.iter().position(|&w| w == first).expect("first in link");
        out.push((first, toward));
        if cyclic {
            let fwd = r[(p + 1) % n] == toward;
            let mut prev = first;
            for k in 1..n {
                let w = if fwd { r[(p + k) % n] } else { r[(p + n - k) % n] };
                out.push((w, prev));
                prev = w;
            }
        } else {
            let fwd = p + 1 < n && r[p + 1] == toward;
            let (ahead, behind): (Vec<usize>, Vec<usize>) = if fwd {
                ((p + 1..n).collect(), (0..p).rev().collect())
            } else {
                ((0..p).rev().collect(), (p + 1..n).collect())
            };
            let mut prev = first;
            for i in ahead {
                out.push((r[i], prev));
                prev = r[i];
            }
            let mut prev = first;
            for i in behind {
                out.push((r[i], prev));
                prev = r[i];
            }
        }
    }

    fn code_from(&self, start: usize, first: usize, toward: usize, scratch: &mut Scratch) -> Vec<u16> {
        let n = self.rot.len();
        let label = &mut scratch.label;
        label.clear();
        label.resize(n, u16::MAX);
        let queue = &mut scratch.queue;
        queue.clear();
        label[start] = 0;
        let mut next_label = 1u16;
        queue.push((start, first, toward));
        let mut head = 0;
        let mut walk = std::mem::take(&mut scratch.walk);
        while head < queue.len() {
            let (v, f, d) = queue[head];
            head += 1;
            self.walk(v, f, d, &mut walk);
            for &(w, via) in walk.iter() {
                if label[w] == u16::MAX {
                    label[w] = next_label;
                    next_label += 1;
                    queue.push((w, v, via));
                }
            }
        }
        scratch.walk = walk;
        let mut faces: Vec<[u16; 3]> = self
            .faces
            .iter()
            .map(|f| {
                let mut g = [label[f[0]], label[f[1]], label[f[2]]];
                g.sort_unstable();
                g
            })
            .collect();
        faces.sort_unstable();
        faces.into_iter().flatten().collect()
    }
}

#[derive(Default)]
struct Scratch {
    label: Vec<u16>,
    queue: Vec<(usize, usize, usize)>,
    walk: Vec<(usize, usize)>,
}

pub fn canonical_form(t: &Triangulation) -> CanonicalForm {
    let d = Dense::new(t);
    let n = d.rot.len();
    let min_inv = (0..n).map(|v| d.invariant(v)).min().expect("non-empty");
    let mut best: Option<Vec<u16>> = None;
    let mut scratch = Scratch::default();
    for v in (0..n).filter(|&v| d.invariant(v) == min_inv) {
        let r = &d.rot[v].1;
        let nb_min = r.iter().map(|&w| d.invariant(w)).min().expect("neighbours");
        let len = r.len();
        for (i, &w) in r.iter().enumerate() {
            if d.invariant(w) != nb_min {
                continue;
            }
            // the link neighbours of w around v are the apexes of edge vw
            let mut towards = Vec::with_capacity(2);
            if d.rot[v].0 {
                towards.push(r[(i + 1) % len]);
                towards.push(r[(i + len - 1) % len]);
            } else {
                if i + 1 < len {
                    towards.push(r[i + 1]);
                }
                if i > 0 {
                    towards.push(r[i - 1]);
                }
            }
            for &toward in &towards {
                let code = d.code_from(v, w, toward, &mut scratch);
                if best.as_ref().map_or(true, |b| code < *b) {
                    best = Some(code);
                }
            }
        }
    }
    let best = best.expect("at least one flag");
    let mut code = Vec::with_capacity(4 + 2 * best.len());
    code.extend_from_slice(&(n as u16).to_be_bytes());
    code.extend_from_slice(&(t.num_faces() as u16).to_be_bytes());
    for x in best {
        code.extend_from_slice(&x.to_be_bytes());
    }
    CanonicalForm { code }
}

pub fn is_equivalent(a: &Triangulation, b: &Triangulation) -> bool {
    a.num_vertices() == b.num_vertices()
        && a.num_faces() == b.num_faces()
        && canonical_form(a) == canonical_form(b)
}

/// Relabels a face list; used by tests and by seed permutation checks.
pub fn relabel(faces: &[Face], map: impl Fn(VertexId) -> VertexId) -> Vec<Face> {
    faces.iter().map(|f| [map(f[0]), map(f[1]), map(f[2])]).collect()
}

/// Reverses the orientation of every face.
pub fn mirror(faces: &[Face]) -> Vec<Face> {
    faces.iter().map(|f| [f[0], f[2], f[1]]).collect()
}
