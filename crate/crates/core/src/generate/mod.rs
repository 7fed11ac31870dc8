//! Enumeration of triangulations by repeated expansion.
//!
//! Members are grouped by vertex count. Every expansion adds vertices, so
//! levels are closed in increasing order: once level `n` is reached nothing
//! can land in it anymore.

pub mod exhaustive;
mod store;

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::complex::{canonical_form, CanonicalForm, Class, Face, SurfaceClass, Triangulation};
use crate::reduce::{apply_e, double_split_sites, expansion_sites, Site};
use crate::surgery::{split_specs, split_vertex, Move, MoveKind};

pub use store::{catalog_dir, enumerate_into};

#[derive(Debug, Error)]
pub enum GenerateError {
    #[error("no seeds given")]
    NoSeeds,
    #[error("seeds triangulate different surfaces: {0} and {1}")]
    MixedSurfaces(SurfaceClass, SurfaceClass),
    #[error("seed {index} is not in {class}")]
    SeedNotInClass { index: usize, class: Class },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {msg}")]
    Format { path: PathBuf, line: usize, msg: String },
    #[error("existing catalog at {0} was built from other seeds or another class")]
    ProvenanceMismatch(PathBuf),
}

/// Seeds and bound a catalog was generated from. `next_level` is the first
/// vertex count whose members have not been expanded yet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub seeds: Vec<CanonicalForm>,
    pub max_vertices: usize,
    pub next_level: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    pub surface: SurfaceClass,
    pub class: Class,
    /// Vertex count → code → representative face list.
    pub levels: BTreeMap<usize, BTreeMap<CanonicalForm, Vec<Face>>>,
    pub provenance: Provenance,
}

impl Catalog {
    pub fn len(&self) -> usize {
        self.levels.values().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, code: &CanonicalForm) -> bool {
        self.levels
            .get(&code.num_vertices())
            .is_some_and(|l| l.contains_key(code))
    }

    /// Member count per vertex count.
    pub fn counts(&self) -> BTreeMap<usize, usize> {
        self.levels.iter().map(|(&n, l)| (n, l.len())).collect()
    }

    /// Every member, in order of vertex count then code.
    pub fn members(&self) -> impl Iterator<Item = Triangulation> + '_ {
        self.levels
            .values()
            .flat_map(|l| l.values())
            .map(|f| Triangulation::build(f.clone()).expect("catalog members are valid"))
    }

    fn insert(&mut self, code: CanonicalForm) -> bool {
        let level = self.levels.entry(code.num_vertices()).or_default();
        if level.contains_key(&code) {
            return false;
        }
        let faces = code.faces();
        level.insert(code, faces);
        true
    }

    fn is_complete(&self) -> bool {
        self.provenance.next_level > self.provenance.max_vertices
    }
}

/// Every in-class result of every expansion at every site. For F²(4) this
/// includes the double splittings.
pub fn expand_once(t: &Triangulation, class: Class) -> Vec<(Triangulation, Move)> {
    let mut sites = expansion_sites(t, class);
    if class == Class::F4 {
        sites.extend(double_split_sites(t).into_iter().map(|s| (MoveKind::E6, s)));
    }
    sites
        .into_iter()
        .filter_map(|(k, s)| apply_e(t, k, &s, class).ok())
        .collect()
}

/// A random double-splitting site, tried lazily so that large inputs do not
/// pay for the full site list.
fn random_double_split<R: Rng + ?Sized>(t: &Triangulation, rng: &mut R) -> Option<(Triangulation, Move)> {
    let mut firsts: Vec<_> = t
        .vertices()
        .iter()
        .flat_map(|&x| split_specs(t, x).into_iter().map(move |s| (x, s)))
        .collect();
    firsts.shuffle(rng);
    for (x, first) in firsts {
        let Ok((mid, _)) = split_vertex(t, x, &first, None) else { continue };
        let mut pivots = first.pivots();
        pivots.shuffle(rng);
        for z in pivots {
            let mut seconds: Vec<_> = split_specs(&mid, z)
                .into_iter()
                .filter(|s| s.pivots().contains(&x) && (first.boundary_edge || s.boundary_edge))
                .collect();
            seconds.shuffle(rng);
            for second in seconds {
                let site = Site::DoubleSplit {
                    x,
                    first: first.clone(),
                    z,
                    second,
                };
                if let Ok(r) = apply_e(t, MoveKind::E6, &site, Class::F4) {
                    return Some(r);
                }
            }
        }
    }
    None
}

/// One random in-class expansion: a kind is drawn uniformly among those
/// with an applicable site, then a site uniformly within the kind.
pub fn random_expansion<R: Rng + ?Sized>(t: &Triangulation, class: Class, rng: &mut R) -> Option<(Triangulation, Move)> {
    let mut by_kind: BTreeMap<MoveKind, Vec<Site>> = BTreeMap::new();
    for (k, s) in expansion_sites(t, class) {
        by_kind.entry(k).or_default().push(s);
    }
    let mut kinds: Vec<MoveKind> = by_kind.keys().copied().collect();
    if class == Class::F4 {
        kinds.push(MoveKind::E6);
    }
    kinds.shuffle(rng);
    for k in kinds {
        if k == MoveKind::E6 {
            if let Some(r) = random_double_split(t, rng) {
                return Some(r);
            }
            continue;
        }
        let sites = by_kind.get_mut(&k).expect("kind has sites");
        sites.shuffle(rng);
        if let Some(r) = sites.iter().find_map(|s| apply_e(t, k, s, class).ok()) {
            return Some(r);
        }
    }
    None
}

fn start(seeds: &[Triangulation], class: Class, max_vertices: usize) -> Result<Catalog, GenerateError> {
    let first = seeds.first().ok_or(GenerateError::NoSeeds)?;
    let surface = first.classify();
    for (index, s) in seeds.iter().enumerate() {
        let c = s.classify();
        if c != surface {
            return Err(GenerateError::MixedSurfaces(surface, c));
        }
        if !class.contains(s) {
            return Err(GenerateError::SeedNotInClass { index, class });
        }
    }
    let codes: BTreeSet<CanonicalForm> = seeds.iter().map(canonical_form).collect();
    let mut cat = Catalog {
        surface,
        class,
        levels: BTreeMap::new(),
        provenance: Provenance {
            seeds: codes.iter().cloned().collect(),
            max_vertices,
            next_level: codes.iter().map(CanonicalForm::num_vertices).min().unwrap_or(0),
        },
    };
    for c in codes {
        if c.num_vertices() <= max_vertices {
            cat.insert(c);
        }
    }
    Ok(cat)
}

/// Expands level `next_level` and moves on to the next non-empty level.
/// Returns the levels that received new members.
fn step(cat: &mut Catalog) -> BTreeSet<usize> {
    let n = cat.provenance.next_level;
    let max = cat.provenance.max_vertices;
    let class = cat.class;
    let members: Vec<&Vec<Face>> = cat.levels.get(&n).map(|l| l.values().collect()).unwrap_or_default();
    let found: Vec<BTreeSet<CanonicalForm>> = members
        .par_iter()
        .map(|faces| {
            let t = Triangulation::build((*faces).clone()).expect("catalog members are valid");
            expand_once(&t, class)
                .into_iter()
                .filter(|(u, _)| u.num_vertices() <= max)
                .map(|(u, _)| canonical_form(&u))
                .collect()
        })
        .collect();
    let mut touched = BTreeSet::new();
    for code in found.into_iter().flatten() {
        let v = code.num_vertices();
        if cat.insert(code) {
            touched.insert(v);
        }
    }
    cat.provenance.next_level = cat
        .levels
        .range(n + 1..)
        .find(|(_, l)| !l.is_empty())
        .map_or(max + 1, |(&k, _)| k);
    touched
}

/// The closure of `seeds` under in-class expansion, up to `max_vertices`.
pub fn enumerate(seeds: &[Triangulation], class: Class, max_vertices: usize) -> Result<Catalog, GenerateError> {
    let mut cat = start(seeds, class, max_vertices)?;
    while !cat.is_complete() {
        step(&mut cat);
    }
    Ok(cat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::canon::relabel;
    use crate::fixtures;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn disk_expansions_revalidate() {
        let d = fixtures::disk_oct();
        let out = expand_once(&d, Class::F4);
        assert!(out.iter().any(|(_, m)| m.kind == MoveKind::E1));
        assert!(out.iter().any(|(_, m)| m.kind == MoveKind::E2));
        for (u, m) in &out {
            assert!(Class::F4.contains(u));
            assert!(u.classify().is_disk());
            assert!(m.kind.is_expansion());
        }
    }

    #[test]
    fn flag_triodes_split() {
        let f = fixtures::flag5();
        let [_, _, a, b, _] = fixtures::FLAG5_ROLES;
        let out = expand_once(&f, Class::F0);
        for v in [a, b] {
            assert!(out
                .iter()
                .any(|(u, m)| m.kind == MoveKind::E1 && m.site[0] == v && u.degree(v) == 3));
        }
        assert!(out.iter().all(|(u, _)| Class::F0.contains(u)));
    }

    #[test]
    fn closed_sphere_only_splits_and_adds() {
        let out = expand_once(&fixtures::sphere_oct(), Class::F4);
        assert!(!out.is_empty());
        assert!(out.iter().all(|(_, m)| matches!(m.kind, MoveKind::E1 | MoveKind::E2)));
    }

    #[test]
    fn random_expansions_stay_in_class() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (t, class) in [
            (fixtures::mobius_m1(), Class::F4),
            (fixtures::disk_oct(), Class::F4),
            (fixtures::flag5(), Class::F0),
        ] {
            let mut cur = t.clone();
            for _ in 0..5 {
                let (u, m) = random_expansion(&cur, class, &mut rng).unwrap();
                assert!(class.contains(&u) && u.classify() == t.classify());
                assert!(m.inverse().apply(&u).is_ok());
                cur = u;
            }
        }
    }

    #[test]
    fn mobius_catalog() {
        let cat = enumerate(&[fixtures::mobius_m1()], Class::F4, 7).unwrap();
        assert!(cat.len() > 1);
        assert!(cat.counts().keys().all(|&n| (5..=7).contains(&n)));
        for t in cat.members() {
            let s = t.classify();
            assert_eq!((s.euler_characteristic, s.orientable), (0, false));
            assert!(Class::F4.contains(&t));
        }
    }

    #[test]
    fn relabelled_seeds_give_the_same_catalog() {
        let d = fixtures::disk_oct();
        let a = enumerate(&[d.clone()], Class::F4, 8).unwrap();
        let shuffled = Triangulation::build(relabel(d.faces(), |v| 40 - 3 * v)).unwrap();
        let b = enumerate(&[shuffled], Class::F4, 8).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn seed_errors() {
        assert!(matches!(enumerate(&[], Class::F4, 8), Err(GenerateError::NoSeeds)));
        assert!(matches!(
            enumerate(&[fixtures::disk_oct(), fixtures::mobius_m1()], Class::F4, 8),
            Err(GenerateError::MixedSurfaces(..))
        ));
        assert!(matches!(
            enumerate(&[fixtures::flag5()], Class::F4, 8),
            Err(GenerateError::SeedNotInClass { index: 0, .. })
        ));
    }
}
