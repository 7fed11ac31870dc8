//! On-disk catalogs: one directory per surface and class, one file per
//! vertex count with lines `code<TAB>faces`, and a state file recording the
//! seeds, the bound and the first level not yet expanded.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use crate::complex::{canonical_form, CanonicalForm, Class, Face, SurfaceClass, Triangulation};

use super::{start, step, Catalog, GenerateError, Provenance};

const STATE_FILE: &str = "catalog.txt";

/// `<root>/<surface key>_<class>`.
pub fn catalog_dir(root: &Path, surface: SurfaceClass, class: Class) -> PathBuf {
    root.join(format!("{}_{}", surface.key(), class))
}

fn level_file(n: usize) -> String {
    format!("v{n:03}.tsv")
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> GenerateError + '_ {
    move |source| GenerateError::Io {
        path: path.to_owned(),
        source,
    }
}

/// Writes via a temporary file so an interrupted run never leaves a
/// truncated file behind.
fn write_atomic(path: &Path, text: &str) -> Result<(), GenerateError> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, text).map_err(io_err(&tmp))?;
    fs::rename(&tmp, path).map_err(io_err(path))
}

fn format_faces(faces: &[Face]) -> String {
    faces
        .iter()
        .map(|f| format!("{} {} {}", f[0], f[1], f[2]))
        .collect::<Vec<_>>()
        .join(";")
}

fn parse_faces(s: &str) -> Option<Vec<Face>> {
    s.split(';')
        .map(|f| {
            let v: Vec<u32> = f.split(' ').map(|x| x.parse().ok()).collect::<Option<_>>()?;
            <[u32; 3]>::try_from(v).ok()
        })
        .collect()
}

fn state_text(cat: &Catalog) -> String {
    let p = &cat.provenance;
    let mut s = format!(
        "catalog v1\nsurface {}\nclass {}\nmax_vertices {}\nnext_level {}\n",
        cat.surface.key(),
        cat.class,
        p.max_vertices,
        p.next_level
    );
    for c in &p.seeds {
        s.push_str(&format!("seed {}\n", c.to_hex()));
    }
    s
}

impl Catalog {
    /// Writes the state file and the given levels (all levels if `None`).
    fn write(&self, dir: &Path, levels: Option<&BTreeSet<usize>>) -> Result<(), GenerateError> {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
        for (&n, members) in &self.levels {
            if levels.is_some_and(|l| !l.contains(&n)) {
                continue;
            }
            let mut text = String::new();
            for (code, faces) in members {
                text.push_str(&code.to_hex());
                text.push('\t');
                text.push_str(&format_faces(faces));
                text.push('\n');
            }
            write_atomic(&dir.join(level_file(n)), &text)?;
        }
        write_atomic(&dir.join(STATE_FILE), &state_text(self))
    }

    pub fn save(&self, dir: &Path) -> Result<(), GenerateError> {
        self.write(dir, None)
    }

    /// Reads a catalog and re-checks every member: the code matches the
    /// face list, and the member lies in the surface and class on record.
    pub fn load(dir: &Path) -> Result<Catalog, GenerateError> {
        let state_path = dir.join(STATE_FILE);
        let text = fs::read_to_string(&state_path).map_err(io_err(&state_path))?;
        let bad = |line: usize, msg: &str| GenerateError::Format {
            path: state_path.clone(),
            line,
            msg: msg.to_owned(),
        };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let mut field = |name: &str| -> Result<(usize, String), GenerateError> {
            let (i, l) = lines.next().ok_or_else(|| bad(0, "unexpected end of file"))?;
            l.strip_prefix(name)
                .and_then(|r| r.strip_prefix(' '))
                .map(|r| (i, r.to_owned()))
                .ok_or_else(|| bad(i, &format!("expected `{name}`")))
        };
        let (i, v) = field("catalog")?;
        if v != "v1" {
            return Err(bad(i, "unknown catalog version"));
        }
        let (_, surface_key) = field("surface")?;
        let (i, class) = field("class")?;
        let class = Class::parse(&class).ok_or_else(|| bad(i, "unknown class"))?;
        let (i, max) = field("max_vertices")?;
        let max_vertices = max.parse().map_err(|_| bad(i, "bad number"))?;
        let (i, next) = field("next_level")?;
        let next_level = next.parse().map_err(|_| bad(i, "bad number"))?;
        let mut seeds = Vec::new();
        for (i, l) in lines {
            let hex = l.strip_prefix("seed ").ok_or_else(|| bad(i, "expected `seed`"))?;
            seeds.push(CanonicalForm::from_hex(hex).map_err(|e| bad(i, &e.to_string()))?);
        }
        let surface = seeds
            .first()
            .and_then(|c| c.to_triangulation().ok())
            .map(|t| t.classify())
            .ok_or_else(|| bad(0, "no seeds"))?;
        if surface.key() != surface_key {
            return Err(bad(2, "surface does not match the seeds"));
        }

        let mut levels = BTreeMap::new();
        let mut entries: Vec<_> = fs::read_dir(dir)
            .map_err(io_err(dir))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "tsv"))
            .collect();
        entries.sort();
        for path in entries {
            let text = fs::read_to_string(&path).map_err(io_err(&path))?;
            let mut level = BTreeMap::new();
            for (i, l) in text.lines().enumerate() {
                let bad = |msg: &str| GenerateError::Format {
                    path: path.clone(),
                    line: i + 1,
                    msg: msg.to_owned(),
                };
                let (hex, faces) = l.split_once('\t').ok_or_else(|| bad("expected code<TAB>faces"))?;
                let code = CanonicalForm::from_hex(hex).map_err(|e| bad(&e.to_string()))?;
                let faces = parse_faces(faces).ok_or_else(|| bad("malformed face list"))?;
                let t = Triangulation::build(faces.clone()).map_err(|e| bad(&e.to_string()))?;
                if canonical_form(&t) != code {
                    return Err(bad("code does not match the face list"));
                }
                if t.classify() != surface || !class.contains(&t) {
                    return Err(bad("member outside the catalog's surface or class"));
                }
                level.insert(code, faces);
            }
            if let Some((code, _)) = level.first_key_value() {
                levels.insert(code.num_vertices(), level);
            }
        }
        Ok(Catalog {
            surface,
            class,
            levels,
            provenance: Provenance {
                seeds,
                max_vertices,
                next_level,
            },
        })
    }
}

/// Like [`super::enumerate`], persisting to `<root>/<surface>_<class>/`
/// after every level. An existing catalog from the same seeds and class is
/// resumed; a changed bound restarts the expansion but keeps the members.
pub fn enumerate_into(
    root: &Path,
    seeds: &[Triangulation],
    class: Class,
    max_vertices: usize,
) -> Result<Catalog, GenerateError> {
    let fresh = start(seeds, class, max_vertices)?;
    let dir = catalog_dir(root, fresh.surface, class);
    let mut cat = if dir.join(STATE_FILE).exists() {
        let mut old = Catalog::load(&dir)?;
        if old.class != class || old.provenance.seeds != fresh.provenance.seeds {
            return Err(GenerateError::ProvenanceMismatch(dir));
        }
        if old.provenance.max_vertices != max_vertices {
            old.levels.retain(|&n, _| n <= max_vertices);
            old.provenance.max_vertices = max_vertices;
            old.provenance.next_level = fresh.provenance.next_level;
            old.write(&dir, None)?;
        }
        old
    } else {
        fresh.write(&dir, None)?;
        fresh
    };
    while !cat.is_complete() {
        let touched = step(&mut cat);
        cat.write(&dir, Some(&touched))?;
    }
    Ok(cat)
}
