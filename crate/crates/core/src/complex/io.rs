//! The `.tri` text format.
//!
//! ```text
//! tri 2
//! # comment
//! 1 2 3
//! 1 2 4
//! ```
//!
//! The header gives the face count; each following line is one face as
//! three decimal ids separated by single spaces. Anything after `#` is a
//! comment. Serialisation preserves face order and vertex order within faces.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use super::{BuildError, Face, Triangulation};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Build(#[from] BuildError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn parse_faces(text: &str) -> Result<Vec<Face>, ParseError> {
    let mut expected: Option<usize> = None;
    let mut faces = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match expected {
            None => {
                let mut parts = line.split(' ');
                if parts.next() != Some("tri") {
                    return Err(syntax(line_no, "expected header `tri <num_faces>`"));
                }
                let n = parts
                    .next()
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| syntax(line_no, "bad face count"))?;
                if parts.next().is_some() {
                    return Err(syntax(line_no, "trailing tokens in header"));
                }
                expected = Some(n);
            }
            Some(_) => {
                let ids: Vec<&str> = line.split(' ').collect();
                if ids.len() != 3 {
                    return Err(syntax(line_no, "a face needs exactly three ids"));
                }
                let mut face = [0; 3];
                for (slot, tok) in face.iter_mut().zip(&ids) {
                    *slot = tok
                        .parse()
                        .map_err(|_| syntax(line_no, format!("bad vertex id `{tok}`")))?;
                }
                faces.push(face);
            }
        }
    }
    let n = expected.ok_or_else(|| syntax(1, "missing header"))?;
    if n != faces.len() {
        return Err(syntax(
            text.lines().count(),
            format!("header announces {n} faces, found {}", faces.len()),
        ));
    }
    Ok(faces)
}

pub fn parse(text: &str) -> Result<Triangulation, LoadError> {
    Ok(Triangulation::build(parse_faces(text)?)?)
}

pub fn read(path: &Path) -> Result<Triangulation, LoadError> {
    let text = std::fs::read_to_string(path).map_err(ParseError::Io)?;
    parse(&text)
}

pub fn serialize_faces(faces: &[Face]) -> String {
    let mut s = String::with_capacity(12 * faces.len() + 8);
    writeln!(s, "tri {}", faces.len()).expect("write to string");
    for f in faces {
        writeln!(s, "{} {} {}", f[0], f[1], f[2]).expect("write to string");
    }
    s
}

pub fn serialize(t: &Triangulation) -> String {
    serialize_faces(t.faces())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trip_preserves_order() {
        for t in fixtures::all() {
            let text = serialize(&t);
            let back = parse(&text).unwrap();
            assert_eq!(back.faces(), t.faces());
            assert_eq!(serialize(&back), text);
        }
    }

    #[test]
    fn comments_and_blank_lines() {
        let t = parse("# disk\ntri 2\n1 2 3 # first\n\n1 2 4\n").unwrap();
        assert_eq!(t.faces(), &[[1, 2, 3], [1, 2, 4]]);
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse("tri 2\n1 2 3\n"), Err(LoadError::Parse(_))));
        assert!(matches!(parse("tri 1\n1 2\n"), Err(LoadError::Parse(_))));
        assert!(matches!(parse("tri 1\n1  2 3\n"), Err(LoadError::Parse(_))));
        assert!(matches!(parse("faces 1\n1 2 3\n"), Err(LoadError::Parse(_))));
        assert!(matches!(parse("tri 1\n1 2 x\n"), Err(LoadError::Parse(_))));
        assert!(matches!(parse("tri 1\n1 1 2\n"), Err(LoadError::Build(_))));
    }
}
