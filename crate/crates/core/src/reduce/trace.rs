//! Text form of a reduction trace and its replay.
//!
//! ```text
//! trace v1
//! class f4
//! flips false
//! initial <hex>
//! R1 3 7 | -1,3,7 +1,3,5
//! terminal <hex>
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::complex::{canonical_form, CanonicalForm, Class, Triangulation};
use crate::surgery::{Move, SurgeryError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub class: Class,
    pub flips_allowed: bool,
    pub initial: CanonicalForm,
    pub moves: Vec<Move>,
    pub terminal: CanonicalForm,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("trace line {line}: {msg}")]
pub struct TraceParseError {
    pub line: usize,
    pub msg: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReplayError {
    #[error("input does not match the trace's initial triangulation")]
    InitialMismatch,
    #[error("move {index} failed: {source}")]
    MoveFailed { index: usize, source: SurgeryError },
    #[error("move {index} leaves class {class}")]
    ClassLeft { index: usize, class: Class },
    #[error("move {index} changes the surface")]
    SurfaceChanged { index: usize },
    #[error("terminal mismatch: expected {expected}, replay gave {got}")]
    TerminalMismatch { expected: String, got: String },
}

impl ReductionTrace {
    pub fn to_text(&self) -> String {
        let mut s = String::from("trace v1\n");
        let _ = writeln!(s, "class {}", self.class);
        let _ = writeln!(s, "flips {}", self.flips_allowed);
        let _ = writeln!(s, "initial {}", self.initial.to_hex());
        for m in &self.moves {
            s.push_str(&m.to_line());
            s.push('\n');
        }
        let _ = writeln!(s, "terminal {}", self.terminal.to_hex());
        s
    }

    pub fn parse(text: &str) -> Result<ReductionTrace, TraceParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let err = |line: usize, msg: &str| TraceParseError {
            line,
            msg: msg.to_string(),
        };
        let mut field = |key: &str| -> Result<(usize, String), TraceParseError> {
            let (n, l) = lines.next().ok_or_else(|| err(0, &format!("missing `{key}`")))?;
            let rest = l
                .strip_prefix(key)
                .ok_or_else(|| err(n, &format!("expected `{key}`")))?;
            Ok((n, rest.trim().to_string()))
        };
        let (n, v) = field("trace")?;
        if v != "v1" {
            return Err(err(n, "unsupported trace version"));
        }
        let (n, c) = field("class")?;
        let class = Class::parse(&c).ok_or_else(|| err(n, "unknown class"))?;
        let (n, f) = field("flips")?;
        let flips_allowed = f.parse().map_err(|_| err(n, "flips must be true or false"))?;
        let (n, h) = field("initial")?;
        let initial = CanonicalForm::from_hex(&h).map_err(|e| err(n, &e.to_string()))?;
        let mut moves = Vec::new();
        let mut terminal = None;
        for (n, l) in lines {
            if terminal.is_some() {
                return Err(err(n, "text after terminal"));
            }
            if let Some(h) = l.strip_prefix("terminal") {
                terminal = Some(CanonicalForm::from_hex(h.trim()).map_err(|e| err(n, &e.to_string()))?);
            } else {
                moves.push(Move::parse_line(l).map_err(|e| err(n, &e.to_string()))?);
            }
        }
        Ok(ReductionTrace {
            class,
            flips_allowed,
            initial,
            moves,
            terminal: terminal.ok_or_else(|| err(0, "missing `terminal`"))?,
        })
    }

    /// Re-applies every move to `initial`, checking class and surface at
    /// each step and the terminal code at the end.
    pub fn replay(&self, initial: &Triangulation) -> Result<Triangulation, ReplayError> {
        if canonical_form(initial) != self.initial {
            return Err(ReplayError::InitialMismatch);
        }
        let surface = initial.classify();
        let mut cur = initial.clone();
        for (index, m) in self.moves.iter().enumerate() {
            cur = m.apply(&cur).map_err(|source| ReplayError::MoveFailed { index, source })?;
            if cur.classify() != surface {
                return Err(ReplayError::SurfaceChanged { index });
            }
            if !self.class.contains(&cur) {
                return Err(ReplayError::ClassLeft {
                    index,
                    class: self.class,
                });
            }
        }
        let got = canonical_form(&cur);
        if got != self.terminal {
            return Err(ReplayError::TerminalMismatch {
                expected: self.terminal.to_hex(),
                got: got.to_hex(),
            });
        }
        Ok(cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::reduce::{apply_e, reduce_to_4minimal, Site};
    use crate::complex::Edge;
    use crate::surgery::MoveKind;

    fn sample() -> (Triangulation, ReductionTrace) {
        let d = fixtures::disk_oct();
        let (t, _) = apply_e(&d, MoveKind::E2, &Site::BoundaryEdge(Edge::new(2, 6)), Class::F4).unwrap();
        let (t, _) = apply_e(&t, MoveKind::E2, &Site::Face([1, 3, 4]), Class::F4).unwrap();
        let (_, tr, _) = reduce_to_4minimal(&t, false).unwrap();
        (t, tr)
    }

    #[test]
    fn text_round_trip_and_replay() {
        let (t, tr) = sample();
        assert!(tr.moves.len() >= 2);
        let text = tr.to_text();
        assert!(text.starts_with("trace v1\nclass f4\nflips false\ninitial "));
        let back = ReductionTrace::parse(&text).unwrap();
        assert_eq!(back, tr);
        let a = back.replay(&t).unwrap();
        let b = tr.replay(&t).unwrap();
        assert_eq!(a.faces(), b.faces());
        assert_eq!(canonical_form(&a), tr.terminal);
    }

    #[test]
    fn replay_detects_tampering() {
        let (t, mut tr) = sample();
        assert_eq!(tr.replay(&fixtures::disk_oct()), Err(ReplayError::InitialMismatch));
        tr.terminal = tr.initial.clone();
        assert!(matches!(tr.replay(&t), Err(ReplayError::TerminalMismatch { .. })));
        let (_, mut tr) = sample();
        tr.moves[0].removed.push([1, 2, 99]);
        assert!(matches!(tr.replay(&t), Err(ReplayError::MoveFailed { index: 0, .. })));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let (_, tr) = sample();
        let text = tr.to_text().replace("class f4", "class f5");
        assert_eq!(ReductionTrace::parse(&text).unwrap_err().line, 2);
        let text = tr.to_text().replace("trace v1", "trace v2");
        assert_eq!(ReductionTrace::parse(&text).unwrap_err().line, 1);
        let cut: String = tr.to_text().lines().take(4).map(|l| format!("{l}\n")).collect();
        assert!(ReductionTrace::parse(&cut).is_err());
    }
}
