//! Command-line front end. [`run`] never prints or exits; it returns the
//! exit code together with a [`Report`], a block of `key: value` lines in a
//! fixed order.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use sha2::{Digest, Sha256};

use crate::complex::io::{self, LoadError, ParseError};
use crate::complex::{canonical_form, BuildError, Class, Edge, Membership, Triangulation};
use crate::configs::{
    find_flags, find_m_components, find_n_components, find_octahedra, find_quasi_octahedra, find_triodes, is_cn4c,
    locate_near_cn4c, Finding, FindingKind,
};
use crate::fixtures;
use crate::generate::{enumerate_into, GenerateError};
use crate::reduce::{certify, reduce_to_4minimal, reduce_to_irreducible, ReduceError, ReductionTrace, ReplayError};
use crate::surgery::is_contractible;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_REPLAY: i32 = 4;

/// Environment variable naming a directory searched for inputs that are
/// not paths to existing files.
pub const SEED_DIR_VAR: &str = "TRISURG_SEED_DIR";

#[derive(Parser, Debug)]
#[command(name = "trisurg", about = "Reductions and expansions of triangulated punctured surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a .tri file against the triangulation invariants.
    Validate { input: String },
    /// Surface type, degree class and canonical code.
    Classify { input: String },
    /// Named configurations, contractible edges and locator results.
    Detect {
        input: String,
        /// f0 or f4; defaults to the strongest class the input lies in.
        #[arg(long)]
        class: Option<String>,
    },
    /// Reduce to a terminal triangulation and certify it.
    Reduce {
        input: String,
        #[arg(long)]
        class: String,
        /// Allow diagonal flips (f4 only).
        #[arg(long)]
        flips: bool,
        /// Where to write the terminal triangulation.
        #[arg(long)]
        out_tri: Option<PathBuf>,
        /// Where to write the reduction trace.
        #[arg(long)]
        out_trace: Option<PathBuf>,
    },
    /// Enumerate the expansion closure of the seeds into a catalog.
    Generate {
        #[arg(long = "seed", required = true)]
        seeds: Vec<String>,
        #[arg(long)]
        class: String,
        #[arg(long = "max-v")]
        max_v: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-run a trace from its initial triangulation and compare terminals.
    Replay { trace: PathBuf, input: String },
}

/// Outcome of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub fields: Vec<(String, String)>,
    pub exit_status: i32,
    /// Help or version text requested on the command line.
    pub help: Option<String>,
}

impl Report {
    fn new(command: &str) -> Report {
        Report {
            command: command.to_owned(),
            ..Report::default()
        }
    }

    fn push(&mut self, key: &str, value: impl ToString) {
        self.fields.push((key.to_owned(), value.to_string()));
    }

    /// First value recorded under `key`.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// All values recorded under `key`, in order.
    pub fn get_all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.fields.iter().filter(move |(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    fn finish(mut self, code: i32) -> (i32, Report) {
        self.exit_status = code;
        (code, self)
    }

    fn fail(mut self, code: i32, kind: &str, msg: impl ToString) -> (i32, Report) {
        self.push("error_kind", kind);
        self.push("error", msg);
        self.finish(code)
    }

    pub fn render(&self) -> String {
        if let Some(h) = &self.help {
            return h.clone();
        }
        let mut s = String::from("trisurg report v1\n");
        writeln!(s, "command: {}", self.command).expect("write to string");
        for (k, v) in &self.fields {
            writeln!(s, "{k}: {v}").expect("write to string");
        }
        writeln!(s, "exit_status: {}", self.exit_status).expect("write to string");
        s
    }
}

fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

/// Resolves an input argument: an existing file, a file in the seed
/// directory (with or without `.tri`), or a built-in fixture name.
fn resolve(arg: &str) -> Result<(String, Vec<u8>), String> {
    let direct = Path::new(arg);
    let mut candidates = vec![direct.to_path_buf()];
    if let Some(dir) = std::env::var_os(SEED_DIR_VAR) {
        let dir = PathBuf::from(dir);
        candidates.push(dir.join(arg));
        candidates.push(dir.join(format!("{arg}.tri")));
    }
    for c in candidates {
        if c.is_file() {
            let bytes = fs::read(&c).map_err(|e| format!("{}: {e}", c.display()))?;
            return Ok((c.display().to_string(), bytes));
        }
    }
    match fixtures::by_name(arg) {
        Some(t) => Ok((format!("fixture:{arg}"), io::serialize(&t).into_bytes())),
        None => Err(format!("{arg}: no such file or fixture")),
    }
}

fn build_error_kind(e: &BuildError) -> &'static str {
    match e {
        BuildError::Empty => "Empty",
        BuildError::InvalidFace(_) => "InvalidFace",
        BuildError::TwoFacesShareTwoEdges(..) => "TwoFacesShareTwoEdges",
        BuildError::NonManifoldEdge(..) => "NonManifoldEdge",
        BuildError::DisconnectedComplex => "DisconnectedComplex",
        BuildError::BadVertexLink(_) => "BadVertexLink",
    }
}

/// Reads and validates an input, recording its name and digest.
fn load(report: &mut Report, arg: &str) -> Result<Triangulation, (i32, &'static str, String)> {
    let (name, bytes) = resolve(arg).map_err(|e| (EXIT_PARSE, "Io", e))?;
    report.push("input", name);
    report.push("digest", digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|_| (EXIT_PARSE, "Syntax", "input is not UTF-8".to_owned()))?;
    io::parse(&text).map_err(|e| match e {
        LoadError::Parse(ParseError::Io(e)) => (EXIT_PARSE, "Io", e.to_string()),
        LoadError::Parse(p) => (EXIT_PARSE, "Syntax", p.to_string()),
        LoadError::Build(b) => (EXIT_VALIDATION, build_error_kind(&b), b.to_string()),
    })
}

fn parse_class(s: &str) -> Result<Class, (i32, &'static str, String)> {
    Class::parse(s).ok_or_else(|| (EXIT_PARSE, "Syntax", format!("unknown class `{s}` (expected f0 or f4)")))
}

fn membership_str(m: Membership) -> &'static str {
    match m {
        Membership::F4 => "f4",
        Membership::F0 => "f0",
        Membership::Neither => "none",
    }
}

fn contractible_edges(t: &Triangulation) -> Vec<Edge> {
    t.edges()
        .filter(|&e| is_contractible(t, e).map(|w| w.is_contractible()).unwrap_or(false))
        .collect()
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn validate(mut r: Report, input: &str) -> (i32, Report) {
    let t = match load(&mut r, input) {
        Ok(t) => t,
        Err((code, kind, msg)) => return r.fail(code, kind, msg),
    };
    r.push("valid", "true");
    r.push("vertices", t.num_vertices());
    r.push("edges", t.num_edges());
    r.push("faces", t.num_faces());
    r.push("boundary_vertices", t.boundary_vertices().len());
    r.push("boundary_edges", t.boundary_edges().len());
    r.push("min_degree", t.vertices().iter().map(|&v| t.degree(v)).min().unwrap_or(0));
    r.finish(EXIT_OK)
}

fn classify(mut r: Report, input: &str) -> (i32, Report) {
    let t = match load(&mut r, input) {
        Ok(t) => t,
        Err((code, kind, msg)) => return r.fail(code, kind, msg),
    };
    let s = t.classify();
    r.push("euler_characteristic", s.euler_characteristic);
    r.push("orientable", s.orientable);
    r.push("boundary_components", s.boundary_components);
    r.push("surface", s.key());
    r.push("class", membership_str(t.class_membership()));
    r.push("canonical_form", canonical_form(&t).to_hex());
    r.finish(EXIT_OK)
}

fn configuration_lines(t: &Triangulation, class: Class) -> Vec<String> {
    let line = |kind: FindingKind, w: Vec<u32>| format!("{kind} @ {}", join(w));
    let mut out = Vec::new();
    for o in find_octahedra(t) {
        let mut w = o.center.to_vec();
        w.extend(o.remaining);
        out.push(line(FindingKind::Octahedron, w));
    }
    match class {
        Class::F0 => {
            for f in find_flags(t) {
                let mut w = vec![f.center];
                w.extend(f.rim);
                let kind = if f.whole { FindingKind::WholeComplexIsFlag } else { FindingKind::Flag };
                out.push(line(kind, w));
            }
        }
        Class::F4 => {
            for q in find_quasi_octahedra(t) {
                let mut w = q.center.to_vec();
                w.extend(q.remaining);
                out.push(line(FindingKind::QuasiOctahedron, w));
            }
            for n in find_n_components(t) {
                out.push(line(FindingKind::NComponent, vec![n.x, n.z, n.y, n.v]));
            }
            for m in find_m_components(t) {
                out.push(line(FindingKind::MComponent, vec![m.a, m.b, m.x, m.x1, m.x2]));
            }
        }
    }
    out
}

fn detect(mut r: Report, input: &str, class: Option<&str>) -> (i32, Report) {
    let t = match load(&mut r, input) {
        Ok(t) => t,
        Err((code, kind, msg)) => return r.fail(code, kind, msg),
    };
    let class = match class.map(parse_class) {
        Some(Ok(c)) => c,
        Some(Err((code, kind, msg))) => return r.fail(code, kind, msg),
        None => match t.class_membership() {
            Membership::F4 => Class::F4,
            Membership::F0 => Class::F0,
            Membership::Neither => {
                return r.fail(EXIT_PRECONDITION, "ClassViolation", "input lies in neither f0 nor f4");
            }
        },
    };
    if !class.contains(&t) {
        return r.fail(EXIT_PRECONDITION, "ClassViolation", format!("input is not in {class}"));
    }
    r.push("class", class);
    let contractible = contractible_edges(&t);
    r.push("contractible_edges", contractible.len());
    if contractible.is_empty() {
        r.push("note", "irreducible");
    }
    let triodes = find_triodes(&t);
    r.push("triodes", if triodes.is_empty() { "none".to_owned() } else { join(triodes) });
    for l in configuration_lines(&t, class) {
        r.push("configuration", l);
    }
    for e in contractible {
        if !is_cn4c(&t, e) || t.edge_distance_to_boundary(e).map_or(true, |d| d > 1) {
            continue;
        }
        let found = match locate_near_cn4c(&t, e, class) {
            Ok(f) => Finding::to_string(&f),
            Err(err) => format!("none ({err})"),
        };
        r.push("finding", format!("{e}: {found}"));
    }
    r.finish(EXIT_OK)
}

fn write_output(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn reduce(
    mut r: Report,
    input: &str,
    class: &str,
    flips: bool,
    out_tri: Option<&Path>,
    out_trace: Option<&Path>,
) -> (i32, Report) {
    let t = match load(&mut r, input) {
        Ok(t) => t,
        Err((code, kind, msg)) => return r.fail(code, kind, msg),
    };
    let class = match parse_class(class) {
        Ok(c) => c,
        Err((code, kind, msg)) => return r.fail(code, kind, msg),
    };
    r.push("class", class);
    r.push("flips", flips);
    let result = match class {
        Class::F4 => reduce_to_4minimal(&t, flips),
        Class::F0 if flips => {
            return r.fail(EXIT_PRECONDITION, "FlipsUnsupported", "flips are only available with --class f4");
        }
        Class::F0 => reduce_to_irreducible(&t).map(|(u, tr)| {
            let c = certify(&u, Class::F0);
            (u, tr, c)
        }),
    };
    let (u, trace, cert) = match result {
        Ok(x) => x,
        Err(e) => {
            let kind = match e {
                ReduceError::ClassViolation(_) => "ClassViolation",
                ReduceError::NonPuncturedInput => "NonPuncturedInput",
                _ => "SitePreconditionFailed",
            };
            return r.fail(EXIT_PRECONDITION, kind, e);
        }
    };
    r.push("initial", trace.initial.to_hex());
    r.push("moves", trace.moves.len());
    for m in &trace.moves {
        r.push("move", m.to_line());
    }
    r.push("terminal", trace.terminal.to_hex());
    r.push("terminal_vertices", u.num_vertices());
    r.push("verdict", &cert.verdict);
    for (e, h) in &cert.residual_contractibles {
        let h = h.map_or("unhoused".to_owned(), |h| format!("{h:?}"));
        r.push("residual", format!("{e} {h}"));
    }
    r.push("sound", cert.is_sound());
    if let Some(p) = out_tri {
        if let Err(e) = write_output(p, &io::serialize(&u)) {
            return r.fail(EXIT_PARSE, "Io", e);
        }
        r.push("terminal_path", p.display());
    }
    if let Some(p) = out_trace {
        if let Err(e) = write_output(p, &trace.to_text()) {
            return r.fail(EXIT_PARSE, "Io", e);
        }
        r.push("trace_path", p.display());
    }
    r.finish(EXIT_OK)
}

fn generate(mut r: Report, seeds: &[String], class: &str, max_v: usize, out: &Path) -> (i32, Report) {
    let class = match parse_class(class) {
        Ok(c) => c,
        Err((code, kind, msg)) => return r.fail(code, kind, msg),
    };
    let mut ts = Vec::new();
    for s in seeds {
        match load(&mut r, s) {
            Ok(t) => ts.push(t),
            Err((code, kind, msg)) => return r.fail(code, kind, msg),
        }
    }
    r.push("class", class);
    r.push("max_vertices", max_v);
    let cat = match enumerate_into(out, &ts, class, max_v) {
        Ok(c) => c,
        Err(e) => {
            let (code, kind) = match &e {
                GenerateError::NoSeeds => (EXIT_PRECONDITION, "NoSeeds"),
                GenerateError::MixedSurfaces(..) => (EXIT_PRECONDITION, "MixedSurfaces"),
                GenerateError::SeedNotInClass { .. } => (EXIT_PRECONDITION, "ClassViolation"),
                GenerateError::ProvenanceMismatch(_) => (EXIT_PRECONDITION, "ProvenanceMismatch"),
                GenerateError::Io { .. } => (EXIT_PARSE, "Io"),
                GenerateError::Format { .. } => (EXIT_PARSE, "Syntax"),
            };
            return r.fail(code, kind, e);
        }
    };
    r.push("surface", cat.surface.key());
    r.push("catalog", crate::generate::catalog_dir(out, cat.surface, class).display());
    for (n, c) in cat.counts() {
        r.push("level", format!("{n} {c}"));
    }
    r.push("members", cat.len());
    r.finish(EXIT_OK)
}

fn replay(mut r: Report, trace_path: &Path, input: &str) -> (i32, Report) {
    r.push("trace", trace_path.display());
    let text = match fs::read_to_string(trace_path) {
        Ok(s) => s,
        Err(e) => return r.fail(EXIT_PARSE, "Io", format!("{}: {e}", trace_path.display())),
    };
    r.push("trace_digest", digest(text.as_bytes()));
    let trace = match ReductionTrace::parse(&text) {
        Ok(t) => t,
        Err(e) => return r.fail(EXIT_PARSE, "Syntax", e),
    };
    let t = match load(&mut r, input) {
        Ok(t) => t,
        Err((code, kind, msg)) => return r.fail(code, kind, msg),
    };
    r.push("moves", trace.moves.len());
    match trace.replay(&t) {
        Ok(u) => {
            r.push("terminal", canonical_form(&u).to_hex());
            r.push("match", "bit-exact");
            r.finish(EXIT_OK)
        }
        Err(e) => {
            let kind = match e {
                ReplayError::InitialMismatch => "InitialMismatch",
                ReplayError::MoveFailed { .. } => "MoveFailed",
                ReplayError::ClassLeft { .. } => "ClassLeft",
                ReplayError::SurfaceChanged { .. } => "SurfaceChanged",
                ReplayError::TerminalMismatch { .. } => "TerminalMismatch",
            };
            r.fail(EXIT_REPLAY, kind, e)
        }
    }
}

/// Runs one command line (`argv[0]` is the program name).
pub fn run<I, T>(argv: I) -> (i32, Report)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let mut r = Report::new("none");
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                r.help = Some(e.to_string());
                return r.finish(EXIT_OK);
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or_default().trim_start_matches("error: ");
            return r.fail(EXIT_PARSE, "Usage", first);
        }
    };
    match &cli.command {
        Command::Validate { input } => validate(Report::new("validate"), input),
        Command::Classify { input } => classify(Report::new("classify"), input),
        Command::Detect { input, class } => detect(Report::new("detect"), input, class.as_deref()),
        Command::Reduce {
            input,
            class,
            flips,
            out_tri,
            out_trace,
        } => reduce(
            Report::new("reduce"),
            input,
            class,
            *flips,
            out_tri.as_deref(),
            out_trace.as_deref(),
        ),
        Command::Generate {
            seeds,
            class,
            max_v,
            out,
        } => generate(Report::new("generate"), seeds, class, *max_v, out),
        Command::Replay { trace, input } => replay(Report::new("replay"), trace, input),
    }
}
