//! The command-line front end, driven through `run`.

use std::fs;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trisurg::cli::{run, Report, EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_REPLAY, EXIT_VALIDATION};
use trisurg::complex::{canonical_form, io, Class};
use trisurg::fixtures;
use trisurg::generate::random_expansion;

fn cli(args: &[&str]) -> (i32, Report) {
    run(std::iter::once("trisurg").chain(args.iter().copied()))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn detect_on_m1_reports_irreducible() {
    let (code, r) = cli(&["detect", "mobius_m1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r.get("contractible_edges"), Some("0"));
    assert_eq!(r.get("note"), Some("irreducible"));
    assert_eq!(r.get_all("configuration").count(), 0);
    assert_eq!(r.get_all("finding").count(), 0);
}

#[test]
fn validate_rejects_a_non_manifold_edge() {
    let tmp = tempfile::tempdir().unwrap();
    let p = write(tmp.path(), "broken.tri", "tri 3\n1 2 3\n1 2 4\n1 2 5\n");
    let (code, r) = cli(&["validate", &p]);
    assert_eq!(code, EXIT_VALIDATION);
    assert_eq!(r.get("error_kind"), Some("NonManifoldEdge"));
    assert_eq!(r.exit_status, EXIT_VALIDATION);
    let p = write(tmp.path(), "bad.tri", "tri 2\n1 2 3\n");
    assert_eq!(cli(&["validate", &p]).0, EXIT_PARSE);
    let (code, r) = cli(&["validate", "disk_oct"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!((r.get("vertices"), r.get("faces")), (Some("6"), Some("7")));
}

#[test]
fn classify_reports_surface_and_class() {
    let (code, r) = cli(&["classify", "flag5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r.get("surface"), Some("chi1-o-b1"));
    assert_eq!(r.get("class"), Some("f0"));
    assert_eq!(r.get("canonical_form"), Some(canonical_form(&fixtures::flag5()).to_hex().as_str()));
}

#[test]
fn reduce_then_replay() {
    let tmp = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut t = fixtures::disk_oct();
    for _ in 0..3 {
        t = random_expansion(&t, Class::F4, &mut rng).unwrap().0;
    }
    let input = write(tmp.path(), "disk_oct_expanded.tri", &io::serialize(&t));
    let trace = tmp.path().join("out.trace").to_string_lossy().into_owned();
    let term = tmp.path().join("out.tri").to_string_lossy().into_owned();
    let args = ["reduce", "--class", "f4", &input, "--out-trace", &trace, "--out-tri", &term];
    let (code, r) = cli(&args);
    assert_eq!(code, EXIT_OK, "{}", r.render());
    assert_eq!(r.get("terminal"), Some(canonical_form(&fixtures::disk_oct()).to_hex().as_str()));
    assert_eq!(r.get("verdict"), Some("DiskBase"));
    assert_eq!(r.get("sound"), Some("true"));
    let written = io::read(Path::new(&term)).unwrap();
    assert_eq!(canonical_form(&written), canonical_form(&fixtures::disk_oct()));

    // identical inputs give identical reports
    assert_eq!(cli(&args).1.render(), r.render());

    let (code, rr) = cli(&["replay", &trace, &input]);
    assert_eq!(code, EXIT_OK, "{}", rr.render());
    assert_eq!(rr.get("match"), Some("bit-exact"));

    let text = fs::read_to_string(&trace).unwrap();
    let last = text.lines().last().unwrap().to_owned();
    let tampered = text.replace(&last, &format!("terminal {}", canonical_form(&t).to_hex()));
    let bad = write(tmp.path(), "bad.trace", &tampered);
    let (code, rr) = cli(&["replay", &bad, &input]);
    assert_eq!(code, EXIT_REPLAY);
    assert_eq!(rr.get("error_kind"), Some("TerminalMismatch"));
    assert_eq!(cli(&["replay", &trace, "disk_oct"]).0, EXIT_REPLAY);
    let garbage = write(tmp.path(), "garbage.trace", "trace v9\n");
    assert_eq!(cli(&["replay", &garbage, &input]).0, EXIT_PARSE);
}

#[test]
fn reduce_preconditions() {
    let (code, r) = cli(&["reduce", "--class", "f4", "flag5"]);
    assert_eq!(code, EXIT_PRECONDITION);
    assert_eq!(r.get("error_kind"), Some("ClassViolation"));
    assert_eq!(cli(&["reduce", "--class", "f0", "--flips", "flag5"]).0, EXIT_PRECONDITION);
    assert_eq!(cli(&["reduce", "--class", "f9", "flag5"]).0, EXIT_PARSE);
    let (code, r) = cli(&["reduce", "--class", "f0", "flag_ext"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r.get("terminal"), Some(canonical_form(&fixtures::disk_oct()).to_hex().as_str()));
}

#[test]
fn generate_writes_a_catalog() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().to_string_lossy().into_owned();
    let (code, r) = cli(&["generate", "--seed", "disk_oct", "--class", "f4", "--max-v", "8", "--out", &out]);
    assert_eq!(code, EXIT_OK, "{}", r.render());
    assert_eq!(r.get("members"), Some("6"));
    assert!(tmp.path().join("chi1-o-b1_f4").join("v008.tsv").exists());
    let (code, r) = cli(&[
        "generate", "--seed", "disk_oct", "--seed", "mobius_m1", "--class", "f4", "--max-v", "8", "--out", &out,
    ]);
    assert_eq!(code, EXIT_PRECONDITION);
    assert_eq!(r.get("error_kind"), Some("MixedSurfaces"));
}

#[test]
fn seed_directory_lookup_and_usage_errors() {
    let tmp = tempfile::tempdir().unwrap();
    write(tmp.path(), "m1.tri", &io::serialize(&fixtures::mobius_m1()));
    std::env::set_var(trisurg::cli::SEED_DIR_VAR, tmp.path());
    let (code, r) = cli(&["classify", "m1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r.get("surface"), Some("chi0-n-b1"));
    assert_eq!(cli(&["frobnicate"]).0, EXIT_PARSE);
    let (code, r) = cli(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(r.render().contains("reduce"));
}
