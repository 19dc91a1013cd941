use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use tempfile::TempDir;

const J2: &str = "field Q\n2 2\n0 0\n1 0\n";
const I3: &str = "field Q\n3 3\n1 0 0\n0 1 0\n0 0 1\n";

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("quadfact").chain(args.iter().copied());
    let code = quadfact::run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn invariants_of_identity() {
    let dir = TempDir::new().unwrap();
    let i3 = write(&dir, "i3.txt", I3);
    let r = run(&["--format", "keyvalue", "invariants", s(&i3)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out, "n=3\nrank=3\nnullity=0\nn0=0\ndim_RcapN=0\ndim_RplusN=3\n");
    let r = run(&["invariants", s(&i3)]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("rank r(G)") && r.out.is_ascii());
}

#[test]
fn decide_jordan_block_without_idempotents_fails() {
    let dir = TempDir::new().unwrap();
    let j2 = write(&dir, "j2.txt", J2);
    let r = run(&["decide", s(&j2), "--spec", "sqz=1,1"]);
    assert_eq!(r.code, 1);
    assert!(r.out.contains("r(G)=1 > 0 = sum(n_i) + n0(G)"), "{}", r.out);
    assert!(r.out.contains("verdict: infeasible"));
    assert!(r.out.is_ascii());

    let r = run(&["--format=keyvalue", "decide", s(&j2), "--spec", "idem=1 sqz=1,1"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("feasible=true\nconstructive=full\n"), "{}", r.out);
}

#[test]
fn factor_then_verify() {
    let dir = TempDir::new().unwrap();
    let j2 = write(&dir, "j2.txt", J2);
    let w = dir.path().join("w.txt");
    let r = run(&["factor", s(&j2), "--spec", "idem=1", "sqz=1,1", "--output", s(&w)]);
    assert_eq!(r.code, 0, "{}{}", r.out, r.err);
    assert!(r.out.contains("verdict: verified"));
    let text = fs::read_to_string(&w).unwrap();
    assert_eq!(text.matches("factor ").count(), 3);
    assert!(text.starts_with("factor 1 role=idempotent nullity=1 scalar=1\n"));

    let r = run(&["verify", s(&j2), "--witness", s(&w)]);
    assert_eq!(r.code, 0, "{}", r.out);

    // a witness for J2 is not a witness for the identity
    let i2 = write(&dir, "i2.txt", "field Q\n2 2\n1 0\n0 1\n");
    let r = run(&["--format", "keyvalue", "verify", s(&i2), "--witness", s(&w)]);
    assert_eq!(r.code, 1);
    assert!(r.out.contains("product_ok=false"));
}

#[test]
fn factor_round_trips_over_prime_fields_and_scalars() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "field GF 5\n4 4\n0 0 0 0\n1 0 0 0\n0 0 0 0\n0 0 0 3\n");
    let w = dir.path().join("w.txt");
    let r = run(&["factor", s(&g), "--spec", "idem=1,1 scalars=2,4 sqz=2,2", "-o", s(&w)]);
    assert_eq!(r.code, 0, "{}{}", r.out, r.err);
    assert!(fs::read_to_string(&w).unwrap().contains("role=scaled-idempotent nullity=1 scalar=2"));
    assert_eq!(run(&["verify", s(&g), "--witness", s(&w)]).code, 0);

    // cG idempotent path with no square-zero factors
    let h = write(&dir, "h.txt", "field Q\n2 2\n3 0\n0 0\n");
    let r = run(&["factor", s(&h), "--spec", "idem=1 scalars=3", "-o", s(&w)]);
    assert_eq!(r.code, 0, "{}{}", r.out, r.err);
    assert_eq!(run(&["verify", s(&h), "--witness", s(&w)]).code, 0);
}

#[test]
fn corrupted_witness_fails_verification() {
    let dir = TempDir::new().unwrap();
    let j2 = write(&dir, "j2.txt", J2);
    let w = dir.path().join("w.txt");
    assert_eq!(run(&["factor", s(&j2), "--spec", "idem=1 sqz=1,1", "-o", s(&w)]).code, 0);
    let text = fs::read_to_string(&w).unwrap().replace("nullity=1 scalar=1\nfield Q\n2 2\n0 0\n1 1", "nullity=1 scalar=1\nfield Q\n2 2\n0 0\n1 2");
    fs::write(&w, text).unwrap();
    let r = run(&["verify", s(&j2), "--witness", s(&w)]);
    assert_eq!(r.code, 1);
    assert!(r.out.contains("NOT verified"));
}

#[test]
fn infeasible_factor_request_exits_one() {
    let dir = TempDir::new().unwrap();
    let j2 = write(&dir, "j2.txt", J2);
    let w = dir.path().join("w.txt");
    let r = run(&["factor", s(&j2), "--spec", "sqz=1,1", "-o", s(&w)]);
    assert_eq!(r.code, 1);
    assert!(!w.exists());
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "field Q\n2 2\n0 0\n1\n");
    let r = run(&["invariants", s(&bad)]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("line 4"), "{}", r.err);
    assert!(r.out.is_empty());

    assert_eq!(run(&["invariants", "/nonexistent/file"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&[]).code, 2);

    let j2 = write(&dir, "j2.txt", J2);
    assert_eq!(run(&["decide", s(&j2), "--spec", "sqz=1,1,1"]).code, 2);
    assert_eq!(run(&["decide", s(&j2), "--spec", "scalars=0 idem=1"]).code, 2);
    // writing over the input is refused
    assert_eq!(run(&["factor", s(&j2), "--spec", "idem=1 sqz=1,1", "-o", s(&j2)]).code, 2);
    // feasible but decision-only
    let r = run(&["factor", s(&j2), "--spec", "idem=1 sqz=1", "-o", s(&dir.path().join("w"))]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("decide"));

    let r = run(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("oracle"));
}

#[test]
fn oracle_subcommand() {
    let r = run(&["--format", "keyvalue", "oracle", "--field", "GF 2", "--n", "2", "--spec", "idem=1 sqz=1,1"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("domain_size=16\n") && r.out.contains("mismatches=0\n"), "{}", r.out);

    let r = run(&["oracle", "--field", "GF3", "--n", "2", "--spec", "idem=1,1 scalars=1,2"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("mismatches: 0"));

    let r = run(&["oracle", "--field", "GF 2", "--n", "5", "--spec", "sqz=2,2"]);
    assert_eq!(r.code, 2);
    let r = run(&["oracle", "--field", "Q", "--n", "2", "--spec", "sqz=1,1"]);
    assert_eq!(r.code, 2);
}

#[test]
fn binary_exit_codes() {
    let dir = TempDir::new().unwrap();
    let j2 = write(&dir, "j2.txt", J2);
    let bin = env!("CARGO_BIN_EXE_quadfact");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["decide", s(&j2), "--spec", "sqz=1,1"]), Some(1));
    assert_eq!(status(&["decide", s(&j2), "--spec", "idem=1 sqz=1,1"]), Some(0));
    assert_eq!(status(&["invariants"]), Some(2));
}
