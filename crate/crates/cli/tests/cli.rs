use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use pclab::algebra::{Basis, Field};
use pclab::constructions::pcr_upper_bound;
use pclab::formulas::io::{read_axioms, read_dimacs};
use pclab::formulas::{cnf_to_axioms, gen_bop_lifted};
use pclab::proofs::check_pc;

fn pclab(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pclab"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn text(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn gen_writes_expected_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(pclab(d, &["gen", "lop", "4"]).status.success());
    let cnf = fs::read_to_string(d.join("lop-4.cnf")).unwrap();
    assert!(cnf.contains("p cnf 12 34"));

    assert!(pclab(d, &["gen", "bop-lifted", "3", "2", "--basis", "fourier", "--axioms"]).status.success());
    let sys = read_axioms(&fs::read_to_string(d.join("bop-lifted-3-2.fourier.ax")).unwrap()).unwrap();
    let expected = cnf_to_axioms(&gen_bop_lifted(3, 2).unwrap(), Field::default(), Basis::Fourier).unwrap();
    assert_eq!(sys, expected);
    let map = fs::read_to_string(d.join("bop-lifted-3-2.cnf.map")).unwrap();
    let back = read_dimacs(&fs::read_to_string(d.join("bop-lifted-3-2.cnf")).unwrap(), Some(&map)).unwrap();
    assert_eq!(back.clauses, gen_bop_lifted(3, 2).unwrap().clauses);

    assert!(pclab(d, &["gen", "tseitin-cycle", "5"]).status.success());
    let sys = read_axioms(&fs::read_to_string(d.join("tseitin-cycle-5.fourier.ax")).unwrap()).unwrap();
    assert_eq!(sys.len(), 5);
}

#[test]
fn refute_piped_into_check() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let made = pclab(d, &["refute", "lop", "5", "--print"]);
    assert!(made.status.success());
    let mut child = Command::new(env!("CARGO_BIN_EXE_pclab"))
        .current_dir(d)
        .args(["check", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&made.stdout).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", text(&out));
    assert!(text(&out).contains("refutes=true"));
}

#[test]
fn tampered_proof_is_rejected_with_its_line() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(pclab(d, &["refute", "tseitin", "5"]).status.success());
    let path = d.join("tseitin-5.pc");
    let proof = fs::read_to_string(&path).unwrap();
    let tampered = proof.replacen("L5 LIN 1 L2 1 L4", "L5 LIN 1 L2 1 L9", 1);
    assert_ne!(proof, tampered);
    fs::write(&path, tampered).unwrap();
    let out = pclab(d, &["check", "tseitin-5.pc"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out).contains("first_bad_line=5"), "{}", text(&out));
}

#[test]
fn pcr_upper_size_matches_the_library() {
    let dir = tempfile::tempdir().unwrap();
    let out = pclab(dir.path(), &["refute", "pcr-upper", "6", "1", "--no-timing"]);
    assert!(out.status.success());
    let (proof, axioms) = pcr_upper_bound(6, 1, Field::default()).unwrap();
    let size = check_pc(&proof, &axioms).unwrap().size;
    assert!(text(&out).contains(&format!("size={size} ")), "{}", text(&out));
    let manifest = fs::read_to_string(dir.path().join("pcr-upper-6-1.manifest")).unwrap();
    assert!(manifest.contains(&format!("size = {size}\n")));
    assert!(!manifest.contains("seconds"));
}

#[test]
fn transforms_recheck_their_output() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(pclab(d, &["refute", "tseitin", "5"]).status.success());
    for (args, out) in [
        (vec!["transform", "split", "tseitin-5.pc", "x(1,2,1)"], "tseitin-5.split.pc"),
        (vec!["transform", "qdeg2deg", "tseitin-5.pc"], "tseitin-5.deg.pc"),
    ] {
        assert!(pclab(d, &args).status.success(), "{args:?}");
        assert_eq!(pclab(d, &["check", out]).status.code(), Some(0), "{out}");
    }
    assert!(pclab(d, &["gen", "bop-lifted", "2", "2", "--basis", "fourier", "--axioms"]).status.success());
    assert!(pclab(d, &["sample", "bop-lifted-2-2.fourier.ax", "--seed", "7"]).status.success());
    assert!(pclab(d, &["transform", "cluster", "bop-lifted-2-2-sample7.pc", "--seed", "7"]).status.success());
    let out = pclab(d, &["check", "--derivation", "bop-lifted-2-2-sample7.clustered.pc"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(fs::read_to_string(d.join("bop-lifted-2-2-sample7.clustered.pairs")).unwrap().starts_with("ell 2\n"));

    assert!(pclab(d, &["refute", "bop", "3"]).status.success());
    assert!(pclab(d, &["transform", "res2pcr", "bop-3.res"]).status.success());
    assert_eq!(pclab(d, &["check", "bop-3.pcr.pc"]).status.code(), Some(0));

    fs::write(d.join("rho.txt"), "set x(1,2,1) = true\n").unwrap();
    assert!(pclab(d, &["refute", "pcr-upper", "3", "1"]).status.success());
    assert!(pclab(d, &["transform", "restrict", "pcr-upper-3-1.pc", "rho.txt"]).status.success());
    assert_eq!(pclab(d, &["check", "pcr-upper-3-1.restricted.pc"]).status.code(), Some(0));
}

#[test]
fn split_on_an_axiom_variable_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(pclab(d, &["refute", "tseitin", "4"]).status.success());
    let out = pclab(d, &["transform", "split", "tseitin-4.pc", "x1"]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(pclab(d, &["experiment", "pcr-upper"]).status.code(), Some(2));
    assert_eq!(pclab(d, &["experiment", "lop", "n=5..3"]).status.code(), Some(2));
    assert_eq!(pclab(d, &["refute", "lop", "1000"]).status.code(), Some(3));
    assert_eq!(pclab(d, &["gen", "lop"]).status.code(), Some(2));
    assert_eq!(pclab(d, &["nonsense"]).status.code(), Some(2));
    assert_eq!(pclab(d, &["check", "missing.pc"]).status.code(), Some(2));
}

#[test]
fn flags_and_environment() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(pclab(d, &["gen", "lop", "--n", "3", "--out", "a"]).status.success());
    assert!(d.join("a/lop-3.cnf").exists());
    let out = Command::new(env!("CARGO_BIN_EXE_pclab"))
        .current_dir(d)
        .args(["gen", "bop"])
        .env("PCLAB_N", "3")
        .env("PCLAB_OUT", "b")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(d.join("b/bop-3.cnf").exists());
}

#[test]
fn verify_lemmas_finds_no_counterexamples() {
    let dir = tempfile::tempdir().unwrap();
    let out = pclab(dir.path(), &["verify-lemmas", "3", "1", "all", "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(text(&out).contains(", 0 counterexamples"));
    let csv = fs::read_to_string(dir.path().join("lemmas-3-1.csv")).unwrap();
    assert!(csv.starts_with("lemma,n,ell,cases,counterexamples\n"));
    assert_eq!(csv.lines().count(), 1 + 5 + 8);
}

#[test]
fn experiment_rows_and_slope() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = pclab(d, &["experiment", "pcr-upper", "n=4..8", "ell=1", "--no-timing", "--jobs", "2"]);
    assert!(out.status.success());
    let csv = fs::read_to_string(d.join("experiment-pcr-upper.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("family,n,ell,clauses,proof_size_monomials,degree,qdeg"));
    let ns: Vec<&str> = lines.map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(ns, ["4", "5", "6", "7", "8"]);
    let summary = fs::read_to_string(d.join("experiment-pcr-upper.summary")).unwrap();
    let slope: f64 = summary
        .split_whitespace()
        .find_map(|t| t.strip_prefix("size_slope="))
        .unwrap()
        .parse()
        .unwrap();
    assert!((2.5..=4.5).contains(&slope), "{summary}");
}
