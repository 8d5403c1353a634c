use std::path::{Path, PathBuf};
use std::process::Command;

use quandle_cli::run;
use quandle_core::io::{parse_cyc, parse_qnd};
use quandle_core::knots::parse_diagram;

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name).to_string_lossy().into_owned()
}

fn quandle(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("quandle").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn make_dihedral() {
    let (code, out, err) = quandle(&["make", "dihedral", "3"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out, "quandle 3\n0 2 1\n2 1 0\n1 0 2\n");
    assert!(err.is_empty());
}

#[test]
fn make_alexander_matches_bundled_qs4() {
    let (code, out, _) = quandle(&["make", "alexander", "2", "t^2+t+1"]);
    assert_eq!(code, 0);
    let bundled = parse_qnd(&std::fs::read_to_string(data("qs4.qnd")).unwrap()).unwrap();
    assert_eq!(parse_qnd(&out).unwrap(), bundled);
    let (_, coeffs, _) = quandle(&["make", "alexander", "2", "1,1,1"]);
    assert_eq!(coeffs, out);
}

#[test]
fn make_conj_rebuilds_qs6() {
    let cycles = ["(1,2,3,4)", "(1,2,4,3)", "(1,3,2,4)", "(1,3,4,2)", "(1,4,2,3)", "(1,4,3,2)"];
    let grp = data("s4.grp");
    let mut args = vec!["make", "conj", grp.as_str()];
    args.extend(cycles);
    let (code, out, err) = quandle(&args);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out, std::fs::read_to_string(data("qs6.qnd")).unwrap());
    let (code, _, err) = quandle(&["make", "conj", grp.as_str(), "(9,9)"]);
    assert_eq!(code, 1);
    assert!(err.contains("no element"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(quandle(&["make", "dihedral", "3", "--bogus"]).0, 2);
    assert_eq!(quandle(&["frobnicate"]).0, 2);
    assert_eq!(quandle(&["homology", "--degree", "x", "f.qnd"]).0, 2);
    assert_eq!(quandle(&["cocycles", "--degree", "4", "--mod", "3", "f.qnd"]).0, 2);
    let (code, out, _) = quandle(&["--help"]);
    assert_eq!(code, 0);
    for sub in ["make", "check", "homology", "cohomology", "cocycles", "check-cocycle", "knot", "verify-paper"] {
        assert!(out.contains(sub), "help lacks {sub}");
    }
}

#[test]
fn domain_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.qnd");
    std::fs::write(&bad, "quandle 2\n1 1\n0 0\n").unwrap();
    let (code, out, err) = quandle(&["check", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.starts_with("error:"), "{err}");
    assert_eq!(quandle(&["check", "/no/such/file.qnd"]).0, 1);
    // a ρ theory without a rho line
    assert_eq!(quandle(&["homology", "--theory", "quandle-rho", "--degree", "1", &data("r3.qnd")]).0, 1);
    assert_eq!(quandle(&["--max-order", "3", "make", "dihedral", "4"]).0, 1);
}

#[test]
fn check_cocycle_reports_the_failing_tuple() {
    let (code, out, err) = quandle(&["check-cocycle", &data("not-a-cocycle.cyc"), &data("r3.qnd")]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("not a cocycle") && err.contains("(0, 1, 0)"), "{err}");
    let (code, out, _) = quandle(&["check-cocycle", &data("theta3.cyc"), &data("r3.qnd")]);
    assert_eq!(code, 0);
    assert_eq!(out, "3-cocycle mod 3\ncoboundary no\n");
}

#[test]
fn homology_and_cohomology() {
    let r3 = data("r3.qnd");
    let group = |theory: &str, n: &str, file: &str| {
        let (code, out, err) = quandle(&["homology", "--theory", theory, "--degree", n, file]);
        assert_eq!(code, 0, "{err}");
        out.trim().to_string()
    };
    assert_eq!(group("quandle", "3", &r3), "Z_3");
    assert_eq!(group("quandle", "1", &data("r4.qnd")), "Z^2");
    assert_eq!(group("quandle-rho", "1", &data("rtilde3.qnd")), "Z_2");
    assert_eq!(group("rack-rho", "2", &data("rtilde3.qnd")), "Z_4");
    let (code, out, _) = quandle(&["cohomology", "--degree", "3", "--mod", "3", &r3]);
    assert_eq!((code, out.as_str()), (0, "Z_3\n"));
    let (code, _, err) = quandle(&["--max-dim", "10", "homology", "--degree", "4", &r3]);
    assert_eq!(code, 1);
    assert!(err.contains("limit"), "{err}");
}

#[test]
fn cocycles_are_written_as_files() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, err) = quandle(&["cocycles", "--degree", "3", "--mod", "3", "--out", dir.path().to_str().unwrap(), &data("r3.qnd")]);
    assert_eq!(code, 0, "{err}");
    let files: Vec<PathBuf> = out.lines().map(PathBuf::from).collect();
    assert!(!files.is_empty());
    for f in &files {
        let cyc = parse_cyc(&std::fs::read_to_string(f).unwrap()).unwrap();
        assert_eq!((cyc.arity(), cyc.order(), cyc.modulus()), (3, 3, 3));
        let (code, _, err) = quandle(&["check-cocycle", f.to_str().unwrap(), &data("r3.qnd")]);
        assert_eq!(code, 0, "{err}");
    }
    // one printed stream, same count
    let (_, printed, _) = quandle(&["cocycles", "--degree", "3", "--mod", "3", &data("r3.qnd")]);
    assert_eq!(printed.matches("cochain 3 3 3").count(), files.len());
}

#[test]
fn knot_commands() {
    let (code, out, _) = quandle(&["knot", "colorings", &data("trefoil.pdq"), &data("r3.qnd")]);
    assert_eq!((code, out.as_str()), (0, "9\n"));
    let (_, out, _) = quandle(&["knot", "colorings", "--shadow", &data("trefoil.pdq"), &data("r3.qnd")]);
    assert_eq!(out, "27\n");
    let (_, out, _) = quandle(&["knot", "colorings", "--list", &data("unknot.pdq"), &data("r3.qnd")]);
    assert_eq!(out, "3\n0\n1\n2\n");
    let (_, t, _) = quandle(&["knot", "invariant", "--shadow", "--cocycle", &data("theta3.cyc"), &data("trefoil.pdq"), &data("r3.qnd")]);
    let (_, m, _) = quandle(&["knot", "invariant", "--shadow", "--cocycle", &data("theta3.cyc"), &data("mirror-trefoil.pdq"), &data("r3.qnd")]);
    assert_ne!(t, m);
    let (_, phi, _) = quandle(&["knot", "invariant", "--cocycle", &data("qs4-phi.cyc"), &data("trefoil.pdq"), &data("qs4.qnd")]);
    assert_eq!(phi, "{0: 4, 1: 12} mod 2\n");
    // a 3-cocycle without --shadow is refused
    let (code, _, _) = quandle(&["knot", "invariant", "--cocycle", &data("theta3.cyc"), &data("trefoil.pdq"), &data("r3.qnd")]);
    assert_eq!(code, 1);
    let (code, mirror, _) = quandle(&["knot", "mirror", &data("trefoil.pdq")]);
    assert_eq!(code, 0);
    assert_eq!(mirror, std::fs::read_to_string(data("mirror-trefoil.pdq")).unwrap());
}

#[test]
fn bundled_braids_regenerate_the_corpus() {
    for (file, strands, word) in [
        ("unknot.pdq", "1", ""),
        ("trefoil.pdq", "2", "1,1,1"),
        ("figure-eight.pdq", "3", "1,-2,1,-2"),
        ("trefoil-r1.pdq", "3", "1,1,1,2"),
        ("trefoil-r2.pdq", "2", "1,1,1,1,-1"),
    ] {
        let (code, out, err) = quandle(&["make", "braid", strands, word]);
        assert_eq!(code, 0, "{err}");
        let bundled = std::fs::read_to_string(data(file)).unwrap();
        assert_eq!(out, bundled, "{file}");
        parse_diagram(&bundled).unwrap();
    }
}

#[test]
fn output_is_deterministic() {
    let qs4 = data("qs4.qnd");
    for args in [vec!["verify-paper"], vec!["cocycles", "--degree", "2", "--mod", "2", qs4.as_str()]] {
        assert_eq!(quandle(&args), quandle(&args));
    }
}

#[test]
fn verify_paper_quick() {
    let (code, out, _) = quandle(&["verify-paper"]);
    let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert!(rows.len() >= 15);
    assert!(rows.iter().all(|r| r.starts_with("PASS\t") || r.starts_with("FAIL\t")));
    assert!(!out.contains("qs4-homology-6"));
    let failing: Vec<&str> = rows.iter().filter(|r| r.starts_with("FAIL")).map(|r| r.split('\t').nth(1).unwrap()).collect();
    // published values that the computation does not reproduce
    assert_eq!(failing, ["qs4-homology-4", "qs6-homology-4"]);
    assert_eq!(code, 1);
}

#[test]
fn verify_paper_reads_a_corpus_directory() {
    let empty = tempfile::tempdir().unwrap();
    let (code, out, _) = quandle(&["verify-paper", "--corpus", empty.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("setup failure"));
    // rows that need no files still run
    assert!(out.lines().any(|l| l.starts_with("PASS\tsigned-product-1")));

    let data_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let (_, from_dir, _) = quandle(&["verify-paper", "--corpus", data_dir.to_str().unwrap()]);
    assert_eq!(from_dir, quandle(&["verify-paper"]).1);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_quandle");
    let ok = Command::new(bin).args(["make", "dihedral", "3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "quandle 3\n0 2 1\n2 1 0\n1 0 2\n");
    let usage = Command::new(bin).args(["make", "dihedral", "--nope"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    assert!(usage.stdout.is_empty());
}
