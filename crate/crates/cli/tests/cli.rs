use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use popmap_cli::file::OperatorFile;
use tempfile::TempDir;

fn popmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_popmap")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn field(o: &Output, key: &str) -> String {
    let text = stdout(o);
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")).map(str::to_string))
        .unwrap_or_else(|| panic!("no `{key}` in:\n{text}"))
}

fn gen(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let o = popmap(&full);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_horodecki_entry() {
    let dir = TempDir::new().unwrap();
    let f = OperatorFile::load(&gen(&dir, "hb.json", &["horodecki-b", "b=0.1"])).unwrap();
    assert_eq!(f.operator.dim(), 8);
    let expected = 0.99f64.sqrt() / 3.4;
    assert!((f.operator.get(7, 4).re - expected).abs() < 1e-15);
    assert!((f.operator.get(7, 4).re - 0.29264).abs() < 1e-5);
}

#[test]
fn gen_ghz_and_isotropic_are_bell() {
    let dir = TempDir::new().unwrap();
    let ghz = OperatorFile::load(&gen(&dir, "ghz.json", &["ghz", "n=2"])).unwrap();
    let iso = OperatorFile::load(&gen(&dir, "iso.json", &["isotropic", "s=0", "bell=phi+"])).unwrap();
    for f in [&ghz, &iso] {
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            assert!((f.operator.get(i, j).re - 0.5).abs() < 1e-15);
        }
        assert!((f.operator.trace() - 1.0).abs() < 1e-15);
    }
    assert!(ghz.operator.max_abs_diff(&iso.operator) < 1e-15);
}

#[test]
fn gen_to_stdout_parses() {
    let o = popmap(&["gen", "random-msep", "n=3", "terms=2", "seed=7"]);
    assert_eq!(code(&o), 0);
    let f = OperatorFile::parse(&stdout(&o)).unwrap();
    assert_eq!(f.operator.n_qubits(), 3);
    // same seed, same bytes
    assert_eq!(stdout(&o), stdout(&popmap(&["gen", "random-msep", "n=3", "terms=2", "seed=7"])));
}

#[test]
fn gen_errors() {
    for args in [
        &["gen", "werner", "p=0.5"][..],
        &["gen", "horodecki-b"],
        &["gen", "horodecki-b", "b=2"],
        &["gen", "horodecki-b", "b=abc"],
        &["gen", "ghz", "n=2", "m=1"],
        &["gen", "isotropic", "s=-1"],
        &["gen", "isotropic", "s=1", "bell=chi"],
        &["gen", "pure-p", "p"],
    ] {
        let o = popmap(args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn apply_examples() {
    let dir = TempDir::new().unwrap();
    let bell = gen(&dir, "bell.json", &["ghz", "n=2"]);
    let o = popmap(&["apply", s(&bell), "2:P"]);
    assert_eq!(code(&o), 0);
    let min: f64 = field(&o, "min_eigenvalue").parse().unwrap();
    assert!((min + 0.25).abs() < 1e-12);
    let trace: f64 = field(&o, "trace").parse().unwrap();
    assert!((trace - 1.0).abs() < 1e-12);

    let pure = gen(&dir, "pure.json", &["pure-p", "p=0.5"]);
    let min: f64 = field(&popmap(&["apply", s(&pure), "all:P"]), "min_eigenvalue").parse().unwrap();
    assert!((min + 0.25).abs() < 1e-12);

    let hb = gen(&dir, "hb.json", &["horodecki-b", "b=0.3"]);
    let out = dir.path().join("same.json");
    assert_eq!(code(&popmap(&["apply", s(&hb), "1:Identity", "--out", s(&out)])), 0);
    let (a, b) = (OperatorFile::load(&hb).unwrap(), OperatorFile::load(&out).unwrap());
    assert_eq!(a.operator, b.operator);
    assert_eq!(b.meta["map"], "1:Identity");
}

#[test]
fn apply_errors() {
    let dir = TempDir::new().unwrap();
    let bell = gen(&dir, "bell.json", &["ghz", "n=2"]);
    for spec in ["3:P", "0:P", "1:Q", "1P", "1:P,1:T", ""] {
        assert_eq!(code(&popmap(&["apply", s(&bell), spec])), 2, "{spec}");
    }
    assert_eq!(code(&popmap(&["apply", "/nonexistent/x.json", "1:P"])), 2);
}

#[test]
fn detect_examples_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let hb = gen(&dir, "hb01.json", &["horodecki-b", "b=0.1"]);
    let o = popmap(&["detect", s(&hb), "hamming"]);
    assert_eq!(code(&o), 0);
    assert_eq!(field(&o, "verdict"), "inseparable");
    assert_eq!(field(&o, "criterion"), "hamming-offdiagonal");
    assert_eq!(field(&o, "witness"), "element (7, 4)");
    assert_eq!(field(&o, "bound"), "0.25");

    let mixed = dir.path().join("maxmixed.json");
    let id = popmap_cli::file::OperatorFile::new(popmap::DensityOperator::maximally_mixed(3).unwrap().into_operator());
    id.save(&mixed).unwrap();
    let o = popmap(&["detect", s(&mixed), "lz"]);
    assert_eq!(code(&o), 1);
    assert_eq!(field(&o, "verdict"), "inconclusive");
    assert_eq!(field(&o, "witness"), "none");

    let hb5 = gen(&dir, "hb05.json", &["horodecki-b", "b=0.5"]);
    let o = popmap(&["detect", s(&hb5), "map", "--spec", "1:T"]);
    assert_eq!(code(&o), 1);
    assert_eq!(field(&o, "spec"), "1:T");

    let bell = gen(&dir, "bell.json", &["isotropic", "s=0.5", "bell=psi-"]);
    let o = popmap(&["detect", s(&bell), "map", "--spec", "2:P"]);
    assert_eq!(code(&o), 0);
    assert_eq!(field(&o, "witness"), "eigenvector");
    // (s-1)/(4s+4) at s = 1/2
    let min: f64 = field(&o, "min_eigenvalue").parse().unwrap();
    assert!((min + 1.0 / 12.0).abs() < 1e-12);
    // a loose threshold swallows the negativity
    assert_eq!(code(&popmap(&["--tol", "0.1", "detect", s(&bell), "map", "--spec", "2:P"])), 1);
}

#[test]
fn detect_usage_errors() {
    let dir = TempDir::new().unwrap();
    let bell = gen(&dir, "bell.json", &["ghz", "n=2"]);
    for args in [
        &["detect", s(&bell), "map"][..],
        &["detect", s(&bell), "lz", "--spec", "1:P"],
        &["detect", s(&bell), "ppt"],
        &["detect", s(&bell), "map", "--spec", "5:P"],
        &["--tol", "-1", "detect", s(&bell), "map", "--spec", "1:T"],
        &["detect", "/nonexistent.json", "lz"],
    ] {
        assert_eq!(code(&popmap(args)), 2, "{args:?}");
    }
    // a Hermitian file that is not a state is rejected by detect
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n_qubits": 1, "entries": [[[2,0],[0,0]],[[0,0],[-1,0]]]}"#).unwrap();
    assert_eq!(code(&popmap(&["detect", s(&bad), "lz"])), 2);
    assert_eq!(code(&popmap(&["eigs", s(&bad)])), 0);
    let skew = dir.path().join("skew.json");
    std::fs::write(&skew, r#"{"n_qubits": 1, "entries": [[[0.5,0],[0.1,0]],[[0.2,0],[0.5,0]]]}"#).unwrap();
    assert_eq!(code(&popmap(&["eigs", s(&skew)])), 2);
    assert_eq!(code(&popmap(&["frobnicate"])), 2);
}

#[test]
fn eigs_ascending() {
    let dir = TempDir::new().unwrap();
    let iso = gen(&dir, "iso.json", &["isotropic", "s=1"]);
    let o = popmap(&["eigs", s(&iso)]);
    assert_eq!(code(&o), 0);
    let v: Vec<f64> = stdout(&o).lines().map(|l| l.parse().unwrap()).collect();
    let expected = [0.125, 0.125, 0.125, 0.625];
    for (a, b) in v.iter().zip(expected) {
        assert!((a - b).abs() < 1e-12, "{v:?}");
    }
}

#[test]
fn round_trip_byte_identical() {
    let dir = TempDir::new().unwrap();
    for (name, args) in [
        ("a.json", &["horodecki-b", "b=0.137"][..]),
        ("b.json", &["isotropic", "s=1.5", "bell=psi+"]),
        ("c.json", &["random-msep", "n=4", "terms=5", "seed=99"]),
        ("d.json", &["pure-p", "p=0.3"]),
    ] {
        let path = gen(&dir, name, args);
        let first = std::fs::read_to_string(&path).unwrap();
        let again = dir.path().join(format!("again-{name}"));
        OperatorFile::load(&path).unwrap().save(&again).unwrap();
        assert_eq!(first, std::fs::read_to_string(&again).unwrap(), "{name}");
    }
}

#[test]
fn reproduce_perturbation_fails_rows() {
    let o = popmap(&["reproduce", "--perturb", "1e-3"]);
    assert_ne!(code(&o), 0);
    let fails = stdout(&o).lines().filter(|l| l.starts_with("FAIL")).count();
    assert!(fails > 10, "{fails}");
}

#[test]
fn reproduce_full_run_all_pass() {
    let o = popmap(&["reproduce"]);
    let failing: Vec<String> = stdout(&o).lines().filter(|l| l.starts_with("FAIL")).map(str::to_string).collect();
    assert!(failing.is_empty(), "failing rows:\n{}", failing.join("\n"));
    assert_eq!(code(&o), 0);
}
