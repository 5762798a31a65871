use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn isodrum(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isodrum"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("DRUM_THREADS")
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

fn assert_valid(schema: &str, file: &Path) {
    let schema_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(schema);
    let schema = read_json(&schema_path);
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let doc = read_json(file);
    let msgs: Vec<String> = match compiled.validate(&doc) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    assert!(msgs.is_empty(), "{} fails {}: {msgs:?}", file.display(), schema_path.display());
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn guard_violations_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let sq = fixture("unit_square.json");
    let sq = sq.to_str().unwrap();
    let cases: [&[&str]; 8] = [
        &["enumerate", "--n", "10"],
        &["enumerate", "--n", "0"],
        &["enumerate", "--tile", "1,1,5"],
        &["isospectral-search", "--tol", "0"],
        &["conformal-demo", "--terms", "0"],
        &["conformal-demo", "--terms", "11"],
        &["spectrum", sq, "--refine", "99"],
        &["enumerate", "--threads", "0"],
    ];
    for args in cases {
        let o = isodrum(args, dir.path());
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    // clap rejects unknown flags with the same code
    assert_eq!(code(&isodrum(&["enumerate", "--bogus"], dir.path())), 2);
}

#[test]
fn io_failures_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&isodrum(&["spectrum", missing.to_str().unwrap()], dir.path())), 3);
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{ not json").unwrap();
    assert_eq!(code(&isodrum(&["spectrum", bad.to_str().unwrap()], dir.path())), 3);
    // output directory under a regular file
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    assert_eq!(code(&isodrum(&["enumerate", "--n", "3"], &blocker.join("sub"))), 3);
}

#[test]
fn single_copy_enumeration() {
    let dir = tempfile::tempdir().unwrap();
    let o = isodrum(&["enumerate", "--n", "1", "--format", "csv,json"], dir.path());
    assert_eq!(code(&o), 0);
    let csv = fs::read_to_string(dir.path().join("enumeration.csv")).unwrap();
    assert_eq!(csv.lines().count(), 2);
    assert!(!dir.path().join("volume_001.svg").exists(), "svg not requested");
    assert!(!dir.path().join("enumeration.txt").exists());
    assert_valid("enumeration.schema.json", &dir.path().join("enumeration.json"));
}

#[test]
fn enumeration_outputs_agree() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&isodrum(&["enumerate", "--n", "5"], dir.path())), 0);
    let json = read_json(&dir.path().join("enumeration.json"));
    assert_valid("enumeration.schema.json", &dir.path().join("enumeration.json"));
    let vols = json["volumes"].as_array().unwrap();
    // free 5-iamonds
    assert_eq!(vols.len(), 4);
    let mut rdr = csv::Reader::from_path(dir.path().join("enumeration.csv")).unwrap();
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), vols.len());
    for (r, v) in rows.iter().zip(vols) {
        assert_eq!(r[5].parse::<u64>().unwrap(), v["group_order"].as_u64().unwrap());
        assert_eq!(&r[8], v["generators"]["a"].as_str().unwrap());
        let svg = fs::read_to_string(dir.path().join(format!("volume_{:03}.svg", v["index"].as_u64().unwrap()))).unwrap();
        assert!(svg.starts_with("<svg") && svg.matches("<polygon").count() >= 5);
    }
}

#[test]
fn deterministic_runs_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let sq = fixture("unit_square.json");
    let runs: [&[&str]; 3] = [
        &["enumerate", "--n", "6", "--deterministic"],
        &["isospectral-search", "--n", "6", "--tile", "1,1.1,1.3", "--deterministic"],
        &["spectrum", sq.to_str().unwrap(), "--refine", "3", "--deterministic"],
    ];
    for args in runs {
        assert_eq!(code(&isodrum(args, a.path())), 0);
        let mut with_threads = args.to_vec();
        with_threads.extend(["--threads", "1"]);
        assert_eq!(code(&isodrum(&with_threads, b.path())), 0);
    }
    let mut names: Vec<_> = fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert!(names.len() > 10);
    for n in names {
        let x = fs::read(a.path().join(&n)).unwrap();
        let y = fs::read(b.path().join(&n)).unwrap();
        assert!(x == y, "{n:?} differs");
    }
    let json = fs::read_to_string(a.path().join("enumeration.json")).unwrap();
    assert!(!json.contains("elapsed_seconds"));
}

#[test]
fn unit_square_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    let sq = fixture("unit_square.json");
    assert_eq!(code(&isodrum(&["spectrum", sq.to_str().unwrap(), "--refine", "4", "--k", "4"], dir.path())), 0);
    let spec = dir.path().join("spectrum.json");
    assert_valid("spectrum.schema.json", &spec);
    assert_valid("mesh.schema.json", &dir.path().join("mesh.json"));
    let v = read_json(&spec);
    let values: Vec<f64> = v["values"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    // Dirichlet square: pi^2 (p^2 + q^2)
    let pi2 = std::f64::consts::PI.powi(2);
    let exact = [2.0 * pi2, 5.0 * pi2, 5.0 * pi2, 8.0 * pi2];
    // P1 overshoots, by more for higher modes
    for ((h, e), tol) in values.iter().zip(exact).zip([0.01, 0.03, 0.03, 0.05]) {
        assert!(*h > e && (h - e) / e < tol, "{h} vs {e}");
    }
    let csv = fs::read_to_string(dir.path().join("eigenvalues.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "index,lambda,residual,refinement");
    assert_eq!(csv.lines().count(), 5);
    for m in 1..=4 {
        assert!(dir.path().join(format!("mode_{m:02}.svg")).exists());
    }
}

#[test]
fn search_reports_scalene_pairs() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&isodrum(&["isospectral-search", "--tile", "1,1.1,1.3"], dir.path())), 0);
    let path = dir.path().join("search.json");
    assert_valid("search.schema.json", &path);
    let v = read_json(&path);
    let sunada: Vec<&Value> = v["pairs"].as_array().unwrap().iter().filter(|p| p["sunada"]["is_sunada_triple"] == true).collect();
    assert_eq!(v["sunada_pairs"].as_u64().unwrap() as usize, sunada.len());
    assert!(!sunada.is_empty());
    for p in &sunada {
        assert_eq!(p["equivalent"], false);
        assert_eq!(p["intertwiner"], true);
        assert_eq!(p["sunada"]["group_order"], 168);
    }
    assert!(dir.path().join("pair_01_first.svg").exists());
}

#[test]
fn conformal_demo_outputs() {
    let one = tempfile::tempdir().unwrap();
    let six = tempfile::tempdir().unwrap();
    assert_eq!(code(&isodrum(&["conformal-demo", "--terms", "1"], one.path())), 0);
    assert_eq!(code(&isodrum(&["conformal-demo"], six.path())), 0);
    for d in [one.path(), six.path()] {
        assert_valid("metrics.schema.json", &d.join("metrics.json"));
        for f in ["transplant.svg", "correction.svg", "corrected.svg"] {
            assert!(fs::read_to_string(d.join(f)).unwrap().starts_with("<svg"));
        }
    }
    let r1 = read_json(&one.path().join("metrics.json"))["expansion_residual"]["relL2"].as_f64().unwrap();
    let r6 = read_json(&six.path().join("metrics.json"))["expansion_residual"]["relL2"].as_f64().unwrap();
    assert!(r1 > r6, "{r1} <= {r6}");
    let csv = fs::read_to_string(six.path().join("coefficients.csv")).unwrap();
    assert_eq!(csv.lines().count(), 7);
}
