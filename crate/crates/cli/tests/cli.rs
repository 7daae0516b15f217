use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn enh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_enh")).args(args).output().expect("binary runs")
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn without_timestamp(mut v: Value) -> Value {
    v["manifest"].as_object_mut().unwrap().remove("timestamp");
    v
}

#[test]
fn trees_lists_four_in_order() {
    let out = enh(&["trees", "--n", "2", "--leaves", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "[1];[3]\n[2];[2,1]\n[2];[1,2]\n[3];[1,1,1]\n");
}

#[test]
fn golden_example_passes() {
    let out = enh(&["verify", "--golden-example"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"][0]["report"].as_array().unwrap().len(), 4);
}

#[test]
fn operad_verify_small_bounds() {
    let out = enh(&["operad-verify", "--arity", "3", "--max-simplicial-degree", "2", "--levels", "1,2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["passed"], true, "{c}");
    }
}

#[test]
fn missing_file_exits_three_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("table.json");
    let out = enh(&[
        "compute",
        "--algebra",
        dir.path().join("absent.json").to_str().unwrap(),
        "--module",
        "builtin:trivial_coefficients",
        "--n",
        "1",
        "--max-degree",
        "3",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_none());
}

#[test]
fn malformed_document_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\"basis\": 3}").unwrap();
    let out = enh(&["compute", "--algebra", p.to_str().unwrap(), "--module", "builtin:trivial_coefficients", "--n", "1", "--max-degree", "2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn axiom_violation_exits_one() {
    let alg = fixture("noncommutative.json");
    let out = enh(&["compute", "--algebra", &alg, "--module", "builtin:trivial_coefficients", "--n", "1", "--max-degree", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("graded commutativity"));
    let out = enh(&["verify", "--axioms", "--algebra", &alg, "--module", "builtin:trivial_coefficients"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["checks"][0]["passed"], false);
}

#[test]
fn resource_bound_exits_four() {
    let out = Command::new(env!("CARGO_BIN_EXE_enh"))
        .args(["compute", "--algebra", "builtin:truncated_polynomial:3", "--module", "builtin:trivial_coefficients"])
        .args(["--n", "1", "--max-degree", "6"])
        .env("ENH_MAX_BASIS", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn cohomology_over_integers_is_rejected() {
    let out = enh(&[
        "compute",
        "--algebra",
        "builtin:truncated_polynomial:3",
        "--module",
        "builtin:trivial_coefficients",
        "--n",
        "1",
        "--max-degree",
        "3",
        "--mode",
        "cohomology",
        "--ring",
        "z",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn compute_matches_hochschild_line_and_manifest() {
    let alg = fixture("truncated_polynomial_3.json");
    let module = fixture("trivial_module.json");
    let out = enh(&["compute", "--algebra", &alg, "--module", &module, "--n", "1", "--max-degree", "6", "--mode", "both"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    let tables = v["tables"].as_array().unwrap();
    assert_eq!(tables.len(), 2);
    for t in tables {
        for r in t["rows"].as_array().unwrap() {
            if r["edge"] == false && r["degree"].as_i64().unwrap() >= 0 {
                assert_eq!(r["betti"], 1, "{r}");
            }
        }
    }
    // manifest sizes equal the table dimensions
    let m = &v["manifest"];
    for (t, c) in tables.iter().zip(m["complexes"].as_array().unwrap()) {
        let dims: Vec<&Value> = t["rows"].as_array().unwrap().iter().map(|r| &r["dim"]).collect();
        let sizes: Vec<&Value> = c["degrees"].as_array().unwrap().iter().map(|d| &d["dim"]).collect();
        assert_eq!(dims, sizes);
    }
    let text = std::fs::read(&alg).unwrap();
    use sha2::Digest;
    assert_eq!(m["inputs"][0]["sha256"], hex::encode(sha2::Sha256::digest(text)));
    assert!(m["timestamp"]["wall_clock_ms"].is_u64());
}

#[test]
fn integer_torsion_column_populated() {
    let alg = fixture("truncated_polynomial_3.json");
    let module = fixture("trivial_module.json");
    let out = enh(&["compute", "--algebra", &alg, "--module", &module, "--n", "2", "--max-degree", "4", "--ring", "z"]);
    assert!(out.status.success());
    let v = json(&out);
    let row = &v["tables"][0]["rows"][3];
    assert_eq!(row["degree"], 3);
    assert_eq!(row["torsion"], serde_json::json!(["2"]));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = [
        "compute",
        "--algebra",
        "builtin:truncated_polynomial:4",
        "--module",
        "builtin:unital_extension",
        "--n",
        "2",
        "--max-degree",
        "5",
        "--mode",
        "both",
        "--ring",
        "f:3",
    ];
    let a = json(&enh(&args));
    let mut with_threads = vec!["--threads", "1"];
    with_threads.extend(args);
    let b = json(&enh(&with_threads));
    let a = serde_json::to_string(&without_timestamp(a)).unwrap();
    let b = serde_json::to_string(&without_timestamp(b)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn tsv_output_writes_sidecar_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.tsv");
    let out = enh(&[
        "compute",
        "--algebra",
        "builtin:exterior_generator:1",
        "--module",
        "builtin:trivial_coefficients",
        "--n",
        "2",
        "--max-degree",
        "4",
        "--format",
        "tsv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let tsv = std::fs::read_to_string(&path).unwrap();
    assert!(tsv.starts_with("# homology n=2 ring=q\ndegree\tdim"));
    let side: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("t.tsv.manifest.json")).unwrap()).unwrap();
    assert_eq!(side["schema_version"], 1);
    assert_eq!(side["manifest"]["parameters"]["n"], 2);
}

#[test]
fn oracle_subcommand_agrees() {
    for m in ["builtin:trivial_coefficients", "builtin:unital_extension"] {
        let out = enh(&["oracle", "--algebra", "builtin:exterior_generator:1", "--module", m, "--max-degree", "4"]);
        assert_eq!(out.status.code(), Some(0));
        let v = json(&out);
        assert_eq!(v["checks"][0]["report"]["rows"].as_array().unwrap().len(), 5);
    }
}

#[test]
fn verify_with_inputs_runs_input_checks() {
    let out = enh(&[
        "verify",
        "--d-squared",
        "--oracle",
        "--algebra",
        "builtin:koszul_dg_example",
        "--module",
        "builtin:unital_extension",
        "--ring",
        "f:2",
        "--n",
        "2",
        "--max-degree",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let names: Vec<String> =
        json(&out)["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap().to_string()).collect();
    assert_eq!(names, ["d-squared", "oracle"]);
}

#[test]
fn input_checks_need_inputs() {
    let out = enh(&["verify", "--d-squared"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn stability_reports_values() {
    let out = enh(&[
        "stability",
        "--algebra",
        "builtin:trivial_algebra:1:0",
        "--module",
        "builtin:trivial_coefficients",
        "--degree",
        "2",
        "--n-max",
        "3",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["scan"]["values"].as_array().unwrap().len(), 3);
}

#[test]
fn bad_flags_exit_one() {
    assert_eq!(enh(&["trees", "--n", "two", "--leaves", "3"]).status.code(), Some(1));
    assert_eq!(enh(&["--help"]).status.code(), Some(0));
}
