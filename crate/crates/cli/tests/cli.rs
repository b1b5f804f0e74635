use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use jordan_core::{catalog, io, FieldSpec};
use serde_json::Value;
use tempfile::TempDir;

fn jordan(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jordan"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_result(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stdout).expect("json report");
    v
}

/// Writes `catalog name params` to `file` inside `dir`.
fn catalog_file(dir: &Path, file: &str, args: &[&str]) -> PathBuf {
    let mut full = vec!["catalog"];
    full.extend_from_slice(args);
    let out = jordan(dir, &full);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let path = dir.join(file);
    std::fs::write(&path, &out.stdout).unwrap();
    path
}

fn write(dir: &Path, file: &str, text: &str) {
    std::fs::write(dir.join(file), text).unwrap();
}

const FLIP_MAP: &str = r#"{"field":{"kind":"rational"},"source_dim":3,"target_dim":3,
  "matrix":[["-1","0","0"],["0","1","0"],["0","0","1"]]}"#;

#[test]
fn analyze_dual_number_sum() {
    let dir = TempDir::new().unwrap();
    catalog_file(dir.path(), "dns.json", &["dual_number_sum"]);
    let out = jordan(dir.path(), &["--format", "json", "analyze", "dns.json"]);
    assert_eq!(code(&out), 0);
    let v = json_result(&out);
    assert_eq!(v["result"]["perfect"], true);
    assert_eq!(v["result"]["center"]["dimension"], 0);
    assert!(v["claims"].as_array().unwrap().iter().all(|c| c["status"] == "MATCH"));
}

#[test]
fn bider_on_spin_factor_is_zero() {
    let dir = TempDir::new().unwrap();
    catalog_file(dir.path(), "spin.json", &["spin_factor", "1", "0", "0", "2"]);
    let out = jordan(dir.path(), &["bider", "--symmetric", "--condition1", "spin.json"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("dimension: 0\n"), "{text}");
    assert!(text.contains("basis: []\n"));
    assert!(text.contains("[MATCH]"));
}

#[test]
fn triple_check_sign_flip() {
    let dir = TempDir::new().unwrap();
    catalog_file(dir.path(), "spin.json", &["diagonal_spin", "1", "1"]);
    write(dir.path(), "flip.json", FLIP_MAP);
    let out = jordan(
        dir.path(),
        &["--format", "json", "triple-check", "flip.json", "spin.json", "spin.json"],
    );
    assert_eq!(code(&out), 0);
    let r = &json_result(&out)["result"];
    assert_eq!(r["is_triple"]["holds"], true);
    assert_eq!(r["ann_zero"], true);
    assert_eq!(r["sign"]["class"], "Minus");
    assert_eq!(r["is_hom"]["holds"], false);
}

#[test]
fn triple_check_rejects_non_triple_map() {
    let dir = TempDir::new().unwrap();
    catalog_file(dir.path(), "spin.json", &["diagonal_spin", "1", "1"]);
    write(
        dir.path(),
        "bad.json",
        r#"{"field":{"kind":"rational"},"source_dim":3,"target_dim":3,
            "matrix":[["1","1","0"],["0","0","0"],["0","0","0"]]}"#,
    );
    let out = jordan(dir.path(), &["triple-check", "bad.json", "spin.json", "spin.json"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("status: rejected"));
}

#[test]
fn reduce_sum_product_tables() {
    let dir = TempDir::new().unwrap();
    catalog_file(dir.path(), "off.json", &["sum_product_offdiag"]);
    catalog_file(dir.path(), "lit.json", &["sum_product_literal"]);
    let out = jordan(dir.path(), &["reduce", "off.json"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("Jordan identity"));
    let out = jordan(dir.path(), &["--allow-non-jordan", "--format", "json", "reduce", "off.json"]);
    assert_eq!(code(&out), 0);
    let v = json_result(&out);
    assert_eq!(v["result"]["stages"][0]["action"], "quotient_by_center");
    assert_eq!(v["result"]["agrees"], true);
    let out = jordan(dir.path(), &["--format", "json", "reduce", "lit.json"]);
    assert_eq!(code(&out), 0);
    let v = json_result(&out);
    let center = v["claims"].as_array().unwrap().iter().find(|c| c["subject"] == "stage 1 center").unwrap();
    assert_eq!(center["status"], "MISMATCH");
    assert_eq!(v["result"]["stages"][0]["center"]["dimension"], 2);
}

#[test]
fn enumerate_idempotent_line() {
    let dir = TempDir::new().unwrap();
    catalog_file(dir.path(), "line.json", &["matrix_jordan", "1", "--prime", "5"]);
    let out = jordan(dir.path(), &["--format", "json", "triple-enumerate", "line.json", "line.json"]);
    assert_eq!(code(&out), 0);
    let maps: Vec<Value> = json_result(&out)["result"]["maps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m["matrix"][0][0].clone())
        .collect();
    assert_eq!(maps, [0, 1, 4]);
    let out = jordan(dir.path(), &["triple-enumerate", "line.json", "line.json", "--budget", "2"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    catalog_file(d, "row.json", &["row_ideal"]);
    assert_eq!(code(&jordan(d, &["verify", "row.json"])), 0);
    assert_eq!(code(&jordan(d, &["frobnicate"])), 2);
    assert_eq!(code(&jordan(d, &["analyze"])), 2);
    assert_eq!(code(&jordan(d, &["bider", "--symmetric", "--skew", "row.json"])), 2);
    assert_eq!(code(&jordan(d, &["analyze", "missing.json"])), 2);
    assert_eq!(code(&jordan(d, &["catalog", "no_such_algebra"])), 2);
    assert_eq!(code(&jordan(d, &["reduce", "--max-depth", "0", "row.json"])), 2);

    write(d, "garbage.json", "{ not json");
    let out = jordan(d, &["analyze", "garbage.json"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    let p3 = r#"{"field":{"kind":"prime","p":3},"dim":1,"basis":["e"],"table":[[[1]]]}"#;
    write(d, "p3.json", p3);
    let out = jordan(d, &["analyze", "p3.json"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("field.p"));

    let noncomm = r#"{"field":{"kind":"rational"},"dim":2,"basis":["a","b"],
      "table":[[["1","0"],["0","1"]],[["0","0"],["0","0"]]]}"#;
    write(d, "nc.json", noncomm);
    let out = jordan(d, &["analyze", "nc.json"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("(0, 1, 1)"));
    let out = jordan(d, &["verify", "nc.json"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("commutative: false"));

    // the regular module of a Jordan algebra passes, a scaled action does not
    let module = r#"{"field":{"kind":"rational"},"algebra_dim":1,"dim":1,"action":[[["1"]]]}"#;
    let bad_module = r#"{"field":{"kind":"rational"},"algebra_dim":1,"dim":1,"action":[[["2"]]]}"#;
    catalog_file(d, "line.json", &["matrix_jordan", "1"]);
    write(d, "m.json", module);
    write(d, "bad_m.json", bad_module);
    assert_eq!(code(&jordan(d, &["verify", "line.json", "--module", "m.json"])), 0);
    assert_eq!(code(&jordan(d, &["verify", "line.json", "--module", "bad_m.json"])), 1);
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    catalog_file(d, "m3.json", &["sym_matrix_jordan", "2"]);
    catalog_file(d, "lit.json", &["sum_product_literal"]);
    for args in [
        vec!["analyze", "m3.json"],
        vec!["--format", "json", "analyze", "m3.json"],
        vec!["--format", "json", "bider", "lit.json"],
        vec!["reduce", "lit.json"],
    ] {
        let a = jordan(d, &args);
        let b = jordan(d, &args);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn catalog_round_trip() {
    let dir = TempDir::new().unwrap();
    let cases: &[(&str, &[&str])] = &[
        ("matrix_jordan", &["2"]),
        ("sym_matrix_jordan", &["3"]),
        ("symplectic_jordan", &["1"]),
        ("spin_factor", &["1", "1/2", "1/2", "3"]),
        ("diagonal_spin", &["1", "-1"]),
        ("dual_number_sum", &[]),
        ("sum_product_literal", &[]),
        ("sum_product_offdiag", &[]),
        ("row_ideal", &[]),
    ];
    assert_eq!(cases.len(), catalog::NAMES.len());
    for prime in [None, Some("7")] {
        for (name, params) in cases {
            let mut args = vec![*name];
            args.extend_from_slice(params);
            if let Some(p) = prime {
                args.extend_from_slice(&["--prime", p]);
            }
            let path = catalog_file(dir.path(), "alg.json", &args);
            let field = match prime {
                Some(p) => FieldSpec::prime(p.parse().unwrap()).unwrap(),
                None => FieldSpec::rational(),
            };
            let params: Vec<String> = params.iter().map(|s| s.to_string()).collect();
            let expected = catalog::build(name, field, &params).unwrap();
            let parsed = io::load(&path, io::parse_algebra).unwrap();
            assert_eq!(parsed.algebra, expected, "{name}");
            assert_eq!(parsed.catalog.unwrap().name, *name);
            let verify = jordan(dir.path(), &["verify", "alg.json"]);
            let expect_code = if *name == "sum_product_offdiag" { 1 } else { 0 };
            assert_eq!(code(&verify), expect_code, "{name}");
        }
    }
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn golden_reports() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    catalog_file(d, "off.json", &["sum_product_offdiag"]);
    catalog_file(d, "spin.json", &["diagonal_spin", "1", "1"]);
    write(d, "flip.json", FLIP_MAP);
    let out = jordan(d, &["--format", "json", "--allow-non-jordan", "reduce", "off.json"]);
    assert_eq!(stdout(&out), golden("reduce_offdiag.json"));
    let out = jordan(d, &["--format", "json", "triple-check", "flip.json", "spin.json", "spin.json"]);
    assert_eq!(stdout(&out), golden("triple_check_flip.json"));
    let out = jordan(d, &["catalog", "row_ideal"]);
    assert_eq!(stdout(&out), golden("row_ideal.json"));
}
