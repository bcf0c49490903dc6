//! Command-line behavior: exit codes, machine-readable error documents,
//! --assert, --out, certificate verification, and negative controls.

use std::io::Write;
use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    path.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_gcon"))
        .args(args)
        .output()
        .expect("binary runs");
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap_or(-1))
}

fn run_json(args: &[&str]) -> (Value, i32) {
    let (stdout, code) = run(args);
    let doc = serde_json::from_str(&stdout)
        .unwrap_or_else(|e| panic!("non-JSON output ({e}): {stdout}"));
    (doc, code)
}

#[test]
fn malformed_table_yields_error_document_and_status_one() {
    let (doc, code) = run_json(&[
        "con",
        "--group",
        &fixture("bad_table.toml"),
        "--partition",
        "symbolic:trivial",
        "--gen",
        "a",
    ]);
    assert_eq!(code, 1);
    assert_eq!(doc["error_kind"], "invalid-multiplication-table");
    assert!(doc["message"].as_str().unwrap().contains("permutation"));
}

#[test]
fn budget_exceeded_exits_with_status_two() {
    let (doc, code) = run_json(&[
        "contain",
        "--group-g",
        "builtin:z4",
        "--group-h",
        "builtin:v4",
        "--max-n",
        "2",
        "--max-m",
        "4",
        "--budget",
        "10",
    ]);
    assert_eq!(code, 2);
    assert_eq!(doc["error_kind"], "budget-exceeded");
}

#[test]
fn containment_rejects_infinite_engines() {
    let (doc, code) = run_json(&[
        "contain",
        "--group-g",
        &fixture("free2.toml"),
        "--group-h",
        "builtin:z2",
        "--max-n",
        "1",
        "--max-m",
        "2",
    ]);
    assert_eq!(code, 1);
    assert_eq!(doc["error_kind"], "infinite-engine");
}

#[test]
fn con_rejects_radius_on_finite_engines() {
    let (doc, code) = run_json(&[
        "con",
        "--group",
        "builtin:z2",
        "--partition",
        "symbolic:trivial",
        "--gen",
        "1",
        "--radius",
        "4",
    ]);
    assert_eq!(code, 1);
    assert_eq!(doc["error_kind"], "invalid-input");
}

#[test]
fn assert_mode_reflects_the_verdict_in_the_exit_status() {
    let (_, code) = run(&[
        "contain",
        "--group-g",
        "builtin:z4",
        "--group-h",
        "builtin:v4",
        "--max-n",
        "1",
        "--max-m",
        "2",
        "--assert",
    ]);
    assert_eq!(code, 3);
    let (_, code) = run(&[
        "contain",
        "--group-g",
        "builtin:z2",
        "--group-h",
        "builtin:z2",
        "--max-n",
        "1",
        "--max-m",
        "2",
        "--assert",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn out_flag_writes_the_document_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("set.json");
    let (stdout, code) = run(&[
        "con",
        "--group",
        "builtin:z2",
        "--partition",
        "symbolic:trivial",
        "--gen",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["configurations"], serde_json::json!([[1, 1]]));
}

#[test]
fn equiv_reports_both_directions() {
    let (doc, code) = run_json(&[
        "equiv",
        "--group-g",
        "builtin:z2",
        "--group-h",
        "builtin:z2",
        "--max-n",
        "1",
        "--max-m",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["equivalent_within_bounds"], true);
    assert_eq!(doc["forward"]["verdict"], "contained-within-bounds");
    assert_eq!(doc["backward"]["verdict"], "contained-within-bounds");

    let (doc, _) = run_json(&[
        "equiv",
        "--group-g",
        "builtin:z4",
        "--group-h",
        "builtin:v4",
        "--max-n",
        "2",
        "--max-m",
        "4",
    ]);
    assert_eq!(doc["equivalent_within_bounds"], false);
}

#[test]
fn strong_rejects_non_generating_tuples() {
    // (1, e) does not generate Z2 x Z2
    let (doc, code) = run_json(&[
        "strong",
        "--group-g",
        "builtin:z4",
        "--group-h",
        "builtin:v4",
        "--gen-g",
        "1",
        "--gen-h",
        "1|0",
        "--max-m",
        "2",
    ]);
    assert_eq!(code, 1);
    assert_eq!(doc["error_kind"], "not-generating");
}

#[test]
fn strong_certificates_verify_across_presentations() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("strong.json");
    let common = [
        "strong",
        "--group-g",
        &fixture("s3_table.toml"),
        "--group-h",
        &fixture("s3_perm.toml"),
        "--gen-g",
        "p",
        "--gen-g",
        "q",
        "--gen-h",
        "(0 1)",
        "--gen-h",
        "(0 2)",
        "--max-m",
        "3",
    ];
    let mut args: Vec<&str> = common.to_vec();
    let path_str = path.to_str().unwrap().to_string();
    args.extend(["--out", &path_str]);
    let (_, code) = run(&args);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["certificate"]["verdict"], "contained-within-bounds");

    let mut verify_args: Vec<&str> = common.to_vec();
    verify_args.extend(["--verify", &path_str]);
    let (doc, code) = run_json(&verify_args);
    assert_eq!(code, 0);
    assert_eq!(doc["verified"], true);
}

#[test]
fn negative_strong_certificates_verify_too() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("strong_neg.json");
    let path_str = path.to_str().unwrap().to_string();
    let common = [
        "strong",
        "--group-g",
        "builtin:z2",
        "--group-h",
        "builtin:z3",
        "--gen-g",
        "1",
        "--gen-h",
        "1",
        "--max-m",
        "2",
    ];
    let mut args: Vec<&str> = common.to_vec();
    args.extend(["--out", &path_str]);
    let (_, code) = run(&args);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["certificate"]["verdict"], "not-contained");
    assert_eq!(doc["certificate"]["witness"]["m"], 2);

    let mut verify_args: Vec<&str> = common.to_vec();
    verify_args.extend(["--verify", &path_str]);
    let (doc, code) = run_json(&verify_args);
    assert_eq!(code, 0);
    assert_eq!(doc["verified"], true);
    let checks: Vec<String> = doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap().to_string())
        .collect();
    assert!(checks.iter().any(|c| c.contains("re-exhausted")));
}

#[test]
fn golden_with_corrupted_rival_reports_violations() {
    // ball-explicit rival over F2 whose identity block also holds f1 f2
    let dir = tempfile::tempdir().unwrap();
    let rival = dir.path().join("rival.toml");
    // canonical ball(3) of F2 in canonical order: compute labels for a fat
    // identity block {e, f1 f2}
    let engine = gcon_core::docs::builtin_group("free2").unwrap();
    let gens = engine.standard_generators();
    let domain = gcon_core::engine::ball(&gens, 3).unwrap();
    let f1f2 = gcon_core::words::RepPair::parse("+1 +2", 2)
        .unwrap()
        .evaluate(&gens)
        .unwrap();
    let labels: Vec<usize> = domain
        .iter()
        .map(|w| if *w == engine.identity() || *w == f1f2 { 1 } else { 2 })
        .collect();
    let mut file = std::fs::File::create(&rival).unwrap();
    writeln!(file, "kind = \"ball-explicit\"").unwrap();
    writeln!(file, "radius = 3").unwrap();
    writeln!(file, "labels = {labels:?}").unwrap();

    let (doc, code) = run_json(&[
        "golden",
        "--family",
        "free",
        "--rank",
        "2",
        "--max-len",
        "3",
        "--radius",
        "3",
        "--rival-partition",
        rival.to_str().unwrap(),
        "--rival-block",
        "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["passed"], false);
    let implication = doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["check"] == "golden-implication")
        .unwrap();
    assert!(!implication["violations"].as_array().unwrap().is_empty());
}

#[test]
fn golden_self_rival_passes_for_all_families() {
    for args in [
        vec!["golden", "--family", "free", "--rank", "2", "--max-len", "4", "--radius", "5"],
        vec!["golden", "--family", "dinf", "--max-len", "4", "--radius", "8"],
        vec![
            "golden",
            "--family",
            "znf",
            "--rank",
            "1",
            "--finite",
            "builtin:z2",
            "--max-len",
            "4",
            "--radius",
            "5",
        ],
    ] {
        let (doc, code) = run_json(&args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(doc["passed"], true, "{args:?}");
    }
}

#[test]
fn words_reduce_reports_the_reduced_pair() {
    let (doc, code) = run_json(&[
        "words",
        "--op",
        "reduce",
        "--group",
        &fixture("free2.toml"),
        "--pair",
        "+2 +1 -1 +2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["is_reduced"], false);
    assert_eq!(doc["reduced_pair"], "+2 +2");
}

#[test]
fn words_eval_prints_the_free_word() {
    let (doc, code) = run_json(&[
        "words",
        "--op",
        "eval",
        "--group",
        &fixture("free2.toml"),
        "--pair",
        "+1 -2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["value"], "f1 f2^-1");
}

#[test]
fn words_eval_on_infinite_engines_uses_standard_generators() {
    let (doc, code) = run_json(&[
        "words",
        "--op",
        "eval",
        "--group",
        "builtin:dinf",
        "--pair",
        "+1 +2 +1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["value"], "xyx");
}

#[test]
fn con_requires_gens_for_finite_groups() {
    let (doc, code) = run_json(&[
        "con",
        "--group",
        "builtin:z4",
        "--partition",
        "symbolic:trivial",
    ]);
    assert_eq!(code, 1);
    assert_eq!(doc["error_kind"], "invalid-input");
}

#[test]
fn con_observes_infinite_engines_on_balls() {
    let (doc, code) = run_json(&[
        "con",
        "--group",
        "builtin:dinf",
        "--partition",
        "symbolic:dinf-five-block",
        "--radius",
        "8",
        "--window",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["exactness"], "ball-observed");
    assert_eq!(doc["saturated"], true);
    let configs = doc["configurations"].as_array().unwrap();
    assert!(configs.contains(&serde_json::json!([1, 2, 3])));
}

#[test]
fn localhom_detects_non_functional_relations() {
    let (doc, code) = run_json(&[
        "localhom",
        "--group-g",
        "builtin:z2",
        "--group-h",
        "builtin:z3",
        "--gen-g",
        "1",
        "--gen-h",
        "1",
        "--n0",
        "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["functional"], false);
    assert_eq!(doc["local_homomorphism"], false);
    assert_eq!(doc["epi_forward"], false);
}

#[test]
fn law_sample_mode_is_seeded_and_reproducible() {
    let args = [
        "law",
        "--group",
        "builtin:z6",
        "--law",
        "-1 -2 +1 +2",
        "--vars",
        "2",
        "--domain",
        "sample:40",
        "--seed",
        "11",
    ];
    let (a, _) = run(&args);
    let (b, _) = run(&args);
    assert_eq!(a, b);
}
