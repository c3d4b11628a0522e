use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    p.to_string_lossy().into_owned()
}

fn rrb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rrb")).args(args).env_remove("RRB_BUDGET").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = rrb(&full);
    (code(&o), serde_json::from_slice(&o.stdout).unwrap_or(Value::Null))
}

#[test]
fn validate_reports_valid_documents() {
    for name in ["group_z4.json", "group_s3_permutations.json", "rrb_z3_z2_inversion.json", "module_klein_nu.json"] {
        let (c, v) = json(&["validate", &fixture(name)]);
        assert_eq!(c, 0, "{name}");
        assert_eq!(v["valid"], true);
    }
    let o = rrb(&["validate", &fixture("ext_klein_classical_cocycle.json")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("extension: valid"));
}

#[test]
fn validate_reports_witnesses() {
    let (c, v) = json(&["validate", &fixture("group_broken.json")]);
    assert_eq!(c, 2);
    assert_eq!(v["witness"], "NoInverse(1)");
    let (c, v) = json(&["validate", &fixture("rrb_corrupted.json")]);
    assert_eq!(c, 2);
    assert!(v["witness"].as_str().unwrap().starts_with("RRBAxiomFails"));
    let o = rrb(&["validate", &fixture("module_invalid.json")]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("FEquivariance"));
}

#[test]
fn parse_errors_exit_with_one() {
    assert_eq!(code(&rrb(&["validate", "/nonexistent/file.json"])), 1);
    let dir = std::env::temp_dir().join(format!("rrb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(code(&rrb(&["validate", bad.to_str().unwrap()])), 1);
    std::fs::write(&bad, r#"{"type": "group"}"#).unwrap();
    assert_eq!(code(&rrb(&["validate", bad.to_str().unwrap()])), 1);
    // a group where an extension is expected
    assert_eq!(code(&rrb(&["wells", &fixture("group_z2.json")])), 1);
}

#[test]
fn enumerate_lists_operators() {
    let (c, v) = json(&["enumerate", &fixture("group_z2.json"), &fixture("group_z2.json")]);
    assert_eq!(c, 0);
    assert_eq!(v["count"], 2);
    assert_eq!(v["operators"], serde_json::json!([[0, 0], [0, 1]]));
    let (c, v) = json(&[
        "enumerate",
        &fixture("group_z3.json"),
        &fixture("group_z2.json"),
        "--phi",
        &fixture("phi_z3_inversion.json"),
    ]);
    assert_eq!(c, 0);
    assert_eq!(v["operators"], serde_json::json!([[0, 0, 0]]));
}

#[test]
fn budgets_and_bounds_exit_with_three() {
    let args = ["enumerate", &fixture("group_z4.json"), &fixture("group_z2.json")];
    let mut with_flag = vec!["--budget", "3"];
    with_flag.extend_from_slice(&args);
    assert_eq!(code(&rrb(&with_flag)), 3);
    let o = Command::new(env!("CARGO_BIN_EXE_rrb")).args(args).env("RRB_BUDGET", "3").output().unwrap();
    assert_eq!(code(&o), 3);
    // the flag wins over the environment
    let mut generous = vec!["--budget", "100000"];
    generous.extend_from_slice(&args);
    let o = Command::new(env!("CARGO_BIN_EXE_rrb")).args(&generous).env("RRB_BUDGET", "3").output().unwrap();
    assert_eq!(code(&o), 0);
    let o = Command::new(env!("CARGO_BIN_EXE_rrb")).args(args).env("RRB_BUDGET", "zero").output().unwrap();
    assert_eq!(code(&o), 1);
    assert_eq!(code(&rrb(&["--max-order", "2", "wells", &fixture("ext_klein_classical_built.json")])), 3);
}

#[test]
fn cohomology_of_modules_and_extensions() {
    let (c, v) = json(&["cohomology", &fixture("module_trivial_z2.json")]);
    assert_eq!(c, 0);
    assert_eq!(v["h2"], serde_json::json!([2, 2, 2, 2]));
    assert_eq!(v["orders"]["z2"], "16");
    let (_, from_ext) = json(&["cohomology", &fixture("ext_trivial_z2_built.json")]);
    assert_eq!(from_ext["h2"], v["h2"]);
    let (c, v) = json(&["cohomology", "--representatives", &fixture("module_klein_classical.json")]);
    assert_eq!(c, 0);
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 8);
    let (_, v) = json(&["cohomology", &fixture("module_klein_nu.json")]);
    assert_eq!(v["h2"], serde_json::json!([]));
}

#[test]
fn wells_reports_exactness() {
    let (c, v) = json(&["wells", &fixture("ext_klein_classical_built.json")]);
    assert_eq!(c, 0);
    for key in ["eta_injective", "ker_rho_eq_im_eta", "ker_omega_eq_im_rho", "omega_derivation"] {
        assert_eq!(v["exactness"][key], true, "{key}");
    }
    assert_eq!(v["omega_is_homomorphism"], false);
    let pairs = v["pairs"].as_array().unwrap();
    assert!(pairs.iter().any(|p| p["in_C"] == true && p["inducible"] == false));
    let text = stdout(&rrb(&["wells", &fixture("ext_klein_nu_built.json")]));
    assert!(text.contains("ker omega = im rho: true"));
}

#[test]
fn inducible_agrees_with_the_module_criterion() {
    let ext = fixture("ext_klein_classical_built.json");
    let (c, v) = json(&["inducible", &ext, &fixture("pair_klein_classical_blocked.json")]);
    assert_eq!(c, 0);
    assert_eq!(v["inducible"], false);
    assert_eq!(v["agree"], true);
    assert!(v["witness"].is_null());
    let (_, v) = json(&["inducible", &ext, &fixture("pair_klein_classical_lifted.json")]);
    assert_eq!(v["inducible"], true);
    assert_eq!(v["module_criterion"], true);
    assert!(v["witness"].is_object());
    let (_, v) = json(&["inducible", &ext, &fixture("pair_klein_classical_identity.json")]);
    assert_eq!(v["omega"], serde_json::json!([0, 0, 0]));
    // a pair document whose maps are not automorphisms is invalid
    let dir = std::env::temp_dir().join(format!("rrb-cli-pair-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("pair.json");
    std::fs::write(
        &bad,
        r#"{"type": "pair", "psi": {"psi": [0, 0, 0, 0], "eta": [0]}, "theta": {"psi": [0, 1], "eta": [0]}}"#,
    )
    .unwrap();
    assert_eq!(code(&rrb(&["inducible", &ext, bad.to_str().unwrap()])), 2);
}

#[test]
fn output_is_deterministic() {
    let runs: Vec<Vec<String>> = vec![
        vec!["wells".into(), fixture("ext_klein_classical_built.json")],
        vec!["cohomology".into(), "--representatives".into(), fixture("module_klein_swap.json")],
        vec!["enumerate".into(), fixture("group_z4.json"), fixture("group_z2.json")],
    ];
    for args in runs {
        for format in ["text", "json"] {
            let mut full: Vec<&str> = vec!["--format", format];
            full.extend(args.iter().map(String::as_str));
            let (a, b) = (rrb(&full), rrb(&full));
            assert_eq!(code(&a), 0);
            assert_eq!(a.stdout, b.stdout, "{full:?}");
        }
    }
}
