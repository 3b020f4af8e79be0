use std::process::{Command, Output};

use serde_json::Value;

use qmap_cli::table;

fn qmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmap"))
        .args(args)
        .env_remove("QM_ORDER_MAX")
        .output()
        .expect("spawn qmap")
}

fn stdout_json(args: &[&str]) -> (String, Value) {
    let out = qmap(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let doc = serde_json::from_str(&text).unwrap();
    (text, doc)
}

fn strings(v: &Value) -> Vec<&str> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect()
}

#[test]
fn gw_example_invariants() {
    let (_, doc) = stdout_json(&["gw", "--n", "4", "--l", "2", "--lp", "2", "--order", "3"]);
    assert_eq!(strings(&doc["N"]), ["-1/3", "-1/2", "-10/9"]);
    assert_eq!(strings(&doc["F_gw_q"]), ["0", "-1/3", "-11/6", "-124/9"]);
    assert_eq!(strings(&doc["Q_of_q"]), ["0", "1", "4", "26"]);
    assert_eq!(doc["chern_coeff"], "2");
    assert!(doc["chi_top"].is_null());
}

#[test]
fn potential_conifold() {
    let (_, doc) = stdout_json(&[
        "potential",
        "--n",
        "2",
        "--l",
        "",
        "--lp",
        "1,1",
        "--order",
        "3",
    ]);
    assert_eq!(strings(&doc["F_qm"]), ["0", "1/12", "1/24", "1/36"]);
    assert_eq!(doc["spec"]["l"], serde_json::json!([]));
}

#[test]
fn ifun_and_ck() {
    let (_, doc) = stdout_json(&["ifun", "--n", "4", "--l", "2", "--lp", "2", "--order", "3"]);
    assert_eq!(strings(&doc["I1"]), ["0", "4", "18", "400/3"]);
    assert_eq!(strings(&doc["I0"]), ["1", "0", "0", "0"]);
    let (_, doc) = stdout_json(&["ck", "--n", "4", "--l", "2", "--lp", "2", "--order", "3"]);
    assert_eq!(strings(&doc["C"][1]), ["1", "4", "36", "400"]);
    assert_eq!(doc["C"].as_array().unwrap().len(), 4);
}

#[test]
fn json_round_trip_is_byte_identical() {
    let (text, doc) = stdout_json(&["gw", "--n", "5", "--l", "5", "--order", "3"]);
    let again = qmap_core::json::to_canonical_string(&doc);
    assert_eq!(again, text);
    assert!(text.ends_with('\n'));
    assert_eq!(strings(&doc["N"])[0], "2875/12");
}

#[test]
fn table_has_same_content_as_json() {
    let args = ["gw", "--n", "4", "--l", "2", "--lp", "2", "--order", "4"];
    let (_, doc) = stdout_json(&args);
    let mut targs = args.to_vec();
    targs.extend(["--format", "table"]);
    let out = qmap(&targs);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(table::parse(&text), table::flatten(&doc));
    assert!(text.contains("N[3]"));
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = ["gw", "--n", "3", "--lp", "3", "--order", "4"];
    let (text, _) = stdout_json(&args);
    let mut fargs = args.to_vec();
    let p = path.to_str().unwrap();
    fargs.extend(["--out", p]);
    let out = qmap(&fargs);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
}

#[test]
fn exit_codes() {
    let non_cy = qmap(&["gw", "--n", "4", "--l", "2", "--lp", "3"]);
    assert_eq!(non_cy.status.code(), Some(3));
    let msg = String::from_utf8_lossy(&non_cy.stderr);
    assert!(msg.contains("= 5") && msg.contains("n = 4"), "{msg}");

    assert_eq!(
        qmap(&["gw", "--n", "4", "--l", "0", "--lp", "4"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        qmap(&["gw", "--n", "4", "--l", "2,a", "--lp", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qmap(&["gw", "--n", "4", "--l", "2", "--lp", "2", "--order", "65"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qmap(&["gw", "--n", "4", "--l", "2", "--lp", "2", "--bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(qmap(&["--help"]).status.code(), Some(0));
}

#[test]
fn order_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qmap"))
        .args(["ck", "--n", "2", "--lp", "1,1", "--order", "5"])
        .env("QM_ORDER_MAX", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes() {
    let out = qmap(&["verify", "--format", "table"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains("[FAIL]"));
    let (_, doc) = stdout_json(&["verify"]);
    assert_eq!(doc["passed"], true);
}
