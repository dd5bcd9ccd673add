use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3lattice"))
        .args(args)
        .env("K3LATTICE_DATA", Path::new(env!("CARGO_MANIFEST_DIR")).join("data"))
        .output()
        .unwrap()
}

fn data(file: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(file).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_single_claim_exit_codes() {
    let ok = run(&["verify", "L2.disc"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("PASS  L2.disc"));
    assert_eq!(run(&["verify", "L.no-index4"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "no.such.claim"]).status.code(), Some(2));
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_tag_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("report.json");
    let o = run(&["verify", "--all", "--tag", "quadform", "--json", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    let claims = report["claims"].as_array().unwrap();
    assert!(claims.len() >= 10);
    assert!(claims.iter().all(|c| c["tags"].as_array().unwrap().iter().any(|t| t == "quadform")));
    assert_eq!(report["summary"]["fail"], 0);
}

#[test]
fn verify_all_reports_only_documented_failures() {
    let o = run(&["verify", "--all"]);
    assert_eq!(o.status.code(), Some(1));
    let failing: Vec<String> =
        stdout(&o).lines().filter_map(|l| l.strip_prefix("FAIL  ")).map(|s| s.to_string()).collect();
    assert_eq!(failing, ["L.no-index4", "cubics.CG-membership", "sqrel.8dminus5"]);
}

#[test]
fn lattice_info_and_invariants() {
    let o = run(&["lattice", "info", &data("T.lattice")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("det: 36") && s.contains("signature: (2,2)"), "{s}");
    let inv = run(&["quadform", "invariants", &data("R.lattice")]);
    let v: serde_json::Value = serde_json::from_slice(&inv.stdout).unwrap();
    assert_eq!(v["hasse_minus"], serde_json::json!(["inf", "17"]));
}

#[test]
fn lattice_ops() {
    let o = run(&["lattice", "op", "complement", &data("Lambda3.lattice"), "--vectors", "0,0,0,0,1,34"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["gram"].as_array().unwrap().len(), 5);

    let o = run(&["lattice", "op", "disc-form", &data("T.lattice")]);
    assert!(stdout(&o).contains("invariant factors: [6,6]"));

    let o = run(&["lattice", "op", "overlattices", &data("L_sat.lattice")]);
    assert!(stdout(&o).contains("index 2  det -3"));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a2.lattice");
    std::fs::write(dir.path().join("a2a2.lattice"), r#"{"name":"A2(2)","gram":[[-4,2],[2,-4]]}"#).unwrap();
    let o = run(&[
        "lattice",
        "op",
        "adjoin",
        dir.path().join("a2a2.lattice").to_str().unwrap(),
        "--vectors",
        "1,0",
        "--allow-odd",
        "--save",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(out.exists());
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.lattice");
    std::fs::write(&bad, "{\"name\": \"x\", \"gram\": [[1,2],[3").unwrap();
    let o = run(&["lattice", "info", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
    assert_eq!(run(&["lattice", "info", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(run(&["named", "Nope"]).status.code(), Some(2));
}

#[test]
fn named_save_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("n2.lattice");
    assert_eq!(run(&["named", "N2", "--save", p.to_str().unwrap()]).status.code(), Some(0));
    let o = run(&["lattice", "info", p.to_str().unwrap()]);
    assert!(stdout(&o).contains("det: -192"));
}
