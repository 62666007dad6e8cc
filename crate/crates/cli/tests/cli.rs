use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn quadlin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadlin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fixture_json(name: &str) -> Value {
    let path = format!("{}/../core/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn write_temp(tag: &str, v: &Value) -> PathBuf {
    let p = std::env::temp_dir().join(format!("quadlin-{}-{tag}.json", std::process::id()));
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p
}

fn status_of(fixture: &str) -> String {
    let o = quadlin(&["--format", "json", "report", "--fixture", fixture]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    v["status"].as_str().unwrap().to_string()
}

#[test]
fn cyclic_job_is_certified() {
    assert_eq!(status_of("example_7_5"), "LINEARIZABLE_CERTIFIED");
    let o = quadlin(&["report", "--fixture", "example_7_5"]);
    assert!(stdout(&o).contains("invariant lines (search bounded by <gamma>)"));
}

#[test]
fn sylow_job_is_obstructed() {
    let o = quadlin(&["--format", "json", "report", "--fixture", "example_7_5_sylow"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "OBSTRUCTED");
    let kinds: Vec<&str> = v["evidence"].as_array().unwrap().iter().map(|e| e["kind"].as_str().unwrap()).collect();
    assert!(kinds.contains(&"empty_theta_fixed_set"));
    assert!(kinds.contains(&"iota_lift"));
}

#[test]
fn translation_job_names_its_witness() {
    let o = quadlin(&["--format", "json", "report", "--fixture", "example_7_3_diagonal"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "OBSTRUCTED");
    let witness = v["evidence"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["kind"] == "free_translation")
        .expect("translation evidence");
    assert_eq!(witness["word"], serde_json::json!([["t", 1]]));
    assert_eq!(witness["signs"], serde_json::json!([1, 1, 1, 1, -1, -1]));
}

#[test]
fn report_is_deterministic() {
    for f in ["human", "json"] {
        let a = quadlin(&["--format", f, "report", "--fixture", "example_7_5_sylow"]);
        let b = quadlin(&["--format", f, "report", "--fixture", "example_7_5_sylow"]);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn report_reads_files() {
    let p = write_temp("plain", &fixture_json("example_7_5"));
    let o = quadlin(&["report", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("job: gamma\nstatus: LINEARIZABLE_CERTIFIED\n"));
}

/// γ with the corner entry replaced by −1 scales x0² by 1 instead of −i.
#[test]
fn sign_flipped_gamma_is_rejected() {
    let mut job = fixture_json("example_7_5");
    job["generators"][0]["matrix"]["entries"][0][0] = Value::from(-1);
    let p = write_temp("gamma-tilde", &job);
    let o = quadlin(&["report", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`gamma` is not a symmetry"), "{}", stderr(&o));
}

/// Even as an abstract matrix, its fourth power is not the displayed diagonal.
#[test]
fn sign_flipped_gamma_fails_fourth_power_relation() {
    let mut job = fixture_json("example_7_5");
    job["generators"][0]["matrix"]["entries"][0][0] = Value::from(-1);
    let lift = serde_json::json!({
        "groups": [{
            "name": "tilde",
            "dim": 6,
            "generators": job["generators"],
            "named": job["named"],
            "relations": [{"word": [["gamma", 4]], "target": {"central": "gamma4"}}]
        }]
    });
    let p = write_temp("gamma-tilde-lift", &lift);
    let o = quadlin(&["lift", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["groups"][0]["relations"][0]["holds"], false);
}

#[test]
fn malformed_number_reports_path() {
    let mut job = fixture_json("example_7_5");
    job["generators"][0]["matrix"]["entries"][0][0]["coeffs"] = serde_json::json!([[1, 1]]);
    let p = write_temp("bad-cyc", &job);
    let o = quadlin(&["report", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("generators[0].matrix"), "{}", stderr(&o));
}

#[test]
fn missing_input_is_an_input_error() {
    assert_eq!(quadlin(&["report"]).status.code(), Some(2));
    assert_eq!(quadlin(&["report", "--fixture", "nope"]).status.code(), Some(2));
    assert_eq!(quadlin(&["report", "/nonexistent/job.json"]).status.code(), Some(2));
}

#[test]
fn large_genus_theta_is_unsupported() {
    let o = quadlin(&["theta", "--g", "11", "--perm", "(1 2)"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn theta_with_explicit_permutations() {
    let o = quadlin(&["theta", "--g", "2", "--perm", "(3456)"]);
    assert_eq!(stdout(&o), "classes of parity 1 fixed by (3 4 5 6): [{1}] [{2}]\n");
    let o = quadlin(&["theta", "--g", "2", "--perm", "(3456)", "--perm", "(13)(25)(46)"]);
    assert!(stdout(&o).ends_with(": none\n"));
    let o = quadlin(&["theta", "--fixture", "example_7_5_sylow"]);
    assert!(stdout(&o).ends_with(": none\n"));
}

#[test]
fn branch_lists_labels() {
    let o = quadlin(&["branch", "--fixture", "example_7_5"]);
    let s = stdout(&o);
    assert!(s.contains("b4: (z4 : 1)"));
    assert!(s.contains("gamma: (3 6 5 4)"));
}

#[test]
fn fixed_points_and_lines() {
    let o = quadlin(&["--format", "json", "fixed-points", "--fixture", "example_7_5"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["points"].as_array().unwrap().len(), 4);
    let o = quadlin(&["--format", "json", "invariant-lines", "--fixture", "example_7_5"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["complete"], true);
    assert_eq!(v["lines"].as_array().unwrap().len(), 2);
}

#[test]
fn identities_table() {
    let o = quadlin(&["identities", "--g-max", "4"]);
    let s = stdout(&o);
    assert!(s.contains("2  16  15  16  true"));
    assert!(s.contains("4  256  210  256  true"));
    assert!(s.contains("4  18  18  18"));
}

#[test]
fn dp4_and_lift_fixtures() {
    let o = quadlin(&["dp4", "--fixture", "example_dp4_involutions"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order4_scan"]["group_order"], 1920);
    assert!(v["conjugacy"].as_array().unwrap().iter().all(|c| !c["witness"].is_null()));
    let o = quadlin(&["lift", "--fixture", "example_7_4"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["groups"][0]["order"], 24);
    assert_eq!(v["klein"]["lift"]["outcome"], "obstructed");
}
