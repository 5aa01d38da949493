use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn tetra(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tetra"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("tetra-cli-{}-{name}", std::process::id()))
}

fn json_run(name: &str, args: &[&str]) -> (i32, Vec<Value>) {
    let path = tmp(name);
    let p = path.to_str().unwrap().to_string();
    let mut all: Vec<&str> = args.to_vec();
    all.extend(["--json", &p]);
    let (code, _) = tetra(&all);
    let text = std::fs::read_to_string(&path).expect("json written");
    let _ = std::fs::remove_file(&path);
    let v: Value = serde_json::from_str(&text).unwrap();
    (code, v.as_array().unwrap().clone())
}

#[test]
fn passing_run_has_stable_schema() {
    let (code, reps) = json_run(
        "schema",
        &["verify", "--check", "ybe,w_identities", "--r", "1", "--s", "0"],
    );
    assert_eq!(code, 0);
    assert_eq!(reps.len(), 3);
    for rep in &reps {
        let mut keys: Vec<&str> = rep.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort();
        assert_eq!(keys, ["check", "ms", "order", "params", "status", "terms", "witness"]);
        assert_eq!(rep["status"], "PASS");
        assert!(rep["witness"].is_null());
    }
}

#[test]
fn negative_control_fails_with_low_degree_witness() {
    let (code, reps) = json_run(
        "control",
        &[
            "verify",
            "--check",
            "pent_tetr_family",
            "--m",
            "1",
            "--k",
            "1",
            "--mutate",
            "base+1",
        ],
    );
    assert_eq!(code, 1);
    assert_eq!(reps[0]["status"], "FAIL");
    let deg = reps[0]["witness"]["degree"].as_i64().unwrap();
    assert!(deg <= 2, "witness degree {deg}");
}

#[test]
fn tetrahedron_example_passes() {
    let (code, out) = tetra(&[
        "verify",
        "--check",
        "tetra_Rgl",
        "--m",
        "1",
        "--k",
        "1",
        "--exponents",
        "-1,1,0,1,0,-1",
        "--order",
        "4",
        "--q",
        "num:2",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().any(|l| l.starts_with("tetra_Rgl") && l.contains("PASS")));
}

#[test]
fn config_errors_exit_two() {
    for args in [
        &["verify", "--r", "-1"][..],
        &["verify", "--q", "num:1"],
        &["verify", "--q", "num:-1"],
        &["verify", "--q", "sometimes"],
        &["verify", "--check", "nonexistent"],
        &["verify", "--mutate", "nonexistent"],
        &["verify", "--check", "ybe", "--mutate", "base+1"],
        &["verify", "--exponents", "1,2,3"],
        &["verify", "--unknown-flag"],
        &["frobnicate"],
    ] {
        assert_eq!(tetra(args).0, 2, "{args:?}");
    }
    let bad = tmp("bad.cfg");
    std::fs::write(&bad, "check ybe\n").unwrap();
    assert_eq!(tetra(&["verify", "--config", bad.to_str().unwrap()]).0, 2);
    let _ = std::fs::remove_file(&bad);
}

#[test]
fn flags_override_config_file() {
    let cfg = tmp("override.cfg");
    std::fs::write(&cfg, "# light sweep\ncheck = ybe\nr = 0\n").unwrap();
    let c = cfg.to_str().unwrap();
    let (code, reps) = json_run("override", &["verify", "--config", c, "--r", "2"]);
    assert_eq!(code, 0);
    assert!(reps.iter().all(|r| r["params"]["r"] == 2));
    let (_, reps) = json_run("from-file", &["verify", "--config", c]);
    assert!(reps.iter().all(|r| r["params"]["r"] == 0));
    let _ = std::fs::remove_file(&cfg);
}

#[test]
fn reports_do_not_depend_on_jobs() {
    let strip = |mut v: Vec<Value>| {
        for r in &mut v {
            r["ms"] = Value::from(0);
        }
        v
    };
    let args = ["verify", "--check", "rtt_T,phi_homs,centralizer_lattice"];
    let (_, one) = json_run("jobs1", &[&args[..], &["--jobs", "1"]].concat());
    let (_, three) = json_run("jobs3", &[&args[..], &["--jobs", "3"]].concat());
    assert_eq!(strip(one), strip(three));
}
