use std::io::Write;
use std::process::{Command, Stdio};

fn run(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_khbraid"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(input) = stdin {
        child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn certify_trivial_braid() {
    let (code, out, _) = run(&["certify", "3:"], None);
    assert_eq!(code, 0);
    assert!(out.contains("verdict CONSISTENT_WITH_TRIVIAL"));
}

#[test]
fn kh_json_schema() {
    let (code, out, _) = run(&["kh", "2: 1 1 1", "--json"], None);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["betti"].as_array().unwrap().len(), 6);
    assert_eq!(v["writhe"], 3);
    assert_eq!(v["components"], 1);
    assert_eq!(v["n_strands"], 2);
    assert_eq!(v["word"], "2: 1 1 1");
    assert_eq!(v["betti"][0], serde_json::json!({ "i": 0, "j": 1, "dim": 1 }));
}

#[test]
fn json_is_deterministic_with_sorted_keys() {
    let (_, a, _) = run(&["certify", "3: 1 -2 2 -1", "--json"], None);
    let (_, b, _) = run(&["certify", "3: 1 -2 2 -1", "--json"], None);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(a.trim()).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    for key in [
        "word",
        "n_strands",
        "writhe",
        "components",
        "betti",
        "module",
        "psi",
        "verdict",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["verdict"], "CONSISTENT_WITH_TRIVIAL");
    assert_eq!(v["module"]["witness_bidegree"], serde_json::json!({ "i": 0, "j": 3 }));
}

#[test]
fn fibered_line() {
    let (code, out, _) = run(&["fibered", "--n", "2"], None);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "L_2 = {1, 3}; max chi = -1");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["kh", "2: 1 x"], None).0, 2);
    assert_eq!(run(&["kh", "2: 3"], None).0, 2);
    assert_eq!(run(&["kh", "0:"], None).0, 2);
    assert_eq!(run(&["kh", "2: 1 1 1 1", "--max-crossings", "3"], None).0, 3);
}

#[test]
fn psi_with_mirror() {
    let (code, out, _) = run(&["psi", "2: -1", "--mirror", "--json"], None);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["psi"], serde_json::json!({ "i": 0, "j": -3, "nonzero": false }));
    assert_eq!(v["mirror_psi"], serde_json::json!({ "i": 0, "j": -1, "nonzero": true }));
}

#[test]
fn jones_agreement() {
    let (code, out, _) = run(&["jones", "2: 1 1 1", "--json"], None);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["jones"]["agree"], true);
    assert_eq!(v["jones"]["state_sum"], "q + q^3 + q^5 - q^9");
}

#[test]
fn batch_mode_from_stdin() {
    let (code, out, err) = run(&["certify", "-", "--quiet"], Some("2: 1\n\n2: 1 -1\n2: 1 1\n"));
    assert_eq!(code, 0, "{err}");
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines,
        [
            "2: 1\tNOT_N_COMPONENT",
            "2: 1 -1\tCONSISTENT_WITH_TRIVIAL",
            "2: 1 1\tMODULE_OBSTRUCTED"
        ]
    );
    let (code, out, _) = run(&["kh", "-", "--json"], Some("2: 1\nbad\n2:\n"));
    assert_eq!(code, 2);
    assert_eq!(out.lines().count(), 2);
}

#[test]
fn module_reports_actions() {
    let (code, out, _) = run(&["module", "2:", "--json"], None);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["module"]["free_rank_one"], true);
    assert_eq!(v["module"]["actions"].as_array().unwrap().len(), 2);
    let (_, out, _) = run(&["module", "2: 1 1"], None);
    assert!(out.contains("free rank one false"));
}
