//! The `dglift` binary: exit codes, flags and output stability.

use std::process::{Command, Output};

fn dglift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dglift"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn check_lift_on_the_golden_files() {
    let o = dglift(&["check-lift", "data/liftable.dga", "--module", "N", "--witness"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let r = &v["results"][0];
    assert_eq!(r["decision"], "LIFTABLE");
    assert_eq!(r["method"], "rank2-corollary");
    assert_eq!(r["witness"][1]["gamma"], "e⊗σ((Y^(2))^o⊗1)");

    let o = dglift(&["check-lift", "data/nonliftable.dga", "--module", "M"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &json(&o)["results"][0];
    assert_eq!(r["decision"], "NOT_LIFTABLE");
    assert_eq!(r["certificate"]["verified"], true);
    assert_eq!(r["certificate"]["rows"].as_array().unwrap().len(), 6);
    assert!(r.get("witness").is_none());

    let o = dglift(&["check-lift", "data/nonliftable.dga", "--method", "global-solve"]);
    assert_eq!(json(&o)["results"][0]["method"], "global-solve");
}

#[test]
fn field_order_is_stable() {
    let o = dglift(&["check-lift", "data/liftable.dga"]);
    let s = stdout(&o);
    let keys = ["\"version\"", "\"command\"", "\"problem\"", "\"results\"", "\"timing_ms\""];
    let pos: Vec<usize> = keys.iter().map(|k| s.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{s}");
    assert!(s.contains(r#""decision":"LIFTABLE","method":"rank2-corollary""#));
}

#[test]
fn other_commands() {
    let o = dglift(&["homology", "data/liftable.dga", "--bidegree", "3,4"]);
    assert_eq!(json(&o)["homology"]["dimension"], 0);
    let o = dglift(&["homology", "data/nonliftable.dga", "--bidegree", "3,4"]);
    assert_eq!(json(&o)["homology"]["dimension"], 1);

    let o = dglift(&["delta", "data/liftable.dga", "--element", "X*Y*y", "--format", "text"]);
    let s = stdout(&o);
    assert!(s.contains("δ(X*Y*y) = σ((XY)^o⊗1)*y"), "{s}");
    assert!(s.contains("(XY)^o⊗1 · y - 1^o⊗(XY) · y"), "{s}");

    let o = dglift(&["obstruction", "data/nonliftable.dga"]);
    let ob = &json(&o)["results"][0]["obstruction"];
    assert_eq!(ob[1]["basis"], "up");
    assert_eq!(ob[1]["value"], "u⊗σ((XY)^o⊗1)*x");

    let o = dglift(&["validate", "data/liftable.dga"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["validation"]["modules"][0]["square_zero"], true);

    let o = dglift(&["selftest"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["selftest"].as_array().unwrap().iter().all(|s| s["passed"] == true));
}

#[test]
fn exit_codes() {
    let o = dglift(&["validate", "data/rejected.dga"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 4"), "{err}");

    for args in [
        &["frobnicate", "data/liftable.dga"][..],
        &["check-lift", "data/liftable.dga", "--module", "Q"],
        &["check-lift", "data/liftable.dga", "--bogus"],
        &["homology", "data/liftable.dga"],
        &["check-lift"],
        &["check-lift", "data/missing.dga"],
        &["check-lift", "data/liftable.dga", "--method", "trivial"],
    ] {
        assert_eq!(dglift(args).status.code(), Some(2), "{args:?}");
    }
}
