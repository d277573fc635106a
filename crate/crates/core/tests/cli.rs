use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qspheres"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("JSON line"))
        .collect()
}

fn quantity<'a>(recs: &'a [Value], name: &str) -> &'a Value {
    recs.iter()
        .find(|r| r["quantity"] == name)
        .unwrap_or_else(|| panic!("no {name} in {recs:?}"))
}

#[test]
fn verify_podles_passes() {
    let out = run(&[
        "verify",
        "--algebra",
        "podles",
        "--q",
        "0.5",
        "--s",
        "1",
        "--N",
        "1/2",
        "--cutoff",
        "8",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    let r = quantity(&recs, "relation_residual");
    assert!(r["value"].as_f64().unwrap() <= 1e-10);
    assert_eq!(r["pass"], true);
    assert_eq!(r["command"], "verify");
    assert_eq!(r["params"]["N"], "1/2");
    assert!(
        quantity(&recs, "adjoint_residual")["value"]
            .as_f64()
            .unwrap()
            <= 1e-10
    );
}

#[test]
fn verify_chiral_plus_passes() {
    let out = run(&[
        "verify",
        "--algebra",
        "s4q-chiral+",
        "--q",
        "0.3",
        "--cutoff",
        "6.5",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
}

#[test]
fn verify_fails_under_perturbation() {
    for alg in ["podles", "s4q-scalar", "odd"] {
        let out = run(&["verify", "--algebra", alg, "--perturb", "1e-3"]);
        assert_eq!(out.status.code(), Some(1), "{alg}");
        assert_eq!(quantity(&records(&out), "relation_residual")["pass"], false);
    }
}

#[test]
fn index_values() {
    let out = run(&["index", "--algebra", "podles", "--N", "1"]);
    assert!(out.status.success());
    let v = quantity(&records(&out), "fredholm_index")["value"]
        .as_f64()
        .unwrap();
    assert!((v - 2.0).abs() < 1e-6);
    let out = run(&["index", "--algebra", "s4q-fock"]);
    assert!(out.status.success());
    let v = records(&out)[0]["value"].as_f64().unwrap();
    assert!((v - 1.0).abs() < 1e-10, "{v}");
}

#[test]
fn tableaux_listing() {
    let out = run(&["tableaux", "--ell", "2", "--n", "1", "--h", "0"]);
    assert!(out.status.success());
    let recs = records(&out);
    assert_eq!(quantity(&recs, "count")["value"], 3);
    let list = quantity(&recs, "tableaux")["value"]
        .as_array()
        .unwrap()
        .clone();
    assert_eq!(list.len(), 3);
    assert_eq!(list[0], serde_json::json!([[1, 0, 0], [0, 0], [0]]));
}

#[test]
fn haar_residue_and_integral_records() {
    let recs = records(&run(&[
        "haar",
        "--algebra",
        "s4q-scalar",
        "--j",
        "0",
        "--k",
        "1",
    ]));
    let v = quantity(&recs, "haar_gns")["value"].as_f64().unwrap();
    assert!((v - 0.234_604_105_571_847_5).abs() < 1e-12);
    let recs = records(&run(&[
        "residue",
        "--algebra",
        "podles",
        "--word",
        "B B*",
        "--s",
        "0.5",
    ]));
    assert!((recs[0]["value"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    let recs = records(&run(&["ncintegral", "--ell", "2", "--word", "1"]));
    assert!((recs[0]["value"].as_f64().unwrap() - 1.0 / 6.0).abs() < 1e-15);
}

#[test]
fn zeta_record_within_tail() {
    let out = run(&[
        "zeta",
        "--algebra",
        "podles",
        "--exponent",
        "3",
        "--N",
        "1/2",
        "--cutoff",
        "2000",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
}

#[test]
fn csv_format_has_header() {
    let out = run(&["index", "--algebra", "s4q-fock", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines
        .next()
        .unwrap()
        .starts_with("command,algebra,quantity,value"));
    assert!(lines
        .next()
        .unwrap()
        .starts_with("index,s4q-fock,fock_index,"));
}

#[test]
fn identical_invocations_give_identical_values() {
    let args = [
        "qindex",
        "--algebra",
        "podles",
        "--N",
        "1",
        "--q",
        "0.3",
        "--cutoff",
        "30",
    ];
    let strip = |out: Output| {
        let mut recs = records(&out);
        for r in &mut recs {
            r.as_object_mut().unwrap().remove("wall_time_s");
        }
        serde_json::to_string(&recs).unwrap()
    };
    assert_eq!(strip(run(&args)), strip(run(&args)));
}

#[test]
fn doubling_the_cutoff_stays_within_the_estimate() {
    let at = |c: &str| {
        let recs = records(&run(&[
            "index",
            "--algebra",
            "s4q-chiral",
            "--q",
            "0.5",
            "--cutoff",
            c,
        ]));
        (
            recs[0]["value"].as_f64().unwrap(),
            recs[0]["est_error"].as_f64().unwrap(),
        )
    };
    let (v1, e1) = at("8.5");
    let (v2, _) = at("17");
    assert!((v2 - v1).abs() <= e1, "{v1} {v2} {e1}");
    let podles = |c: &str| {
        let recs = records(&run(&[
            "index",
            "--algebra",
            "podles",
            "--N",
            "3/2",
            "--q",
            "0.8",
            "--cutoff",
            c,
        ]));
        (
            recs[0]["value"].as_f64().unwrap(),
            recs[0]["est_error"].as_f64().unwrap(),
        )
    };
    let (v1, e1) = podles("40");
    let (v2, _) = podles("80");
    assert!((v2 - v1).abs() <= e1, "{v1} {v2} {e1}");
}

#[test]
fn out_file_receives_records() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli_out.jsonl");
    let _ = std::fs::remove_file(&path);
    let out = run(&[
        "index",
        "--algebra",
        "s4q-fock",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let saved = std::fs::read_to_string(&path).unwrap();
    assert_eq!(saved.trim(), String::from_utf8_lossy(&out.stdout).trim());
}

#[test]
fn bad_input_exits_with_usage() {
    for args in [
        &["verify", "--q", "2"][..],
        &["verify", "--algebra", "torus"],
        &["index", "--N", "1/3"],
        &["tableaux", "--ell", "2", "--n", "1"],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}
