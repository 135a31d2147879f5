use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::Arc;

use serde_json::Value;
use uqsgd_core::face::FaceElement;
use uqsgd_core::linalg::Subspace;
use uqsgd_core::quiver::parse_quiver;
use uqsgd_core::uqsgd::face_vectors;
use uqsgd_core::wba::FaceIndex;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uqsgd"))
        .args(args)
        .output()
        .unwrap()
}

fn run_json(args: &[&str], code: i32) -> Value {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(code),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn dims(v: &Value, key: &str) -> Vec<u64> {
    v[key]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d.as_u64().unwrap())
        .collect()
}

#[test]
fn face_dimensions() {
    let v = run_json(
        &[
            "face",
            "--quiver",
            &data("three-cycle.json"),
            "--max-degree",
            "3",
        ],
        0,
    );
    assert_eq!(v["formatVersion"], 1);
    assert_eq!(v["status"], "pass");
    assert_eq!(dims(&v, "dims"), [9, 9, 9, 9]);
    let v = run_json(&["face", "--quiver", &data("one-loop.json")], 0);
    assert_eq!(v["maxDegree"], 4);
    assert_eq!(dims(&v, "dims"), [1, 1, 1, 1, 1]);
}

#[test]
fn malformed_input_exits_2() {
    let out = run(&["face", "--quiver", &data("malformed.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("target"));
    assert_eq!(
        run(&["face", "--quiver", &data("missing.json")])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["bogus", "--quiver", &data("one-loop.json")])
            .status
            .code(),
        Some(2)
    );
    let q = data("two-loop.json");
    assert_eq!(run(&["uqsgd", "--quiver", &q]).status.code(), Some(2));
    let r = data("commutators-2.json");
    assert_eq!(
        run(&[
            "uqsgd",
            "--quiver",
            &q,
            "--relations",
            &r,
            "--max-degree",
            "1"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn cubic_relations_exit_3() {
    let out = run(&[
        "uqsgd",
        "--quiver",
        &data("two-loop.json"),
        "--relations",
        &data("cubic.json"),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degree 3"));
    let out = run(&[
        "dual",
        "--quiver",
        &data("two-loop.json"),
        "--relations",
        &data("cubic.json"),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn trans_uqsgd_of_polynomial_ring() {
    let args = [
        "uqsgd",
        "--quiver",
        &data("two-loop.json"),
        "--relations",
        &data("commutators-2.json"),
        "--side",
        "trans",
        "--max-degree",
        "3",
    ];
    let v = run_json(&args, 0);
    assert_eq!(dims(&v, "dims"), [1, 4, 10, 20]);
    assert_eq!(dims(&v, "algebraDims"), [1, 2, 3, 4]);
    assert_eq!(v["generators"].as_array().unwrap().len(), 6);
}

fn preprojective_left_families(n: i64) -> Vec<String> {
    let p = |i: i64| format!("p{}", (i - 1).rem_euclid(n) + 1);
    let ps = |i: i64| format!("{}*", p(i));
    // x[a;b] x[c;d] = x[a.c;b.d]
    let m = |a: String, b: String, c: String, d: String| format!("x[{a}.{c};{b}.{d}]");
    let mut out = Vec::new();
    for i in 1..=n {
        for k in 1..=n {
            out.push(format!(
                "{} + -1 * {}",
                m(p(k), p(i), ps(k), p(i + 1)),
                m(ps(k - 1), p(i), p(k - 1), p(i + 1))
            ));
            out.push(format!(
                "{} + {} + -1 * {} + -1 * {}",
                m(p(k), p(i), ps(k), ps(i)),
                m(p(k), ps(i - 1), ps(k), p(i - 1)),
                m(ps(k - 1), p(i), p(k - 1), ps(i)),
                m(ps(k - 1), ps(i - 1), p(k - 1), p(i - 1))
            ));
            out.push(format!(
                "{} + -1 * {}",
                m(p(k), ps(i), ps(k), ps(i - 1)),
                m(ps(k - 1), ps(i), p(k - 1), ps(i - 1))
            ));
        }
    }
    out
}

#[test]
fn preprojective_left_generators_match_the_hand_written_families() {
    let qpath = data("doubled-three-cycle.json");
    let args = [
        "uqsgd",
        "--quiver",
        &qpath,
        "--relations",
        &data("preprojective-3.json"),
        "--side",
        "left",
        "--max-degree",
        "2",
    ];
    let v = run_json(&args, 0);
    let q = Arc::new(parse_quiver(&std::fs::read_to_string(&qpath).unwrap()).unwrap());
    let span = |texts: Vec<String>| {
        let elems: Vec<FaceElement> = texts
            .iter()
            .map(|t| FaceElement::parse(q.clone(), t).unwrap())
            .collect();
        Subspace::span(FaceIndex::new(&q, 2).dim(2), &face_vectors(&q, &elems))
    };
    let got = span(
        v["generators"]
            .as_array()
            .unwrap()
            .iter()
            .map(|g| g.as_str().unwrap().to_string())
            .collect(),
    );
    let want = span(preprojective_left_families(3));
    assert_eq!(got.dim(), 27);
    assert_eq!(got, want);
}

#[test]
fn duals() {
    let q = data("two-loop.json");
    let v = run_json(
        &[
            "dual",
            "--quiver",
            &q,
            "--relations",
            &data("commutators-2.json"),
        ],
        0,
    );
    assert_eq!(dims(&v, "dualDims"), [1, 2, 1, 0, 0]);
    assert_eq!(v["dualRelations"]["relations"].as_array().unwrap().len(), 3);

    let v = run_json(
        &[
            "dual",
            "--quiver",
            &q,
            "--relations",
            &data("no-relations.json"),
            "--max-degree",
            "3",
        ],
        0,
    );
    assert_eq!(v["dualRelations"]["relations"].as_array().unwrap().len(), 4);
    assert_eq!(dims(&v, "dualDims"), [1, 2, 0, 0]);

    let v = run_json(
        &[
            "dual",
            "--quiver",
            &q,
            "--relations",
            &data("quantum-plane.json"),
            "--max-degree",
            "3",
        ],
        0,
    );
    assert_eq!(v["status"], "pass");
}

#[test]
fn verify_and_coact() {
    let k = data("kronecker.json");
    let v = run_json(&["verify", "--quiver", &k, "--max-degree", "3"], 0);
    assert_eq!(v["reports"].as_array().unwrap().len(), 9);

    let coaction = data("kronecker-left-coaction.json");
    let v = run_json(&["coact", "--quiver", &k, "--coaction", &coaction], 0);
    assert_eq!(v["side"], "left");

    // zero one coefficient of the vertex matrix
    let mut doc: Value =
        serde_json::from_str(&std::fs::read_to_string(&coaction).unwrap()).unwrap();
    doc["degrees"][0]["coefficients"][0][1] = Value::from("0");
    let bad = std::env::temp_dir().join(format!("uqsgd-bad-coaction-{}.json", std::process::id()));
    std::fs::write(&bad, doc.to_string()).unwrap();
    let v = run_json(
        &["coact", "--quiver", &k, "--coaction", bad.to_str().unwrap()],
        1,
    );
    assert_eq!(v["status"], "fail");
    std::fs::remove_file(bad).unwrap();
}

#[test]
fn output_is_deterministic() {
    let args = [
        "uqsgd",
        "--quiver",
        &data("three-loop.json"),
        "--relations",
        &data("commutators-3.json"),
        "--max-degree",
        "3",
    ];
    let run_with = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_uqsgd"))
            .args(args)
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .unwrap()
    };
    let a = run_with("1");
    let b = run_with("4");
    let c = run_with("4");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(b.stdout, c.stdout);
}

#[test]
fn out_flag_and_human_rendering() {
    let out = std::env::temp_dir().join(format!("uqsgd-face-{}.txt", std::process::id()));
    let o = run(&[
        "face",
        "--quiver",
        &data("kronecker.json"),
        "--human",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("face (max degree 4): PASS"));
    assert!(text.contains("weak bialgebra axioms: PASS"));
    std::fs::remove_file(out).unwrap();
}
