use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triplepoint"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_coordinate_points() {
    let o = run(&[
        "verify",
        "--dataset",
        "coordinate-points",
        "--m",
        "2",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["points"], 3);
    assert_eq!(report["form_in_power"], "not-in-power");
    assert_eq!(report["confirmed"], true);
}

#[test]
fn bad_input_exits_with_two() {
    assert_eq!(run(&["verify", "--n", "7"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--dataset", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    assert_eq!(
        run(&["hilbert", "--n", "12", "--field", "sideways"])
            .status
            .code(),
        Some(2)
    );
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("h.svg");
    let o = run(&["render", "--dataset", "dual-hesse", "--svg", path(&svg)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not real"));
}

#[test]
fn certificate_round_trip_and_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("hesse.json");
    let o = run(&[
        "verify",
        "--dataset",
        "dual-hesse",
        "--emit-cert",
        path(&cert),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = run(&["certificate", "--verify", path(&cert), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let checks: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(checks["passed"], true);

    let mut value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    let zeros = serde_json::json!(["0", "0"]);
    for c in value["dual_functional"]["coeffs"].as_array_mut().unwrap() {
        *c = zeros.clone();
    }
    let tampered = dir.path().join("tampered.json");
    std::fs::write(&tampered, serde_json::to_string(&value).unwrap()).unwrap();
    let o = run(&["certificate", "--verify", path(&tampered)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stderr(&o).contains("4_dual_separates_form"),
        "{}",
        stderr(&o)
    );

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "not json").unwrap();
    assert_eq!(
        run(&["certificate", "--verify", path(&garbage)])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "certificate",
            "--verify",
            path(&dir.path().join("missing.json"))
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("fp12.svg");
    let o = run(&["render", "--n", "12", "--svg", path(&svg)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<line ").count(), 12);
    assert!(stdout(&o).contains("19 dots"));

    let subset = dir.path().join("sub.svg");
    let o = run(&[
        "render",
        "--n",
        "12",
        "--lines",
        "0,1,2,3,4,5,6,7,8",
        "--show-ordinary",
        "--viewbox",
        "-3,-3,6,6",
        "--svg",
        path(&subset),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        std::fs::read_to_string(&subset)
            .unwrap()
            .matches("<line ")
            .count(),
        9
    );
    assert_eq!(
        run(&[
            "render",
            "--n",
            "12",
            "--lines",
            "40",
            "--svg",
            path(&subset)
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn config_build_and_render_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("fp12.json");
    let o = run(&["config", "build", "--n", "12", "--out", path(&cfg)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cfg).unwrap()).unwrap();
    assert_eq!(value["lines"].as_array().unwrap().len(), 12);
    assert_eq!(value["marked_points"].as_array().unwrap().len(), 19);

    let svg = dir.path().join("from_file.svg");
    let o = run(&["render", "--arrangement", path(&cfg), "--svg", path(&svg)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let o = run(&["config", "triples", "--dataset", "dual-hesse", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let points: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let points = points.as_array().unwrap();
    assert_eq!(points.len(), 12);
    assert!(points
        .iter()
        .all(|p| p["lines"].as_array().unwrap().len() == 3));
}

#[test]
fn hilbert_and_scan() {
    let o = run(&[
        "hilbert",
        "--dataset",
        "coordinate-points",
        "--max-degree",
        "3",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let h: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        h["table"],
        serde_json::json!([[0, 0], [1, 0], [2, 3], [3, 7]])
    );

    let o = run(&["scan", "--n", "12", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows[0]["triple_points"], 19);
    assert_eq!(rows[0]["contained"], false);
}
