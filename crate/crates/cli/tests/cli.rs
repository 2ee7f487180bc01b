use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bayesnet"))
}

fn raw_data() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/cleveland.data")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Preprocess the bundled data and fit the fixed structure with MLE.
fn fixed_model(dir: &Path) -> PathBuf {
    let table = dir.join("heart.csv");
    let model = dir.join("paper.json");
    ok(&["preprocess", "--input", s(&raw_data()), "--output", s(&table)]);
    ok(&[
        "learn",
        "--data",
        s(&table),
        "--method",
        "paper",
        "--estimator",
        "mle",
        "--out",
        s(&model),
    ]);
    model
}

fn posterior_line(stdout: &str) -> Vec<f64> {
    stdout
        .lines()
        .nth(1)
        .unwrap()
        .split_whitespace()
        .map(|t| t.rsplit('=').next().unwrap().parse().unwrap())
        .collect()
}

#[test]
fn predict_thal_reversible_defect() {
    let dir = tempfile::tempdir().unwrap();
    let model = fixed_model(dir.path());
    let out = ok(&["predict", "--model", s(&model), "--evidence", "thal=2"]);
    assert_eq!(out.lines().next().unwrap(), "target=1");
    let post = posterior_line(&out);
    assert!((post[0] - 0.2347826).abs() < 1e-7, "{out}");
    assert!((post[1] - 0.7652174).abs() < 1e-7, "{out}");
}

#[test]
fn model_file_keeps_exact_ratios() {
    let dir = tempfile::tempdir().unwrap();
    let model = fixed_model(dir.path());
    let text = std::fs::read_to_string(&model).unwrap();
    // P(sex = 1) = 201 / 297 and P(target = 1 | thal = 2) = 88 / 115.
    for (num, den) in [(201.0, 297.0), (88.0, 115.0)] {
        let want: f64 = num / den;
        let found = text
            .split('"')
            .filter_map(|t| t.parse::<f64>().ok())
            .any(|x| x.to_bits() == want.to_bits());
        assert!(found, "{num}/{den} not stored exactly");
    }
}

#[test]
fn dsep_isolated_node() {
    let dir = tempfile::tempdir().unwrap();
    let model = fixed_model(dir.path());
    assert_eq!(
        ok(&["dsep", "--model", s(&model), "--x", "fbs", "--y", "target"]).trim(),
        "true"
    );
    assert_eq!(
        ok(&["dsep", "--model", s(&model), "--x", "sex", "--y", "target"]).trim(),
        "false"
    );
    assert_eq!(
        ok(&[
            "dsep",
            "--model",
            s(&model),
            "--x",
            "sex",
            "--y",
            "target",
            "--given",
            "thal"
        ])
        .trim(),
        "true"
    );
}

#[test]
fn export_dot_edge_count() {
    let dir = tempfile::tempdir().unwrap();
    let model = fixed_model(dir.path());
    let dot = dir.path().join("paper.dot");
    ok(&["export-dot", "--model", s(&model), "--out", s(&dot)]);
    let text = std::fs::read_to_string(dot).unwrap();
    assert!(text.starts_with("digraph {"));
    assert_eq!(text.lines().filter(|l| l.contains("->")).count(), 12);
    assert!(text.contains("\"thal\" -> \"target\";"));
}

#[test]
fn evaluate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    fixed_model(dir.path());
    let table = dir.path().join("heart.csv");
    let reports: Vec<String> = (0..2)
        .map(|i| {
            let report = dir.path().join(format!("r{i}.json"));
            ok(&[
                "evaluate",
                "--data",
                s(&table),
                "--method",
                "paper",
                "--ratio",
                "0.8",
                "--seeds",
                "3,1,2",
                "--report",
                s(&report),
            ]);
            std::fs::read_to_string(report).unwrap()
        })
        .collect();
    assert_eq!(reports[0], reports[1]);
    assert!(reports[0].contains("\"model_kind\": \"bn-paper\""));
    assert!(reports[0].contains("\"test_rows\": 60"));
}

#[test]
fn learned_and_nb_models_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    fixed_model(dir.path());
    let table = dir.path().join("heart.csv");
    for method in ["hc", "pc", "hybrid", "nb"] {
        let model = dir.path().join(format!("{method}.json"));
        ok(&[
            "learn",
            "--data",
            s(&table),
            "--method",
            method,
            "--estimator",
            "bayes",
            "--out",
            s(&model),
        ]);
        let out = ok(&["predict", "--model", s(&model), "--evidence", "cp=3,thal=2,ca=1"]);
        let post = posterior_line(&out);
        assert!((post.iter().sum::<f64>() - 1.0).abs() < 1e-6, "{method}: {out}");
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let model = fixed_model(dir.path());

    let usage = run(&["frobnicate"]);
    assert_eq!(usage.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&usage.stderr).trim().lines().count(), 1);

    let unknown_flag = run(&["predict", "--model", s(&model), "--bogus"]);
    assert_eq!(unknown_flag.status.code(), Some(1));

    let bad_syntax = run(&["predict", "--model", s(&model), "--evidence", "thal"]);
    assert_eq!(bad_syntax.status.code(), Some(1));

    let missing = run(&["predict", "--model", s(&dir.path().join("none.json"))]);
    assert_eq!(missing.status.code(), Some(2));
    assert_eq!(String::from_utf8_lossy(&missing.stderr).trim().lines().count(), 1);

    let bad_state = run(&["predict", "--model", s(&model), "--evidence", "thal=9"]);
    assert_eq!(bad_state.status.code(), Some(2));

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{not json").unwrap();
    assert_eq!(
        run(&["dsep", "--model", s(&garbage), "--x", "a", "--y", "b"])
            .status
            .code(),
        Some(2)
    );

    let no_dir = dir.path().join("missing/out.csv");
    let out = run(&["preprocess", "--input", s(&raw_data()), "--output", s(&no_dir)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn custom_cutpoints() {
    let dir = tempfile::tempdir().unwrap();
    let cut = dir.path().join("cut.json");
    std::fs::write(
        &cut,
        r#"{"age":[50,60],"trestbps":[120,140],"chol":[200,240],"thalach":[150],"oldpeak":[1.0],"thalach_basis":"raw"}"#,
    )
    .unwrap();
    let table = dir.path().join("t.csv");
    ok(&[
        "preprocess",
        "--input",
        s(&raw_data()),
        "--output",
        s(&table),
        "--cutpoints",
        s(&cut),
    ]);
    assert_eq!(std::fs::read_to_string(&table).unwrap().lines().count(), 298);

    std::fs::write(
        &cut,
        r#"{"age":[60,50],"trestbps":[120,140],"chol":[200,240],"thalach":[150],"oldpeak":[1.0]}"#,
    )
    .unwrap();
    let out = run(&[
        "preprocess",
        "--input",
        s(&raw_data()),
        "--output",
        s(&table),
        "--cutpoints",
        s(&cut),
    ]);
    assert_eq!(out.status.code(), Some(2));
}
