use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tripartite"))
}

#[test]
fn evolve_prints_csv() {
    let out = bin()
        .args([
            "evolve",
            "--state",
            "ghz1",
            "--a2",
            "0.2",
            "--lambda-ratio",
            "3",
            "--tmax",
            "2",
            "--steps",
            "5",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines[0].starts_with("gamma0_t,a2,P_t,"));
    assert!(lines[0].ends_with(",closed_form_pi,abs_gap"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{"state": {"family": "w2"}, "lambda_ratio": 0.01, "time_grid": {"t_max": 10, "steps": 4}}"#,
    )
    .unwrap();
    let out_path = dir.path().join("out.json");
    let status = bin()
        .args(["evolve", "--config"])
        .arg(&cfg)
        .args(["--steps", "3", "--format", "json", "--out"])
        .arg(&out_path)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["metadata"]["state_family"], "w2");
    assert_eq!(v["metadata"]["lambda_ratio"], 0.01);
    assert_eq!(
        v["columns"]["gamma0_t"],
        serde_json::json!([0.0, 5.0, 10.0])
    );
}

#[test]
fn sweep_defaults_to_a2_grid() {
    let out = bin()
        .args([
            "sweep",
            "--state",
            "ghz2",
            "--lambda-ratio",
            "3",
            "--steps",
            "2",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().lines().count(),
        1 + 51 * 2
    );
}

#[test]
fn figure_writes_three_files() {
    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args(["figure", "6a", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    for f in ["fig6a.csv", "fig6a_long.csv", "fig6a_meta.json"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
}

#[test]
fn audit_exit_codes() {
    let ok = bin().args(["audit"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8(ok.stdout)
        .unwrap()
        .contains("audit passed"));
    let strict = bin()
        .args(["audit", "--tolerance", "1e-300"])
        .output()
        .unwrap();
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["evolve", "--state", "ghz9", "--lambda-ratio", "3"],
        vec!["evolve", "--state", "ghz1"],
        vec!["evolve", "--bogus"],
        vec!["figure", "7z"],
        vec![
            "evolve",
            "--state",
            "ghz1",
            "--lambda-ratio",
            "3",
            "--format",
            "xml",
        ],
        vec!["audit", "--tolerance", "0"],
        vec![],
    ] {
        let out = bin().args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}
