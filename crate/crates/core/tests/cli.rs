use std::process::Command;

fn qweight(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qweight"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn lists_statement_ids() {
    let (code, text) = qweight(&["list"]);
    assert_eq!(code, 0);
    for id in ["dyson", "conj-2.1", "prop-5.1", "A1", "prop-A2"] {
        assert!(text.lines().any(|l| l.starts_with(id)), "missing {id}");
    }
}

#[test]
fn structured_report_is_json_lines() {
    let (code, text) = qweight(&[
        "verify",
        "dyson",
        "--n0",
        "2",
        "--lam",
        "1",
        "--no-cache",
        "--report",
        "structured",
    ]);
    assert_eq!(code, 0);
    let rows: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["verdict"], "verified");
    assert_eq!(rows[0]["statement"], "dyson");
    assert_eq!(rows[0]["spots"].as_array().unwrap().len(), 3);
}

#[test]
fn reported_mismatches_exit_two() {
    let (code, text) = qweight(&["verify", "prop-A2", "-k", "2", "--no-cache"]);
    assert_eq!(code, 2);
    assert!(text.contains("mismatch-reported"));
}

#[test]
fn unknown_statement_is_an_error() {
    let (code, _) = qweight(&["verify", "nope", "--no-cache"]);
    assert_eq!(code, 3);
}

#[test]
fn cache_directory_is_populated() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let args = [
        "verify",
        "macdonald",
        "--n0",
        "2",
        "--cache-dir",
        path,
        "--report",
        "structured",
    ];
    let (code, first) = qweight(&args);
    assert_eq!(code, 0);
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let (_, second) = qweight(&args);
    let untimed = |s: &str| {
        s.lines()
            .map(|l| {
                let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
                v.as_object_mut().unwrap().remove("ms");
                v
            })
            .collect::<Vec<_>>()
    };
    assert_eq!(untimed(&first), untimed(&second));
}
