use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_excedance"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_ok(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn first_line(args: &[&str]) -> String {
    stdout_ok(args).lines().next().unwrap_or_default().to_string()
}

#[test]
fn stats_examples() {
    let out = stdout_ok(&["stats", "--r", "3", "3,1^1,2^2"]);
    assert!(out.contains("exc=6\n"), "{out}");
    assert!(out.contains("Exc={1^2,2^2,3^2,1^1,3^1,1}"), "{out}");

    let out = stdout_ok(&["stats", "--r", "3", "1^1,3^2,4,2^1"]);
    assert!(out.contains("exc_A=1\n") && out.contains("csum=4\n") && out.contains("Exc_A={3}"), "{out}");

    let out = stdout_ok(&["stats", "--r", "2", "1,2,3"]);
    assert!(out.contains("exc=0\nexc_A=0\ncsum=0\n"), "{out}");
}

#[test]
fn stats_json() {
    let out = stdout_ok(&["stats", "--r", "3", "--format", "json", "1^1,3^2,4,2^1"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["csum"], 4);
    assert_eq!(v["exc_A"], 1);
    assert_eq!(v["exc_A_set"], serde_json::json!([3]));
}

#[test]
fn dist_examples() {
    assert_eq!(first_line(&["dist", "--r", "2", "--n", "2", "--target", "exc", "--method", "brute"]), "1,3,3,1");
    assert_eq!(first_line(&["dist", "--r", "3", "--n", "1", "--target", "excA", "--method", "closed"]), "3");
    assert_eq!(
        first_line(&["dist", "--r", "1", "--n", "4", "--target", "excA", "--method", "explicit"]),
        "1,11,11,1"
    );
}

#[test]
fn dist_methods_agree() {
    for (r, n) in [("2", "4"), ("3", "3")] {
        let rows: Vec<String> = ["brute", "dp", "closed", "explicit"]
            .iter()
            .map(|m| first_line(&["dist", "--r", r, "--n", n, "--target", "excA", "--method", m]))
            .collect();
        assert!(rows.windows(2).all(|w| w[0] == w[1]), "{rows:?}");
        let exc: Vec<String> = ["brute", "dp"]
            .iter()
            .map(|m| first_line(&["dist", "--r", r, "--n", n, "--method", m]))
            .collect();
        assert_eq!(exc[0], exc[1]);
    }
}

#[test]
fn dist_closed_for_exc_is_usage_error() {
    for method in ["closed", "explicit"] {
        let out = run(&["dist", "--r", "2", "--n", "2", "--target", "exc", "--method", method]);
        assert_eq!(out.status.code(), Some(2));
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn dist_formats() {
    let csv = stdout_ok(&["dist", "--r", "2", "--n", "2", "--format", "csv"]);
    assert_eq!(csv, "k,count\n0,1\n1,3\n2,3\n3,1\n");
    let json = stdout_ok(&["dist", "--r", "2", "--n", "2", "--target", "excA", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["values"], serde_json::json!(["6", "2"]));
}

#[test]
fn joint_examples() {
    let out = stdout_ok(&["joint", "--r", "2", "--n", "2", "--method", "dp"]);
    assert_eq!(out, "i\\k,0,1\n0,1,1\n1,3,1\n2,2,0\n");
    assert_eq!(out, stdout_ok(&["joint", "--r", "2", "--n", "2", "--method", "brute"]));

    assert_eq!(stdout_ok(&["joint", "--r", "1", "--n", "3"]), "i\\k,0,1,2\n0,1,4,1\n");
    assert_eq!(stdout_ok(&["joint", "--r", "2", "--n", "1"]), "i\\k,0\n0,1\n1,1\n");
}

#[test]
fn joint_json_counts_are_strings() {
    let out = stdout_ok(&["joint", "--r", "2", "--n", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let entries = v["entries"].as_array().unwrap();
    assert!(entries.iter().all(|e| e["count"].is_string()));
    assert_eq!(entries[0], serde_json::json!({"i": 0, "k": 0, "count": "1"}));
}

#[test]
fn poly_examples() {
    assert_eq!(stdout_ok(&["poly", "--r", "2", "--n", "2"]), "6 + 2*t\n");
    assert_eq!(stdout_ok(&["poly", "--r", "5", "--n", "1"]), "5\n");
    assert_eq!(stdout_ok(&["poly", "--r", "1", "--n", "4"]), "1 + 11*t + 11*t^2 + t^3\n");
}

#[test]
fn bijection_example_and_round_trip() {
    let image = first_line(&["bijection", "--r", "3", "2^1,1^2,4^1,3"]);
    assert_eq!(image, "1^2,4^1,3^2,2^2");
    assert_eq!(first_line(&["bijection", "--r", "3", &image]), "2^1,1^2,4^1,3");
}

#[test]
fn bijection_of_identity_is_full_excedance() {
    let out = stdout_ok(&["bijection", "--r", "2", "--format", "json", "1,2,3"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["exc_input"], 0);
    assert_eq!(v["exc_image"], 5);
}

#[test]
fn check_all_passes() {
    let out = stdout_ok(&["check", "--r-max", "3", "--n-max", "5", "--suite", "all"]);
    assert!(out.lines().last().unwrap().starts_with("PASS"), "{out}");
    assert!(!out.contains("FAIL"));
}

#[test]
fn check_logconcave() {
    let out = stdout_ok(&["check", "--suite", "logconcave", "--r-max", "2", "--n-max", "8", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["verdicts"].as_array().unwrap().len(), 2 * 2 * 8);
}

#[test]
fn injected_fault_fails_with_counterexample() {
    let out = run(&["check", "--r-max", "2", "--n-max", "4", "--suite", "recursion", "--inject-fault", "colored-drop:-1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], false);
    let failed = v["verdicts"].as_array().unwrap().iter().find(|v| v["pass"] == false).unwrap();
    assert!(failed["counterexample"].is_string());
}

#[test]
fn bad_fault_spec_is_usage_error() {
    assert_eq!(run(&["check", "--r-max", "2", "--n-max", "2", "--inject-fault", "nope"]).status.code(), Some(2));
}

#[test]
fn parse_errors_exit_2() {
    for (r, window) in [("2", "1,1"), ("2", "1^2,2"), ("2", "1,x"), ("2", ""), ("3", "0,1")] {
        let out = run(&["stats", "--r", r, window]);
        assert_eq!(out.status.code(), Some(2), "{window:?}");
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(run(&["dist", "--r", "0", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["poly", "--r", "2"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let cases: [&[&str]; 3] = [
        &["joint", "--r", "3", "--n", "4", "--method", "brute", "--format", "json"],
        &["check", "--r-max", "2", "--n-max", "4", "--suite", "symmetry", "--format", "json"],
        &["dist", "--r", "3", "--n", "5", "--method", "brute", "--format", "csv", "--threads", "2"],
    ];
    for args in cases {
        assert_eq!(stdout_ok(args), stdout_ok(args), "{args:?}");
    }
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("excedance-cli-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    assert_eq!(stdout_ok(&["dist", "--r", "1", "--n", "3", "--format", "csv", "--out", p]), "");
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "k,count\n0,1\n1,4\n2,1\n");
    std::fs::remove_file(path).unwrap();
}
