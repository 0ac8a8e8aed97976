use std::process::{Command, Output};

fn modrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modrep"))
        .args(args)
        .env_remove("CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = modrep(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn partition_commands() {
    assert_eq!(stdout(&["partition", "mullineux", "--p", "3", "(3,2,2)"]), "(5,1,1)\n");
    assert_eq!(stdout(&["partition", "js", "--p", "2", "(5,3,1)"]), "true\n");
    assert_eq!(stdout(&["partition", "special", "beta", "10"]), "(6,4)\n");
    assert_eq!(stdout(&["partition", "special", "alpha", "7"]), "(6,1)\n");
    assert_eq!(stdout(&["partition", "regular", "--p", "2", "(2,2)"]), "false\n");
}

#[test]
fn module_commands() {
    assert_eq!(stdout(&["module", "dim", "--p", "2", "D", "(6,4)"]), "16\n");
    assert_eq!(stdout(&["module", "fixed", "--p", "2", "S1dual", "--group", "wreath:3:2"]), "1\n");
    let factors = stdout(&["module", "factors", "--p", "2", "M3", "--n", "9"]);
    assert!(factors.contains("D(9) x 2"), "{factors}");
    assert_eq!(stdout(&["module", "hom", "--p", "2", "--n", "6", "M1", "M1"]), "2\n");
}

#[test]
fn classify_reports_cases_and_certificate() {
    let out = stdout(&["classify", "--p", "2", "--n", "10", "--lambda", "(6,4)", "--group", "wreath:5:2"]);
    assert!(out.contains("A(vi)"), "{out}");
    let out = stdout(&[
        "--format", "json", "classify", "--p", "2", "--n", "10", "--lambda", "(9,1)", "--group", "wreath:5:2", "--ground-truth",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["ground_truth"], "AbsIrr");
    assert_eq!(v["result"]["consistent"], true);
    assert_eq!(v["result"]["natural"]["irreducible"], true);
    assert!(v["result"]["reduction"].to_string().contains("A(v)"));
}

#[test]
fn survey_is_consistent_and_reproducible() {
    let args = ["--format", "json", "survey", "--p", "2", "--n", "8", "--families", "An,young,wreath"];
    let first = stdout(&args);
    assert_eq!(first, stdout(&args));
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["meta"]["seed"], 0);
    let cells = v["result"]["cells"].as_array().unwrap();
    assert!(!cells.is_empty());
    assert!(cells.iter().all(|c| c["consistent"] == true));
    let csv = stdout(&["--format", "csv", "survey", "--p", "2", "--n", "8", "--families", "wreath"]);
    assert!(csv.starts_with("lambda,group,"), "{csv}");
}

#[test]
fn survey_writes_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let path_str = path.to_str().unwrap();
    stdout(&["--format", "json", "survey", "--p", "3", "--n", "6", "--families", "An", "--out", path_str]);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["meta"]["command"], "survey");
}

#[test]
fn config_file_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("modrep.conf");
    std::fs::write(&cfg, "seed = 9\nformat = json\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&["--config", cfg, "partition", "special", "beta", "8"])).unwrap();
    assert_eq!(v["meta"]["seed"], 9);
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["--config", cfg, "--seed", "3", "partition", "special", "beta", "8"])).unwrap();
    assert_eq!(v["meta"]["seed"], 3);
}

#[test]
fn exit_codes() {
    assert_eq!(modrep(&["partition", "mullineux", "--p", "2", "(2,2)"]).status.code(), Some(2));
    assert_eq!(modrep(&["classify", "--p", "2", "--n", "10", "--lambda", "(6,4)", "--group", "bogus"]).status.code(), Some(2));
    assert_eq!(modrep(&["--dim-cap", "5", "module", "factors", "--p", "2", "M3", "--n", "9"]).status.code(), Some(3));
    assert_eq!(modrep(&["verify", "crystal", "--n", "10", "--p", "2"]).status.code(), Some(0));
    assert_eq!(modrep(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn x_elements_print_both_computations() {
    let out = modrep(&["verify", "x-elements"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("x2 (e1 + e2)"), "{text}");
    assert!(text.contains("x3 (v1^v2)"), "{text}");
}
