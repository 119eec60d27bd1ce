use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus(n: usize) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("../core/corpus/test_{n}.c"))
}

fn c2j(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_c2j"))
        .args(args)
        .current_dir(dir)
        .env_remove("C2J_CC")
        .env_remove("C2J_JAVAC")
        .env_remove("C2J_JAVA")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn analyze_lists_parts_and_rules() {
    let dir = tempfile::tempdir().unwrap();
    let o = c2j(dir.path(), &["analyze", corpus(1).to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("functions: 1\n  main [R-ptr]\n"), "{text}");
    assert!(text.contains("rules: [R-ptr]"));

    let o = c2j(
        dir.path(),
        &["analyze", "--json", corpus(3).to_str().unwrap()],
    );
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["records"][0], "union Converter");
    assert!(v["rules"]
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r == "R-union"));
}

#[test]
fn analyze_empty_and_unsupported_files() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("empty.c"), "").unwrap();
    let o = c2j(dir.path(), &["analyze", "--json", "empty.c"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for key in [
        "includes",
        "macros",
        "globals",
        "records",
        "typedefs",
        "prototypes",
        "functions",
        "rules",
    ] {
        assert_eq!(v[key].as_array().unwrap().len(), 0, "{key}");
    }

    std::fs::write(
        dir.path().join("asm.c"),
        "int main(void) {\n    return ({ 1; });\n}\n",
    )
    .unwrap();
    let o = c2j(dir.path(), &["analyze", "asm.c"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("asm.c:2:"), "{}", stderr(&o));

    let o = c2j(dir.path(), &["analyze", "missing.c"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn translate_then_verify_with_the_rule_engine() {
    let dir = tempfile::tempdir().unwrap();
    let t3 = corpus(3);
    let o = c2j(
        dir.path(),
        &[
            "translate",
            t3.to_str().unwrap(),
            "--backend",
            "rule_engine",
            "--out",
            "gen",
        ],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let java = std::fs::read_to_string(dir.path().join("gen/test_3.java")).unwrap();
    assert!(java.starts_with("public class test_3 {"));
    assert!(!java.contains("class Converter"), "{java}");

    let o = c2j(
        dir.path(),
        &["verify", t3.to_str().unwrap(), "gen/test_3.java"],
    );
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).starts_with("Pass"));
}

#[test]
fn verify_reports_mismatch_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("hi.c"),
        "#include <stdio.h>\nint main(void) { printf(\"hi\\n\"); return 0; }\n",
    )
    .unwrap();
    std::fs::write(
        dir.path().join("Hi.java"),
        "public class Hi {\n    public static void main(String[] args) {\n        System.out.print(\"hi\");\n    }\n}\n",
    )
    .unwrap();
    let o = c2j(dir.path(), &["verify", "hi.c", "Hi.java", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"]["outcome"], "OutputMismatch");
    assert_eq!(v["verdict"]["divergence"], 2);
    assert_eq!(v["verdict"]["category"], "semantic_logic");
}

#[test]
fn unknown_backend_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = c2j(
        dir.path(),
        &[
            "translate",
            corpus(1).to_str().unwrap(),
            "--backend",
            "gpt-9",
        ],
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown backend 'gpt-9'"));
    let o = c2j(dir.path(), &["bench", "--backend", "gpt-9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_config_files_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("typo.toml"), "paralelism = 2\n").unwrap();
    let o = c2j(dir.path(), &["bench", "--config", "typo.toml"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown field"), "{}", stderr(&o));
    std::fs::write(
        dir.path().join("c2j.toml"),
        "[toolchain]\nrun_timeout_s = -1.0\n",
    )
    .unwrap();
    let o = c2j(dir.path(), &["bench"]);
    assert_eq!(o.status.code(), Some(2));
    let o = c2j(dir.path(), &["bench", "--config", "absent.toml"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_compiler_aborts_before_running() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_c2j"))
        .arg("bench")
        .current_dir(dir.path())
        .env("C2J_CC", "/nonexistent/cc")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("/nonexistent/cc"));
    assert!(!dir.path().join("runs").exists());
    assert!(!dir.path().join("results").exists());
}

#[test]
fn report_renders_a_saved_matrix() {
    use c2j_core::bench::{Cell, Metadata, ResultMatrix, SCHEMA_VERSION};
    use c2j_core::diff_verify::{Outcome, Verdict};

    let m = ResultMatrix {
        schema_version: SCHEMA_VERSION,
        backends: vec!["m".into()],
        tests: vec!["T1".into(), "T2".into()],
        cells: vec![
            Cell {
                backend: "m".into(),
                test: "T1".into(),
                verdict: Verdict::new(Outcome::Pass, ""),
                duration_s: 0.5,
            },
            Cell {
                backend: "m".into(),
                test: "T2".into(),
                verdict: Verdict::new(Outcome::JavaCompileFail, "x"),
                duration_s: 0.5,
            },
        ],
        metadata: Metadata::default(),
    };
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("m.json"), serde_json::to_vec(&m).unwrap()).unwrap();
    let o = c2j(dir.path(), &["report", "m.json", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o).lines().nth(2).unwrap(),
        "m,T2,JavaCompileFail,,0.500"
    );
    let o = c2j(dir.path(), &["report", "m.json", "--format", "markdown"]);
    assert!(stdout(&o).contains("| m | 1 |"), "{}", stdout(&o));
    let o = c2j(dir.path(), &["report", "m.json", "--format", "yaml"]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::write(dir.path().join("junk.json"), "{}").unwrap();
    let o = c2j(dir.path(), &["report", "junk.json", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
}
