use std::path::Path;
use std::time::Instant;

use c2j_core::bench::load_corpus;
use c2j_core::diff_verify::{
    compare, verify, Candidate, FailureCategory, Outcome, RunCache, ToolchainConfig, Verification,
};
use serde::Deserialize;

fn check(
    c: &str,
    class: &str,
    java: &str,
    test: Option<&str>,
    cfg: &ToolchainConfig,
    dir: &Path,
) -> Verification {
    verify(
        Candidate {
            c_text: c,
            stem: "prog",
            class_name: class,
            java_text: java,
            test_id: test,
        },
        dir,
        cfg,
        &RunCache::new(None),
    )
}

const HELLO_C: &str =
    "#include <stdio.h>\nint main(void) {\n    printf(\"hello\\n\");\n    return 0;\n}\n";

fn hello_java(body: &str) -> String {
    format!("public class Hello {{\n    public static void main(String[] args) {{\n        {body}\n    }}\n}}\n")
}

#[test]
fn identical_output_passes() {
    let dir = tempfile::tempdir().unwrap();
    let v = check(
        HELLO_C,
        "Hello",
        &hello_java("System.out.print(\"hello\\n\");"),
        None,
        &ToolchainConfig::default(),
        dir.path(),
    );
    assert_eq!(v.verdict.outcome, Outcome::Pass, "{}", v.verdict.evidence);
    assert_eq!(v.verdict.category, None);
}

#[test]
fn missing_trailing_newline_is_a_mismatch_at_the_end() {
    let dir = tempfile::tempdir().unwrap();
    let v = check(
        HELLO_C,
        "Hello",
        &hello_java("System.out.print(\"hello\");"),
        None,
        &ToolchainConfig::default(),
        dir.path(),
    );
    assert_eq!(v.verdict.outcome, Outcome::OutputMismatch);
    assert_eq!(v.verdict.divergence, Some(5));
    assert_eq!(v.verdict.category, Some(FailureCategory::SemanticLogic));
}

#[test]
fn compare_reports_first_differing_byte() {
    assert!(compare(b"abc\n", b"abc\n").passed());
    assert_eq!(compare(b"abc\n", b"abd\n").divergence, Some(2));
    assert_eq!(compare(b"abc", b"abc\n").divergence, Some(3));
    assert_eq!(compare(b"", b"x").divergence, Some(0));
    // Symmetric in where it points.
    assert_eq!(
        compare(b"abc\n", b"abc").divergence,
        compare(b"abc", b"abc\n").divergence
    );
}

#[test]
fn c_syntax_error_is_c_compile_fail() {
    let dir = tempfile::tempdir().unwrap();
    let v = check(
        "int main(void) { return 0 }\n",
        "Hello",
        &hello_java(""),
        None,
        &ToolchainConfig::default(),
        dir.path(),
    );
    assert_eq!(v.verdict.outcome, Outcome::CCompileFail);
    assert!(v.java.is_none());
}

#[test]
fn infinite_java_loop_times_out() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ToolchainConfig {
        run_timeout_s: 2.0,
        ..ToolchainConfig::default()
    };
    let start = Instant::now();
    let v = check(
        HELLO_C,
        "Hello",
        &hello_java("while (true) { }"),
        None,
        &cfg,
        dir.path(),
    );
    let run = v.java.as_ref().unwrap().run.as_ref().unwrap();
    assert_eq!(v.verdict.outcome, Outcome::Timeout);
    assert!(run.timed_out);
    assert!(
        run.duration_s < cfg.run_timeout_s + 2.0,
        "{}",
        run.duration_s
    );
    // The whole verification including both compiles stays bounded too.
    assert!(start.elapsed().as_secs_f64() < cfg.compile_timeout_s);
}

#[test]
fn exit_code_difference_alone_still_passes() {
    let dir = tempfile::tempdir().unwrap();
    let v = check(
        HELLO_C,
        "Hello",
        &hello_java("System.out.print(\"hello\\n\"); System.exit(3);"),
        None,
        &ToolchainConfig::default(),
        dir.path(),
    );
    assert_eq!(v.verdict.outcome, Outcome::Pass);
    assert!(v.verdict.evidence.contains("exit codes differ"));
}

#[derive(Deserialize)]
struct Fixture {
    file: String,
    test: String,
    outcomes: Vec<Outcome>,
    category: FailureCategory,
}

#[test]
fn failure_fixtures_classify_as_labelled() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/failures");
    let manifest: Vec<Fixture> =
        serde_json::from_str(&std::fs::read_to_string(root.join("manifest.json")).unwrap())
            .unwrap();
    let corpus = load_corpus().unwrap();
    let cfg = ToolchainConfig::default();
    let cache = RunCache::new(None);
    let work = tempfile::tempdir().unwrap();
    let mut wrong = Vec::new();
    for f in &manifest {
        let case = corpus.iter().find(|c| c.id == f.test).unwrap();
        let java = std::fs::read_to_string(root.join(&f.file)).unwrap();
        let v = verify(
            Candidate {
                c_text: &case.c_source,
                stem: case.stem(),
                class_name: case.stem(),
                java_text: &java,
                test_id: Some(&f.test),
            },
            &work.path().join(&f.file),
            &cfg,
            &cache,
        );
        if !f.outcomes.contains(&v.verdict.outcome) || v.verdict.category != Some(f.category) {
            wrong.push(format!(
                "{}: got {:?}/{:?} ({})",
                f.file, v.verdict.outcome, v.verdict.category, v.verdict.evidence
            ));
        }
    }
    assert!(wrong.is_empty(), "{wrong:#?}");
}
