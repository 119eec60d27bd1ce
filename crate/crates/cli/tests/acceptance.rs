//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits nonzero if any fails. Tolerances are fixed constants below.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use c2j_core::bench::{
    fixtures, load_corpus, read_matrix, report, run_matrix, scripted_backend, tier, tier_report,
    MatrixConfig, ReportFormat, ResultMatrix,
};
use c2j_core::diff_verify::{
    verify, Candidate, FailureCategory, Outcome, RunCache, ToolchainConfig,
};
use c2j_core::llm_client::BackendSpec;
use c2j_core::sanitizer::{
    braces_balanced, sanitize, strip_fences_and_prose, DefinitionKind, SanitizeAction,
};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use serde::Deserialize;

#[path = "../../core/tests/common/sanitizer_gen.rs"]
mod sanitizer_gen;

/// Wall-clock budget for the full rule-engine benchmark.
const BENCH_BUDGET: Duration = Duration::from_secs(180);
/// Minimum share of failure fixtures that must classify as labelled.
const CLASSIFY_MIN: f64 = 0.95;
/// Number of generated sanitizer samples, all of which must hold.
const SANITIZER_SAMPLES: u32 = 200;
/// Run timeout for the infinite-loop check and the allowed overshoot.
const LOOP_TIMEOUT_S: f64 = 2.0;
const LOOP_SLACK_S: f64 = 2.0;

type Check = Result<String, String>;
type Criterion = (&'static str, Box<dyn FnOnce() -> Check>);

fn core_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core")
}

fn c2j(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_c2j"))
        .args(args)
        .current_dir(dir)
        .env_remove("C2J_CC")
        .env_remove("C2J_JAVAC")
        .env_remove("C2J_JAVA")
        .output()
        .expect("spawn c2j")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

struct BenchRun {
    dir: tempfile::TempDir,
    matrix: ResultMatrix,
    elapsed: Duration,
}

fn bench_rule_engine() -> Result<BenchRun, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = "parallelism = 4\noutput_dir = \"results\"\nformats = [\"json\", \"markdown\"]\n\n\
               [toolchain]\nworkdir = \"runs\"\n\n[[backends]]\nname = \"rule_engine\"\nkind = \"rule_engine\"\n";
    std::fs::write(dir.path().join("c2j.toml"), cfg).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let o = c2j(dir.path(), &["bench"]);
    let elapsed = start.elapsed();
    ensure(o.status.code() == Some(0), || {
        format!(
            "bench exited {:?}: {}",
            o.status.code(),
            String::from_utf8_lossy(&o.stderr)
        )
    })?;
    let bytes = std::fs::read(dir.path().join("results/matrix.json")).map_err(|e| e.to_string())?;
    let matrix = read_matrix(&bytes).map_err(|e| e.to_string())?;
    Ok(BenchRun {
        dir,
        matrix,
        elapsed,
    })
}

fn criterion_1(run: &Result<BenchRun, String>) -> Check {
    let run = run.as_ref().map_err(Clone::clone)?;
    let m = &run.matrix;
    let failed: Vec<String> = m
        .cells
        .iter()
        .filter(|c| !c.verdict.passed())
        .map(|c| format!("{} {:?}", c.test, c.verdict.outcome))
        .collect();
    ensure(failed.is_empty() && m.cells.len() == 20, || {
        format!("not passing: {failed:?}")
    })?;
    ensure(run.elapsed < BENCH_BUDGET, || {
        format!("took {:.1}s", run.elapsed.as_secs_f64())
    })?;
    Ok(format!("20/20 in {:.1}s", run.elapsed.as_secs_f64()))
}

fn criterion_2() -> Check {
    let work = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut bad = Vec::new();
    for case in load_corpus().map_err(|e| e.to_string())? {
        let c_path = core_dir().join("corpus").join(&case.file_name);
        let c_file = c_path.to_str().unwrap();
        let out = format!("gen_{}", case.id);
        let a = c2j(work.path(), &["analyze", "--json", c_file]);
        let summary: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap_or_default();
        let rule = case.designated_rule.to_string();
        let fired = summary["rules"]
            .as_array()
            .is_some_and(|r| r.iter().any(|x| x == rule.as_str()));
        if !fired {
            bad.push(format!("{}: {rule} did not fire", case.id));
            continue;
        }
        let t = c2j(
            work.path(),
            &[
                "translate",
                c_file,
                "--backend",
                "rule_engine",
                "--out",
                &out,
            ],
        );
        if t.status.code() != Some(0) {
            bad.push(format!(
                "{}: translate exited {:?}",
                case.id,
                t.status.code()
            ));
            continue;
        }
        let java = format!("{out}/{}.java", case.stem());
        let v = c2j(
            work.path(),
            &["verify", c_file, &java, "--test-id", &case.id],
        );
        if v.status.code() != Some(0) {
            bad.push(format!(
                "{}: {}",
                case.id,
                String::from_utf8_lossy(&v.stdout).trim()
            ));
        }
    }
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok("20 tests pass one at a time, each with its designated rule".into())
}

fn criterion_3() -> Check {
    let corpus = load_corpus().map_err(|e| e.to_string())?;
    let work = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = MatrixConfig {
        toolchain: ToolchainConfig::default(),
        run_dir: work.path().to_path_buf(),
        parallelism: 4,
        probed: None,
    };
    let cache = RunCache::new(None);
    let rows: Vec<BackendSpec> = fixtures::MODEL_ROWS
        .iter()
        .map(|(name, row)| scripted_backend(name, row, &corpus))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let m = run_matrix(&rows, &corpus, &cfg, &cache).map_err(|e| e.to_string())?;
    let totals: Vec<usize> = fixtures::MODEL_ROWS.iter().map(|(n, _)| m.total(n)).collect();
    let tiers: Vec<u8> = totals.iter().map(|&t| tier(t) as u8).collect();
    ensure(totals == fixtures::MODEL_TOTALS, || {
        format!("totals {totals:?}")
    })?;
    ensure(tiers == fixtures::MODEL_TIERS, || {
        format!("tiers {tiers:?}")
    })?;

    let roster: Vec<BackendSpec> = fixtures::roster()
        .iter()
        .map(|(name, row)| scripted_backend(name, row, &corpus))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let r = run_matrix(&roster, &corpus, &cfg, &cache).map_err(|e| e.to_string())?;
    let percents: Vec<u32> = tier_report(&r).tests.iter().map(|t| t.percent).collect();
    ensure(percents == fixtures::ROSTER_PERCENTS, || {
        format!("percents {percents:?}")
    })?;
    let bands: BTreeSet<u32> = percents.iter().copied().collect();
    ensure(bands == BTreeSet::from([0, 5, 11, 16, 21, 26]), || {
        format!("bands {bands:?}")
    })?;
    Ok(format!(
        "totals {totals:?}, tiers {tiers:?}, bands {bands:?} over {} backends",
        roster.len()
    ))
}

#[derive(Deserialize)]
struct Fixture {
    file: String,
    test: String,
    outcomes: Vec<Outcome>,
    category: FailureCategory,
}

fn criterion_4() -> Check {
    let root = core_dir().join("tests/fixtures/failures");
    let text = std::fs::read_to_string(root.join("manifest.json")).map_err(|e| e.to_string())?;
    let manifest: Vec<Fixture> = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let corpus = load_corpus().map_err(|e| e.to_string())?;
    let work = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cache = RunCache::new(None);
    let mut misses = Vec::new();
    for f in &manifest {
        let case = corpus
            .iter()
            .find(|c| c.id == f.test)
            .ok_or(format!("no test {}", f.test))?;
        let java = std::fs::read_to_string(root.join(&f.file)).map_err(|e| e.to_string())?;
        let v = verify(
            Candidate {
                c_text: &case.c_source,
                stem: case.stem(),
                class_name: case.stem(),
                java_text: &java,
                test_id: Some(&f.test),
            },
            &work.path().join(&f.file),
            &ToolchainConfig::default(),
            &cache,
        );
        if !f.outcomes.contains(&v.verdict.outcome) || v.verdict.category != Some(f.category) {
            misses.push(format!(
                "{} -> {:?}/{:?}",
                f.file, v.verdict.outcome, v.verdict.category
            ));
        }
    }
    let hit = manifest.len() - misses.len();
    let share = hit as f64 / manifest.len() as f64;
    ensure(share >= CLASSIFY_MIN, || {
        format!("{hit}/{} matched: {}", manifest.len(), misses.join("; "))
    })?;
    Ok(format!(
        "{hit}/{} fixtures matched ({:.0}%)",
        manifest.len(),
        share * 100.0
    ))
}

fn criterion_5() -> Check {
    let mut runner = TestRunner::new_with_rng(
        Config::default(),
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    let strategy = sanitizer_gen::sample();
    let mut bad = Vec::new();
    for i in 0..SANITIZER_SAMPLES {
        let s = strategy
            .new_tree(&mut runner)
            .map_err(|e| e.to_string())?
            .current();
        let r = sanitize(&s.raw, "target", DefinitionKind::Method);
        let Some(out) = r.result else {
            bad.push(format!("#{i}: extraction failed"));
            continue;
        };
        let again = sanitize(&out, "target", DefinitionKind::Method).result;
        let absent = sanitize(&s.raw, "absent", DefinitionKind::Method);
        let checks = [
            ("wrong definition", out == s.target),
            ("not idempotent", again.as_deref() == Some(out.as_str())),
            (
                "not a substring",
                strip_fences_and_prose(&s.raw).contains(&out),
            ),
            ("unbalanced", braces_balanced(&out)),
            (
                "unclean failure",
                absent.result.is_none()
                    && absent.actions.last() == Some(&SanitizeAction::ExtractionFailed),
            ),
        ];
        for (what, ok) in checks {
            if !ok {
                bad.push(format!("#{i}: {what}"));
            }
        }
    }
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(format!("{SANITIZER_SAMPLES}/{SANITIZER_SAMPLES} samples"))
}

fn criterion_6() -> Check {
    let c = "#include <stdio.h>\nint main(void) {\n    printf(\"hello\\n\");\n    return 0;\n}\n";
    let java = |body: &str| {
        format!("public class Hello {{\n    public static void main(String[] args) {{\n        {body}\n    }}\n}}\n")
    };
    let work = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |name: &str, body: &str, cfg: &ToolchainConfig| {
        let text = java(body);
        verify(
            Candidate {
                c_text: c,
                stem: "hello",
                class_name: "Hello",
                java_text: &text,
                test_id: None,
            },
            &work.path().join(name),
            cfg,
            &RunCache::new(None),
        )
    };
    let cfg = ToolchainConfig::default();
    let same = run("same", "System.out.print(\"hello\\n\");", &cfg);
    ensure(same.verdict.outcome == Outcome::Pass, || {
        format!("identical: {:?}", same.verdict)
    })?;
    let nl = run("newline", "System.out.print(\"hello\");", &cfg);
    ensure(
        nl.verdict.outcome == Outcome::OutputMismatch && nl.verdict.divergence == Some(5),
        || format!("trailing newline: {:?}", nl.verdict),
    )?;
    let mid = run("mid", "System.out.print(\"help\\n\");", &cfg);
    ensure(mid.verdict.divergence == Some(3), || {
        format!("mid-string: {:?}", mid.verdict)
    })?;
    let looping = ToolchainConfig {
        run_timeout_s: LOOP_TIMEOUT_S,
        ..ToolchainConfig::default()
    };
    let lv = run("loop", "while (true) { }", &looping);
    let secs = lv
        .java
        .as_ref()
        .and_then(|j| j.run.as_ref())
        .map_or(f64::INFINITY, |r| r.duration_s);
    ensure(lv.verdict.outcome == Outcome::Timeout, || {
        format!("loop: {:?}", lv.verdict)
    })?;
    ensure(secs <= LOOP_TIMEOUT_S + LOOP_SLACK_S, || {
        format!("loop killed after {secs:.2}s")
    })?;
    Ok(format!(
        "offsets 5 and 3, identical Pass, loop killed after {secs:.2}s"
    ))
}

fn generated_java(root: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    let base = root.join("runs/rule_engine");
    for n in 1..=20 {
        let dir = base.join(format!("T{n}/generated"));
        let Ok(entries) = std::fs::read_dir(&dir) else {
            continue;
        };
        for e in entries.flatten() {
            let name = format!("T{n}/{}", e.file_name().to_string_lossy());
            out.push((name, std::fs::read(e.path()).unwrap_or_default()));
        }
    }
    out.sort();
    out
}

fn criterion_7(first: &Result<BenchRun, String>) -> Check {
    let a = first.as_ref().map_err(Clone::clone)?;
    let b = bench_rule_engine()?;
    let (ja, jb) = (generated_java(a.dir.path()), generated_java(b.dir.path()));
    ensure(ja.len() == 20, || format!("{} generated files", ja.len()))?;
    ensure(ja == jb, || "generated Java differs between runs".into())?;
    let json =
        |m: &ResultMatrix| report(&m.without_timing(), ReportFormat::Json).unwrap_or_default();
    ensure(json(&a.matrix) == json(&b.matrix), || {
        "json reports differ beyond timing".into()
    })?;
    let md = |d: &Path| std::fs::read(d.join("results/report.md")).unwrap_or_default();
    ensure(md(a.dir.path()) == md(b.dir.path()), || {
        "markdown reports differ".into()
    })?;
    Ok("Java, json (timing removed) and markdown identical across two runs".into())
}

fn main() {
    let checks: Vec<Criterion> = {
        let first = std::rc::Rc::new(bench_rule_engine());
        let f1 = first.clone();
        let f7 = first;
        vec![
            (
                "rule engine passes the corpus within budget",
                Box::new(move || criterion_1(&f1)),
            ),
            (
                "each test alone, designated rule fires",
                Box::new(criterion_2),
            ),
            (
                "fixture totals, tiers and rate bands",
                Box::new(criterion_3),
            ),
            ("failure classification fixtures", Box::new(criterion_4)),
            (
                "sanitizer properties on generated replies",
                Box::new(criterion_5),
            ),
            ("verifier strictness and timeouts", Box::new(criterion_6)),
            ("bench determinism", Box::new(move || criterion_7(&f7))),
        ]
    };
    let mut failed = 0;
    for (i, (title, check)) in checks.into_iter().enumerate() {
        let res = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match res {
            Ok(detail) => println!("criterion {}: PASS  {title}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {title}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
