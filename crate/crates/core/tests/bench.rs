use std::sync::OnceLock;

use c2j_core::bench::{
    fixtures, load_corpus, load_corpus_dir, read_matrix, report, run_matrix, scripted_backend,
    tier, tier_report, MatrixConfig, ReportFormat, ResultMatrix, Tier,
};
use c2j_core::diff_verify::{Outcome, RunCache, ToolchainConfig};
use c2j_core::llm_client::BackendSpec;

fn config(dir: &std::path::Path) -> MatrixConfig {
    MatrixConfig {
        toolchain: ToolchainConfig::default(),
        run_dir: dir.to_path_buf(),
        parallelism: 2,
        probed: None,
    }
}

/// Shared so the rule-engine matrix is computed once for this file.
fn rule_engine_matrix() -> &'static ResultMatrix {
    static M: OnceLock<ResultMatrix> = OnceLock::new();
    M.get_or_init(|| {
        let dir = tempfile::tempdir().unwrap().keep();
        let corpus = load_corpus().unwrap();
        run_matrix(
            &[BackendSpec::rule_engine()],
            &corpus,
            &config(&dir),
            &RunCache::new(None),
        )
        .unwrap()
    })
}

#[test]
fn rule_engine_passes_everything() {
    let m = rule_engine_matrix();
    for c in &m.cells {
        assert_eq!(
            c.verdict.outcome,
            Outcome::Pass,
            "{}: {}",
            c.test,
            c.verdict.evidence
        );
    }
    assert_eq!(m.total("rule_engine"), 20);
    assert_eq!(tier_report(m).backends[0].tier, Tier::One);
}

#[test]
fn json_report_round_trips() {
    let m = rule_engine_matrix();
    let bytes = report(m, ReportFormat::Json).unwrap();
    assert_eq!(&read_matrix(&bytes).unwrap(), m);
}

#[test]
fn csv_and_markdown_shapes() {
    let m = rule_engine_matrix();
    let csv = String::from_utf8(report(m, ReportFormat::Csv).unwrap()).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "backend,test,outcome,category,duration_s");
    assert_eq!(lines.len(), 21);
    assert!(lines[1].starts_with("rule_engine,T1,Pass,,"));
    let md = String::from_utf8(report(m, ReportFormat::Markdown).unwrap()).unwrap();
    assert!(md.contains("| rule_engine | 20 | 1 |"));
    assert!(md.contains("| T1 | 1 | 100% |"));
}

#[test]
fn scripted_mocks_reproduce_fixture_totals() {
    let corpus = load_corpus().unwrap();
    let backends: Vec<BackendSpec> = fixtures::MODEL_ROWS
        .iter()
        .map(|(name, row)| scripted_backend(name, row, &corpus).unwrap())
        .collect();
    let dir = tempfile::tempdir().unwrap();
    let m = run_matrix(
        &backends,
        &corpus,
        &config(dir.path()),
        &RunCache::new(None),
    )
    .unwrap();
    for (i, (name, row)) in fixtures::MODEL_ROWS.iter().enumerate() {
        for (t, pass) in row.iter().enumerate() {
            let cell = m.cell(name, &format!("T{}", t + 1)).unwrap();
            assert_eq!(
                cell.verdict.passed(),
                *pass,
                "{name} T{}: {:?}",
                t + 1,
                cell.verdict
            );
        }
        assert_eq!(m.total(name), fixtures::MODEL_TOTALS[i]);
        assert_eq!(tier(m.total(name)) as u8, fixtures::MODEL_TIERS[i]);
    }
    // Unscripted cells get an empty reply and never reach javac.
    let empty = m.cell("codegemma", "T1").unwrap();
    assert_eq!(empty.verdict.outcome, Outcome::JavaCompileFail);
}

#[test]
fn empty_backend_list_rejected() {
    let corpus = load_corpus().unwrap();
    let dir = tempfile::tempdir().unwrap();
    assert!(run_matrix(&[], &corpus, &config(dir.path()), &RunCache::new(None)).is_err());
}

#[test]
fn missing_corpus_file_names_the_test() {
    let dir = tempfile::tempdir().unwrap();
    for c in load_corpus().unwrap() {
        if c.id != "T4" {
            std::fs::write(dir.path().join(&c.file_name), &c.c_source).unwrap();
        }
    }
    let err = load_corpus_dir(dir.path()).unwrap_err().to_string();
    assert!(err.contains("T4"), "{err}");
}
