//! The 20-program idiom corpus, the backend-by-test matrix runner, and
//! the reports built from it.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::c_front::{analyze, CSourceFile};
use crate::diff_verify::{
    classify, probe, verify, Candidate, Outcome, RunCache, ToolchainConfig, ToolchainVersions,
    Verdict, VerifyError,
};
use crate::llm_client::{BackendKind, BackendSpec, GenParams};
use crate::pipeline::{reference_replies, translate_source, PipelineError};
use crate::rule_xlat::{applicable_rules_for_file, RuleId};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestCase {
    pub id: String,
    pub title: String,
    pub tags: Vec<String>,
    pub description: String,
    pub designated_rule: RuleId,
    pub file_name: String,
    pub c_source: String,
}

impl TestCase {
    pub fn number(&self) -> usize {
        self.id[1..].parse().unwrap_or(0)
    }

    pub fn source(&self) -> CSourceFile {
        CSourceFile::new(self.file_name.clone(), self.c_source.clone())
    }

    pub fn stem(&self) -> &str {
        self.file_name.trim_end_matches(".c")
    }
}

struct Meta {
    title: &'static str,
    tags: &'static [&'static str],
    description: &'static str,
    rule: RuleId,
}

const META: [Meta; 20] = [
    Meta {
        title: "pointer walk",
        tags: &["pointer"],
        description: "An int pointer steps through an array and is dereferenced at an offset.",
        rule: RuleId::Ptr,
    },
    Meta {
        title: "struct by value",
        tags: &["struct", "copy"],
        description:
            "One function mutates a struct through a pointer, another mutates its own copy.",
        rule: RuleId::Copy,
    },
    Meta {
        title: "union punning",
        tags: &["union"],
        description: "A float is written into a union and its bits are read back as an int.",
        rule: RuleId::Union,
    },
    Meta {
        title: "macro side effects",
        tags: &["macro"],
        description: "A MAX macro is called with post-increment arguments that run twice.",
        rule: RuleId::Macro,
    },
    Meta {
        title: "unsigned int",
        tags: &["unsigned"],
        description: "32-bit unsigned values wrap on overflow, underflow, and multiplication.",
        rule: RuleId::Unsigned,
    },
    Meta {
        title: "goto cleanup",
        tags: &["goto"],
        description: "Error paths jump forward to a shared cleanup label.",
        rule: RuleId::GotoFwd,
    },
    Meta {
        title: "function pointers",
        tags: &["fnptr"],
        description: "Arithmetic operations are picked at run time through function pointers.",
        rule: RuleId::FnPtr,
    },
    Meta {
        title: "bitfields",
        tags: &["bitfield", "struct"],
        description: "Narrow struct members truncate stored values to their bit width.",
        rule: RuleId::Bitfield,
    },
    Meta {
        title: "void pointer",
        tags: &["voidptr"],
        description: "A void pointer carries values of several types, selected by a tag.",
        rule: RuleId::VoidPtr,
    },
    Meta {
        title: "pointer to pointer",
        tags: &["outparam", "malloc"],
        description: "A function allocates and fills an array through an int** parameter.",
        rule: RuleId::OutParam,
    },
    Meta {
        title: "unsigned char",
        tags: &["unsigned"],
        description: "Byte values wrap within 0..255 and are summed without sign extension.",
        rule: RuleId::Unsigned,
    },
    Meta {
        title: "enum arithmetic",
        tags: &["enum"],
        description: "Enum variables are incremented and compared as plain integers.",
        rule: RuleId::Enum,
    },
    Meta {
        title: "goto loop",
        tags: &["goto"],
        description: "A backward jump to a label forms a counted loop.",
        rule: RuleId::GotoBack,
    },
    Meta {
        title: "string.h",
        tags: &["string"],
        description: "Char buffers are filled and extended with strcpy and strcat.",
        rule: RuleId::Str,
    },
    Meta {
        title: "malloc and free",
        tags: &["malloc"],
        description: "A heap array is allocated, used, and released.",
        rule: RuleId::Mem,
    },
    Meta {
        title: "mutable globals",
        tags: &["global"],
        description: "File-scope variables are read and updated by several functions.",
        rule: RuleId::Bool,
    },
    Meta {
        title: "multi-line macro",
        tags: &["macro"],
        description: "A statement macro spanning several lines is expanded in place.",
        rule: RuleId::Macro,
    },
    Meta {
        title: "sizeof",
        tags: &["sizeof"],
        description: "Type and array sizes are printed and used to count elements.",
        rule: RuleId::Sizeof,
    },
    Meta {
        title: "nested structs",
        tags: &["struct", "string"],
        description: "A struct holds another struct and char arrays, and is copied by value.",
        rule: RuleId::Str,
    },
    Meta {
        title: "switch fall-through",
        tags: &["switch"],
        description: "Switch cases without break fall into the next case.",
        rule: RuleId::Switch,
    },
];

const SOURCES: [&str; 20] = [
    include_str!("../corpus/test_1.c"),
    include_str!("../corpus/test_2.c"),
    include_str!("../corpus/test_3.c"),
    include_str!("../corpus/test_4.c"),
    include_str!("../corpus/test_5.c"),
    include_str!("../corpus/test_6.c"),
    include_str!("../corpus/test_7.c"),
    include_str!("../corpus/test_8.c"),
    include_str!("../corpus/test_9.c"),
    include_str!("../corpus/test_10.c"),
    include_str!("../corpus/test_11.c"),
    include_str!("../corpus/test_12.c"),
    include_str!("../corpus/test_13.c"),
    include_str!("../corpus/test_14.c"),
    include_str!("../corpus/test_15.c"),
    include_str!("../corpus/test_16.c"),
    include_str!("../corpus/test_17.c"),
    include_str!("../corpus/test_18.c"),
    include_str!("../corpus/test_19.c"),
    include_str!("../corpus/test_20.c"),
];

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("corpus integrity: {id}: {message}")]
    Integrity { id: String, message: String },
    #[error("no backends given")]
    NoBackends,
    #[error("duplicate backend name '{0}'")]
    DuplicateBackend(String),
    #[error("unknown report format '{0}'")]
    UnknownFormat(String),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("I/O error in {path}: {message}")]
    Io { path: PathBuf, message: String },
}

fn case(n: usize, text: String) -> TestCase {
    let m = &META[n - 1];
    TestCase {
        id: format!("T{n}"),
        title: m.title.into(),
        tags: m.tags.iter().map(|t| t.to_string()).collect(),
        description: m.description.into(),
        designated_rule: m.rule,
        file_name: format!("test_{n}.c"),
        c_source: text,
    }
}

/// The embedded corpus, checked for completeness and idiom coverage.
pub fn load_corpus() -> Result<Vec<TestCase>, BenchError> {
    let cases: Vec<TestCase> = SOURCES
        .iter()
        .enumerate()
        .map(|(i, s)| case(i + 1, s.to_string()))
        .collect();
    check_rules(&cases)?;
    Ok(cases)
}

/// Loads `test_1.c` .. `test_20.c` from a directory.
pub fn load_corpus_dir(dir: &Path) -> Result<Vec<TestCase>, BenchError> {
    let mut cases = Vec::new();
    for n in 1..=20 {
        let path = dir.join(format!("test_{n}.c"));
        let text = std::fs::read_to_string(&path).map_err(|e| BenchError::Integrity {
            id: format!("T{n}"),
            message: format!("{}: {e}", path.display()),
        })?;
        cases.push(case(n, text));
    }
    check_rules(&cases)?;
    Ok(cases)
}

fn check_rules(cases: &[TestCase]) -> Result<(), BenchError> {
    for c in cases {
        let fail = |message: String| BenchError::Integrity {
            id: c.id.clone(),
            message,
        };
        if c.c_source.trim().is_empty() {
            return Err(fail("empty source".into()));
        }
        let (_, parts) = analyze(&c.source()).map_err(|e| fail(e.to_string()))?;
        let rules = applicable_rules_for_file(&parts).map_err(|e| fail(e.to_string()))?;
        if !rules.contains(&c.designated_rule) {
            return Err(fail(format!(
                "{} does not apply (rules: {rules:?})",
                c.designated_rule
            )));
        }
    }
    Ok(())
}

/// Compiles and runs every C baseline twice and checks the outputs agree.
pub fn check_baselines(
    cases: &[TestCase],
    cfg: &ToolchainConfig,
    work: &Path,
) -> Result<(), BenchError> {
    for c in cases {
        let fail = |message: String| BenchError::Integrity {
            id: c.id.clone(),
            message,
        };
        let mut outs = Vec::new();
        for round in 0..2 {
            let dir = work.join(format!("{}-{round}", c.id));
            let pair = crate::diff_verify::run_c(&c.c_source, c.stem(), &dir, cfg)?;
            let run = pair
                .run
                .ok_or_else(|| fail(format!("does not compile: {}", pair.compile.stderr.trim())))?;
            if !run.ok() {
                return Err(fail(format!("baseline exited with {:?}", run.exit_code)));
            }
            outs.push(run.stdout);
        }
        if outs[0] != outs[1] {
            return Err(fail("baseline output is not deterministic".into()));
        }
    }
    Ok(())
}

// ------------------------------------------------------------------ matrix

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub backend: String,
    pub test: String,
    pub verdict: Verdict,
    pub duration_s: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub started_at: String,
    pub finished_at: String,
    pub toolchain: Option<ToolchainVersions>,
    pub gen_params: BTreeMap<String, GenParams>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultMatrix {
    pub schema_version: u32,
    pub backends: Vec<String>,
    pub tests: Vec<String>,
    /// Backend-major, tests in corpus order.
    pub cells: Vec<Cell>,
    pub metadata: Metadata,
}

impl ResultMatrix {
    pub fn cell(&self, backend: &str, test: &str) -> Option<&Cell> {
        self.cells
            .iter()
            .find(|c| c.backend == backend && c.test == test)
    }

    pub fn total(&self, backend: &str) -> usize {
        self.cells
            .iter()
            .filter(|c| c.backend == backend && c.verdict.passed())
            .count()
    }

    pub fn test_passes(&self, test: &str) -> usize {
        self.cells
            .iter()
            .filter(|c| c.test == test && c.verdict.passed())
            .count()
    }

    pub fn has_infra_errors(&self) -> bool {
        self.cells
            .iter()
            .any(|c| c.verdict.outcome == Outcome::InfraError)
    }

    /// The matrix with timestamps and durations zeroed, for comparing runs.
    pub fn without_timing(&self) -> ResultMatrix {
        let mut m = self.clone();
        m.metadata.started_at.clear();
        m.metadata.finished_at.clear();
        for c in &mut m.cells {
            c.duration_s = 0.0;
        }
        m
    }
}

#[derive(Debug, Clone)]
pub struct MatrixConfig {
    pub toolchain: ToolchainConfig,
    /// Root for `<run>/<backend>/<test>/` working directories.
    pub run_dir: PathBuf,
    pub parallelism: usize,
    /// Skip the toolchain probe (already done by the caller).
    pub probed: Option<ToolchainVersions>,
}

fn timestamp() -> String {
    let d = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .unwrap_or_default();
    format!("{}.{:03}", d.as_secs(), d.subsec_millis())
}

/// Directory-safe form of a backend name.
pub fn dir_name(name: &str) -> String {
    name.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' || c == '.' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

fn run_cell(backend: &BackendSpec, case: &TestCase, cfg: &MatrixConfig, cache: &RunCache) -> Cell {
    let start = Instant::now();
    let dir = cfg.run_dir.join(dir_name(&backend.name)).join(&case.id);
    let _ = std::fs::remove_dir_all(&dir);
    let verdict = match translate_source(&case.source(), backend, &case.id) {
        Err(PipelineError::Client(e)) if e.is_infrastructure() => {
            Verdict::new(Outcome::InfraError, e.to_string())
        }
        Err(e @ (PipelineError::Parse(_) | PipelineError::Client(_))) => {
            Verdict::new(Outcome::InfraError, e.to_string())
        }
        Err(e) => {
            let mut v = Verdict::new(Outcome::JavaCompileFail, e.to_string());
            v.category = Some(classify(v.outcome, &v.evidence, "", Some(&case.id)));
            v
        }
        Ok(t) => {
            let java_dir = dir.join("generated");
            let written = std::fs::create_dir_all(&java_dir).and_then(|_| {
                std::fs::write(
                    java_dir.join(format!("{}.java", t.class_name)),
                    &t.java_text,
                )
            });
            if let Err(e) = written {
                Verdict::new(Outcome::InfraError, format!("{}: {e}", java_dir.display()))
            } else {
                match &t.unit {
                    Err(why) => {
                        let mut v = Verdict::new(Outcome::JavaCompileFail, why.clone());
                        v.category = Some(classify(v.outcome, why, &t.java_text, Some(&case.id)));
                        v
                    }
                    Ok(unit) => {
                        let cand = Candidate {
                            c_text: &case.c_source,
                            stem: case.stem(),
                            class_name: &unit.class_name,
                            java_text: &unit.text,
                            test_id: Some(&case.id),
                        };
                        verify(cand, &dir, &cfg.toolchain, cache).verdict
                    }
                }
            }
        }
    };
    Cell {
        backend: backend.name.clone(),
        test: case.id.clone(),
        verdict,
        duration_s: start.elapsed().as_secs_f64(),
    }
}

/// Runs every backend over every test case.
pub fn run_matrix(
    backends: &[BackendSpec],
    corpus: &[TestCase],
    cfg: &MatrixConfig,
    cache: &RunCache,
) -> Result<ResultMatrix, BenchError> {
    if backends.is_empty() {
        return Err(BenchError::NoBackends);
    }
    let mut seen = std::collections::HashSet::new();
    for b in backends {
        if !seen.insert(b.name.as_str()) {
            return Err(BenchError::DuplicateBackend(b.name.clone()));
        }
    }
    let toolchain = match &cfg.probed {
        Some(v) => v.clone(),
        None => probe(&cfg.toolchain)?,
    };
    let started_at = timestamp();
    let mut cells = Vec::new();
    for b in backends {
        // A remote server gets one request at a time.
        let workers = if b.kind == BackendKind::RemoteModel {
            1
        } else {
            cfg.parallelism.max(1)
        };
        let slots: Vec<Mutex<Option<Cell>>> = corpus.iter().map(|_| Mutex::new(None)).collect();
        let next = AtomicUsize::new(0);
        std::thread::scope(|s| {
            for _ in 0..workers.min(corpus.len()) {
                s.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::SeqCst);
                    let Some(case) = corpus.get(i) else { break };
                    let cell = run_cell(b, case, cfg, cache);
                    *slots[i].lock().expect("slot lock") = Some(cell);
                });
            }
        });
        cells.extend(
            slots
                .into_iter()
                .map(|s| s.into_inner().expect("slot lock").expect("cell filled")),
        );
    }
    Ok(ResultMatrix {
        schema_version: SCHEMA_VERSION,
        backends: backends.iter().map(|b| b.name.clone()).collect(),
        tests: corpus.iter().map(|c| c.id.clone()).collect(),
        cells,
        metadata: Metadata {
            started_at,
            finished_at: timestamp(),
            toolchain: Some(toolchain),
            gen_params: backends
                .iter()
                .filter(|b| b.kind == BackendKind::RemoteModel)
                .map(|b| (b.name.clone(), b.gen_params.clone()))
                .collect(),
        },
    })
}

// ------------------------------------------------------------------ tiers

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tier {
    #[serde(rename = "1")]
    One = 1,
    #[serde(rename = "2")]
    Two = 2,
    #[serde(rename = "3")]
    Three = 3,
}

/// More than half of the 20 tests passed is Tier 1, none is Tier 3.
pub fn tier(pass_count: usize) -> Tier {
    match pass_count {
        0 => Tier::Three,
        1..=10 => Tier::Two,
        _ => Tier::One,
    }
}

/// Integer percent, rounded half up.
pub fn percent(passes: usize, total: usize) -> u32 {
    if total == 0 {
        return 0;
    }
    ((passes * 200 + total) / (2 * total)) as u32
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Band {
    Impossible,
    NearlyImpossible,
    Hard,
    Moderate,
    Mostly,
}

impl Band {
    pub fn of(passes: usize, backends: usize) -> Band {
        match passes {
            0 => Band::Impossible,
            1 if backends > 1 => Band::NearlyImpossible,
            _ if passes * 5 < backends => Band::Hard,
            _ if passes * 2 < backends => Band::Moderate,
            _ => Band::Mostly,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Band::Impossible => "impossible (no passes)",
            Band::NearlyImpossible => "nearly impossible (one pass)",
            Band::Hard => "hard (under 20%)",
            Band::Moderate => "moderate (under 50%)",
            Band::Mostly => "mostly passed",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BackendTier {
    pub backend: String,
    pub passes: usize,
    pub tier: Tier,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestRate {
    pub test: String,
    pub passes: usize,
    pub rate: f64,
    pub percent: u32,
    pub band: Band,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TierReport {
    pub backends: Vec<BackendTier>,
    pub tests: Vec<TestRate>,
}

pub fn tier_report(m: &ResultMatrix) -> TierReport {
    let n = m.backends.len();
    TierReport {
        backends: m
            .backends
            .iter()
            .map(|b| {
                let passes = m.total(b);
                BackendTier {
                    backend: b.clone(),
                    passes,
                    tier: tier(passes),
                }
            })
            .collect(),
        tests: m
            .tests
            .iter()
            .map(|t| {
                let passes = m.test_passes(t);
                TestRate {
                    test: t.clone(),
                    passes,
                    rate: if n == 0 {
                        0.0
                    } else {
                        passes as f64 / n as f64
                    },
                    percent: percent(passes, n),
                    band: Band::of(passes, n),
                }
            })
            .collect(),
    }
}

// ------------------------------------------------------------------ reports

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    Csv,
    Json,
    Markdown,
}

impl ReportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ReportFormat::Csv => "csv",
            ReportFormat::Json => "json",
            ReportFormat::Markdown => "md",
        }
    }
}

impl std::str::FromStr for ReportFormat {
    type Err = BenchError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            other => Err(BenchError::UnknownFormat(other.to_string())),
        }
    }
}

pub fn report(m: &ResultMatrix, format: ReportFormat) -> Result<Vec<u8>, BenchError> {
    if m.backends.is_empty() {
        return Err(BenchError::NoBackends);
    }
    Ok(match format {
        ReportFormat::Json => {
            let mut v = serde_json::to_vec_pretty(m).expect("matrix serializes");
            v.push(b'\n');
            v
        }
        ReportFormat::Csv => csv_report(m),
        ReportFormat::Markdown => markdown_report(m).into_bytes(),
    })
}

fn csv_report(m: &ResultMatrix) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["backend", "test", "outcome", "category", "duration_s"])
        .expect("write to memory");
    for c in &m.cells {
        let category = c.verdict.category.map(|k| k.as_str()).unwrap_or("");
        w.write_record([
            c.backend.as_str(),
            c.test.as_str(),
            c.verdict.outcome.as_str(),
            category,
            &format!("{:.3}", c.duration_s),
        ])
        .expect("write to memory");
    }
    w.into_inner().expect("flush to memory")
}

fn markdown_report(m: &ResultMatrix) -> String {
    let tiers = tier_report(m);
    let mut s = String::from("## Results\n\n| Backend | Total | Tier |");
    for t in &m.tests {
        s += &format!(" {t} |");
    }
    s += "\n|---|---|---|";
    s += &"---|".repeat(m.tests.len());
    s += "\n";
    for bt in &tiers.backends {
        s += &format!("| {} | {} | {} |", bt.backend, bt.passes, bt.tier as u8);
        for t in &m.tests {
            let mark = match m.cell(&bt.backend, t) {
                Some(c) if c.verdict.passed() => "P",
                Some(_) => "F",
                None => "-",
            };
            s += &format!(" {mark} |");
        }
        s += "\n";
    }
    s += &format!(
        "\n## Per-test pass rates ({} backends)\n\n| Test | Passes | Rate | Band |\n|---|---|---|---|\n",
        m.backends.len()
    );
    let mut rows: Vec<&TestRate> = tiers.tests.iter().collect();
    rows.sort_by_key(|r| (r.passes, r.test[1..].parse::<usize>().unwrap_or(0)));
    for r in rows {
        s += &format!(
            "| {} | {} | {}% | {} |\n",
            r.test,
            r.passes,
            r.percent,
            r.band.label()
        );
    }
    s
}

/// Reads a matrix written by the json report.
pub fn read_matrix(bytes: &[u8]) -> Result<ResultMatrix, serde_json::Error> {
    serde_json::from_slice(bytes)
}

// ------------------------------------------------------------------ fixtures

/// Published per-model outcomes used as aggregation fixtures: one row of
/// pass (true) / fail per test T1..T20.
pub mod fixtures {
    const P: bool = true;
    const F: bool = false;

    pub const MODEL_ROWS: [(&str, [bool; 20]); 6] = [
        (
            "codeqwen",
            [P, P, F, P, P, P, F, F, P, F, P, F, P, F, P, F, P, F, F, P],
        ),
        (
            "mistral-nemo",
            [P, P, F, P, F, F, F, F, F, F, P, F, F, P, P, F, P, F, F, P],
        ),
        (
            "mistral",
            [P, F, F, F, F, F, F, F, P, F, F, F, P, P, F, F, P, F, F, P],
        ),
        (
            "deepseek-coder-v2",
            [P, P, P, P, P, P, F, P, F, F, P, F, P, P, F, P, P, F, F, P],
        ),
        (
            "phi4",
            [P, P, F, P, P, F, F, F, P, F, P, F, P, P, F, F, P, P, F, P],
        ),
        ("codegemma", [F; 20]),
    ];

    pub const MODEL_TOTALS: [usize; 6] = [11, 8, 6, 13, 11, 0];
    pub const MODEL_TIERS: [u8; 6] = [1, 2, 2, 1, 1, 3];

    /// Pass counts per test over 19 models.
    pub const ROSTER_COUNTS: [usize; 20] =
        [5, 4, 1, 5, 3, 2, 0, 1, 4, 0, 5, 0, 5, 4, 2, 2, 5, 0, 0, 5];
    pub const ROSTER_PERCENTS: [u32; 20] = [
        26, 21, 5, 26, 16, 11, 0, 5, 21, 0, 26, 0, 26, 21, 11, 11, 26, 0, 0, 26,
    ];
    pub const ROSTER_SIZE: usize = 19;

    /// A roster of 19 pass/fail rows whose column sums are the counts.
    pub fn roster() -> Vec<(String, [bool; 20])> {
        (0..ROSTER_SIZE)
            .map(|k| {
                let mut row = [false; 20];
                for (t, &n) in ROSTER_COUNTS.iter().enumerate() {
                    row[t] = k < n;
                }
                (format!("model-{:02}", k + 1), row)
            })
            .collect()
    }
}

/// A mock backend that answers with the rule engine's per-part output for
/// the tests marked true and with nothing for the rest.
pub fn scripted_backend(
    name: &str,
    row: &[bool; 20],
    corpus: &[TestCase],
) -> Result<BackendSpec, BenchError> {
    let mut replies = BTreeMap::new();
    for case in corpus {
        if !row
            .get(case.number().wrapping_sub(1))
            .copied()
            .unwrap_or(false)
        {
            continue;
        }
        let fail = |message: String| BenchError::Integrity {
            id: case.id.clone(),
            message,
        };
        let (_, parts) = analyze(&case.source()).map_err(|e| fail(e.to_string()))?;
        for (part, text) in reference_replies(&parts).map_err(|e| fail(e.to_string()))? {
            replies.insert(format!("{}/{part}", case.id), text);
        }
    }
    Ok(BackendSpec::mock(name, replies))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiers() {
        assert_eq!(tier(13), Tier::One);
        assert_eq!(tier(11), Tier::One);
        assert_eq!(tier(10), Tier::Two);
        assert_eq!(tier(8), Tier::Two);
        assert_eq!(tier(0), Tier::Three);
    }

    #[test]
    fn percents() {
        assert_eq!(percent(1, 19), 5);
        assert_eq!(percent(2, 19), 11);
        assert_eq!(percent(3, 19), 16);
        assert_eq!(percent(4, 19), 21);
        assert_eq!(percent(5, 19), 26);
        assert_eq!(percent(20, 20), 100);
        assert_eq!(percent(0, 0), 0);
    }

    #[test]
    fn fixture_rows_match_totals() {
        for ((name, row), total) in fixtures::MODEL_ROWS.iter().zip(fixtures::MODEL_TOTALS) {
            assert_eq!(row.iter().filter(|p| **p).count(), total, "{name}");
        }
        let roster = fixtures::roster();
        for t in 0..20 {
            let n = roster.iter().filter(|(_, r)| r[t]).count();
            assert_eq!(n, fixtures::ROSTER_COUNTS[t]);
            assert_eq!(percent(n, 19), fixtures::ROSTER_PERCENTS[t]);
        }
    }

    #[test]
    fn corpus_complete() {
        let c = load_corpus().unwrap();
        assert_eq!(c.len(), 20);
        assert_eq!(c[0].id, "T1");
        assert_eq!(c[19].id, "T20");
        assert!(c.iter().find(|t| t.id == "T7").unwrap().designated_rule == RuleId::FnPtr);
    }
}
