//! The `c2j` command line: analyze, translate, verify, bench and report.

pub mod config;

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use c2j_core::bench::{
    check_baselines, load_corpus, load_corpus_dir, read_matrix, report, run_matrix, tier_report,
    BenchError, MatrixConfig, ReportFormat, ResultMatrix,
};
use c2j_core::c_front::{analyze, CSourceFile, ParseError};
use c2j_core::diff_verify::{probe, verify, Candidate, Outcome, RunCache, VerifyError};
use c2j_core::llm_client::BackendSpec;
use c2j_core::pipeline::{translate_source, PipelineError};
use c2j_core::rule_xlat::{applicable_rules, applicable_rules_for_file, TranslationContext};
use clap::{Parser, Subcommand};
use serde::Serialize;

use config::{CorpusSource, RunConfig};

/// Process exit codes. Scripts depend on these.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Failed = 1,
    Config = 2,
    Infra = 3,
}

#[derive(Debug)]
pub struct CliError {
    pub status: Status,
    pub error: anyhow::Error,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.error)
    }
}

trait Exit<T> {
    fn status(self, status: Status) -> Result<T, CliError>;
}

impl<T, E: Into<anyhow::Error>> Exit<T> for Result<T, E> {
    fn status(self, status: Status) -> Result<T, CliError> {
        self.map_err(|e| CliError {
            status,
            error: e.into(),
        })
    }
}

fn io<T>(r: std::io::Result<T>, path: &Path) -> Result<T, CliError> {
    r.with_context(|| path.display().to_string())
        .status(Status::Infra)
}

#[derive(Debug, Parser)]
#[command(
    name = "c2j",
    version,
    about = "Translate C programs to Java and check them by differential testing"
)]
pub struct Cli {
    /// Run configuration (TOML). Defaults to ./c2j.toml when present.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Show the parts of a C file and the translation rules they need.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Translate a C file to a Java compilation unit.
    Translate {
        file: PathBuf,
        #[arg(long)]
        backend: String,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Compile and run a C file and a Java file and compare their output.
    Verify {
        c_file: PathBuf,
        java_file: PathBuf,
        /// Corpus test id, used when classifying failures.
        #[arg(long)]
        test_id: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Run backends over the corpus and write the result matrix and reports.
    Bench {
        /// Restrict the run to these backends (repeatable).
        #[arg(long = "backend")]
        backends: Vec<String>,
    },
    /// Render a saved result matrix.
    Report {
        matrix: PathBuf,
        #[arg(long, value_parser = parse_format)]
        format: ReportFormat,
    },
}

fn parse_format(s: &str) -> Result<ReportFormat, String> {
    s.parse().map_err(|e: BenchError| e.to_string())
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<Status, CliError> {
    match cli.command {
        Command::Analyze { file, json } => cmd_analyze(&file, json, out),
        Command::Report { matrix, format } => cmd_report(&matrix, format, out),
        command => {
            let cfg = RunConfig::load(cli.config.as_deref()).status(Status::Config)?;
            match command {
                Command::Translate {
                    file,
                    backend,
                    out: dir,
                } => cmd_translate(&cfg, &file, &backend, &dir, out),
                Command::Verify {
                    c_file,
                    java_file,
                    test_id,
                    json,
                } => cmd_verify(&cfg, &c_file, &java_file, test_id.as_deref(), json, out),
                Command::Bench { backends } => cmd_bench(&cfg, &backends, out).map(|(s, _)| s),
                Command::Analyze { .. } | Command::Report { .. } => unreachable!(),
            }
        }
    }
}

/// Parse errors carry line and column only, so the path is added here.
fn parse_failure(path: &str, e: ParseError) -> CliError {
    match e {
        ParseError::Io { .. } | ParseError::Encoding { .. } => CliError {
            status: Status::Config,
            error: e.into(),
        },
        _ => CliError {
            status: Status::Failed,
            error: anyhow!("{path}:{e}"),
        },
    }
}

fn read_source(file: &Path) -> Result<CSourceFile, CliError> {
    CSourceFile::read(file).map_err(|e| parse_failure(&file.display().to_string(), e))
}

// ------------------------------------------------------------------ analyze

#[derive(Debug, Serialize)]
pub struct FunctionSummary {
    pub name: String,
    pub rules: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct AnalyzeSummary {
    pub file: String,
    pub includes: Vec<String>,
    pub macros: Vec<String>,
    pub globals: Vec<String>,
    pub records: Vec<String>,
    pub typedefs: Vec<String>,
    pub prototypes: Vec<String>,
    pub functions: Vec<FunctionSummary>,
    pub rules: Vec<String>,
    /// Set when rules could not be worked out.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub fn summarize(src: &CSourceFile) -> Result<AnalyzeSummary, ParseError> {
    let (_, parts) = analyze(src)?;
    let ctx = TranslationContext::build(&parts);
    let functions = parts
        .functions
        .iter()
        .map(|f| FunctionSummary {
            name: f.name.clone(),
            rules: match &ctx {
                Ok(ctx) => applicable_rules(&f.def, ctx)
                    .iter()
                    .map(|r| r.to_string())
                    .collect(),
                Err(_) => Vec::new(),
            },
        })
        .collect();
    let (rules, error) = match applicable_rules_for_file(&parts) {
        Ok(r) => (r.iter().map(|r| r.to_string()).collect(), None),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    Ok(AnalyzeSummary {
        file: src.path().to_string(),
        includes: parts.includes.iter().map(|i| i.target.clone()).collect(),
        macros: parts.macros.iter().map(|m| m.name.clone()).collect(),
        globals: parts
            .globals
            .iter()
            .flat_map(|g| g.names().into_iter().map(String::from))
            .collect(),
        records: parts
            .records
            .iter()
            .map(|r| {
                let name = r
                    .name
                    .clone()
                    .or_else(|| r.alias.clone())
                    .unwrap_or_else(|| "(anonymous)".into());
                format!("{} {name}", r.kind.keyword())
            })
            .collect(),
        typedefs: parts
            .typedefs
            .iter()
            .flat_map(|t| t.names.clone())
            .collect(),
        prototypes: parts
            .prototypes
            .iter()
            .filter_map(|p| p.name.clone())
            .collect(),
        functions,
        rules,
        error,
    })
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        String::new()
    } else {
        format!(" ({})", items.join(", "))
    }
}

pub fn cmd_analyze(file: &Path, json: bool, out: &mut dyn Write) -> Result<Status, CliError> {
    let src = read_source(file)?;
    let s = summarize(&src).map_err(|e| parse_failure(src.path(), e))?;
    let w = |r: std::io::Result<()>| io(r, Path::new("<stdout>"));
    if json {
        let text = serde_json::to_string_pretty(&s).status(Status::Infra)?;
        w(writeln!(out, "{text}"))?;
    } else {
        w(writeln!(out, "file: {}", s.file))?;
        for (label, items) in [
            ("includes", &s.includes),
            ("macros", &s.macros),
            ("globals", &s.globals),
            ("records", &s.records),
            ("typedefs", &s.typedefs),
            ("prototypes", &s.prototypes),
        ] {
            w(writeln!(out, "{label}: {}{}", items.len(), list(items)))?;
        }
        w(writeln!(out, "functions: {}", s.functions.len()))?;
        for f in &s.functions {
            w(writeln!(out, "  {} [{}]", f.name, f.rules.join(", ")))?;
        }
        w(writeln!(out, "rules: [{}]", s.rules.join(", ")))?;
    }
    match s.error {
        Some(e) => Err(CliError {
            status: Status::Failed,
            error: anyhow!("{}: {e}", s.file),
        }),
        None => Ok(Status::Ok),
    }
}

// ------------------------------------------------------------------ translate

pub fn cmd_translate(
    cfg: &RunConfig,
    file: &Path,
    backend: &str,
    dir: &Path,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    let spec: BackendSpec = cfg
        .backend(backend)
        .ok_or_else(|| anyhow!("unknown backend '{backend}'"))
        .status(Status::Config)?;
    let src = read_source(file)?;
    let t = match translate_source(&src, &spec, src.stem()) {
        Ok(t) => t,
        Err(PipelineError::Client(e)) if e.is_infrastructure() => {
            return Err(e).status(Status::Infra)
        }
        Err(PipelineError::Parse(e)) => return Err(parse_failure(src.path(), e)),
        Err(e) => return Err(e).status(Status::Failed),
    };
    io(std::fs::create_dir_all(dir), dir)?;
    let java = dir.join(format!("{}.java", t.class_name));
    io(std::fs::write(&java, &t.java_text), &java)?;
    let w = |r: std::io::Result<()>| io(r, Path::new("<stdout>"));
    if !t.parts.is_empty() {
        let reports = dir.join(format!("{}.parts.json", t.class_name));
        let text = serde_json::to_string_pretty(&t.parts).status(Status::Infra)?;
        io(std::fs::write(&reports, text), &reports)?;
        for p in &t.parts {
            let state = match &p.report {
                Some(r) if r.result.is_some() => "ok",
                _ => "no definition",
            };
            let actions: Vec<String> = p
                .report
                .iter()
                .flat_map(|r| r.actions.iter().map(|a| format!("{a:?}")))
                .collect();
            w(writeln!(
                out,
                "{:?} {}: {state}{}",
                p.kind,
                p.name,
                list(&actions)
            ))?;
        }
    }
    w(writeln!(out, "wrote {}", java.display()))?;
    match t.unit {
        Ok(_) => Ok(Status::Ok),
        Err(why) => Err(anyhow!(why)).status(Status::Failed),
    }
}

// ------------------------------------------------------------------ verify

fn verify_error_status(e: &VerifyError) -> Status {
    match e {
        VerifyError::Config(_) => Status::Config,
        _ => Status::Infra,
    }
}

pub fn cmd_verify(
    cfg: &RunConfig,
    c_file: &Path,
    java_file: &Path,
    test_id: Option<&str>,
    json: bool,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    let c_text = std::fs::read_to_string(c_file)
        .with_context(|| c_file.display().to_string())
        .status(Status::Config)?;
    let java_text = std::fs::read_to_string(java_file)
        .with_context(|| java_file.display().to_string())
        .status(Status::Config)?;
    let stem = |p: &Path| {
        p.file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("prog")
            .to_string()
    };
    let (c_stem, class) = (stem(c_file), stem(java_file));
    let work = cfg.toolchain.workdir.join("verify").join(&class);
    let _ = std::fs::remove_dir_all(&work);
    let v = verify(
        Candidate {
            c_text: &c_text,
            stem: &c_stem,
            class_name: &class,
            java_text: &java_text,
            test_id,
        },
        &work,
        &cfg.toolchain,
        &RunCache::new(None),
    );
    let w = |r: std::io::Result<()>| io(r, Path::new("<stdout>"));
    if json {
        let text = serde_json::to_string_pretty(&v).status(Status::Infra)?;
        w(writeln!(out, "{text}"))?;
    } else {
        let verdict = &v.verdict;
        w(write!(out, "{}", verdict.outcome.as_str()))?;
        if let Some(c) = verdict.category {
            w(write!(out, " [{}]", c.as_str()))?;
        }
        if let Some(d) = verdict.divergence {
            w(write!(out, " at byte {d}"))?;
        }
        w(writeln!(out))?;
        if !verdict.evidence.is_empty() {
            w(writeln!(out, "{}", verdict.evidence))?;
        }
    }
    Ok(match v.verdict.outcome {
        Outcome::Pass => Status::Ok,
        Outcome::InfraError => Status::Infra,
        _ => Status::Failed,
    })
}

// ------------------------------------------------------------------ bench

/// Runs the configured benchmark. Returns the exit status and the matrix.
pub fn cmd_bench(
    cfg: &RunConfig,
    only: &[String],
    out: &mut dyn Write,
) -> Result<(Status, ResultMatrix), CliError> {
    let backends: Vec<BackendSpec> = if only.is_empty() {
        cfg.backends.clone()
    } else {
        only.iter()
            .map(|n| {
                cfg.backend(n)
                    .ok_or_else(|| anyhow!("unknown backend '{n}'"))
            })
            .collect::<anyhow::Result<_>>()
            .status(Status::Config)?
    };
    let versions = probe(&cfg.toolchain).map_err(|e| CliError {
        status: verify_error_status(&e),
        error: anyhow::Error::from(e).context("toolchain probe failed"),
    })?;
    let corpus = match &cfg.corpus {
        CorpusSource::Builtin => load_corpus(),
        CorpusSource::Dir(d) => load_corpus_dir(d),
    }
    .status(Status::Config)?;
    let work = &cfg.toolchain.workdir;
    match check_baselines(&corpus, &cfg.toolchain, &work.join("baselines")) {
        Ok(()) => {}
        Err(BenchError::Verify(e)) => {
            return Err(CliError {
                status: verify_error_status(&e),
                error: e.into(),
            })
        }
        Err(e) => return Err(e).status(Status::Config),
    }
    let mcfg = MatrixConfig {
        toolchain: cfg.toolchain.clone(),
        run_dir: work.clone(),
        parallelism: cfg.parallelism,
        probed: Some(versions),
    };
    let m = run_matrix(&backends, &corpus, &mcfg, &RunCache::new(None)).status(Status::Config)?;

    let dir = &cfg.output_dir;
    io(std::fs::create_dir_all(dir), dir)?;
    let matrix_path = dir.join("matrix.json");
    io(
        std::fs::write(
            &matrix_path,
            report(&m, ReportFormat::Json).status(Status::Infra)?,
        ),
        &matrix_path,
    )?;
    let w = |r: std::io::Result<()>| io(r, Path::new("<stdout>"));
    for f in &cfg.formats {
        let p = dir.join(format!("report.{}", f.extension()));
        io(
            std::fs::write(&p, report(&m, *f).status(Status::Infra)?),
            &p,
        )?;
        w(writeln!(out, "wrote {}", p.display()))?;
    }
    for b in tier_report(&m).backends {
        w(writeln!(
            out,
            "{}: {}/{} (Tier {})",
            b.backend,
            b.passes,
            m.tests.len(),
            b.tier as u8
        ))?;
    }
    let infra = m
        .cells
        .iter()
        .filter(|c| c.verdict.outcome == Outcome::InfraError)
        .count();
    if infra > 0 {
        w(writeln!(out, "{infra} cell(s) hit infrastructure errors"))?;
        return Ok((Status::Infra, m));
    }
    Ok((Status::Ok, m))
}

// ------------------------------------------------------------------ report

pub fn cmd_report(
    matrix: &Path,
    format: ReportFormat,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    let bytes = std::fs::read(matrix)
        .with_context(|| matrix.display().to_string())
        .status(Status::Config)?;
    let m = read_matrix(&bytes)
        .with_context(|| format!("{} is not a result matrix", matrix.display()))
        .status(Status::Config)?;
    let text = report(&m, format).status(Status::Config)?;
    io(out.write_all(&text), Path::new("<stdout>"))?;
    Ok(Status::Ok)
}
