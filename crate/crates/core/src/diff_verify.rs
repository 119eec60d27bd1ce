//! Compile and run the C original and the Java translation, then compare
//! their standard output byte for byte.

use std::collections::HashMap;
use std::io::Read;
use std::os::unix::process::CommandExt;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;
use wait_timeout::ChildExt;

use crate::assembler::JavaCompilationUnit;
use crate::sanitizer;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ToolchainConfig {
    pub c_compiler: String,
    pub c_flags: Vec<String>,
    pub java_compiler: String,
    pub java_runtime: String,
    pub compile_timeout_s: f64,
    pub run_timeout_s: f64,
    pub workdir: PathBuf,
}

impl Default for ToolchainConfig {
    fn default() -> Self {
        ToolchainConfig {
            c_compiler: "gcc".into(),
            c_flags: vec!["-std=c99".into(), "-O0".into(), "-w".into()],
            java_compiler: "javac".into(),
            java_runtime: "java".into(),
            compile_timeout_s: 30.0,
            run_timeout_s: 10.0,
            workdir: PathBuf::from("runs"),
        }
    }
}

impl ToolchainConfig {
    pub fn validate(&self) -> Result<(), VerifyError> {
        if !(self.compile_timeout_s > 0.0 && self.run_timeout_s > 0.0) {
            return Err(VerifyError::Config("timeouts must be positive".into()));
        }
        for (what, cmd) in [
            ("c_compiler", &self.c_compiler),
            ("java_compiler", &self.java_compiler),
            ("java_runtime", &self.java_runtime),
        ] {
            if cmd.trim().is_empty() {
                return Err(VerifyError::Config(format!("{what} is empty")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("toolchain configuration: {0}")]
    Config(String),
    #[error("command '{0}' not found")]
    CommandNotFound(String),
    #[error("failed to run {command}: {message}")]
    Spawn { command: String, message: String },
    #[error("I/O error in {path}: {message}")]
    Io { path: PathBuf, message: String },
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> VerifyError + '_ {
    move |e| VerifyError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Compile,
    Run,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub phase: Phase,
    /// None when the process was killed by a signal or by the timeout.
    pub exit_code: Option<i32>,
    pub stdout: Vec<u8>,
    pub stderr: String,
    pub duration_s: f64,
    pub timed_out: bool,
}

impl RunResult {
    pub fn ok(&self) -> bool {
        self.exit_code == Some(0) && !self.timed_out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Pass,
    CCompileFail,
    CRuntimeFail,
    JavaCompileFail,
    JavaRuntimeFail,
    OutputMismatch,
    Timeout,
    InfraError,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "Pass",
            Outcome::CCompileFail => "CCompileFail",
            Outcome::CRuntimeFail => "CRuntimeFail",
            Outcome::JavaCompileFail => "JavaCompileFail",
            Outcome::JavaRuntimeFail => "JavaRuntimeFail",
            Outcome::OutputMismatch => "OutputMismatch",
            Outcome::Timeout => "Timeout",
            Outcome::InfraError => "InfraError",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureCategory {
    BoilerplateSyntax,
    LiteralCTranslation,
    SemanticLogic,
    AdvancedConcept,
}

impl FailureCategory {
    pub fn as_str(self) -> &'static str {
        match self {
            FailureCategory::BoilerplateSyntax => "boilerplate_syntax",
            FailureCategory::LiteralCTranslation => "literal_c_translation",
            FailureCategory::SemanticLogic => "semantic_logic",
            FailureCategory::AdvancedConcept => "advanced_concept",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub category: Option<FailureCategory>,
    pub divergence: Option<usize>,
    pub evidence: String,
}

impl Verdict {
    pub fn new(outcome: Outcome, evidence: impl Into<String>) -> Self {
        Verdict {
            outcome,
            category: None,
            divergence: None,
            evidence: evidence.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

// ------------------------------------------------------------------ processes

/// Finds a command on PATH, or checks it directly when it has a slash.
pub fn resolve_command(cmd: &str) -> Option<PathBuf> {
    if cmd.contains('/') {
        let p = PathBuf::from(cmd);
        return p.is_file().then_some(p);
    }
    let path = std::env::var_os("PATH")?;
    std::env::split_paths(&path)
        .map(|d| d.join(cmd))
        .find(|p| p.is_file())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolchainVersions {
    pub c_compiler: String,
    pub java_compiler: String,
    pub java_runtime: String,
}

fn version_line(cmd: &str, flag: &str) -> String {
    let out = Command::new(cmd).arg(flag).stdin(Stdio::null()).output();
    match out {
        Ok(o) => {
            let text = format!(
                "{}{}",
                String::from_utf8_lossy(&o.stdout),
                String::from_utf8_lossy(&o.stderr)
            );
            text.lines()
                .find(|l| !l.trim().is_empty())
                .filter(|_| o.status.success())
                .unwrap_or("unknown")
                .trim()
                .to_string()
        }
        Err(_) => "unknown".into(),
    }
}

/// Checks that every configured command resolves and records versions.
pub fn probe(cfg: &ToolchainConfig) -> Result<ToolchainVersions, VerifyError> {
    cfg.validate()?;
    for cmd in [&cfg.c_compiler, &cfg.java_compiler, &cfg.java_runtime] {
        if resolve_command(cmd).is_none() {
            return Err(VerifyError::CommandNotFound(cmd.clone()));
        }
    }
    Ok(ToolchainVersions {
        c_compiler: version_line(&cfg.c_compiler, "--version"),
        java_compiler: version_line(&cfg.java_compiler, "-version"),
        java_runtime: version_line(&cfg.java_runtime, "-version"),
    })
}

fn drain<R: Read + Send + 'static>(r: Option<R>) -> std::thread::JoinHandle<Vec<u8>> {
    std::thread::spawn(move || {
        let mut buf = Vec::new();
        if let Some(mut r) = r {
            let _ = r.read_to_end(&mut buf);
        }
        buf
    })
}

/// Runs a command in its own process group, killing the whole group if
/// it outlives the timeout.
pub fn run_command(
    program: &str,
    args: &[String],
    cwd: &Path,
    timeout_s: f64,
    phase: Phase,
) -> Result<RunResult, VerifyError> {
    let start = Instant::now();
    let mut child = Command::new(program)
        .args(args)
        .current_dir(cwd)
        .env("LC_ALL", "C.UTF-8")
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .process_group(0)
        .spawn()
        .map_err(|e| match e.kind() {
            std::io::ErrorKind::NotFound => VerifyError::CommandNotFound(program.to_string()),
            _ => VerifyError::Spawn {
                command: program.to_string(),
                message: e.to_string(),
            },
        })?;
    let out = drain(child.stdout.take());
    let err = drain(child.stderr.take());
    let waited = child
        .wait_timeout(Duration::from_secs_f64(timeout_s))
        .map_err(|e| VerifyError::Spawn {
            command: program.to_string(),
            message: e.to_string(),
        })?;
    let (status, timed_out) = match waited {
        Some(s) => (s, false),
        None => {
            let pid = child.id() as libc::pid_t;
            // SAFETY: signalling a process group we created; no memory is touched.
            unsafe {
                libc::kill(-pid, libc::SIGKILL);
            }
            let s = child.wait().map_err(|e| VerifyError::Spawn {
                command: program.to_string(),
                message: e.to_string(),
            })?;
            (s, true)
        }
    };
    let stdout = out.join().unwrap_or_default();
    let stderr = String::from_utf8_lossy(&err.join().unwrap_or_default()).into_owned();
    Ok(RunResult {
        phase,
        exit_code: if timed_out { None } else { status.code() },
        stdout,
        stderr,
        duration_s: start.elapsed().as_secs_f64(),
        timed_out,
    })
}

// ------------------------------------------------------------------ toolchains

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunPair {
    pub compile: RunResult,
    pub run: Option<RunResult>,
}

/// Compiles and runs a C program inside `dir`.
pub fn run_c(
    c_text: &str,
    stem: &str,
    dir: &Path,
    cfg: &ToolchainConfig,
) -> Result<RunPair, VerifyError> {
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    let src = dir.join(format!("{stem}.c"));
    std::fs::write(&src, c_text).map_err(io_err(&src))?;
    let bin = format!("{stem}.bin");
    let mut args = vec![format!("{stem}.c"), "-o".into(), bin.clone()];
    args.extend(cfg.c_flags.iter().cloned());
    args.push("-lm".into());
    let compile = run_command(
        &cfg.c_compiler,
        &args,
        dir,
        cfg.compile_timeout_s,
        Phase::Compile,
    )?;
    let run = if compile.ok() {
        // The child starts in `dir`, so this holds for relative dirs too.
        let exe = format!("./{bin}");
        Some(run_command(&exe, &[], dir, cfg.run_timeout_s, Phase::Run)?)
    } else {
        None
    };
    Ok(RunPair { compile, run })
}

/// Writes, compiles, and runs a Java source inside `dir`.
pub fn run_java_source(
    class_name: &str,
    text: &str,
    dir: &Path,
    cfg: &ToolchainConfig,
) -> Result<RunPair, VerifyError> {
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    let file = format!("{class_name}.java");
    let path = dir.join(&file);
    std::fs::write(&path, text).map_err(io_err(&path))?;
    let compile = run_command(
        &cfg.java_compiler,
        &[file],
        dir,
        cfg.compile_timeout_s,
        Phase::Compile,
    )?;
    let run = if compile.ok() {
        let args = vec!["-cp".into(), ".".into(), class_name.to_string()];
        Some(run_command(
            &cfg.java_runtime,
            &args,
            dir,
            cfg.run_timeout_s,
            Phase::Run,
        )?)
    } else {
        None
    };
    Ok(RunPair { compile, run })
}

pub fn run_java(
    unit: &JavaCompilationUnit,
    dir: &Path,
    cfg: &ToolchainConfig,
) -> Result<RunPair, VerifyError> {
    run_java_source(&unit.class_name, &unit.text, dir, cfg)
}

// ------------------------------------------------------------------ comparison

/// Byte-exact comparison of the two outputs.
pub fn compare(c_out: &[u8], j_out: &[u8]) -> Verdict {
    if c_out == j_out {
        return Verdict::new(Outcome::Pass, "");
    }
    let offset = c_out
        .iter()
        .zip(j_out)
        .position(|(a, b)| a != b)
        .unwrap_or(c_out.len().min(j_out.len()));
    let show = |b: &[u8]| {
        let end = (offset + 16).min(b.len());
        format!(
            "{:?}",
            String::from_utf8_lossy(&b[offset.min(b.len())..end])
        )
    };
    Verdict {
        outcome: Outcome::OutputMismatch,
        category: None,
        divergence: Some(offset),
        evidence: format!(
            "first difference at byte {offset}: expected {} got {}",
            show(c_out),
            show(j_out)
        ),
    }
}

/// Tests whose idioms need more than a literal rewrite.
pub const ADVANCED_TESTS: [&str; 5] = ["T7", "T10", "T12", "T18", "T19"];

const BOILERPLATE_MARKERS: &[&str] = &[
    "ClassNotFoundException",
    "Could not find or load main class",
    "NoClassDefFoundError",
    "Main method not found",
    "Main method is not static",
    "should be declared in a file named",
    "class, interface, enum, or record expected",
    "One of 'class enum interface",
    "wrong name:",
];

const LITERAL_C_MARKERS: &[&str] = &[
    "UnknownFormatConversionException",
    "Conversion = 'u'",
    // int used as a condition
    "Not a boolean expression",
    "cannot be converted to boolean",
    "bad operand type int for unary operator '!'",
];

const C_CALLS: &[&str] = &[
    "malloc", "calloc", "realloc", "free", "strcpy", "strcat", "strlen", "memcpy", "memset",
];

fn is_word(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_' || b == b'$'
}

/// Code outside string literals and comments, with literals blanked.
fn code_only(text: &str) -> String {
    let b = text.as_bytes();
    let mut out = Vec::with_capacity(b.len());
    let mut i = 0;
    while i < b.len() {
        match b[i] {
            b'/' if b.get(i + 1) == Some(&b'/') => {
                while i < b.len() && b[i] != b'\n' {
                    i += 1;
                }
            }
            b'/' if b.get(i + 1) == Some(&b'*') => {
                i += 2;
                while i + 1 < b.len() && !(b[i] == b'*' && b[i + 1] == b'/') {
                    i += 1;
                }
                i += 2;
            }
            q @ (b'"' | b'\'') => {
                out.push(q);
                i += 1;
                while i < b.len() && b[i] != q && b[i] != b'\n' {
                    if b[i] == b'\\' {
                        i += 1;
                    }
                    i += 1;
                }
                out.push(q);
                i += 1;
            }
            c => {
                out.push(c);
                i += 1;
            }
        }
    }
    String::from_utf8_lossy(&out).into_owned()
}

/// Calls to C library functions that are not qualified by a receiver.
fn has_c_call(code: &str) -> bool {
    let b = code.as_bytes();
    C_CALLS.iter().any(|name| {
        code.match_indices(name).any(|(i, _)| {
            let before = if i == 0 { b' ' } else { b[i - 1] };
            let rest = code[i + name.len()..].trim_start();
            !is_word(before) && before != b'.' && rest.starts_with('(')
        })
    })
}

/// A prefix `&` applied to a name, as in `f(&x)` or `p = &x`.
fn has_address_of(code: &str) -> bool {
    let b = code.as_bytes();
    (0..b.len()).any(|i| {
        if b[i] != b'&' || b.get(i + 1) == Some(&b'&') || (i > 0 && b[i - 1] == b'&') {
            return false;
        }
        let prev = code[..i].trim_end().bytes().next_back();
        let next = code[i + 1..].trim_start().bytes().next();
        matches!(
            prev,
            None | Some(b'(' | b',' | b'=' | b'{' | b';' | b'?' | b':' | b'[' | b'!')
        ) && next.is_some_and(|c| c.is_ascii_alphabetic() || c == b'_')
    })
}

fn has_valid_main(code: &str) -> bool {
    let squashed: String = code.split_whitespace().collect::<Vec<_>>().join(" ");
    squashed.contains("public static void main(String[] args)")
        || squashed.contains("public static void main(String args[])")
        || squashed.contains("public static void main(String... args)")
}

/// Assigns a failure category to a Java-side failure. Total over all
/// failing outcomes.
pub fn classify(
    outcome: Outcome,
    java_stderr: &str,
    unit_text: &str,
    test_id: Option<&str>,
) -> FailureCategory {
    let code = code_only(unit_text);
    if BOILERPLATE_MARKERS.iter().any(|m| java_stderr.contains(m))
        || !has_valid_main(&code)
        || unit_text.contains("```")
        || sanitizer::strip_fences_and_prose(unit_text) != unit_text
    {
        return FailureCategory::BoilerplateSyntax;
    }
    if LITERAL_C_MARKERS.iter().any(|m| java_stderr.contains(m))
        || has_c_call(&code)
        || has_address_of(&code)
        || code.contains("->")
    {
        return FailureCategory::LiteralCTranslation;
    }
    if matches!(
        outcome,
        Outcome::OutputMismatch | Outcome::JavaRuntimeFail | Outcome::Timeout
    ) {
        return FailureCategory::SemanticLogic;
    }
    if test_id.is_some_and(|t| ADVANCED_TESTS.contains(&t)) {
        return FailureCategory::AdvancedConcept;
    }
    FailureCategory::BoilerplateSyntax
}

// ------------------------------------------------------------------ baselines

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Baseline {
    pub key: String,
    pub runs: RunPair,
}

/// Memoized runs keyed by content hash. C baselines are kept in memory
/// and, when a directory is given, on disk. Java runs are kept in memory
/// only, so identical units from different backends compile once.
#[derive(Debug, Default)]
pub struct RunCache {
    dir: Option<PathBuf>,
    entries: Mutex<HashMap<String, Baseline>>,
    java: Mutex<HashMap<String, RunPair>>,
}

fn hex(d: impl AsRef<[u8]>) -> String {
    d.as_ref().iter().map(|b| format!("{b:02x}")).collect()
}

impl RunCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        RunCache {
            dir,
            entries: Mutex::new(HashMap::new()),
            java: Mutex::new(HashMap::new()),
        }
    }

    /// Compiles and runs a Java source unless the same text already ran
    /// under the same toolchain. Timed-out runs are not remembered.
    pub fn java_run(
        &self,
        class_name: &str,
        text: &str,
        dir: &Path,
        cfg: &ToolchainConfig,
    ) -> Result<RunPair, VerifyError> {
        let mut h = Sha256::new();
        for part in [class_name, text, &cfg.java_compiler, &cfg.java_runtime] {
            h.update(part.as_bytes());
            h.update([0]);
        }
        let key = hex(h.finalize());
        if let Some(p) = self.java.lock().expect("cache lock").get(&key) {
            return Ok(p.clone());
        }
        let pair = run_java_source(class_name, text, dir, cfg)?;
        let timed_out = pair.compile.timed_out || pair.run.as_ref().is_some_and(|r| r.timed_out);
        if !timed_out {
            self.java
                .lock()
                .expect("cache lock")
                .insert(key, pair.clone());
        }
        Ok(pair)
    }

    pub fn key(c_text: &str, cfg: &ToolchainConfig) -> String {
        let mut h = Sha256::new();
        h.update(c_text.as_bytes());
        h.update([0]);
        h.update(cfg.c_compiler.as_bytes());
        for f in &cfg.c_flags {
            h.update([0]);
            h.update(f.as_bytes());
        }
        hex(h.finalize())
    }

    pub fn baseline(
        &self,
        c_text: &str,
        stem: &str,
        work: &Path,
        cfg: &ToolchainConfig,
    ) -> Result<Baseline, VerifyError> {
        let key = Self::key(c_text, cfg);
        if let Some(b) = self.entries.lock().expect("cache lock").get(&key) {
            return Ok(b.clone());
        }
        let file = self.dir.as_ref().map(|d| d.join(format!("{key}.json")));
        if let Some(f) = &file {
            if let Ok(bytes) = std::fs::read(f) {
                if let Ok(b) = serde_json::from_slice::<Baseline>(&bytes) {
                    self.entries
                        .lock()
                        .expect("cache lock")
                        .insert(key, b.clone());
                    return Ok(b);
                }
            }
        }
        let runs = run_c(c_text, stem, work, cfg)?;
        let b = Baseline {
            key: key.clone(),
            runs,
        };
        // Only complete, clean baselines are worth keeping.
        let clean = b.runs.run.as_ref().is_some_and(|r| !r.timed_out);
        if clean {
            if let (Some(f), Some(d)) = (&file, &self.dir) {
                std::fs::create_dir_all(d).map_err(io_err(d))?;
                let json = serde_json::to_vec(&b).expect("baseline serializes");
                std::fs::write(f, json).map_err(io_err(f))?;
            }
            self.entries
                .lock()
                .expect("cache lock")
                .insert(key, b.clone());
        }
        Ok(b)
    }
}

// ------------------------------------------------------------------ verification

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub verdict: Verdict,
    pub c: Option<RunPair>,
    pub java: Option<RunPair>,
    pub duration_s: f64,
}

fn excerpt(s: &str) -> String {
    let lines: Vec<&str> = s.lines().filter(|l| !l.trim().is_empty()).take(3).collect();
    lines.join(" | ")
}

fn infra(e: VerifyError, start: Instant) -> Verification {
    Verification {
        verdict: Verdict::new(Outcome::InfraError, e.to_string()),
        c: None,
        java: None,
        duration_s: start.elapsed().as_secs_f64(),
    }
}

/// One C program and its Java translation.
#[derive(Debug, Clone, Copy)]
pub struct Candidate<'a> {
    pub c_text: &'a str,
    pub stem: &'a str,
    pub class_name: &'a str,
    pub java_text: &'a str,
    pub test_id: Option<&'a str>,
}

/// Verifies one Java translation against its C original. Work happens in
/// `dir`, which should be fresh for each (backend, test) pair.
pub fn verify(
    cand: Candidate<'_>,
    dir: &Path,
    cfg: &ToolchainConfig,
    cache: &RunCache,
) -> Verification {
    let Candidate {
        c_text,
        stem,
        class_name,
        java_text,
        test_id,
    } = cand;
    let start = Instant::now();
    let c = match cache.baseline(c_text, stem, &dir.join("c"), cfg) {
        Ok(b) => b.runs,
        Err(e) => return infra(e, start),
    };
    let done = |verdict: Verdict, java: Option<RunPair>| Verification {
        verdict,
        c: Some(c.clone()),
        java,
        duration_s: start.elapsed().as_secs_f64(),
    };
    if c.compile.timed_out {
        return done(Verdict::new(Outcome::Timeout, "C compile timed out"), None);
    }
    if !c.compile.ok() {
        return done(
            Verdict::new(Outcome::CCompileFail, excerpt(&c.compile.stderr)),
            None,
        );
    }
    let c_run = c.run.as_ref().expect("run after compile");
    if c_run.timed_out {
        return done(Verdict::new(Outcome::Timeout, "C run timed out"), None);
    }
    if c_run.exit_code.is_none() {
        return done(
            Verdict::new(Outcome::CRuntimeFail, "C program killed by a signal"),
            None,
        );
    }

    let java = match cache.java_run(class_name, java_text, &dir.join("java"), cfg) {
        Ok(j) => j,
        Err(e) => return infra(e, start),
    };
    let mut v = if java.compile.timed_out {
        Verdict::new(Outcome::Timeout, "Java compile timed out")
    } else if !java.compile.ok() {
        Verdict::new(Outcome::JavaCompileFail, excerpt(&java.compile.stderr))
    } else {
        let run = java.run.as_ref().expect("run after compile");
        let cmp = compare(&c_run.stdout, &run.stdout);
        if run.timed_out {
            Verdict::new(Outcome::Timeout, "Java run timed out")
        } else if cmp.passed() {
            // Stdout alone decides; exit codes are only recorded.
            let mut p = cmp;
            if run.exit_code != c_run.exit_code {
                p.evidence = format!(
                    "exit codes differ: C {:?}, Java {:?}",
                    c_run.exit_code, run.exit_code
                );
            }
            p
        } else if run.exit_code != Some(0) {
            let mut f = Verdict::new(Outcome::JavaRuntimeFail, excerpt(&run.stderr));
            f.divergence = cmp.divergence;
            f
        } else {
            cmp
        }
    };
    if !v.passed() {
        let stderr = java
            .run
            .as_ref()
            .map_or(java.compile.stderr.as_str(), |r| r.stderr.as_str());
        let stderr = format!("{}\n{}", java.compile.stderr, stderr);
        v.category = Some(classify(v.outcome, &stderr, java_text, test_id));
    }
    done(v, Some(java))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compare_offsets() {
        assert!(compare(b"42\n", b"42\n").passed());
        let v = compare(b"42\n", b"42 \n");
        assert_eq!(
            (v.outcome, v.divergence),
            (Outcome::OutputMismatch, Some(2))
        );
        let v = compare(b"a\n", b"a");
        assert_eq!(v.divergence, Some(1));
        let v = compare(b"", b"x");
        assert_eq!(v.divergence, Some(0));
    }

    #[test]
    fn classify_patterns() {
        let main = "public class X {\n    public static void main(String[] args) {\n        int[] p = malloc(4);\n    }\n}\n";
        assert_eq!(
            classify(Outcome::JavaCompileFail, "", main, None),
            FailureCategory::LiteralCTranslation
        );
        let ok = "public class X {\n    public static void main(String[] args) {\n        CString.strcpy(a, b);\n        int m = a & b;\n    }\n}\n";
        assert_eq!(
            classify(Outcome::OutputMismatch, "", ok, None),
            FailureCategory::SemanticLogic
        );
        assert_eq!(
            classify(Outcome::JavaCompileFail, "", ok, Some("T7")),
            FailureCategory::AdvancedConcept
        );
        assert_eq!(
            classify(Outcome::JavaCompileFail, "", ok, Some("T1")),
            FailureCategory::BoilerplateSyntax
        );
        let bad_main = ok.replace("void main", "int main");
        assert_eq!(
            classify(Outcome::JavaRuntimeFail, "", &bad_main, None),
            FailureCategory::BoilerplateSyntax
        );
    }

    #[test]
    fn address_of_detection() {
        assert!(has_address_of("move(&p1);"));
        assert!(has_address_of("int *q = &x;"));
        assert!(!has_address_of("int m = a & b;"));
        assert!(!has_address_of("if (a && b) {}"));
        assert!(!has_address_of("long u = (x & 0xFFFFFFFFL);"));
    }
}
