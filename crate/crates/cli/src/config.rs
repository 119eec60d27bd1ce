//! Run configuration: one TOML file, validated before anything is spawned.

use std::collections::HashSet;
use std::fmt;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use c2j_core::bench::ReportFormat;
use c2j_core::diff_verify::ToolchainConfig;
use c2j_core::llm_client::BackendSpec;
use serde::{Deserialize, Serialize};

/// Looked up in the working directory when `--config` is not given.
pub const DEFAULT_CONFIG_FILE: &str = "c2j.toml";

/// Environment variables that override toolchain commands.
pub const ENV_C_COMPILER: &str = "C2J_CC";
pub const ENV_JAVA_COMPILER: &str = "C2J_JAVAC";
pub const ENV_JAVA_RUNTIME: &str = "C2J_JAVA";

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(from = "String", into = "String")]
pub enum CorpusSource {
    #[default]
    Builtin,
    Dir(PathBuf),
}

impl From<String> for CorpusSource {
    fn from(s: String) -> Self {
        if s == "builtin" {
            CorpusSource::Builtin
        } else {
            CorpusSource::Dir(PathBuf::from(s))
        }
    }
}

impl From<CorpusSource> for String {
    fn from(c: CorpusSource) -> Self {
        c.to_string()
    }
}

impl fmt::Display for CorpusSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusSource::Builtin => f.write_str("builtin"),
            CorpusSource::Dir(p) => write!(f, "{}", p.display()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub toolchain: ToolchainConfig,
    #[serde(default = "default_backends")]
    pub backends: Vec<BackendSpec>,
    #[serde(default)]
    pub corpus: CorpusSource,
    #[serde(default = "default_parallelism")]
    pub parallelism: usize,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default = "default_formats")]
    pub formats: Vec<ReportFormat>,
}

fn default_backends() -> Vec<BackendSpec> {
    vec![BackendSpec::rule_engine()]
}

fn default_parallelism() -> usize {
    4
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("results")
}

fn default_formats() -> Vec<ReportFormat> {
    vec![
        ReportFormat::Markdown,
        ReportFormat::Csv,
        ReportFormat::Json,
    ]
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            toolchain: ToolchainConfig::default(),
            backends: default_backends(),
            corpus: CorpusSource::Builtin,
            parallelism: default_parallelism(),
            output_dir: default_output_dir(),
            formats: default_formats(),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> anyhow::Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn to_toml(&self) -> anyhow::Result<String> {
        Ok(toml::to_string(self)?)
    }

    /// Reads `path`, or `c2j.toml` if present, or falls back to defaults.
    /// Environment overrides are applied and the result validated.
    pub fn load(path: Option<&Path>) -> anyhow::Result<Self> {
        let path = path
            .map(Path::to_path_buf)
            .or_else(|| Some(PathBuf::from(DEFAULT_CONFIG_FILE)).filter(|p| p.is_file()));
        let mut cfg = match &path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .with_context(|| format!("reading {}", p.display()))?;
                Self::from_toml(&text).with_context(|| format!("in {}", p.display()))?
            }
            None => RunConfig::default(),
        };
        cfg.apply_env(|k| std::env::var(k).ok());
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn apply_env(&mut self, get: impl Fn(&str) -> Option<String>) {
        let t = &mut self.toolchain;
        for (key, slot) in [
            (ENV_C_COMPILER, &mut t.c_compiler),
            (ENV_JAVA_COMPILER, &mut t.java_compiler),
            (ENV_JAVA_RUNTIME, &mut t.java_runtime),
        ] {
            if let Some(v) = get(key).filter(|v| !v.trim().is_empty()) {
                *slot = v;
            }
        }
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        self.toolchain.validate()?;
        if self.backends.is_empty() {
            bail!("no backends configured");
        }
        let mut names = HashSet::new();
        for b in &self.backends {
            b.validate()?;
            if !names.insert(b.name.as_str()) {
                bail!("backend '{}' is defined twice", b.name);
            }
        }
        if self.parallelism == 0 {
            bail!("parallelism must be at least 1");
        }
        if self.formats.is_empty() {
            bail!("no report formats configured");
        }
        if let CorpusSource::Dir(d) = &self.corpus {
            if !d.is_dir() {
                bail!("corpus directory {} does not exist", d.display());
            }
        }
        Ok(())
    }

    /// A configured backend, or the built-in rule engine by its name.
    pub fn backend(&self, name: &str) -> Option<BackendSpec> {
        self.backends
            .iter()
            .find(|b| b.name == name)
            .cloned()
            .or_else(|| (name == BackendSpec::rule_engine().name).then(BackendSpec::rule_engine))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FULL: &str = r#"
corpus = "builtin"
parallelism = 2
output_dir = "out"
formats = ["markdown", "json"]

[toolchain]
c_compiler = "cc"
run_timeout_s = 5.0

[[backends]]
name = "rule_engine"
kind = "rule_engine"

[[backends]]
name = "mistral"
kind = "remote_model"
model_id = "mistral"
endpoint = "http://localhost:11434"

[backends.gen_params]
timeout_s = 60.0
"#;

    #[test]
    fn parses_and_round_trips() {
        let cfg = RunConfig::from_toml(FULL).unwrap();
        cfg.validate().unwrap();
        assert_eq!(cfg.toolchain.c_compiler, "cc");
        assert_eq!(cfg.toolchain.java_runtime, "java");
        assert_eq!(cfg.backends[1].gen_params.timeout_s, 60.0);
        assert_eq!(cfg.backends[1].gen_params.seed, 42);
        let again = RunConfig::from_toml(&cfg.to_toml().unwrap()).unwrap();
        assert_eq!(again, cfg);
    }

    #[test]
    fn empty_file_is_the_default() {
        assert_eq!(RunConfig::from_toml("").unwrap(), RunConfig::default());
    }

    #[test]
    fn unknown_keys_rejected_at_every_level() {
        assert!(RunConfig::from_toml("paralelism = 3").is_err());
        assert!(RunConfig::from_toml("[toolchain]\ncc = \"gcc\"").is_err());
        assert!(
            RunConfig::from_toml("[[backends]]\nname = \"x\"\nkind = \"mock\"\nurl = \"y\"")
                .is_err()
        );
        assert!(RunConfig::from_toml("formats = [\"pdf\"]").is_err());
    }

    #[test]
    fn invalid_values_fail_validation() {
        let c = RunConfig {
            parallelism: 0,
            ..RunConfig::default()
        };
        assert!(c.validate().is_err());
        let mut c = RunConfig::default();
        c.backends.push(BackendSpec::rule_engine());
        assert!(c.validate().is_err());
        let c = RunConfig {
            backends: vec![BackendSpec::remote("m", "mistral", "")],
            ..RunConfig::default()
        };
        assert!(c.validate().is_err());
        let mut c = RunConfig::default();
        c.toolchain.run_timeout_s = 0.0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn env_overrides_toolchain_commands() {
        let mut c = RunConfig::default();
        c.apply_env(|k| match k {
            ENV_JAVA_RUNTIME => Some("/opt/jdk/bin/java".into()),
            ENV_C_COMPILER => Some("  ".into()),
            _ => None,
        });
        assert_eq!(c.toolchain.java_runtime, "/opt/jdk/bin/java");
        assert_eq!(c.toolchain.c_compiler, "gcc");
    }

    #[test]
    fn rule_engine_always_available() {
        let c = RunConfig {
            backends: vec![BackendSpec::mock("m", Default::default())],
            ..RunConfig::default()
        };
        assert!(c.backend("rule_engine").is_some());
        assert!(c.backend("m").is_some());
        assert!(c.backend("nope").is_none());
    }
}
