//! Translation backends: prompt rendering and completion retrieval.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::c_front::CDecomposition;

pub const FUNCTION_TEMPLATE: &str = include_str!("templates/function.txt");
pub const GLOBAL_TEMPLATE: &str = include_str!("templates/global.txt");
pub const RECORD_TEMPLATE: &str = include_str!("templates/record.txt");

const NONE: &str = "(none)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PromptKind {
    Function,
    Global,
    Record,
}

impl PromptKind {
    pub fn template(self) -> &'static str {
        match self {
            PromptKind::Function => FUNCTION_TEMPLATE,
            PromptKind::Global => GLOBAL_TEMPLATE,
            PromptKind::Record => RECORD_TEMPLATE,
        }
    }

    fn placeholders(self) -> &'static [&'static str] {
        match self {
            PromptKind::Function => &["{function_code}", "{globals_context}", "{structs_context}"],
            PromptKind::Global | PromptKind::Record => &["{c_code}"],
        }
    }
}

impl std::str::FromStr for PromptKind {
    type Err = ClientError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "function" => Ok(PromptKind::Function),
            "global" => Ok(PromptKind::Global),
            "record" => Ok(PromptKind::Record),
            other => Err(ClientError::UnknownKind(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BackendKind {
    RuleEngine,
    RemoteModel,
    Mock,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GenParams {
    pub temperature: f64,
    pub seed: u64,
    pub max_tokens: u32,
    pub timeout_s: f64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            temperature: 0.0,
            seed: 42,
            max_tokens: 2048,
            timeout_s: 120.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BackendSpec {
    pub name: String,
    pub kind: BackendKind,
    #[serde(default)]
    pub model_id: Option<String>,
    #[serde(default)]
    pub endpoint: Option<String>,
    #[serde(default)]
    pub gen_params: GenParams,
    /// Scripted replies of a mock backend, keyed by payload name.
    /// A `file/name` key takes precedence over a bare `name`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub replies: BTreeMap<String, String>,
}

impl BackendSpec {
    pub fn rule_engine() -> Self {
        BackendSpec {
            name: "rule_engine".into(),
            kind: BackendKind::RuleEngine,
            model_id: None,
            endpoint: None,
            gen_params: GenParams::default(),
            replies: BTreeMap::new(),
        }
    }

    pub fn remote(name: &str, model_id: &str, endpoint: &str) -> Self {
        BackendSpec {
            name: name.into(),
            kind: BackendKind::RemoteModel,
            model_id: Some(model_id.into()),
            endpoint: Some(endpoint.into()),
            gen_params: GenParams::default(),
            replies: BTreeMap::new(),
        }
    }

    pub fn mock(name: &str, replies: BTreeMap<String, String>) -> Self {
        BackendSpec {
            name: name.into(),
            kind: BackendKind::Mock,
            model_id: None,
            endpoint: None,
            gen_params: GenParams::default(),
            replies,
        }
    }

    pub fn validate(&self) -> Result<(), ClientError> {
        if self.name.trim().is_empty() {
            return Err(ClientError::InvalidBackend("empty backend name".into()));
        }
        if self.kind == BackendKind::RemoteModel {
            let blank = |v: &Option<String>| v.as_deref().is_none_or(|s| s.trim().is_empty());
            if blank(&self.endpoint) || blank(&self.model_id) {
                return Err(ClientError::InvalidBackend(format!(
                    "remote backend {} needs endpoint and model_id",
                    self.name
                )));
            }
        }
        let t = self.gen_params.timeout_s;
        if t.is_nan() || t <= 0.0 {
            return Err(ClientError::InvalidBackend(format!(
                "backend {} has a non-positive timeout",
                self.name
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderedPrompt {
    pub kind: PromptKind,
    pub text: String,
    pub payload_name: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawCompletion {
    pub text: String,
    pub latency: f64,
    pub backend: String,
}

/// C text shown to the model alongside a function.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PromptContext {
    pub globals: Vec<String>,
    pub structs: Vec<String>,
}

impl PromptContext {
    pub fn from_parts(parts: &CDecomposition) -> Self {
        PromptContext {
            globals: parts
                .globals
                .iter()
                .map(|g| g.text.trim().to_string())
                .collect(),
            structs: parts
                .records
                .iter()
                .map(|r| r.text.trim().to_string())
                .collect(),
        }
    }
}

#[derive(Debug, Error)]
pub enum ClientError {
    #[error("unknown prompt kind '{0}'")]
    UnknownKind(String),
    #[error("empty payload for {0:?} prompt")]
    EmptyPayload(PromptKind),
    #[error("invalid backend: {0}")]
    InvalidBackend(String),
    #[error("backend {0} does not take prompts")]
    NotPromptable(String),
    #[error("cannot connect to {endpoint}: {message}")]
    Connection { endpoint: String, message: String },
    #[error("HTTP status {status} from {endpoint}")]
    HttpStatus { endpoint: String, status: u16 },
    #[error("request to {endpoint} timed out after {seconds}s")]
    Timeout { endpoint: String, seconds: f64 },
    #[error("model '{0}' is not available on the server")]
    UnknownModel(String),
    #[error("malformed reply from {endpoint}: {message}")]
    MalformedReply { endpoint: String, message: String },
}

impl ClientError {
    /// Failures of the serving side rather than of the model's answer.
    pub fn is_infrastructure(&self) -> bool {
        matches!(
            self,
            ClientError::Connection { .. }
                | ClientError::HttpStatus { .. }
                | ClientError::Timeout { .. }
                | ClientError::UnknownModel(_)
                | ClientError::MalformedReply { .. }
        )
    }
}

fn context_list(items: &[String]) -> String {
    if items.is_empty() {
        NONE.to_string()
    } else {
        items.join("\n")
    }
}

/// Fills a template in one left-to-right pass, so placeholder-like text
/// inside a payload is never substituted again. Doubled braces are left
/// as written in the template.
fn fill(template: &str, values: &[(&str, &str)]) -> String {
    let mut out = String::with_capacity(template.len() + 256);
    let mut rest = template;
    'scan: while !rest.is_empty() {
        for (ph, v) in values {
            if rest.starts_with(ph) {
                out.push_str(v);
                rest = &rest[ph.len()..];
                continue 'scan;
            }
        }
        let c = rest.chars().next().expect("non-empty");
        out.push(c);
        rest = &rest[c.len_utf8()..];
    }
    out
}

pub fn render_prompt(
    kind: PromptKind,
    payload_name: &str,
    payload: &str,
    ctx: &PromptContext,
) -> Result<RenderedPrompt, ClientError> {
    if payload.trim().is_empty() {
        return Err(ClientError::EmptyPayload(kind));
    }
    let text = match kind {
        PromptKind::Function => {
            let globals = context_list(&ctx.globals);
            let structs = context_list(&ctx.structs);
            fill(
                FUNCTION_TEMPLATE,
                &[
                    ("{function_code}", payload),
                    ("{globals_context}", &globals),
                    ("{structs_context}", &structs),
                ],
            )
        }
        PromptKind::Global | PromptKind::Record => fill(kind.template(), &[("{c_code}", payload)]),
    };
    Ok(RenderedPrompt {
        kind,
        text,
        payload_name: payload_name.to_string(),
    })
}

/// Template text with every placeholder removed, for fidelity checks.
pub fn template_skeleton(kind: PromptKind) -> String {
    let blanks: Vec<(&str, &str)> = kind.placeholders().iter().map(|p| (*p, "")).collect();
    fill(kind.template(), &blanks)
}

#[derive(Serialize)]
struct GenerateRequest<'a> {
    model: &'a str,
    prompt: &'a str,
    stream: bool,
    options: GenerateOptions,
}

#[derive(Serialize)]
struct GenerateOptions {
    temperature: f64,
    seed: u64,
    num_predict: u32,
}

#[derive(Deserialize)]
struct GenerateReply {
    #[serde(default)]
    response: String,
}

/// Asks a backend for a completion. The mock backend looks up `scope/name`
/// then `name` among its scripted replies and answers "" otherwise.
pub fn complete(
    backend: &BackendSpec,
    scope: &str,
    prompt: &RenderedPrompt,
) -> Result<RawCompletion, ClientError> {
    let start = Instant::now();
    let text = match backend.kind {
        BackendKind::RuleEngine => return Err(ClientError::NotPromptable(backend.name.clone())),
        BackendKind::Mock => {
            let scoped = format!("{scope}/{}", prompt.payload_name);
            backend
                .replies
                .get(&scoped)
                .or_else(|| backend.replies.get(&prompt.payload_name))
                .cloned()
                .unwrap_or_default()
        }
        BackendKind::RemoteModel => {
            backend.validate()?;
            remote(backend, prompt)?
        }
    };
    Ok(RawCompletion {
        text,
        latency: start.elapsed().as_secs_f64(),
        backend: backend.name.clone(),
    })
}

fn remote(backend: &BackendSpec, prompt: &RenderedPrompt) -> Result<String, ClientError> {
    let endpoint = backend.endpoint.as_deref().unwrap_or_default();
    let model = backend.model_id.as_deref().unwrap_or_default();
    let p = &backend.gen_params;
    let url = format!("{}/api/generate", endpoint.trim_end_matches('/'));
    let agent: ureq::Agent = ureq::Agent::config_builder()
        .timeout_global(Some(Duration::from_secs_f64(p.timeout_s)))
        .http_status_as_error(false)
        .build()
        .into();
    let req = GenerateRequest {
        model,
        prompt: &prompt.text,
        stream: false,
        options: GenerateOptions {
            temperature: p.temperature,
            seed: p.seed,
            num_predict: p.max_tokens,
        },
    };
    let connection = |message: String| ClientError::Connection {
        endpoint: endpoint.to_string(),
        message,
    };
    let transport = |e: ureq::Error| match e {
        ureq::Error::Timeout(_) => ClientError::Timeout {
            endpoint: endpoint.to_string(),
            seconds: p.timeout_s,
        },
        ureq::Error::Io(io) if io.kind() == std::io::ErrorKind::TimedOut => ClientError::Timeout {
            endpoint: endpoint.to_string(),
            seconds: p.timeout_s,
        },
        other => connection(other.to_string()),
    };
    let mut resp = agent.post(&url).send_json(&req).map_err(transport)?;
    let status = resp.status().as_u16();
    if status == 404 {
        // The server answers 404 with a "model ... not found" body.
        let body = resp.body_mut().read_to_string().unwrap_or_default();
        if body.contains("not found") && body.contains("model") {
            return Err(ClientError::UnknownModel(model.to_string()));
        }
    }
    if !(200..300).contains(&status) {
        return Err(ClientError::HttpStatus {
            endpoint: endpoint.to_string(),
            status,
        });
    }
    let reply: GenerateReply = resp.body_mut().read_json().map_err(|e| match e {
        ureq::Error::Timeout(_) => ClientError::Timeout {
            endpoint: endpoint.to_string(),
            seconds: p.timeout_s,
        },
        other => ClientError::MalformedReply {
            endpoint: endpoint.to_string(),
            message: other.to_string(),
        },
    })?;
    Ok(reply.response)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_context_renders_none() {
        let p = render_prompt(
            PromptKind::Function,
            "f",
            "int f(void) { return 1; }",
            &PromptContext::default(),
        )
        .unwrap();
        assert!(p.text.contains("- C Globals (if any): (none)\n"));
        assert!(p.text.contains("- C Structs (if any): (none)\n"));
        assert!(p.text.contains("int f(void) { return 1; }"));
    }

    #[test]
    fn payload_placeholders_are_not_reexpanded() {
        let p = render_prompt(
            PromptKind::Global,
            "s",
            "char *s = \"{c_code}\";",
            &PromptContext::default(),
        )
        .unwrap();
        assert!(p.text.contains("char *s = \"{c_code}\";"));
    }

    #[test]
    fn kinds_parse() {
        assert_eq!("record".parse::<PromptKind>().unwrap(), PromptKind::Record);
        assert!("module".parse::<PromptKind>().is_err());
    }

    #[test]
    fn remote_requires_endpoint() {
        let mut b = BackendSpec::remote("m", "mistral", "http://localhost:11434");
        assert!(b.validate().is_ok());
        b.endpoint = Some(String::new());
        assert!(b.validate().is_err());
    }
}
