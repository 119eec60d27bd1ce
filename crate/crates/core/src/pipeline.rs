//! One C file through one backend: decompose, translate each part,
//! sanitize, and assemble.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assembler::{assemble, class_name_for_stem, AssembleError, JavaCompilationUnit};
use crate::c_front::ast::RecordKind;
use crate::c_front::{analyze, CDecomposition, CSourceFile, ParseError};
use crate::llm_client::{
    complete, render_prompt, BackendKind, BackendSpec, ClientError, PromptContext, PromptKind,
};
use crate::rule_xlat::{
    class_identifier, java_identifier, translate_file, translate_function, translate_global,
    translate_record, JavaSnippet, SnippetKind, TranslateError, TranslationContext,
};
use crate::sanitizer::{sanitize, strip_fences_and_prose, DefinitionKind, SanitizeReport};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("translation error: {0}")]
    Translate(#[from] TranslateError),
    #[error(transparent)]
    Client(#[from] ClientError),
    #[error(transparent)]
    Assemble(#[from] AssembleError),
}

/// What happened to one C part on its way to Java.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartRecord {
    pub kind: PromptKind,
    pub name: String,
    pub latency_s: f64,
    pub report: Option<SanitizeReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Translation {
    pub class_name: String,
    /// The assembled unit, or why there is none.
    pub unit: Result<JavaCompilationUnit, String>,
    /// Best available Java text: the unit, or the cleaned replies.
    pub java_text: String,
    pub parts: Vec<PartRecord>,
}

/// One prompt per C entity, in decomposition order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartRequest {
    pub kind: PromptKind,
    pub name: String,
    pub payload: String,
    pub definition: DefinitionKind,
    /// Names accepted when extracting the reply, most likely first.
    pub accept: Vec<String>,
    /// Unions translate to nothing, so an empty reply is fine.
    pub may_be_empty: bool,
}

pub fn part_requests(parts: &CDecomposition) -> Vec<PartRequest> {
    let mut out = Vec::new();
    for g in &parts.globals {
        let name = g.names().first().map(|s| s.to_string()).unwrap_or_default();
        out.push(PartRequest {
            kind: PromptKind::Global,
            accept: vec![name.clone(), java_identifier(&name)],
            name,
            payload: g.text.clone(),
            definition: DefinitionKind::Field,
            may_be_empty: false,
        });
    }
    for r in &parts.records {
        let name = r.display_name().unwrap_or_default().to_string();
        out.push(PartRequest {
            kind: PromptKind::Record,
            accept: vec![name.clone(), class_identifier(&name)],
            name,
            payload: r.text.clone(),
            definition: DefinitionKind::Class,
            may_be_empty: r.kind == RecordKind::Union,
        });
    }
    for f in &parts.functions {
        out.push(PartRequest {
            kind: PromptKind::Function,
            accept: vec![f.name.clone(), java_identifier(&f.name)],
            name: f.name.clone(),
            payload: f.text.clone(),
            definition: DefinitionKind::Method,
            may_be_empty: false,
        });
    }
    out
}

fn snippet_kind(k: PromptKind) -> SnippetKind {
    match k {
        PromptKind::Global => SnippetKind::StaticField,
        PromptKind::Record => SnippetKind::NestedClass,
        PromptKind::Function => SnippetKind::Method,
    }
}

fn assembled(
    class_name: &str,
    snippets: &[JavaSnippet],
    parts: Vec<PartRecord>,
    fallback: String,
) -> Translation {
    match assemble(class_name, snippets) {
        Ok(u) => Translation {
            class_name: class_name.to_string(),
            java_text: u.text.clone(),
            unit: Ok(u),
            parts,
        },
        Err(e) => Translation {
            class_name: class_name.to_string(),
            unit: Err(e.to_string()),
            java_text: fallback,
            parts,
        },
    }
}

/// Translates a C file with the given backend. `scope` names the file for
/// scripted backends (the test id in the bench).
pub fn translate_source(
    src: &CSourceFile,
    backend: &BackendSpec,
    scope: &str,
) -> Result<Translation, PipelineError> {
    let class_name = class_name_for_stem(src.stem())?;
    let (_, parts) = analyze(src)?;
    if backend.kind == BackendKind::RuleEngine {
        let snippets = translate_file(&parts)?;
        let all: String = snippets.iter().map(|s| format!("{}\n", s.text)).collect();
        return Ok(assembled(&class_name, &snippets, Vec::new(), all));
    }
    let ctx = PromptContext::from_parts(&parts);
    let mut snippets = Vec::new();
    let mut records = Vec::new();
    let mut missing = Vec::new();
    let mut cleaned = String::new();
    for req in part_requests(&parts) {
        let prompt = render_prompt(req.kind, &req.name, &req.payload, &ctx)?;
        let reply = complete(backend, scope, &prompt)?;
        let report = req
            .accept
            .iter()
            .map(|n| sanitize(&reply.text, n, req.definition))
            .find(|r| r.result.is_some())
            .unwrap_or_else(|| sanitize(&reply.text, &req.name, req.definition));
        match &report.result {
            Some(text) => {
                cleaned.push_str(text);
                cleaned.push('\n');
                snippets.push(JavaSnippet::new(
                    snippet_kind(req.kind),
                    req.name.clone(),
                    text.clone(),
                ));
            }
            None => {
                cleaned.push_str(&strip_fences_and_prose(&reply.text));
                if !req.may_be_empty {
                    missing.push(req.name.clone());
                }
            }
        }
        records.push(PartRecord {
            kind: req.kind,
            name: req.name,
            latency_s: reply.latency,
            report: Some(report),
        });
    }
    if !missing.is_empty() {
        return Ok(Translation {
            class_name,
            unit: Err(format!("no usable definition for {}", missing.join(", "))),
            java_text: cleaned,
            parts: records,
        });
    }
    Ok(assembled(&class_name, &snippets, records, cleaned))
}

/// Rule-engine translation of each part separately, keyed like the
/// prompts. Useful for scripting mock backends with known-good replies.
pub fn reference_replies(parts: &CDecomposition) -> Result<Vec<(String, String)>, TranslateError> {
    let ctx = TranslationContext::build(parts)?;
    let mut out = Vec::new();
    for g in &parts.globals {
        let s = translate_global(g, &ctx)?;
        let name = g.names().first().map(|s| s.to_string()).unwrap_or_default();
        out.push((name, s.text));
    }
    for r in &parts.records {
        let s = translate_record(r, &ctx)?;
        out.push((r.display_name().unwrap_or_default().to_string(), s.text));
    }
    for f in &parts.functions {
        out.push((f.name.clone(), translate_function(&f.def, &ctx)?.text));
    }
    Ok(out)
}
