//! Joins translated snippets into one Java compilation unit.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::javafmt::reindent;
use crate::rule_xlat::{JavaSnippet, SnippetKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AssembleError {
    #[error("'{0}' is not a valid Java class name")]
    InvalidClassName(String),
    #[error("duplicate method '{0}'")]
    DuplicateMethod(String),
    #[error("class {class} has no copy constructor but '{method}' calls one")]
    MissingCopyConstructor { class: String, method: String },
    #[error("import statement in snippet '{0}'")]
    ImportInSnippet(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JavaCompilationUnit {
    pub class_name: String,
    pub fields: Vec<JavaSnippet>,
    pub nested_classes: Vec<JavaSnippet>,
    pub methods: Vec<JavaSnippet>,
    pub text: String,
}

impl JavaCompilationUnit {
    pub fn file_name(&self) -> String {
        format!("{}.java", self.class_name)
    }
}

const KEYWORDS: &[&str] = &[
    "abstract",
    "assert",
    "boolean",
    "break",
    "byte",
    "case",
    "catch",
    "char",
    "class",
    "const",
    "continue",
    "default",
    "do",
    "double",
    "else",
    "enum",
    "extends",
    "final",
    "finally",
    "float",
    "for",
    "goto",
    "if",
    "implements",
    "import",
    "instanceof",
    "int",
    "interface",
    "long",
    "native",
    "new",
    "package",
    "private",
    "protected",
    "public",
    "return",
    "short",
    "static",
    "strictfp",
    "super",
    "switch",
    "synchronized",
    "this",
    "throw",
    "throws",
    "transient",
    "try",
    "void",
    "volatile",
    "while",
    "true",
    "false",
    "null",
    "var",
    "record",
    "yield",
    "_",
];

pub fn is_java_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    (first.is_ascii_alphabetic() || first == '_' || first == '$')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '$')
        && !KEYWORDS.contains(&s)
}

/// Class name for a C file stem. Stems that are not Java identifiers are
/// rejected rather than mangled.
pub fn class_name_for_stem(stem: &str) -> Result<String, AssembleError> {
    if is_java_identifier(stem) {
        Ok(stem.to_string())
    } else {
        Err(AssembleError::InvalidClassName(stem.to_string()))
    }
}

/// True when a line outside literals starts with the `import` keyword.
fn has_import(text: &str) -> bool {
    text.lines().any(|l| {
        let t = l.trim_start();
        t.strip_prefix("import")
            .is_some_and(|rest| rest.starts_with(|c: char| c.is_whitespace()))
    })
}

/// Single-argument `new C(expr)` calls, by class name.
fn copy_calls<'a>(text: &str, classes: &'a [String]) -> Vec<&'a String> {
    let mut found = Vec::new();
    for c in classes {
        let pat = format!("new {c}(");
        let mut from = 0;
        while let Some(pos) = text[from..].find(&pat) {
            let start = from + pos + pat.len();
            from = start;
            let before = text[..from - pat.len()].chars().next_back();
            if before.is_some_and(|b| b.is_ascii_alphanumeric() || b == '_') {
                continue;
            }
            let mut depth = 0;
            let mut commas = 0;
            let mut empty = true;
            for ch in text[start..].chars() {
                match ch {
                    '(' | '[' | '{' => depth += 1,
                    ')' | ']' | '}' if depth == 0 => break,
                    ')' | ']' | '}' => depth -= 1,
                    ',' if depth == 0 => commas += 1,
                    c if !c.is_whitespace() => empty = false,
                    _ => {}
                }
            }
            if !empty && commas == 0 && !found.contains(&c) {
                found.push(c);
            }
        }
    }
    found
}

/// Assembles snippets, keeping their order within each kind.
pub fn assemble(
    class_name: &str,
    snippets: &[JavaSnippet],
) -> Result<JavaCompilationUnit, AssembleError> {
    if !is_java_identifier(class_name) {
        return Err(AssembleError::InvalidClassName(class_name.to_string()));
    }
    let mut fields = Vec::new();
    let mut nested = Vec::new();
    let mut methods = Vec::new();
    let mut seen = HashSet::new();
    for s in snippets {
        if s.text.trim().is_empty() {
            continue;
        }
        if has_import(&s.text) {
            return Err(AssembleError::ImportInSnippet(s.name.clone()));
        }
        match s.kind {
            SnippetKind::StaticField => fields.push(s.clone()),
            SnippetKind::NestedClass => nested.push(s.clone()),
            SnippetKind::Method => {
                if !seen.insert(s.name.clone()) {
                    return Err(AssembleError::DuplicateMethod(s.name.clone()));
                }
                methods.push(s.clone());
            }
        }
    }
    let class_names: Vec<String> = nested.iter().map(|n| n.name.clone()).collect();
    for m in methods.iter().chain(nested.iter()) {
        for c in copy_calls(&m.text, &class_names) {
            let owner = nested.iter().find(|n| &n.name == c).expect("listed class");
            let ctor = format!("public {c}({c} ");
            if !owner.text.contains(&ctor) {
                return Err(AssembleError::MissingCopyConstructor {
                    class: c.clone(),
                    method: m.name.clone(),
                });
            }
        }
    }

    let mut body = format!("public class {class_name} {{\n");
    let groups = [&fields, &nested, &methods];
    let mut first = true;
    for g in groups {
        for (i, s) in g.iter().enumerate() {
            // Fields sit together; classes and methods are spaced apart.
            let spaced = !first && (i == 0 || s.kind != SnippetKind::StaticField);
            if spaced {
                body.push('\n');
            }
            body.push_str(s.text.trim_end());
            body.push('\n');
            first = false;
        }
    }
    body.push_str("}\n");
    Ok(JavaCompilationUnit {
        class_name: class_name.to_string(),
        fields,
        nested_classes: nested,
        methods,
        text: reindent(&body),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(name: &str, text: &str) -> JavaSnippet {
        JavaSnippet::new(SnippetKind::Method, name, text)
    }

    #[test]
    fn empty_unit() {
        let u = assemble("X", &[]).unwrap();
        assert_eq!(u.text, "public class X {\n}\n");
    }

    #[test]
    fn rejects_duplicate_main() {
        let s = m("main", "public static void main(String[] args) {\n}");
        assert_eq!(
            assemble("X", &[s.clone(), s]),
            Err(AssembleError::DuplicateMethod("main".into()))
        );
    }

    #[test]
    fn copy_constructor_required() {
        let class = JavaSnippet::new(
            SnippetKind::NestedClass,
            "P",
            "public static class P {\npublic P() {\n}\n}",
        );
        let meth = m("f", "public static void f(P a) {\nP b = new P(a);\n}");
        assert!(matches!(
            assemble("X", &[class, meth]),
            Err(AssembleError::MissingCopyConstructor { .. })
        ));
    }

    #[test]
    fn class_names() {
        assert!(class_name_for_stem("test_1").is_ok());
        assert!(class_name_for_stem("1abc").is_err());
        assert!(class_name_for_stem("my-file").is_err());
        assert!(class_name_for_stem("class").is_err());
    }
}
