//! Cleans model replies down to the one Java definition that was asked for.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SanitizeAction {
    FenceStripped,
    ProseStripped,
    ImportsStripped,
    ExtraDefinitionsDiscarded,
    ExtractionFailed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DefinitionKind {
    Method,
    Class,
    Field,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SanitizeReport {
    pub input_bytes: usize,
    pub output_bytes: usize,
    pub actions: Vec<SanitizeAction>,
    pub result: Option<String>,
}

// ------------------------------------------------------------------ scanning

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Ident,
    Punct(u8),
    Literal,
}

#[derive(Debug, Clone, Copy)]
struct Token {
    tok: Tok,
    start: usize,
    end: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct LineState {
    braces: i64,
    parens: i64,
    in_comment: bool,
}

struct Scan {
    tokens: Vec<Token>,
    /// State at the start of each line.
    lines: Vec<(usize, LineState)>,
}

fn is_ident_start(b: u8) -> bool {
    b.is_ascii_alphabetic() || b == b'_' || b == b'$' || b >= 0x80
}

fn is_ident_char(b: u8) -> bool {
    is_ident_start(b) || b.is_ascii_digit()
}

/// Tokenizes Java-ish text, skipping comments and folding string and char
/// literals into single tokens. Unterminated literals run to end of line.
fn scan(text: &str) -> Scan {
    let b = text.as_bytes();
    let mut tokens = Vec::new();
    let mut lines = vec![(0, LineState::default())];
    let mut st = LineState::default();
    let mut i = 0;
    let newline = |i: usize, st: LineState, lines: &mut Vec<(usize, LineState)>| {
        lines.push((i + 1, st));
    };
    while i < b.len() {
        let c = b[i];
        if st.in_comment {
            if c == b'*' && b.get(i + 1) == Some(&b'/') {
                st.in_comment = false;
                i += 2;
                continue;
            }
            if c == b'\n' {
                newline(i, st, &mut lines);
            }
            i += 1;
            continue;
        }
        match c {
            b'\n' => {
                newline(i, st, &mut lines);
                i += 1;
            }
            b'/' if b.get(i + 1) == Some(&b'/') => {
                while i < b.len() && b[i] != b'\n' {
                    i += 1;
                }
            }
            b'/' if b.get(i + 1) == Some(&b'*') => {
                st.in_comment = true;
                i += 2;
            }
            b'"' | b'\'' => {
                let start = i;
                i += 1;
                while i < b.len() && b[i] != c && b[i] != b'\n' {
                    if b[i] == b'\\' {
                        i += 1;
                    }
                    i += 1;
                }
                if i < b.len() && b[i] == c {
                    i += 1;
                }
                i = i.min(b.len());
                tokens.push(Token {
                    tok: Tok::Literal,
                    start,
                    end: i,
                });
            }
            c if is_ident_start(c) => {
                let start = i;
                while i < b.len() && is_ident_char(b[i]) {
                    i += 1;
                }
                tokens.push(Token {
                    tok: Tok::Ident,
                    start,
                    end: i,
                });
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < b.len() && (is_ident_char(b[i]) || b[i] == b'.') {
                    i += 1;
                }
                tokens.push(Token {
                    tok: Tok::Literal,
                    start,
                    end: i,
                });
            }
            c if c.is_ascii_whitespace() => i += 1,
            c => {
                match c {
                    b'{' => st.braces += 1,
                    b'}' => st.braces -= 1,
                    b'(' => st.parens += 1,
                    b')' => st.parens -= 1,
                    _ => {}
                }
                tokens.push(Token {
                    tok: Tok::Punct(c),
                    start: i,
                    end: i + 1,
                });
                i += 1;
            }
        }
    }
    Scan { tokens, lines }
}

// ------------------------------------------------------------------ fences and prose

const MODIFIERS: &[&str] = &[
    "public",
    "private",
    "protected",
    "static",
    "final",
    "abstract",
    "synchronized",
    "native",
    "strictfp",
    "transient",
    "volatile",
    "default",
    "import",
    "package",
];

const TYPE_WORDS: &[&str] = &[
    "void",
    "int",
    "long",
    "short",
    "byte",
    "char",
    "boolean",
    "float",
    "double",
    "class",
    "interface",
    "enum",
    "record",
    "var",
    "String",
];

fn first_word(line: &str) -> &str {
    let end = line
        .bytes()
        .position(|b| !is_ident_char(b))
        .unwrap_or(line.len());
    &line[..end]
}

/// Whether a line at top level starts (or plainly is) Java code.
fn looks_like_code(line: &str) -> bool {
    let t = line.trim();
    if t.is_empty() {
        return true;
    }
    if t.starts_with('@')
        || t.starts_with('{')
        || t.starts_with('}')
        || t.starts_with("//")
        || t.starts_with("/*")
        || t.starts_with('*')
    {
        return true;
    }
    let w = first_word(t);
    if MODIFIERS.contains(&w) || TYPE_WORDS.contains(&w) {
        return true;
    }
    if !w.is_empty()
        && !w.as_bytes()[0].is_ascii_digit()
        && t[w.len()..].trim_start().starts_with('(')
    {
        return true;
    }
    t.ends_with('{') || t.ends_with(';')
}

fn is_fence(line: &str) -> bool {
    line.trim_start().starts_with("```")
}

fn split_lines(text: &str) -> Vec<&str> {
    text.split_inclusive('\n').collect()
}

/// Removes markdown fences (keeping their content) and drops top-level
/// prose lines outside fenced regions.
pub fn strip_fences_and_prose(raw: &str) -> String {
    strip_fences_and_prose_report(raw).0
}

fn strip_fences_and_prose_report(raw: &str) -> (String, bool, bool) {
    let lines = split_lines(raw);
    let fenced = lines.iter().any(|l| is_fence(l));
    // Pass 1: drop fence lines, remember which lines were inside fences.
    let mut kept: Vec<(&str, bool)> = Vec::new();
    let mut inside = false;
    for l in &lines {
        if is_fence(l) {
            inside = !inside;
            continue;
        }
        kept.push((l, inside));
    }
    let joined: String = kept.iter().map(|(l, _)| *l).collect();
    let sc = scan(&joined);
    // Pass 2: prose filter on top-level lines outside fences.
    let mut out = String::with_capacity(joined.len());
    let mut dropped = false;
    let mut open = false;
    for (idx, (line, in_fence)) in kept.iter().enumerate() {
        let st = sc.lines.get(idx).map(|x| x.1).unwrap_or_default();
        let top = st.braces <= 0 && st.parens <= 0 && !st.in_comment;
        let keep = *in_fence || !top || open || looks_like_code(line);
        if keep {
            out.push_str(line);
            let t = strip_line_comment(line.trim());
            if !t.is_empty() && top {
                open = !(t.ends_with(';')
                    || t.ends_with('{')
                    || t.ends_with('}')
                    || t.starts_with('@')
                    || t.ends_with("*/"));
            } else if !top {
                open = false;
            }
        } else {
            dropped = true;
        }
    }
    (out, fenced, dropped)
}

fn strip_line_comment(t: &str) -> &str {
    // Only used for the open-statement check; literals rarely matter here.
    match t.find("//") {
        Some(p) if !t[..p].contains('"') => t[..p].trim_end(),
        _ => t,
    }
}

// ------------------------------------------------------------------ imports

/// Drops every top-level line that begins with the `import` keyword.
pub fn strip_imports(text: &str) -> String {
    strip_imports_report(text).0
}

fn strip_imports_report(text: &str) -> (String, bool) {
    let sc = scan(text);
    let mut out = String::with_capacity(text.len());
    let mut removed = false;
    for (idx, line) in split_lines(text).into_iter().enumerate() {
        let st = sc.lines.get(idx).map(|x| x.1).unwrap_or_default();
        let t = line.trim_start();
        let import = st.braces <= 0
            && !st.in_comment
            && t.strip_prefix("import")
                .is_some_and(|r| r.starts_with(|c: char| c.is_whitespace()));
        if import {
            removed = true;
        } else {
            out.push_str(line);
        }
    }
    (out, removed)
}

// ------------------------------------------------------------------ extraction

const NOT_TYPES: &[&str] = &[
    "new",
    "return",
    "throw",
    "else",
    "case",
    "goto",
    "yield",
    "assert",
    "instanceof",
];

/// Whether `{` at token index `open` starts a class-like body.
fn opens_type_body(text: &str, toks: &[Token], open: usize) -> bool {
    let mut j = open;
    while j > 0 {
        j -= 1;
        match toks[j].tok {
            Tok::Punct(b';') | Tok::Punct(b'{') | Tok::Punct(b'}') | Tok::Punct(b')') => {
                return false
            }
            Tok::Ident => {
                let w = &text[toks[j].start..toks[j].end];
                if matches!(w, "class" | "interface" | "enum" | "record") {
                    return true;
                }
            }
            _ => {}
        }
    }
    false
}

fn matching(toks: &[Token], from: usize, open: u8, close: u8) -> Option<usize> {
    let mut depth = 0i64;
    for (k, t) in toks.iter().enumerate().skip(from) {
        match t.tok {
            Tok::Punct(c) if c == open => depth += 1,
            Tok::Punct(c) if c == close => {
                depth -= 1;
                if depth == 0 {
                    return Some(k);
                }
            }
            _ => {}
        }
    }
    None
}

/// Start token of the declaration whose name token is `name_at`.
fn decl_start(toks: &[Token], name_at: usize) -> usize {
    let mut j = name_at;
    while j > 0 {
        match toks[j - 1].tok {
            Tok::Punct(b';') | Tok::Punct(b'{') | Tok::Punct(b'}') => break,
            _ => j -= 1,
        }
    }
    j
}

/// Whether the tokens before a name read like a type (or class keyword).
fn preceded_by_type(text: &str, toks: &[Token], at: usize) -> bool {
    if at == 0 {
        return false;
    }
    match toks[at - 1].tok {
        Tok::Ident => !NOT_TYPES.contains(&&text[toks[at - 1].start..toks[at - 1].end]),
        Tok::Punct(b']') | Tok::Punct(b'>') => true,
        _ => false,
    }
}

/// Finds the first definition of `name` and returns its byte range.
fn find_definition(text: &str, name: &str, kind: DefinitionKind) -> Option<(usize, usize)> {
    let toks = scan(text).tokens;
    // Stack of open braces: true for class-like bodies.
    let mut stack: Vec<bool> = Vec::new();
    let mut k = 0;
    while k < toks.len() {
        let t = toks[k];
        match t.tok {
            Tok::Punct(b'{') => stack.push(opens_type_body(text, &toks, k)),
            Tok::Punct(b'}') => {
                stack.pop();
            }
            Tok::Ident if &text[t.start..t.end] == name => {
                let member_level = stack.last().is_none_or(|b| *b);
                if member_level {
                    if let Some(r) = definition_at(text, &toks, k, kind) {
                        return Some(r);
                    }
                }
            }
            _ => {}
        }
        k += 1;
    }
    None
}

fn definition_at(
    text: &str,
    toks: &[Token],
    k: usize,
    kind: DefinitionKind,
) -> Option<(usize, usize)> {
    let next = toks.get(k + 1).map(|t| t.tok);
    match kind {
        DefinitionKind::Method => {
            if next != Some(Tok::Punct(b'(')) || !preceded_by_type(text, toks, k) {
                return None;
            }
            let close = matching(toks, k + 1, b'(', b')')?;
            // Skip a throws clause.
            let mut j = close + 1;
            while j < toks.len()
                && matches!(
                    toks[j].tok,
                    Tok::Ident | Tok::Punct(b',') | Tok::Punct(b'.')
                )
            {
                j += 1;
            }
            if toks.get(j)?.tok != Tok::Punct(b'{') {
                return None;
            }
            let end = matching(toks, j, b'{', b'}')?;
            Some((toks[decl_start(toks, k)].start, toks[end].end))
        }
        DefinitionKind::Class => {
            let kw = &text[toks.get(k.checked_sub(1)?)?.start..toks[k - 1].end];
            if !matches!(kw, "class" | "interface" | "enum" | "record") {
                return None;
            }
            let mut j = k + 1;
            while j < toks.len() && toks[j].tok != Tok::Punct(b'{') {
                if matches!(toks[j].tok, Tok::Punct(b';') | Tok::Punct(b'}')) {
                    return None;
                }
                j += 1;
            }
            let end = matching(toks, j, b'{', b'}')?;
            Some((toks[decl_start(toks, k)].start, toks[end].end))
        }
        DefinitionKind::Field => {
            if !matches!(next, Some(Tok::Punct(b'=' | b';' | b',' | b'['))) {
                return None;
            }
            if !preceded_by_type(text, toks, k) {
                return None;
            }
            let first = &text[toks[k - 1].start..toks[k - 1].end];
            if matches!(first, "class" | "interface" | "enum" | "record") {
                return None;
            }
            let mut depth = 0i64;
            for (j, t) in toks.iter().enumerate().skip(k + 1) {
                match t.tok {
                    Tok::Punct(b'(' | b'{' | b'[') => depth += 1,
                    Tok::Punct(b')' | b'}' | b']') => {
                        depth -= 1;
                        if depth < 0 {
                            return None;
                        }
                    }
                    Tok::Punct(b';') if depth == 0 => {
                        return Some((toks[decl_start(toks, k)].start, toks[j].end));
                    }
                    _ => {}
                }
            }
            None
        }
    }
}

/// Extracts the first definition named `expected_name`, from its
/// signature to its closing brace (fields: to the semicolon).
pub fn extract_single_definition(
    text: &str,
    expected_name: &str,
    kind: DefinitionKind,
) -> Option<String> {
    if expected_name.is_empty() {
        return None;
    }
    let (s, e) = find_definition(text, expected_name, kind)?;
    Some(text[s..e].to_string())
}

/// Braces outside literals and comments balance.
pub fn braces_balanced(text: &str) -> bool {
    let mut depth = 0i64;
    for t in scan(text).tokens {
        match t.tok {
            Tok::Punct(b'{') => depth += 1,
            Tok::Punct(b'}') => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            _ => {}
        }
    }
    depth == 0
}

/// The full chain: fences and prose, imports, then extraction.
pub fn sanitize(raw: &str, expected_name: &str, kind: DefinitionKind) -> SanitizeReport {
    let mut actions = Vec::new();
    let (stripped, fenced, prose) = strip_fences_and_prose_report(raw);
    if fenced {
        actions.push(SanitizeAction::FenceStripped);
    }
    if prose {
        actions.push(SanitizeAction::ProseStripped);
    }
    let (no_imports, imports) = strip_imports_report(&stripped);
    if imports {
        actions.push(SanitizeAction::ImportsStripped);
    }
    let result = extract_single_definition(&no_imports, expected_name, kind);
    match &result {
        Some(r) => {
            if no_imports.trim() != r.as_str() {
                actions.push(SanitizeAction::ExtraDefinitionsDiscarded);
            }
        }
        None => actions.push(SanitizeAction::ExtractionFailed),
    }
    SanitizeReport {
        input_bytes: raw.len(),
        output_bytes: result.as_ref().map_or(0, |r| r.len()),
        actions,
        result,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const METHOD: &str = "public static int add(int a, int b) {\n    return a + b;\n}";

    #[test]
    fn fenced_reply_with_intro() {
        let raw = format!("Here is the translation:\n```java\n{METHOD}\n```\nHope this helps!\n");
        let r = sanitize(&raw, "add", DefinitionKind::Method);
        assert_eq!(r.result.as_deref(), Some(METHOD));
        assert_eq!(
            r.actions,
            vec![SanitizeAction::FenceStripped, SanitizeAction::ProseStripped]
        );
    }

    #[test]
    fn clean_method_unchanged() {
        assert_eq!(strip_fences_and_prose(METHOD), METHOD);
        let r = sanitize(METHOD, "add", DefinitionKind::Method);
        assert_eq!(r.result.as_deref(), Some(METHOD));
        assert!(r.actions.is_empty());
    }

    #[test]
    fn imports_removed_but_not_inside_strings() {
        let raw = format!("import java.util.*;\n{METHOD}\n");
        assert_eq!(strip_imports(&raw), format!("{METHOD}\n"));
        let inside = "public static void f() {\nimport java.util.List;\n}\n";
        assert_eq!(strip_imports(inside), inside);
    }

    #[test]
    fn extra_helper_discarded() {
        let raw = format!("{METHOD}\n\npublic static int helper() {{\n    return 1;\n}}\n");
        let r = sanitize(&raw, "add", DefinitionKind::Method);
        assert_eq!(r.result.as_deref(), Some(METHOD));
        assert!(r
            .actions
            .contains(&SanitizeAction::ExtraDefinitionsDiscarded));
    }

    #[test]
    fn unbalanced_fails() {
        let r = sanitize(
            "public static int add(int a) {\n    return a;\n",
            "add",
            DefinitionKind::Method,
        );
        assert_eq!(r.result, None);
        assert_eq!(r.actions, vec![SanitizeAction::ExtractionFailed]);
    }

    #[test]
    fn braces_in_literals() {
        let m = "public static void main(String[] args) {\n    System.out.printf(\"{%d}\\n\", 1);\n    char c = '}';\n    // }\n}";
        let r = sanitize(&format!("```\n{m}\n```"), "main", DefinitionKind::Method);
        assert_eq!(r.result.as_deref(), Some(m));
    }

    #[test]
    fn method_inside_wrapper_class() {
        let raw = format!("public class Main {{\n{METHOD}\n}}\n");
        let r = sanitize(&raw, "add", DefinitionKind::Method);
        assert_eq!(r.result.as_deref(), Some(METHOD));
    }

    #[test]
    fn calls_are_not_definitions() {
        let raw = "public static int twice(int a) {\n    return add(a, a);\n}\n";
        assert_eq!(
            extract_single_definition(raw, "add", DefinitionKind::Method),
            None
        );
    }

    #[test]
    fn class_and_field() {
        let raw =
            "public static class Point {\n    public int x;\n}\npublic static int counter = 0;\n";
        assert_eq!(
            extract_single_definition(raw, "Point", DefinitionKind::Class).as_deref(),
            Some("public static class Point {\n    public int x;\n}")
        );
        assert_eq!(
            extract_single_definition(raw, "counter", DefinitionKind::Field).as_deref(),
            Some("public static int counter = 0;")
        );
        assert_eq!(
            extract_single_definition(raw, "x", DefinitionKind::Field).as_deref(),
            Some("public int x;")
        );
    }
}
