//! C front end: tokenizing, parsing and decomposition of a single source file.

pub mod ast;
mod decompose;
mod lexer;
mod macros;
mod parser;
pub mod print;

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use decompose::{
    decompose, CDecomposition, FunctionEntry, GlobalDecl, IncludeEntry, PartCounts, Prototype,
    RecordDef, TypedefDecl,
};
pub use macros::MacroDef;
pub use parser::binary_level;

use ast::{IncludeDirective, TranslationUnit};
use lexer::DirectiveKind;

/// Half-open byte range into the source text.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn contains(&self, other: Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn overlaps(&self, other: Span) -> bool {
        self.start < other.end && other.start < self.end
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
        span: Span,
    },
    #[error("{line}:{col}: unsupported construct: {construct}")]
    Unsupported {
        construct: String,
        line: usize,
        col: usize,
        span: Span,
    },
    #[error("line {line}: malformed directive: {message}")]
    Directive { line: usize, message: String },
    #[error("{path}: source is not valid UTF-8")]
    Encoding { path: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

pub(crate) fn compute_line_starts(text: &str) -> Vec<usize> {
    std::iter::once(0)
        .chain(text.match_indices('\n').map(|(i, _)| i + 1))
        .collect()
}

/// A C file held in memory with a line index for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CSourceFile {
    path: String,
    text: String,
    line_index: Vec<usize>,
}

impl CSourceFile {
    pub fn new(path: impl Into<String>, text: impl Into<String>) -> Self {
        let text = text.into();
        let line_index = compute_line_starts(&text);
        CSourceFile {
            path: path.into(),
            text,
            line_index,
        }
    }

    pub fn from_bytes(path: impl Into<String>, bytes: Vec<u8>) -> Result<Self, ParseError> {
        let path = path.into();
        match String::from_utf8(bytes) {
            Ok(t) => Ok(Self::new(path, t)),
            Err(_) => Err(ParseError::Encoding { path }),
        }
    }

    pub fn read(path: &Path) -> Result<Self, ParseError> {
        let shown = path.display().to_string();
        let bytes = std::fs::read(path).map_err(|e| ParseError::Io {
            path: shown.clone(),
            message: e.to_string(),
        })?;
        Self::from_bytes(shown, bytes)
    }

    pub fn path(&self) -> &str {
        &self.path
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// File name without directory or extension.
    pub fn stem(&self) -> &str {
        Path::new(&self.path)
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or(&self.path)
    }

    /// 1-based line and column of a byte offset.
    pub fn line_col(&self, offset: usize) -> (usize, usize) {
        lexer::line_col(&self.line_index, offset.min(self.text.len()))
    }

    pub fn slice(&self, span: Span) -> &str {
        &self.text[span.start..span.end]
    }

    pub(crate) fn syntax_error(&self, span: Span, message: impl Into<String>) -> ParseError {
        let (line, col) = self.line_col(span.start);
        ParseError::Syntax {
            line,
            col,
            message: message.into(),
            span,
        }
    }

    pub(crate) fn unsupported(&self, construct: impl Into<String>, span: Span) -> ParseError {
        let (line, col) = self.line_col(span.start);
        ParseError::Unsupported {
            construct: construct.into(),
            line,
            col,
            span,
        }
    }
}

/// Harvests every `#define` in order of appearance, without expanding any.
pub fn extract_macros(source: &CSourceFile) -> Result<Vec<MacroDef>, ParseError> {
    let lexed = lexer::tokenize(&source.text, &source.line_index)?;
    lexed
        .directives
        .iter()
        .filter(|d| matches!(d.kind, DirectiveKind::Define(_)))
        .map(|d| macros::macro_from_directive(&source.text, d))
        .collect()
}

/// Parses a whole translation unit.
pub fn parse(source: &CSourceFile) -> Result<TranslationUnit, ParseError> {
    let lexed = lexer::tokenize(&source.text, &source.line_index)?;
    let mut p = parser::Parser::new(&lexed.tokens, &source.line_index);
    let items = p.translation_unit()?;
    let includes = lexed
        .directives
        .iter()
        .filter_map(|d| match &d.kind {
            DirectiveKind::Include(t) => Some(IncludeDirective {
                target: t.clone(),
                span: d.span,
            }),
            _ => None,
        })
        .collect();
    Ok(TranslationUnit { items, includes })
}

/// Parse, harvest macros, and decompose in one step.
pub fn analyze(source: &CSourceFile) -> Result<(TranslationUnit, CDecomposition), ParseError> {
    let unit = parse(source)?;
    let macros = extract_macros(source)?;
    let parts = decompose(&unit, source, &macros)?;
    Ok((unit, parts))
}

/// Replaces each parameter token of a function-like macro body with the
/// matching argument text. Stringizing and token pasting are rejected.
pub fn substitute_macro(
    body: &str,
    params: &[String],
    args: &[String],
) -> Result<String, ParseError> {
    if has_hash_outside_literals(body) {
        return Err(ParseError::Unsupported {
            construct: "stringizing or token pasting in macro body".into(),
            line: 1,
            col: 1,
            span: Span::new(0, body.len()),
        });
    }
    let ls = compute_line_starts(body);
    let lexed = lexer::tokenize(body, &ls)?;
    let mut out = String::new();
    let mut last = 0;
    for t in &lexed.tokens {
        if let lexer::Tok::Ident(name) = &t.tok {
            if let Some(i) = params.iter().position(|p| p == name) {
                out.push_str(&body[last..t.span.start]);
                out.push_str(&args[i]);
                last = t.span.end;
            }
        }
    }
    out.push_str(&body[last..]);
    Ok(out)
}

fn has_hash_outside_literals(body: &str) -> bool {
    let mut quote = None;
    let mut escaped = false;
    for c in body.chars() {
        match quote {
            Some(q) => {
                if escaped {
                    escaped = false;
                } else if c == '\\' {
                    escaped = true;
                } else if c == q {
                    quote = None;
                }
            }
            None if c == '"' || c == '\'' => quote = Some(c),
            None if c == '#' => return true,
            None => {}
        }
    }
    false
}

/// Parses standalone expression text, such as a macro body after argument
/// substitution. Spans are relative to `text`.
pub fn parse_expression_fragment(
    text: &str,
    typedefs: impl IntoIterator<Item = String>,
) -> Result<ast::Expr, ParseError> {
    let ls = compute_line_starts(text);
    let lexed = lexer::tokenize(text, &ls)?;
    let mut p = parser::Parser::new(&lexed.tokens, &ls).with_typedefs(typedefs);
    let e = p.expression()?;
    if !p.at_eof() {
        return Err(ParseError::Syntax {
            line: 1,
            col: 1,
            message: "trailing tokens after expression".into(),
            span: Span::new(0, text.len()),
        });
    }
    Ok(e)
}

/// Parses standalone statement text. Spans are relative to `text`.
pub fn parse_statement_fragment(
    text: &str,
    typedefs: impl IntoIterator<Item = String>,
) -> Result<ast::Stmt, ParseError> {
    let ls = compute_line_starts(text);
    let lexed = lexer::tokenize(text, &ls)?;
    let mut p = parser::Parser::new(&lexed.tokens, &ls).with_typedefs(typedefs);
    let s = p.statement()?;
    if !p.at_eof() {
        return Err(ParseError::Syntax {
            line: 1,
            col: 1,
            message: "trailing tokens after statement".into(),
            span: Span::new(0, text.len()),
        });
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::ast::*;
    use super::*;

    fn src(t: &str) -> CSourceFile {
        CSourceFile::new("t.c", t)
    }

    #[test]
    fn no_directives_no_macros() {
        assert!(extract_macros(&src("int main(void) { return 0; }\n"))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn max_macro_harvested() {
        let m = extract_macros(&src("#define MAX(a,b) ((a)>(b)?(a):(b))\n")).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].name, "MAX");
        assert_eq!(
            m[0].params.as_deref(),
            Some(&["a".to_string(), "b".to_string()][..])
        );
        assert_eq!(m[0].body, "((a)>(b)?(a):(b))");
        assert!(!m[0].multiline);
    }

    #[test]
    fn object_like_macro() {
        let m = extract_macros(&src("#define N 10\n#define E\n")).unwrap();
        assert_eq!(m[0].params, None);
        assert_eq!(m[0].body, "10");
        assert_eq!(m[1].body, "");
    }

    #[test]
    fn continuation_at_eof_is_an_error() {
        let e = extract_macros(&src("int a;\n#define X 1 \\")).unwrap_err();
        assert!(matches!(e, ParseError::Directive { line: 2, .. }), "{e}");
    }

    #[test]
    fn duplicate_macro_params_rejected() {
        assert!(extract_macros(&src("#define F(a,a) a\n")).is_err());
    }

    #[test]
    fn empty_unit() {
        assert!(parse(&src("")).unwrap().items.is_empty());
        assert!(parse(&src("/* only a comment */\n"))
            .unwrap()
            .items
            .is_empty());
    }

    #[test]
    fn missing_initializer_is_syntax_error_at_semicolon() {
        let e = parse(&src("int x = ;")).unwrap_err();
        match e {
            ParseError::Syntax { line, col, .. } => assert_eq!((line, col), (1, 9)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn function_pointer_declarators() {
        let u = parse(&src(
            "typedef int (*Op)(int, int);\nint apply(Op f, int a) { return f(a, a); }\nint (*g)(int);\n",
        ))
        .unwrap();
        assert_eq!(u.items.len(), 3);
        let ExternalDecl::Declaration(d) = &u.items[2] else {
            panic!()
        };
        assert!(!d.declarators[0].declarator.is_function());
        assert_eq!(d.declarators[0].declarator.name(), Some("g"));
    }

    #[test]
    fn decompose_orders_each_list() {
        let s = src(
            "int counter = 0;\nstruct Point {int x; int y;};\nvoid move(struct Point *p) { p->x++; }\nint main(void) { return 0; }\n",
        );
        let (_, d) = analyze(&s).unwrap();
        assert_eq!(d.globals.len(), 1);
        assert_eq!(d.records.len(), 1);
        let names: Vec<_> = d.functions.iter().map(|f| f.name.as_str()).collect();
        assert_eq!(names, ["move", "main"]);
    }

    #[test]
    fn prototypes_only() {
        let (_, d) = analyze(&src("int f(int);\nvoid g(void);\n")).unwrap();
        assert!(d.functions.is_empty());
        assert_eq!(d.prototypes.len(), 2);
    }

    #[test]
    fn ternary_inside_paren_kept() {
        let e = parse_expression_fragment("((1) > (2) ? (1) : (2))", Vec::new()).unwrap();
        assert!(matches!(e.kind, ExprKind::Paren(_)));
    }

    #[test]
    fn rejects_conditional_compilation_and_compound_literals() {
        assert!(matches!(
            parse(&src("#if 1\n#endif\n")),
            Err(ParseError::Unsupported { .. })
        ));
        assert!(matches!(
            parse(&src(
                "struct P {int x;};\nint main(void) { struct P p = (struct P){1}; return p.x; }\n"
            )),
            Err(ParseError::Unsupported { .. })
        ));
    }

    #[test]
    fn duplicate_function_definitions_rejected() {
        assert!(analyze(&src("int f(void){return 0;}\nint f(void){return 1;}\n")).is_err());
    }
}
