//! Recursive-descent parser for the supported subset.

use std::collections::HashSet;

use super::ast::*;
use super::lexer::{line_col, Tok, Token};
use super::{ParseError, Span};

const TYPE_KEYWORDS: &[&str] = &[
    "void", "char", "short", "int", "long", "float", "double", "signed", "unsigned", "_Bool",
    "struct", "union", "enum", "const", "volatile", "typedef", "static", "extern", "inline",
    "register", "auto",
];

const REJECTED_KEYWORDS: &[&str] = &[
    "_Complex",
    "_Imaginary",
    "_Atomic",
    "_Alignas",
    "_Alignof",
    "_Generic",
    "_Noreturn",
    "_Static_assert",
    "_Thread_local",
    "__attribute__",
    "asm",
    "__asm__",
    "restrict",
];

const STATEMENT_KEYWORDS: &[&str] = &[
    "if", "else", "while", "do", "for", "switch", "case", "default", "break", "continue", "return",
    "goto", "sizeof",
];

pub struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    line_starts: &'a [usize],
    typedefs: HashSet<String>,
}

impl<'a> Parser<'a> {
    pub fn new(toks: &'a [Token], line_starts: &'a [usize]) -> Self {
        let mut typedefs = HashSet::new();
        typedefs.insert("size_t".to_string());
        Parser {
            toks,
            pos: 0,
            line_starts,
            typedefs,
        }
    }

    pub fn with_typedefs(mut self, names: impl IntoIterator<Item = String>) -> Self {
        self.typedefs.extend(names);
        self
    }

    pub fn at_eof(&self) -> bool {
        matches!(self.peek().tok, Tok::Eof)
    }

    fn peek(&self) -> &Token {
        &self.toks[self.pos.min(self.toks.len() - 1)]
    }

    fn peek_at(&self, n: usize) -> &Token {
        &self.toks[(self.pos + n).min(self.toks.len() - 1)]
    }

    fn bump(&mut self) -> Token {
        let t = self.peek().clone();
        if !matches!(t.tok, Tok::Eof) {
            self.pos += 1;
        }
        t
    }

    fn prev_end(&self) -> usize {
        if self.pos == 0 {
            0
        } else {
            self.toks[self.pos - 1].span.end
        }
    }

    fn start(&self) -> usize {
        self.peek().span.start
    }

    fn span_from(&self, start: usize) -> Span {
        Span::new(start, self.prev_end().max(start))
    }

    fn is_punct(&self, p: &str) -> bool {
        matches!(&self.peek().tok, Tok::Punct(q) if *q == p)
    }

    fn is_punct_at(&self, n: usize, p: &str) -> bool {
        matches!(&self.peek_at(n).tok, Tok::Punct(q) if *q == p)
    }

    fn is_kw(&self, k: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == k)
    }

    fn eat_punct(&mut self, p: &str) -> bool {
        if self.is_punct(p) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_kw(&mut self, k: &str) -> bool {
        if self.is_kw(k) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn describe(tok: &Tok) -> String {
        match tok {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Int { .. } | Tok::Float { .. } => "numeric literal".into(),
            Tok::Char(_) => "character constant".into(),
            Tok::Str(_) => "string literal".into(),
            Tok::Punct(p) => format!("'{p}'"),
            Tok::Eof => "end of input".into(),
        }
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        let t = self.peek();
        let (line, col) = line_col(self.line_starts, t.span.start);
        ParseError::Syntax {
            line,
            col,
            message: format!("{}, found {}", message.into(), Self::describe(&t.tok)),
            span: t.span,
        }
    }

    fn unsupported(&self, construct: impl Into<String>, span: Span) -> ParseError {
        let (line, col) = line_col(self.line_starts, span.start);
        ParseError::Unsupported {
            construct: construct.into(),
            line,
            col,
            span,
        }
    }

    fn expect_punct(&mut self, p: &str) -> Result<Span, ParseError> {
        if self.is_punct(p) {
            Ok(self.bump().span)
        } else {
            Err(self.error_here(format!("expected '{p}'")))
        }
    }

    fn expect_ident(&mut self) -> Result<(String, Span), ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) if !is_reserved(s) => {
                let s = s.clone();
                let sp = self.bump().span;
                Ok((s, sp))
            }
            _ => Err(self.error_here("expected identifier")),
        }
    }

    fn check_rejected(&self) -> Result<(), ParseError> {
        if let Tok::Ident(s) = &self.peek().tok {
            if REJECTED_KEYWORDS.contains(&s.as_str()) {
                return Err(self.unsupported(format!("keyword {s}"), self.peek().span));
            }
        }
        Ok(())
    }

    fn is_type_start_at(&self, n: usize) -> bool {
        match &self.peek_at(n).tok {
            Tok::Ident(s) => TYPE_KEYWORDS.contains(&s.as_str()) || self.typedefs.contains(s),
            _ => false,
        }
    }

    fn is_type_start(&self) -> bool {
        self.is_type_start_at(0)
    }

    /// True when the statement at the cursor is a declaration.
    fn starts_declaration(&self) -> bool {
        match &self.peek().tok {
            Tok::Ident(s) if TYPE_KEYWORDS.contains(&s.as_str()) => true,
            Tok::Ident(s) if self.typedefs.contains(s) => {
                matches!(&self.peek_at(1).tok, Tok::Ident(_)) || self.is_punct_at(1, "*")
            }
            _ => false,
        }
    }

    // ---------------------------------------------------------------- top level

    pub fn translation_unit(&mut self) -> Result<Vec<ExternalDecl>, ParseError> {
        let mut items = Vec::new();
        while !self.at_eof() {
            items.push(self.external_decl()?);
        }
        Ok(items)
    }

    fn external_decl(&mut self) -> Result<ExternalDecl, ParseError> {
        let start = self.start();
        self.check_rejected()?;
        if !self.is_type_start() {
            if self.is_punct(";") {
                return Err(self.unsupported("empty top-level declaration", self.peek().span));
            }
            return Err(self.error_here("expected a declaration"));
        }
        let specifiers = self.decl_spec()?;
        if self.eat_punct(";") {
            return Ok(ExternalDecl::Declaration(Declaration {
                specifiers,
                declarators: vec![],
                span: self.span_from(start),
            }));
        }
        let first = self.declarator(false)?;
        if first.is_function() && self.is_punct("{") {
            if specifiers.storage == Some(Storage::Typedef) {
                return Err(self.error_here("typedef cannot have a body"));
            }
            if let Some((_, true)) = first.function_suffix() {
                return Err(self.unsupported("variadic function definition", first.span));
            }
            let body = self.compound()?;
            return Ok(ExternalDecl::Function(FunctionDef {
                specifiers,
                declarator: first,
                body,
                span: self.span_from(start),
            }));
        }
        let decl = self.finish_declaration(start, specifiers, first)?;
        Ok(ExternalDecl::Declaration(decl))
    }

    fn finish_declaration(
        &mut self,
        start: usize,
        specifiers: DeclSpec,
        first: Declarator,
    ) -> Result<Declaration, ParseError> {
        let mut declarators = Vec::new();
        let mut d = first;
        loop {
            if d.name().is_none() {
                return Err(self.error_here("expected identifier in declaration"));
            }
            if specifiers.storage == Some(Storage::Typedef) {
                self.typedefs
                    .insert(d.name().unwrap_or_default().to_string());
            }
            let dstart = d.span.start;
            let init = if self.eat_punct("=") {
                if specifiers.storage == Some(Storage::Typedef) {
                    return Err(self.error_here("typedef cannot be initialized"));
                }
                Some(self.initializer()?)
            } else {
                None
            };
            declarators.push(InitDeclarator {
                declarator: d,
                init,
                span: self.span_from(dstart),
            });
            if self.eat_punct(",") {
                d = self.declarator(false)?;
                continue;
            }
            self.expect_punct(";")?;
            break;
        }
        Ok(Declaration {
            specifiers,
            declarators,
            span: self.span_from(start),
        })
    }

    fn initializer(&mut self) -> Result<Initializer, ParseError> {
        if self.is_punct("{") {
            let start = self.start();
            self.bump();
            let mut items = Vec::new();
            while !self.is_punct("}") {
                if self.is_punct(".") || self.is_punct("[") {
                    return Err(self.unsupported("designated initializer", self.peek().span));
                }
                items.push(self.initializer()?);
                if !self.eat_punct(",") {
                    break;
                }
            }
            self.expect_punct("}")?;
            return Ok(Initializer::List(items, self.span_from(start)));
        }
        Ok(Initializer::Expr(self.assignment()?))
    }

    // ------------------------------------------------------------ specifiers

    fn decl_spec(&mut self) -> Result<DeclSpec, ParseError> {
        let start = self.start();
        let mut storage = None;
        let mut is_const = false;
        let mut signed = false;
        let mut unsigned = false;
        let mut counts: [u8; 8] = [0; 8]; // void char short int long float double bool
        let mut other: Option<BaseType> = None;
        loop {
            self.check_rejected()?;
            let (word, span) = match &self.peek().tok {
                Tok::Ident(s) => (s.clone(), self.peek().span),
                _ => break,
            };
            let any_type = counts.iter().any(|c| *c > 0) || other.is_some() || signed || unsigned;
            match word.as_str() {
                "typedef" | "static" | "extern" => {
                    if storage.is_some() {
                        return Err(self.error_here("multiple storage classes"));
                    }
                    storage = Some(match word.as_str() {
                        "typedef" => Storage::Typedef,
                        "static" => Storage::Static,
                        _ => Storage::Extern,
                    });
                }
                "const" => is_const = true,
                "volatile" => return Err(self.unsupported("volatile qualifier", span)),
                "inline" | "register" | "auto" => {}
                "signed" => signed = true,
                "unsigned" => unsigned = true,
                "void" => counts[0] += 1,
                "char" => counts[1] += 1,
                "short" => counts[2] += 1,
                "int" => counts[3] += 1,
                "long" => counts[4] += 1,
                "float" => counts[5] += 1,
                "double" => counts[6] += 1,
                "_Bool" => counts[7] += 1,
                "struct" | "union" => {
                    if any_type {
                        return Err(self.error_here("conflicting type specifiers"));
                    }
                    other = Some(BaseType::Record(self.record_spec()?));
                    continue;
                }
                "enum" => {
                    if any_type {
                        return Err(self.error_here("conflicting type specifiers"));
                    }
                    other = Some(BaseType::Enum(self.enum_spec()?));
                    continue;
                }
                w if self.typedefs.contains(w) && !any_type => {
                    other = Some(BaseType::TypedefName(w.to_string()));
                }
                _ => break,
            }
            self.pos += 1;
        }
        let span = self.span_from(start);
        let base = if let Some(o) = other {
            if counts.iter().any(|c| *c > 0) || signed || unsigned {
                return Err(self.unsupported("mixed type specifiers", span));
            }
            o
        } else {
            self.resolve_base(counts, signed, unsigned, span)?
        };
        Ok(DeclSpec {
            storage,
            is_const,
            base,
            span,
        })
    }

    fn resolve_base(
        &self,
        c: [u8; 8],
        signed: bool,
        unsigned: bool,
        span: Span,
    ) -> Result<BaseType, ParseError> {
        if signed && unsigned {
            return Err(self.unsupported("signed unsigned combination", span));
        }
        let [void, ch, short, int, long, float, double, bool_] = c;
        let total = void + ch + short + int + long + float + double + bool_;
        if total == 0 && !signed && !unsigned {
            let (line, col) = line_col(self.line_starts, span.start);
            return Err(ParseError::Syntax {
                line,
                col,
                message: "missing type specifier".into(),
                span,
            });
        }
        let bad = || self.unsupported("type specifier combination", span);
        if int > 1 || short > 1 || ch > 1 || float > 1 || double > 1 || void > 1 || long > 2 {
            return Err(bad());
        }
        let b = if void == 1 {
            if total != 1 || signed || unsigned {
                return Err(bad());
            }
            BaseType::Void
        } else if bool_ == 1 {
            if total != 1 || signed || unsigned {
                return Err(bad());
            }
            BaseType::Bool
        } else if float == 1 {
            if total != 1 || signed || unsigned {
                return Err(bad());
            }
            BaseType::Float
        } else if double == 1 {
            if signed || unsigned || short + ch + int > 0 || long > 1 {
                return Err(bad());
            }
            if long == 1 {
                BaseType::LongDouble
            } else {
                BaseType::Double
            }
        } else if ch == 1 {
            if total != 1 {
                return Err(bad());
            }
            if unsigned {
                BaseType::UChar
            } else if signed {
                BaseType::SChar
            } else {
                BaseType::Char
            }
        } else if short == 1 {
            if long > 0 {
                return Err(bad());
            }
            if unsigned {
                BaseType::UShort
            } else {
                BaseType::Short
            }
        } else if long == 2 {
            if unsigned {
                BaseType::ULongLong
            } else {
                BaseType::LongLong
            }
        } else if long == 1 {
            if unsigned {
                BaseType::ULong
            } else {
                BaseType::Long
            }
        } else if unsigned {
            BaseType::UInt
        } else {
            BaseType::Int
        };
        Ok(b)
    }

    fn record_spec(&mut self) -> Result<RecordSpec, ParseError> {
        let start = self.start();
        let kind = if self.eat_kw("struct") {
            RecordKind::Struct
        } else {
            self.bump();
            RecordKind::Union
        };
        let tag = match &self.peek().tok {
            Tok::Ident(s) if !is_reserved(s) => {
                let s = s.clone();
                self.bump();
                Some(s)
            }
            _ => None,
        };
        let fields = if self.eat_punct("{") {
            let mut fields = Vec::new();
            while !self.eat_punct("}") {
                let fstart = self.start();
                if !self.is_type_start() {
                    return Err(self.error_here("expected field declaration"));
                }
                let specifiers = self.decl_spec()?;
                if specifiers.storage.is_some() {
                    return Err(self.error_here("storage class on a field"));
                }
                loop {
                    let dstart = self.start();
                    let declarator = if self.is_punct(":") {
                        return Err(self.unsupported("unnamed bitfield", self.peek().span));
                    } else {
                        self.declarator(false)?
                    };
                    if declarator.name().is_none() {
                        return Err(self.error_here("expected field name"));
                    }
                    let bit_width = if self.eat_punct(":") {
                        Some(self.conditional()?)
                    } else {
                        None
                    };
                    fields.push(FieldDecl {
                        specifiers: specifiers.clone(),
                        declarator,
                        bit_width,
                        span: Span::new(fstart.min(dstart), self.prev_end()),
                    });
                    if !self.eat_punct(",") {
                        break;
                    }
                }
                self.expect_punct(";")?;
                if let Some(last) = fields.last_mut() {
                    last.span = Span::new(last.span.start, self.prev_end());
                }
            }
            Some(fields)
        } else {
            None
        };
        if tag.is_none() && fields.is_none() {
            return Err(self.error_here(format!("expected {} tag or body", kind.keyword())));
        }
        Ok(RecordSpec {
            kind,
            tag,
            fields,
            span: self.span_from(start),
        })
    }

    fn enum_spec(&mut self) -> Result<EnumSpec, ParseError> {
        let start = self.start();
        self.bump();
        let tag = match &self.peek().tok {
            Tok::Ident(s) if !is_reserved(s) => {
                let s = s.clone();
                self.bump();
                Some(s)
            }
            _ => None,
        };
        let variants = if self.eat_punct("{") {
            let mut vs = Vec::new();
            while !self.is_punct("}") {
                let (name, nspan) = self.expect_ident()?;
                let value = if self.eat_punct("=") {
                    Some(self.conditional()?)
                } else {
                    None
                };
                vs.push(Enumerator {
                    name,
                    value,
                    span: self.span_from(nspan.start),
                });
                if !self.eat_punct(",") {
                    break;
                }
            }
            self.expect_punct("}")?;
            if vs.is_empty() {
                return Err(self.error_here("empty enum"));
            }
            Some(vs)
        } else {
            None
        };
        if tag.is_none() && variants.is_none() {
            return Err(self.error_here("expected enum tag or body"));
        }
        Ok(EnumSpec {
            tag,
            variants,
            span: self.span_from(start),
        })
    }

    // ------------------------------------------------------------ declarators

    fn declarator(&mut self, allow_abstract: bool) -> Result<Declarator, ParseError> {
        let start = self.start();
        let mut pointers = Vec::new();
        while self.eat_punct("*") {
            let mut q = PointerQual { is_const: false };
            loop {
                self.check_rejected()?;
                if self.eat_kw("const") {
                    q.is_const = true;
                } else if self.is_kw("volatile") {
                    return Err(self.unsupported("volatile qualifier", self.peek().span));
                } else {
                    break;
                }
            }
            pointers.push(q);
        }
        let name = match &self.peek().tok {
            Tok::Ident(s) if !is_reserved(s) && (!allow_abstract || !self.typedefs.contains(s)) => {
                Some(s.clone())
            }
            _ => None,
        };
        let nested = self.is_punct("(")
            && (self.is_punct_at(1, "*")
                || self.is_punct_at(1, "(")
                || (!allow_abstract && !self.is_type_start_at(1)));
        let core = if let Some(s) = name {
            let sp = self.bump().span;
            DeclaratorCore::Name(s, sp)
        } else if nested {
            self.bump();
            let inner = self.declarator(allow_abstract)?;
            self.expect_punct(")")?;
            DeclaratorCore::Nested(Box::new(inner))
        } else if allow_abstract {
            DeclaratorCore::Abstract
        } else {
            return Err(self.error_here("expected identifier"));
        };
        let mut suffixes = Vec::new();
        loop {
            if self.eat_punct("[") {
                if self.eat_punct("]") {
                    suffixes.push(DeclSuffix::Array(None));
                } else {
                    let e = self.assignment()?;
                    self.expect_punct("]")?;
                    suffixes.push(DeclSuffix::Array(Some(e)));
                }
            } else if self.is_punct("(") {
                self.bump();
                let (params, variadic) = self.params()?;
                suffixes.push(DeclSuffix::Function { params, variadic });
            } else {
                break;
            }
        }
        Ok(Declarator {
            pointers,
            core,
            suffixes,
            span: self.span_from(start),
        })
    }

    fn params(&mut self) -> Result<(Vec<ParamDecl>, bool), ParseError> {
        if self.eat_punct(")") {
            return Ok((vec![], false));
        }
        if self.is_kw("void") && self.is_punct_at(1, ")") {
            self.pos += 2;
            return Ok((vec![], false));
        }
        let mut params = Vec::new();
        let mut variadic = false;
        loop {
            if self.eat_punct("...") {
                variadic = true;
                break;
            }
            let start = self.start();
            if !self.is_type_start() {
                return Err(self.error_here("expected parameter type"));
            }
            let specifiers = self.decl_spec()?;
            let declarator = self.declarator(true)?;
            params.push(ParamDecl {
                specifiers,
                declarator,
                span: self.span_from(start),
            });
            if !self.eat_punct(",") {
                break;
            }
        }
        self.expect_punct(")")?;
        Ok((params, variadic))
    }

    fn type_name(&mut self) -> Result<TypeName, ParseError> {
        let start = self.start();
        let specifiers = self.decl_spec()?;
        if specifiers.storage.is_some() {
            return Err(self.error_here("storage class in type name"));
        }
        let declarator = self.declarator(true)?;
        if declarator.name().is_some() {
            return Err(self.error_here("unexpected identifier in type name"));
        }
        Ok(TypeName {
            specifiers,
            declarator,
            span: self.span_from(start),
        })
    }

    // ------------------------------------------------------------ statements

    fn compound(&mut self) -> Result<Stmt, ParseError> {
        let start = self.start();
        self.expect_punct("{")?;
        let saved = self.typedefs.clone();
        let mut items = Vec::new();
        while !self.is_punct("}") {
            if self.at_eof() {
                return Err(self.error_here("expected '}'"));
            }
            items.push(self.block_item()?);
        }
        self.bump();
        self.typedefs = saved;
        Ok(Stmt {
            kind: StmtKind::Compound(items),
            span: self.span_from(start),
        })
    }

    fn block_item(&mut self) -> Result<Stmt, ParseError> {
        self.check_rejected()?;
        if self.starts_declaration() {
            let start = self.start();
            let specifiers = self.decl_spec()?;
            let decl = if self.eat_punct(";") {
                Declaration {
                    specifiers,
                    declarators: vec![],
                    span: self.span_from(start),
                }
            } else {
                let first = self.declarator(false)?;
                if first.is_function() && self.is_punct("{") {
                    return Err(self.unsupported("nested function definition", first.span));
                }
                self.finish_declaration(start, specifiers, first)?
            };
            let span = decl.span;
            return Ok(Stmt {
                kind: StmtKind::Decl(decl),
                span,
            });
        }
        self.statement()
    }

    pub fn statement(&mut self) -> Result<Stmt, ParseError> {
        self.check_rejected()?;
        let start = self.start();
        let kind = match self.peek().tok.clone() {
            Tok::Punct("{") => return self.compound(),
            Tok::Punct(";") => {
                self.bump();
                StmtKind::Expr(None)
            }
            Tok::Ident(ref w) if w == "if" => {
                self.bump();
                self.expect_punct("(")?;
                let cond = self.expression()?;
                self.expect_punct(")")?;
                let then = Box::new(self.statement()?);
                let els = if self.eat_kw("else") {
                    Some(Box::new(self.statement()?))
                } else {
                    None
                };
                StmtKind::If { cond, then, els }
            }
            Tok::Ident(ref w) if w == "while" => {
                self.bump();
                self.expect_punct("(")?;
                let cond = self.expression()?;
                self.expect_punct(")")?;
                let body = Box::new(self.statement()?);
                StmtKind::While { cond, body }
            }
            Tok::Ident(ref w) if w == "do" => {
                self.bump();
                let body = Box::new(self.statement()?);
                if !self.eat_kw("while") {
                    return Err(self.error_here("expected 'while'"));
                }
                self.expect_punct("(")?;
                let cond = self.expression()?;
                self.expect_punct(")")?;
                self.expect_punct(";")?;
                StmtKind::DoWhile { body, cond }
            }
            Tok::Ident(ref w) if w == "for" => {
                self.bump();
                self.expect_punct("(")?;
                let saved = self.typedefs.clone();
                let init = if self.eat_punct(";") {
                    None
                } else if self.starts_declaration() {
                    let dstart = self.start();
                    let specifiers = self.decl_spec()?;
                    let first = self.declarator(false)?;
                    Some(ForInit::Decl(
                        self.finish_declaration(dstart, specifiers, first)?,
                    ))
                } else {
                    let e = self.expression()?;
                    self.expect_punct(";")?;
                    Some(ForInit::Expr(e))
                };
                let cond = if self.is_punct(";") {
                    None
                } else {
                    Some(self.expression()?)
                };
                self.expect_punct(";")?;
                let step = if self.is_punct(")") {
                    None
                } else {
                    Some(self.expression()?)
                };
                self.expect_punct(")")?;
                let body = Box::new(self.statement()?);
                self.typedefs = saved;
                StmtKind::For {
                    init,
                    cond,
                    step,
                    body,
                }
            }
            Tok::Ident(ref w) if w == "switch" => {
                self.bump();
                self.expect_punct("(")?;
                let cond = self.expression()?;
                self.expect_punct(")")?;
                let body = Box::new(self.statement()?);
                StmtKind::Switch { cond, body }
            }
            Tok::Ident(ref w) if w == "case" => {
                self.bump();
                let value = self.conditional()?;
                self.expect_punct(":")?;
                let body = Box::new(self.case_body()?);
                StmtKind::Case { value, body }
            }
            Tok::Ident(ref w) if w == "default" => {
                self.bump();
                self.expect_punct(":")?;
                let body = Box::new(self.case_body()?);
                StmtKind::Default { body }
            }
            Tok::Ident(ref w) if w == "break" => {
                self.bump();
                self.expect_punct(";")?;
                StmtKind::Break
            }
            Tok::Ident(ref w) if w == "continue" => {
                self.bump();
                self.expect_punct(";")?;
                StmtKind::Continue
            }
            Tok::Ident(ref w) if w == "return" => {
                self.bump();
                let e = if self.is_punct(";") {
                    None
                } else {
                    Some(self.expression()?)
                };
                self.expect_punct(";")?;
                StmtKind::Return(e)
            }
            Tok::Ident(ref w) if w == "goto" => {
                self.bump();
                let (label, _) = self.expect_ident()?;
                self.expect_punct(";")?;
                StmtKind::Goto(label)
            }
            Tok::Ident(ref w) if !is_reserved(w) && self.is_punct_at(1, ":") => {
                let label = w.clone();
                self.pos += 2;
                let body = if self.is_punct("}") {
                    // A label directly before a closing brace labels an empty statement.
                    Stmt {
                        kind: StmtKind::Expr(None),
                        span: Span::new(self.prev_end(), self.prev_end()),
                    }
                } else if self.starts_declaration() {
                    return Err(self.unsupported("label on a declaration", self.peek().span));
                } else {
                    self.statement()?
                };
                StmtKind::Labeled {
                    label,
                    body: Box::new(body),
                }
            }
            Tok::Ident(ref w) if w == "else" => return Err(self.error_here("'else' without 'if'")),
            _ => {
                let e = self.expression()?;
                self.expect_punct(";")?;
                StmtKind::Expr(Some(e))
            }
        };
        Ok(Stmt {
            kind,
            span: self.span_from(start),
        })
    }

    /// Body of a case label: the single following statement. Declarations
    /// directly after a case label are not valid C11.
    fn case_body(&mut self) -> Result<Stmt, ParseError> {
        if self.is_punct("}") || self.is_kw("case") || self.is_kw("default") {
            let at = self.prev_end();
            return Ok(Stmt {
                kind: StmtKind::Expr(None),
                span: Span::new(at, at),
            });
        }
        if self.starts_declaration() {
            return Err(
                self.unsupported("declaration directly after a case label", self.peek().span)
            );
        }
        self.statement()
    }

    // ----------------------------------------------------------- expressions

    pub fn expression(&mut self) -> Result<Expr, ParseError> {
        let start = self.start();
        let mut lhs = self.assignment()?;
        while self.eat_punct(",") {
            let rhs = self.assignment()?;
            lhs = Expr {
                kind: ExprKind::Comma {
                    lhs: Box::new(lhs),
                    rhs: Box::new(rhs),
                },
                span: self.span_from(start),
            };
        }
        Ok(lhs)
    }

    pub fn assignment(&mut self) -> Result<Expr, ParseError> {
        let start = self.start();
        let lhs = self.conditional()?;
        let op = match &self.peek().tok {
            Tok::Punct("=") => None,
            Tok::Punct(p) => match assign_op(p) {
                Some(op) => Some(op),
                None => return Ok(lhs),
            },
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.assignment()?;
        Ok(Expr {
            kind: ExprKind::Assign {
                op,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
            },
            span: self.span_from(start),
        })
    }

    fn conditional(&mut self) -> Result<Expr, ParseError> {
        let start = self.start();
        let cond = self.binary(0)?;
        if !self.eat_punct("?") {
            return Ok(cond);
        }
        let then = self.expression()?;
        self.expect_punct(":")?;
        let els = self.conditional()?;
        Ok(Expr {
            kind: ExprKind::Ternary {
                cond: Box::new(cond),
                then: Box::new(then),
                els: Box::new(els),
            },
            span: self.span_from(start),
        })
    }

    fn peek_binary_op(&self) -> Option<BinOp> {
        match &self.peek().tok {
            Tok::Punct(p) => binary_op(p),
            _ => None,
        }
    }

    fn binary(&mut self, min_level: u8) -> Result<Expr, ParseError> {
        let start = self.start();
        let mut lhs = self.cast()?;
        while let Some(op) = self.peek_binary_op() {
            let level = binary_level(op);
            if level < min_level {
                break;
            }
            self.bump();
            let rhs = self.binary(level + 1)?;
            lhs = Expr {
                kind: ExprKind::Binary {
                    op,
                    lhs: Box::new(lhs),
                    rhs: Box::new(rhs),
                },
                span: self.span_from(start),
            };
        }
        Ok(lhs)
    }

    fn cast(&mut self) -> Result<Expr, ParseError> {
        if self.is_punct("(") && self.is_type_start_at(1) {
            let start = self.start();
            self.bump();
            let ty = self.type_name()?;
            self.expect_punct(")")?;
            if self.is_punct("{") {
                return Err(self.unsupported("compound literal", self.span_from(start)));
            }
            let expr = self.cast()?;
            return Ok(Expr {
                kind: ExprKind::Cast {
                    ty: Box::new(ty),
                    expr: Box::new(expr),
                },
                span: self.span_from(start),
            });
        }
        self.unary()
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        let start = self.start();
        let op = match &self.peek().tok {
            Tok::Punct("-") => Some(UnaryOp::Neg),
            Tok::Punct("+") => Some(UnaryOp::Plus),
            Tok::Punct("!") => Some(UnaryOp::Not),
            Tok::Punct("~") => Some(UnaryOp::BitNot),
            Tok::Punct("*") => Some(UnaryOp::Deref),
            Tok::Punct("&") => Some(UnaryOp::AddrOf),
            Tok::Punct("++") => Some(UnaryOp::PreInc),
            Tok::Punct("--") => Some(UnaryOp::PreDec),
            _ => None,
        };
        if let Some(op) = op {
            self.bump();
            let operand = if matches!(op, UnaryOp::PreInc | UnaryOp::PreDec) {
                self.unary()?
            } else {
                self.cast()?
            };
            return Ok(Expr {
                kind: ExprKind::Unary {
                    op,
                    operand: Box::new(operand),
                },
                span: self.span_from(start),
            });
        }
        if self.eat_kw("sizeof") {
            if self.is_punct("(") && self.is_type_start_at(1) {
                self.bump();
                let ty = self.type_name()?;
                self.expect_punct(")")?;
                return Ok(Expr {
                    kind: ExprKind::SizeofType(Box::new(ty)),
                    span: self.span_from(start),
                });
            }
            let e = self.unary()?;
            return Ok(Expr {
                kind: ExprKind::SizeofExpr(Box::new(e)),
                span: self.span_from(start),
            });
        }
        self.postfix()
    }

    fn postfix(&mut self) -> Result<Expr, ParseError> {
        let start = self.start();
        let mut e = self.primary()?;
        loop {
            let kind = if self.eat_punct("[") {
                let index = self.expression()?;
                self.expect_punct("]")?;
                ExprKind::Index {
                    base: Box::new(e),
                    index: Box::new(index),
                }
            } else if self.eat_punct("(") {
                let mut args = Vec::new();
                if !self.is_punct(")") {
                    loop {
                        args.push(self.assignment()?);
                        if !self.eat_punct(",") {
                            break;
                        }
                    }
                }
                self.expect_punct(")")?;
                ExprKind::Call {
                    callee: Box::new(e),
                    args,
                }
            } else if self.is_punct(".") || self.is_punct("->") {
                let arrow = self.bump().tok == Tok::Punct("->");
                let (field, _) = self.expect_ident()?;
                ExprKind::Member {
                    base: Box::new(e),
                    field,
                    arrow,
                }
            } else if self.eat_punct("++") {
                ExprKind::Postfix {
                    op: PostfixOp::Inc,
                    operand: Box::new(e),
                }
            } else if self.eat_punct("--") {
                ExprKind::Postfix {
                    op: PostfixOp::Dec,
                    operand: Box::new(e),
                }
            } else {
                break;
            };
            e = Expr {
                kind,
                span: self.span_from(start),
            };
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        self.check_rejected()?;
        let start = self.start();
        let kind = match self.peek().tok.clone() {
            Tok::Ident(s) if !is_reserved(&s) && !self.typedefs.contains(&s) => {
                self.bump();
                ExprKind::Ident(s)
            }
            Tok::Int {
                value,
                unsigned,
                long,
                radix,
            } => {
                self.bump();
                ExprKind::IntLit {
                    value,
                    unsigned,
                    long,
                    radix,
                }
            }
            Tok::Float { value, single } => {
                self.bump();
                ExprKind::FloatLit { value, single }
            }
            Tok::Char(c) => {
                self.bump();
                ExprKind::CharLit(c)
            }
            Tok::Str(mut bytes) => {
                self.bump();
                while let Tok::Str(more) = &self.peek().tok {
                    bytes.extend_from_slice(more);
                    self.bump();
                }
                ExprKind::StrLit(bytes)
            }
            Tok::Punct("(") => {
                self.bump();
                if self.is_punct("{") {
                    return Err(self.unsupported("statement expression", self.peek().span));
                }
                let inner = self.expression()?;
                self.expect_punct(")")?;
                ExprKind::Paren(Box::new(inner))
            }
            _ => return Err(self.error_here("expected expression")),
        };
        Ok(Expr {
            kind,
            span: self.span_from(start),
        })
    }
}

fn is_reserved(s: &str) -> bool {
    TYPE_KEYWORDS.contains(&s) || STATEMENT_KEYWORDS.contains(&s) || REJECTED_KEYWORDS.contains(&s)
}

fn assign_op(p: &str) -> Option<BinOp> {
    Some(match p {
        "+=" => BinOp::Add,
        "-=" => BinOp::Sub,
        "*=" => BinOp::Mul,
        "/=" => BinOp::Div,
        "%=" => BinOp::Rem,
        "<<=" => BinOp::Shl,
        ">>=" => BinOp::Shr,
        "&=" => BinOp::BitAnd,
        "^=" => BinOp::BitXor,
        "|=" => BinOp::BitOr,
        _ => return None,
    })
}

fn binary_op(p: &str) -> Option<BinOp> {
    Some(match p {
        "*" => BinOp::Mul,
        "/" => BinOp::Div,
        "%" => BinOp::Rem,
        "+" => BinOp::Add,
        "-" => BinOp::Sub,
        "<<" => BinOp::Shl,
        ">>" => BinOp::Shr,
        "<" => BinOp::Lt,
        ">" => BinOp::Gt,
        "<=" => BinOp::Le,
        ">=" => BinOp::Ge,
        "==" => BinOp::Eq,
        "!=" => BinOp::Ne,
        "&" => BinOp::BitAnd,
        "^" => BinOp::BitXor,
        "|" => BinOp::BitOr,
        "&&" => BinOp::And,
        "||" => BinOp::Or,
        _ => return None,
    })
}

/// C binding strength, higher binds tighter.
pub fn binary_level(op: BinOp) -> u8 {
    match op {
        BinOp::Or => 0,
        BinOp::And => 1,
        BinOp::BitOr => 2,
        BinOp::BitXor => 3,
        BinOp::BitAnd => 4,
        BinOp::Eq | BinOp::Ne => 5,
        BinOp::Lt | BinOp::Gt | BinOp::Le | BinOp::Ge => 6,
        BinOp::Shl | BinOp::Shr => 7,
        BinOp::Add | BinOp::Sub => 8,
        BinOp::Mul | BinOp::Div | BinOp::Rem => 9,
    }
}
