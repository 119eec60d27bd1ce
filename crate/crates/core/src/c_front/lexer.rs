//! Tokenizer with preprocessor-line recognition.
//!
//! Comments and directive lines never reach the token stream. Directives are
//! reported separately so the decomposer can account for every byte of the
//! file.

use super::{ParseError, Span};

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Ident(String),
    Int {
        value: u64,
        unsigned: bool,
        long: bool,
        radix: u32,
    },
    Float {
        value: f64,
        single: bool,
    },
    Char(i64),
    Str(Vec<u8>),
    Punct(&'static str),
    Eof,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DirectiveKind {
    Include(String),
    Define(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Directive {
    pub kind: DirectiveKind,
    pub span: Span,
    /// 1-based line of the `#`.
    pub line: usize,
}

const PUNCTS: &[&str] = &[
    "...", "<<=", ">>=", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=", "&&", "||", "+=",
    "-=", "*=", "/=", "%=", "&=", "^=", "|=", "(", ")", "[", "]", "{", "}", ";", ",", ":", "?",
    "=", "<", ">", "+", "-", "*", "/", "%", "&", "|", "^", "!", "~", ".",
];

pub struct Lexed {
    pub tokens: Vec<Token>,
    pub directives: Vec<Directive>,
}

struct Lexer<'a> {
    src: &'a [u8],
    text: &'a str,
    pos: usize,
    line_starts: &'a [usize],
}

pub fn tokenize(text: &str, line_starts: &[usize]) -> Result<Lexed, ParseError> {
    let mut lx = Lexer {
        src: text.as_bytes(),
        text,
        pos: 0,
        line_starts,
    };
    let mut tokens = Vec::new();
    let mut directives = Vec::new();
    let mut at_line_start = true;
    loop {
        let newline_seen = lx.skip_trivia()?;
        at_line_start |= newline_seen;
        if lx.pos >= lx.src.len() {
            tokens.push(Token {
                tok: Tok::Eof,
                span: Span::new(lx.pos, lx.pos),
            });
            break;
        }
        if lx.src[lx.pos] == b'#' {
            if !at_line_start {
                return Err(lx.syntax(lx.pos, "stray '#' in program"));
            }
            directives.push(lx.directive()?);
            at_line_start = true;
            continue;
        }
        at_line_start = false;
        tokens.push(lx.token()?);
    }
    Ok(Lexed { tokens, directives })
}

pub(crate) fn line_col(line_starts: &[usize], offset: usize) -> (usize, usize) {
    let line = match line_starts.binary_search(&offset) {
        Ok(i) => i,
        Err(i) => i - 1,
    };
    (line + 1, offset - line_starts[line] + 1)
}

fn is_ident_start(b: u8) -> bool {
    b.is_ascii_alphabetic() || b == b'_'
}

fn is_ident_char(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

impl<'a> Lexer<'a> {
    fn peek(&self, off: usize) -> u8 {
        self.src.get(self.pos + off).copied().unwrap_or(0)
    }

    fn syntax(&self, at: usize, message: impl Into<String>) -> ParseError {
        let (line, col) = line_col(self.line_starts, at);
        ParseError::Syntax {
            line,
            col,
            message: message.into(),
            span: Span::new(at, (at + 1).min(self.src.len()).max(at)),
        }
    }

    /// Skips whitespace, comments and backslash-newline splices. Returns
    /// whether a newline was crossed.
    fn skip_trivia(&mut self) -> Result<bool, ParseError> {
        let mut newline = false;
        loop {
            match self.peek(0) {
                b'\n' => {
                    newline = true;
                    self.pos += 1;
                }
                b' ' | b'\t' | b'\r' | 0x0b | 0x0c => self.pos += 1,
                b'\\' if self.peek(1) == b'\n' => self.pos += 2,
                b'\\' if self.peek(1) == b'\r' && self.peek(2) == b'\n' => self.pos += 3,
                b'/' if self.peek(1) == b'/' => {
                    while self.pos < self.src.len() && self.src[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                b'/' if self.peek(1) == b'*' => {
                    let start = self.pos;
                    self.pos += 2;
                    loop {
                        if self.pos + 1 >= self.src.len() {
                            return Err(self.syntax(start, "unterminated comment"));
                        }
                        if self.src[self.pos] == b'\n' {
                            newline = true;
                        }
                        if self.src[self.pos] == b'*' && self.src[self.pos + 1] == b'/' {
                            self.pos += 2;
                            break;
                        }
                        self.pos += 1;
                    }
                }
                _ => return Ok(newline),
            }
        }
    }

    /// Consumes one directive line (with continuations). The span excludes the
    /// trailing newline.
    fn directive(&mut self) -> Result<Directive, ParseError> {
        let start = self.pos;
        let (line, _) = line_col(self.line_starts, start);
        let mut end = start;
        while end < self.src.len() {
            match self.src[end] {
                b'\n' => break,
                b'\\' if end + 1 < self.src.len() && self.src[end + 1] == b'\n' => end += 2,
                b'\\'
                    if self.src.get(end + 1) == Some(&b'\r')
                        && self.src.get(end + 2) == Some(&b'\n') =>
                {
                    end += 3
                }
                b'\\' if end + 1 == self.src.len() => {
                    return Err(ParseError::Directive {
                        line,
                        message: "unterminated line continuation".into(),
                    });
                }
                _ => end += 1,
            }
        }
        self.pos = end;
        let body = &self.text[start + 1..end];
        let trimmed = body.trim_start();
        let name_len = trimmed.bytes().take_while(|b| is_ident_char(*b)).count();
        let name = &trimmed[..name_len];
        let rest = trimmed[name_len..].trim();
        let span = Span::new(start, end);
        let kind = match name {
            "include" => DirectiveKind::Include(rest.to_string()),
            "define" => {
                let mname: String = rest
                    .bytes()
                    .take_while(|b| is_ident_char(*b))
                    .map(char::from)
                    .collect();
                if mname.is_empty() {
                    return Err(ParseError::Directive {
                        line,
                        message: "#define without a macro name".into(),
                    });
                }
                DirectiveKind::Define(mname)
            }
            "if" | "ifdef" | "ifndef" | "elif" | "else" | "endif" => {
                let (l, c) = line_col(self.line_starts, start);
                return Err(ParseError::Unsupported {
                    construct: format!("conditional compilation (#{name})"),
                    line: l,
                    col: c,
                    span,
                });
            }
            "" => {
                return Err(ParseError::Directive {
                    line,
                    message: "empty directive".into(),
                })
            }
            other => {
                let (l, c) = line_col(self.line_starts, start);
                return Err(ParseError::Unsupported {
                    construct: format!("preprocessor directive #{other}"),
                    line: l,
                    col: c,
                    span,
                });
            }
        };
        Ok(Directive { kind, span, line })
    }

    fn token(&mut self) -> Result<Token, ParseError> {
        let start = self.pos;
        let c = self.peek(0);
        let tok = if is_ident_start(c) {
            while is_ident_char(self.peek(0)) {
                self.pos += 1;
            }
            Tok::Ident(self.text[start..self.pos].to_string())
        } else if c.is_ascii_digit() || (c == b'.' && self.peek(1).is_ascii_digit()) {
            self.number()?
        } else if c == b'\'' {
            self.char_lit()?
        } else if c == b'"' {
            Tok::Str(self.string_lit()?)
        } else {
            let rest = &self.src[self.pos..];
            match PUNCTS.iter().find(|p| rest.starts_with(p.as_bytes())) {
                Some(p) => {
                    self.pos += p.len();
                    Tok::Punct(p)
                }
                None => {
                    let ch = self.text[start..].chars().next().unwrap_or('?');
                    return Err(self.syntax(start, format!("unexpected character '{ch}'")));
                }
            }
        };
        Ok(Token {
            tok,
            span: Span::new(start, self.pos),
        })
    }

    fn number(&mut self) -> Result<Tok, ParseError> {
        let start = self.pos;
        if self.peek(0) == b'0' && matches!(self.peek(1), b'x' | b'X') {
            self.pos += 2;
            let ds = self.pos;
            while self.peek(0).is_ascii_hexdigit() {
                self.pos += 1;
            }
            if ds == self.pos {
                return Err(self.syntax(start, "hexadecimal literal has no digits"));
            }
            let value = u64::from_str_radix(&self.text[ds..self.pos], 16)
                .map_err(|_| self.syntax(start, "integer literal out of range"))?;
            let (unsigned, long) = self.int_suffix(start)?;
            return Ok(Tok::Int {
                value,
                unsigned,
                long,
                radix: 16,
            });
        }
        while self.peek(0).is_ascii_digit() {
            self.pos += 1;
        }
        let mut is_float = false;
        if self.peek(0) == b'.' {
            is_float = true;
            self.pos += 1;
            while self.peek(0).is_ascii_digit() {
                self.pos += 1;
            }
        }
        if matches!(self.peek(0), b'e' | b'E') {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.peek(0), b'+' | b'-') {
                self.pos += 1;
            }
            if self.peek(0).is_ascii_digit() {
                is_float = true;
                while self.peek(0).is_ascii_digit() {
                    self.pos += 1;
                }
            } else {
                self.pos = save;
            }
        }
        if is_float {
            let value: f64 = self.text[start..self.pos]
                .parse()
                .map_err(|_| self.syntax(start, "malformed floating literal"))?;
            let single = matches!(self.peek(0), b'f' | b'F');
            if single || matches!(self.peek(0), b'l' | b'L') {
                self.pos += 1;
            }
            if is_ident_char(self.peek(0)) {
                return Err(self.syntax(self.pos, "invalid suffix on floating literal"));
            }
            return Ok(Tok::Float { value, single });
        }
        let digits = &self.text[start..self.pos];
        let (value, radix) = if digits.len() > 1 && digits.starts_with('0') {
            (
                u64::from_str_radix(&digits[1..], 8)
                    .map_err(|_| self.syntax(start, "invalid octal literal"))?,
                8,
            )
        } else {
            (
                digits
                    .parse::<u64>()
                    .map_err(|_| self.syntax(start, "integer literal out of range"))?,
                10,
            )
        };
        let (unsigned, long) = self.int_suffix(start)?;
        Ok(Tok::Int {
            value,
            unsigned,
            long,
            radix,
        })
    }

    fn int_suffix(&mut self, start: usize) -> Result<(bool, bool), ParseError> {
        let mut unsigned = false;
        let mut long = false;
        loop {
            match self.peek(0) {
                b'u' | b'U' if !unsigned => {
                    unsigned = true;
                    self.pos += 1;
                }
                b'l' | b'L' if !long => {
                    long = true;
                    self.pos += 1;
                    if matches!(self.peek(0), b'l' | b'L') {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
        if is_ident_char(self.peek(0)) {
            return Err(self.syntax(start, "invalid suffix on integer literal"));
        }
        Ok((unsigned, long))
    }

    fn escape(&mut self) -> Result<u8, ParseError> {
        let at = self.pos;
        self.pos += 1;
        let c = self.peek(0);
        self.pos += 1;
        Ok(match c {
            b'n' => b'\n',
            b't' => b'\t',
            b'r' => b'\r',
            b'0'..=b'7' => {
                let mut v: u32 = (c - b'0') as u32;
                for _ in 0..2 {
                    let d = self.peek(0);
                    if (b'0'..=b'7').contains(&d) {
                        v = v * 8 + (d - b'0') as u32;
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                (v & 0xFF) as u8
            }
            b'x' => {
                let ds = self.pos;
                while self.peek(0).is_ascii_hexdigit() {
                    self.pos += 1;
                }
                if ds == self.pos {
                    return Err(self.syntax(at, "\\x escape without digits"));
                }
                (u32::from_str_radix(&self.text[ds..self.pos], 16)
                    .map_err(|_| self.syntax(at, "escape out of range"))?
                    & 0xFF) as u8
            }
            b'a' => 7,
            b'b' => 8,
            b'f' => 12,
            b'v' => 11,
            b'\\' => b'\\',
            b'\'' => b'\'',
            b'"' => b'"',
            b'?' => b'?',
            _ => return Err(self.syntax(at, "unknown escape sequence")),
        })
    }

    fn char_lit(&mut self) -> Result<Tok, ParseError> {
        let start = self.pos;
        self.pos += 1;
        let v = match self.peek(0) {
            b'\\' => self.escape()?,
            b'\'' | b'\n' | 0 => {
                return Err(self.syntax(start, "empty or unterminated character constant"))
            }
            c if c.is_ascii() => {
                self.pos += 1;
                c
            }
            _ => return Err(self.syntax(start, "non-ASCII character constant")),
        };
        if self.peek(0) != b'\'' {
            return Err(self.syntax(start, "unterminated or multi-character constant"));
        }
        self.pos += 1;
        Ok(Tok::Char(v as i8 as i64))
    }

    fn string_lit(&mut self) -> Result<Vec<u8>, ParseError> {
        let start = self.pos;
        self.pos += 1;
        let mut out = Vec::new();
        loop {
            match self.peek(0) {
                b'"' => {
                    self.pos += 1;
                    return Ok(out);
                }
                b'\n' => return Err(self.syntax(start, "unterminated string literal")),
                0 if self.pos >= self.src.len() => {
                    return Err(self.syntax(start, "unterminated string literal"))
                }
                b'\\' if self.peek(1) == b'\n' => self.pos += 2,
                b'\\' => out.push(self.escape()?),
                c => {
                    out.push(c);
                    self.pos += 1;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex(s: &str) -> Lexed {
        let ls = super::super::compute_line_starts(s);
        tokenize(s, &ls).unwrap()
    }

    fn kinds(s: &str) -> Vec<Tok> {
        lex(s).tokens.into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn integer_suffixes_and_radixes() {
        assert_eq!(
            kinds("3000000000u 0xFF 017 5L")[..4],
            [
                Tok::Int {
                    value: 3_000_000_000,
                    unsigned: true,
                    long: false,
                    radix: 10
                },
                Tok::Int {
                    value: 255,
                    unsigned: false,
                    long: false,
                    radix: 16
                },
                Tok::Int {
                    value: 15,
                    unsigned: false,
                    long: false,
                    radix: 8
                },
                Tok::Int {
                    value: 5,
                    unsigned: false,
                    long: true,
                    radix: 10
                },
            ]
        );
    }

    #[test]
    fn floats() {
        assert_eq!(
            kinds("1.5f 2.25 2e3")[..3],
            [
                Tok::Float {
                    value: 1.5,
                    single: true
                },
                Tok::Float {
                    value: 2.25,
                    single: false
                },
                Tok::Float {
                    value: 2000.0,
                    single: false
                },
            ]
        );
    }

    #[test]
    fn comments_and_directives_are_skipped() {
        let l = lex("#include <stdio.h>\n// c\nint /* x */ a;\n#define N 3\n");
        assert_eq!(l.directives.len(), 2);
        assert_eq!(
            l.directives[0].kind,
            DirectiveKind::Include("<stdio.h>".into())
        );
        assert_eq!(l.directives[1].kind, DirectiveKind::Define("N".into()));
        assert_eq!(l.tokens.len(), 4);
    }

    #[test]
    fn conditional_compilation_rejected() {
        let s = "#ifdef X\nint a;\n#endif\n";
        let ls = super::super::compute_line_starts(s);
        assert!(matches!(
            tokenize(s, &ls),
            Err(ParseError::Unsupported { line: 1, .. })
        ));
    }

    #[test]
    fn string_escapes() {
        assert_eq!(kinds(r#""a\n\x41""#)[0], Tok::Str(b"a\nA".to_vec()));
        assert_eq!(kinds(r"'\0'")[0], Tok::Char(0));
    }

    #[test]
    fn longest_punct_wins() {
        assert_eq!(
            kinds("a->b <<= c")[1..4],
            [Tok::Punct("->"), Tok::Ident("b".into()), Tok::Punct("<<=")]
        );
    }
}
