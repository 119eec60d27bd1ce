use serde::{Deserialize, Serialize};

use super::lexer::{Directive, DirectiveKind};
use super::{ParseError, Span};

/// One `#define`, kept unexpanded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MacroDef {
    pub name: String,
    /// `None` for object-like macros.
    pub params: Option<Vec<String>>,
    /// Replacement text with line continuations spliced and comments removed.
    pub body: String,
    pub multiline: bool,
    pub span: Span,
}

impl MacroDef {
    pub fn is_function_like(&self) -> bool {
        self.params.is_some()
    }
}

fn splice(raw: &str) -> String {
    raw.replace("\\\r\n", "").replace("\\\n", "")
}

/// Removes comments outside string and character literals. Each comment
/// becomes a single space, as in translation phase 3.
fn strip_comments(s: &str) -> String {
    let b = s.as_bytes();
    let mut out = String::with_capacity(s.len());
    let mut i = 0;
    let mut quote: Option<u8> = None;
    while i < b.len() {
        let c = b[i];
        if let Some(q) = quote {
            if c == b'\\' && i + 1 < b.len() {
                out.push_str(&s[i..i + 2]);
                i += 2;
                continue;
            }
            if c == q {
                quote = None;
            }
            let ch = s[i..].chars().next().unwrap_or(' ');
            out.push(ch);
            i += ch.len_utf8();
            continue;
        }
        if c == b'"' || c == b'\'' {
            quote = Some(c);
            out.push(c as char);
            i += 1;
        } else if c == b'/' && b.get(i + 1) == Some(&b'/') {
            break;
        } else if c == b'/' && b.get(i + 1) == Some(&b'*') {
            match s[i + 2..].find("*/") {
                Some(end) => {
                    out.push(' ');
                    i += 2 + end + 2;
                }
                None => break,
            }
        } else {
            let ch = s[i..].chars().next().unwrap_or(' ');
            out.push(ch);
            i += ch.len_utf8();
        }
    }
    out
}

pub(crate) fn macro_from_directive(text: &str, d: &Directive) -> Result<MacroDef, ParseError> {
    let DirectiveKind::Define(name) = &d.kind else {
        return Err(ParseError::Directive {
            line: d.line,
            message: "not a #define".into(),
        });
    };
    let raw = &text[d.span.start..d.span.end];
    let multiline = raw.contains("\\\n") || raw.contains("\\\r\n");
    let spliced = strip_comments(&splice(raw));
    let err = |message: &str| ParseError::Directive {
        line: d.line,
        message: message.to_string(),
    };
    let after_hash = spliced
        .trim_start()
        .strip_prefix('#')
        .ok_or_else(|| err("missing '#'"))?;
    let after_kw = after_hash
        .trim_start()
        .strip_prefix("define")
        .ok_or_else(|| err("missing 'define'"))?
        .trim_start();
    let rest = after_kw
        .strip_prefix(name.as_str())
        .ok_or_else(|| err("macro name mismatch"))?;
    let (params, body) = if let Some(plist) = rest.strip_prefix('(') {
        let close = plist
            .find(')')
            .ok_or_else(|| err("unterminated macro parameter list"))?;
        let inner = plist[..close].trim();
        let mut params: Vec<String> = Vec::new();
        if !inner.is_empty() {
            for p in inner.split(',') {
                let p = p.trim();
                if p == "..." {
                    return Err(err("variadic macros are not supported"));
                }
                let valid = !p.is_empty()
                    && p.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
                    && !p.as_bytes()[0].is_ascii_digit();
                if !valid {
                    return Err(err(&format!("invalid macro parameter '{p}'")));
                }
                if params.iter().any(|q| q == p) {
                    return Err(err(&format!("duplicate macro parameter '{p}'")));
                }
                params.push(p.to_string());
            }
        }
        (Some(params), &plist[close + 1..])
    } else {
        if !rest.is_empty() && !rest.starts_with(char::is_whitespace) {
            return Err(err("missing whitespace after macro name"));
        }
        (None, rest)
    };
    Ok(MacroDef {
        name: name.clone(),
        params,
        body: body.trim().to_string(),
        multiline,
        span: d.span,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comment_stripping_respects_strings() {
        assert_eq!(
            strip_comments(r#"a /* x */ "/*k*/" // t"#),
            r#"a   "/*k*/" "#
        );
    }
}
