//! C format strings, re-expressed for `java.io.PrintStream.printf`.

use super::TranslateError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conv {
    pub flags: String,
    pub width: String,
    pub precision: Option<String>,
    pub length: String,
    pub conv: char,
}

impl Conv {
    /// Java spec for this conversion with `conv` substituted.
    pub fn java(&self, conv: char) -> String {
        let mut s = String::from("%");
        s.push_str(&self.flags);
        s.push_str(&self.width);
        if let Some(p) = &self.precision {
            s.push('.');
            s.push_str(p);
        }
        s.push(conv);
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Piece {
    /// Literal text, with `%%` already in Java form.
    Lit(String),
    Conv(Conv),
}

pub fn parse_format(fmt: &str) -> Result<Vec<Piece>, TranslateError> {
    let chars: Vec<char> = fmt.chars().collect();
    let mut out = Vec::new();
    let mut lit = String::new();
    let mut i = 0;
    while i < chars.len() {
        if chars[i] != '%' {
            lit.push(chars[i]);
            i += 1;
            continue;
        }
        i += 1;
        if chars.get(i) == Some(&'%') {
            lit.push_str("%%");
            i += 1;
            continue;
        }
        let mut flags = String::new();
        while let Some(c @ ('-' | '+' | ' ' | '#' | '0')) = chars.get(i).copied() {
            flags.push(c);
            i += 1;
        }
        if flags.contains('-') && flags.contains('0') {
            flags.retain(|c| c != '0');
        }
        let mut width = String::new();
        while let Some(c) = chars.get(i).filter(|c| c.is_ascii_digit()) {
            width.push(*c);
            i += 1;
        }
        let mut precision = None;
        if chars.get(i) == Some(&'.') {
            i += 1;
            let mut p = String::new();
            while let Some(c) = chars.get(i).filter(|c| c.is_ascii_digit()) {
                p.push(*c);
                i += 1;
            }
            if p.is_empty() {
                p.push('0');
            }
            precision = Some(p);
        }
        if chars.get(i) == Some(&'*') {
            return Err(TranslateError::unsupported("printf '*' width or precision"));
        }
        let mut length = String::new();
        while let Some(c @ ('h' | 'l' | 'L' | 'z' | 'j' | 't' | 'q')) = chars.get(i).copied() {
            length.push(c);
            i += 1;
        }
        let conv = *chars
            .get(i)
            .ok_or_else(|| TranslateError::unsupported("truncated printf conversion"))?;
        i += 1;
        match conv {
            'd' | 'i' | 'u' | 'x' | 'X' | 'o' | 'c' | 's' | 'f' | 'F' | 'e' | 'E' => {}
            other => {
                return Err(TranslateError::unsupported(format!(
                    "printf conversion %{other}"
                )))
            }
        }
        if precision.is_some() && matches!(conv, 'd' | 'i' | 'u' | 'x' | 'X' | 'o' | 'c') {
            return Err(TranslateError::unsupported(format!(
                "printf precision on %{conv}"
            )));
        }
        if !lit.is_empty() {
            out.push(Piece::Lit(std::mem::take(&mut lit)));
        }
        out.push(Piece::Conv(Conv {
            flags,
            width,
            precision,
            length,
            conv,
        }));
    }
    if !lit.is_empty() {
        out.push(Piece::Lit(lit));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_literals_and_conversions() {
        let p = parse_format("a=%5.2f%% %lu\n").unwrap();
        assert_eq!(p.len(), 5);
        let Piece::Conv(c) = &p[1] else { panic!() };
        assert_eq!(c.java('f'), "%5.2f");
        assert_eq!(p[2], Piece::Lit("%% ".into()));
        let Piece::Conv(c) = &p[3] else { panic!() };
        assert_eq!((c.length.as_str(), c.conv), ("l", 'u'));
    }

    #[test]
    fn rejects_g_and_star() {
        assert!(parse_format("%g").is_err());
        assert!(parse_format("%*d").is_err());
        assert!(parse_format("%p").is_err());
    }
}
