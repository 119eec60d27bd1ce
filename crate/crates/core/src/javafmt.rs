//! Brace-depth re-indentation for generated Java.

const INDENT: &str = "    ";

/// Net `{` minus `}` outside string and char literals, plus the number of
/// leading closers on the line.
fn scan(line: &str) -> (i32, i32) {
    let mut depth = 0i32;
    let mut leading = 0i32;
    let mut seen_other = false;
    let mut quote: Option<char> = None;
    let mut escaped = false;
    for c in line.chars() {
        if let Some(q) = quote {
            if escaped {
                escaped = false;
            } else if c == '\\' {
                escaped = true;
            } else if c == q {
                quote = None;
            }
            seen_other = true;
            continue;
        }
        match c {
            '"' | '\'' => {
                quote = Some(c);
                seen_other = true;
            }
            '{' => {
                depth += 1;
                seen_other = true;
            }
            '}' => {
                depth -= 1;
                if !seen_other {
                    leading += 1;
                }
            }
            c if c.is_whitespace() => {}
            _ => seen_other = true,
        }
    }
    (depth, leading)
}

fn is_case_label(t: &str) -> bool {
    (t.starts_with("case ") || t.starts_with("default:")) && t.ends_with(':')
}

/// Re-indents Java text by 4 spaces per brace level. Inside a `switch`
/// block, labels sit one level in and the statements under them two.
pub fn reindent(text: &str) -> String {
    reindent_from(text, 0)
}

/// Same as [`reindent`], starting at `base` levels.
pub fn reindent_from(text: &str, base: usize) -> String {
    // One entry per open brace: whether it opened a switch block.
    let mut stack: Vec<bool> = Vec::new();
    let mut out = String::new();
    for raw in text.lines() {
        let t = raw.trim();
        if t.is_empty() {
            out.push('\n');
            continue;
        }
        let (net, leading) = scan(t);
        for _ in 0..leading {
            stack.pop();
        }
        let switches = stack.iter().filter(|s| **s).count();
        let in_switch = stack.last().copied().unwrap_or(false);
        let mut level = base + stack.len() + switches;
        if in_switch && is_case_label(t) {
            level -= 1;
        }
        for _ in 0..level {
            out.push_str(INDENT);
        }
        out.push_str(t);
        out.push('\n');
        let opened = net + leading;
        let is_switch = t.starts_with("switch ") || t.contains(": switch (");
        for i in 0..opened.max(0) {
            stack.push(is_switch && i == opened - 1);
        }
        for _ in 0..(-opened).max(0) {
            stack.pop();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_blocks() {
        let s = reindent("void f() {\nif (x) {\ny();\n} else {\nz();\n}\n}\n");
        assert_eq!(
            s,
            "void f() {\n    if (x) {\n        y();\n    } else {\n        z();\n    }\n}\n"
        );
    }

    #[test]
    fn switch_labels() {
        let s = reindent("switch (n) {\ncase 1:\na();\nbreak;\ndefault:\nb();\n}\n");
        assert_eq!(
            s,
            "switch (n) {\n    case 1:\n        a();\n        break;\n    default:\n        b();\n}\n"
        );
    }

    #[test]
    fn braces_in_strings_ignored() {
        let s = reindent("a(\"{\");\nb('}');\n");
        assert_eq!(s, "a(\"{\");\nb('}');\n");
    }
}
