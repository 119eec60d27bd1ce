//! Java identifier hygiene.

pub const JAVA_KEYWORDS: &[&str] = &[
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

/// Names that generated code refers to unqualified; user symbols must not
/// shadow them.
pub const RESERVED_NAMES: &[&str] = &[
    "System",
    "String",
    "Object",
    "Integer",
    "Float",
    "Double",
    "Character",
    "Long",
    "Short",
    "Boolean",
    "Math",
    "CString",
    "java",
    "args",
];

pub fn is_keyword(name: &str) -> bool {
    JAVA_KEYWORDS.contains(&name)
}

/// A C identifier made safe to use as a Java identifier.
pub fn java_identifier(name: &str) -> String {
    if is_keyword(name) || name.starts_with('$') {
        format!("{name}_")
    } else {
        name.to_string()
    }
}

/// Java class name for a struct, union or enum tag.
pub fn class_identifier(tag: &str) -> String {
    if is_keyword(tag) || RESERVED_NAMES.contains(&tag) {
        format!("{tag}_")
    } else {
        tag.to_string()
    }
}

pub fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keywords_get_suffix() {
        assert_eq!(java_identifier("new"), "new_");
        assert_eq!(java_identifier("count"), "count");
        assert_eq!(class_identifier("String"), "String_");
        assert_eq!(capitalize("mode"), "Mode");
    }
}
