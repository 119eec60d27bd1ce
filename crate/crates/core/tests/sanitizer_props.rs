use c2j_core::sanitizer::{
    braces_balanced, extract_single_definition, sanitize, strip_fences_and_prose, strip_imports,
    DefinitionKind, SanitizeAction,
};
use proptest::prelude::*;

#[path = "common/sanitizer_gen.rs"]
mod sanitizer_gen;

use sanitizer_gen::{sample, STATEMENTS};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn extracts_the_named_method(s in sample()) {
        let r = sanitize(&s.raw, "target", DefinitionKind::Method);
        prop_assert_eq!(r.result.as_deref(), Some(s.target.as_str()));
        prop_assert_eq!(r.output_bytes, s.target.len());
    }

    #[test]
    fn chain_is_idempotent(s in sample()) {
        let once = sanitize(&s.raw, "target", DefinitionKind::Method).result.unwrap();
        let twice = sanitize(&once, "target", DefinitionKind::Method);
        prop_assert_eq!(twice.result.as_deref(), Some(once.as_str()));
        prop_assert!(twice.actions.is_empty());
    }

    #[test]
    fn output_is_substring_of_fence_stripped(s in sample()) {
        let stripped = strip_fences_and_prose(&s.raw);
        let out = sanitize(&s.raw, "target", DefinitionKind::Method).result.unwrap();
        prop_assert!(stripped.contains(&out));
        prop_assert!(braces_balanced(&out));
    }

    #[test]
    fn missing_name_fails_cleanly(s in sample()) {
        let r = sanitize(&s.raw, "absent", DefinitionKind::Method);
        prop_assert_eq!(r.result, None);
        prop_assert_eq!(r.output_bytes, 0);
        prop_assert_eq!(r.actions.last(), Some(&SanitizeAction::ExtractionFailed));
    }

    #[test]
    fn truncated_reply_fails_cleanly(s in sample(), cut in 1usize..30) {
        // Chop the target's closing brace and everything after it.
        let end = s.raw.find(&s.target).unwrap() + s.target.len();
        let cut = cut.min(s.target.len() - 1);
        let raw = &s.raw[..end - cut.max(1)];
        let r = sanitize(raw, "target", DefinitionKind::Method);
        if let Some(out) = &r.result {
            prop_assert!(braces_balanced(out));
        } else {
            prop_assert!(r.actions.contains(&SanitizeAction::ExtractionFailed));
        }
    }

    #[test]
    fn arbitrary_text_never_panics(raw in "(?s).{0,200}") {
        let r = sanitize(&raw, "f", DefinitionKind::Method);
        if let Some(out) = r.result {
            prop_assert!(strip_fences_and_prose(&raw).contains(&out));
            prop_assert!(braces_balanced(&out));
            let again = sanitize(&out, "f", DefinitionKind::Method).result;
            prop_assert_eq!(again.as_deref(), Some(out.as_str()));
        }
    }

    #[test]
    fn strip_imports_keeps_other_lines(lines in prop::collection::vec(prop::sample::select(STATEMENTS), 0..6)) {
        let text: String = lines.iter().map(|l| format!("{l}\n")).collect();
        prop_assert_eq!(strip_imports(&format!("import a.b;\n{text}")), text);
    }
}

#[test]
fn field_and_class_extraction_from_noisy_reply() {
    let raw = "Sure:\n```java\nimport java.util.*;\npublic static final float PI = 3.14f;\npublic static int other = 1;\n```\n";
    let r = sanitize(raw, "PI", DefinitionKind::Field);
    assert_eq!(
        r.result.as_deref(),
        Some("public static final float PI = 3.14f;")
    );
    let raw = "public static class Point {\n    public int x;\n    public Point() {\n    }\n}\n\npublic static class Extra {\n}\n";
    let cls = extract_single_definition(raw, "Point", DefinitionKind::Class).unwrap();
    assert!(cls.starts_with("public static class Point {") && cls.ends_with('}'));
    assert!(!cls.contains("Extra"));
}
