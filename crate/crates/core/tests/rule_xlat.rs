use c2j_core::assembler::assemble;
use c2j_core::c_front::{analyze, CSourceFile};
use c2j_core::rule_xlat::{
    applicable_rules, applicable_rules_for_file, translate_file, RuleId, SnippetKind,
    TranslationContext,
};

fn corpus(n: u32) -> CSourceFile {
    let path = format!("{}/corpus/test_{n}.c", env!("CARGO_MANIFEST_DIR"));
    CSourceFile::read(std::path::Path::new(&path)).unwrap()
}

fn snippets(src: &str) -> Vec<c2j_core::rule_xlat::JavaSnippet> {
    let (_, parts) = analyze(&CSourceFile::new("t.c", src)).unwrap();
    translate_file(&parts).unwrap()
}

const DESIGNATED: [RuleId; 20] = [
    RuleId::Ptr,
    RuleId::Copy,
    RuleId::Union,
    RuleId::Macro,
    RuleId::Unsigned,
    RuleId::GotoFwd,
    RuleId::FnPtr,
    RuleId::Bitfield,
    RuleId::VoidPtr,
    RuleId::OutParam,
    RuleId::Unsigned,
    RuleId::Enum,
    RuleId::GotoBack,
    RuleId::Str,
    RuleId::Mem,
    RuleId::Bool,
    RuleId::Macro,
    RuleId::Sizeof,
    RuleId::Str,
    RuleId::Switch,
];

#[test]
fn designated_rule_fires_for_every_corpus_file() {
    for n in 1..=20u32 {
        let (_, parts) = analyze(&corpus(n)).unwrap();
        let rules = applicable_rules_for_file(&parts).unwrap();
        let want = DESIGNATED[n as usize - 1];
        assert!(rules.contains(&want), "T{n}: {want} not in {rules:?}");
    }
}

#[test]
fn t1_main_needs_only_pointer_rule() {
    let (_, parts) = analyze(&corpus(1)).unwrap();
    let ctx = TranslationContext::build(&parts).unwrap();
    let main = parts.function("main").unwrap();
    assert_eq!(applicable_rules(&main.def, &ctx), vec![RuleId::Ptr]);
}

#[test]
fn plain_function_needs_no_rules() {
    let (_, parts) = analyze(&CSourceFile::new(
        "t.c",
        "int add(int a, int b) { return a + b; }\nint main() { return add(1, 2); }\n",
    ))
    .unwrap();
    let ctx = TranslationContext::build(&parts).unwrap();
    assert!(applicable_rules(&parts.function("add").unwrap().def, &ctx).is_empty());
}

#[test]
fn globals() {
    let s = snippets("int counter = 0;\nconst float PI = 3.14f;\nunsigned int mask = 0xFFFFFFFF;\nint main() { return 0; }\n");
    let fields: Vec<_> = s
        .iter()
        .filter(|s| s.kind == SnippetKind::StaticField)
        .collect();
    assert_eq!(fields.len(), 3);
    assert!(
        fields[0].text.contains("static int counter = 0;"),
        "{}",
        fields[0].text
    );
    assert!(
        fields[1].text.contains("static final float PI = 3.14f;"),
        "{}",
        fields[1].text
    );
    assert!(fields[2].text.contains("0xFFFFFFFFL"), "{}", fields[2].text);
}

#[test]
fn struct_becomes_class_with_copy_constructor() {
    let s = snippets(
        "struct Point { int x; int y; };\nint main() { struct Point p; p.x = 1; return p.x; }\n",
    );
    let class = s
        .iter()
        .find(|s| s.kind == SnippetKind::NestedClass)
        .unwrap();
    assert_eq!(class.name, "Point");
    assert!(class.text.contains("public Point(Point o)"));
    assert!(class.text.contains("public int x;"));
}

#[test]
fn union_record_has_no_class() {
    let s =
        snippets("union U { int i; float f; };\nint main() { union U u; u.i = 1; return u.i; }\n");
    assert!(s
        .iter()
        .all(|s| s.kind != SnippetKind::NestedClass || s.text.trim().is_empty()));
}

#[test]
fn bitfield_accessors() {
    let s = snippets("struct Flags { int a:1; int b:3; };\nint main() { struct Flags f; f.b = 9; return f.b; }\n");
    let class = s.iter().find(|s| s.name == "Flags").unwrap();
    assert!(class.text.contains("private int bits0;"), "{}", class.text);
    assert!(
        class.text.contains("getA") && class.text.contains("setB"),
        "{}",
        class.text
    );
}

#[test]
fn corpus_output_has_no_c_residue() {
    for n in 1..=20u32 {
        let (_, parts) = analyze(&corpus(n)).unwrap();
        let unit = assemble(&format!("test_{n}"), &translate_file(&parts).unwrap()).unwrap();
        for bad in [
            "goto ",
            "union ",
            "unsigned ",
            "#define",
            "#include",
            "malloc(",
            "free(",
        ] {
            assert!(!unit.text.contains(bad), "T{n} contains {bad:?}");
        }
        assert!(!unit.text.contains("= &"), "T{n} has address-of");
    }
}

#[test]
fn translation_is_deterministic() {
    for n in 1..=20u32 {
        let (_, a) = analyze(&corpus(n)).unwrap();
        let (_, b) = analyze(&corpus(n)).unwrap();
        assert_eq!(
            translate_file(&a).unwrap(),
            translate_file(&b).unwrap(),
            "T{n}"
        );
    }
}
