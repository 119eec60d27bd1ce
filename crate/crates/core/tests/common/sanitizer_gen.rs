//! Generator of noisy model replies around a method named `target`.
//! Shared with the acceptance suite.

use proptest::prelude::*;

pub const STATEMENTS: &[&str] = &[
    "int x = 1;",
    "System.out.printf(\"{%d}\\n\", x);",
    "System.out.println(\"}}} not a brace\");",
    "char c = '{';",
    "char d = '}';",
    "// closing } in a comment",
    "/* { */ x++;",
    "if (x > 0) {\n        x--;\n    }",
    "for (int i = 0; i < 3; i++) {\n        x += i;\n    }",
    "String s = \"import java.util.List;\";",
    "long u = (x & 0xFFFFFFFFL);",
];

pub const PROSE: &[&str] = &[
    "Here is the translated method:",
    "Sure! Below is the Java version.",
    "This keeps the unsigned math in a long.",
    "Note: no imports are needed.",
    "Let me know if you need anything else!",
];

pub const IMPORTS: &[&str] = &["import java.util.*;", "import java.io.PrintStream;"];

pub fn method(name: &str, body: &[&str]) -> String {
    let mut s = format!("public static int {name}(int a) {{\n");
    for st in body {
        s += &format!("    {st}\n");
    }
    s += "    return a;\n}";
    s
}

#[derive(Debug, Clone)]
pub struct Sample {
    pub raw: String,
    pub target: String,
}

pub fn sample() -> impl Strategy<Value = Sample> {
    (
        prop::collection::vec(prop::sample::select(STATEMENTS), 0..5),
        prop::option::of(prop::sample::select(PROSE)),
        prop::option::of(prop::sample::select(PROSE)),
        prop::collection::vec(prop::sample::select(IMPORTS), 0..3),
        any::<bool>(),
        0..3u8,
    )
        .prop_map(|(body, intro, outro, imports, fenced, extra)| {
            let target = method("target", &body);
            let helper = method("helper", &["int y = 2;"]);
            let mut code = String::new();
            for i in &imports {
                code += i;
                code += "\n";
            }
            match extra {
                1 => code += &format!("{helper}\n\n{target}\n"),
                2 => code += &format!("{target}\n\n{helper}\n"),
                _ => code += &format!("{target}\n"),
            }
            let mut raw = String::new();
            if let Some(p) = intro {
                raw += p;
                raw += "\n";
            }
            if fenced {
                raw += "```java\n";
                raw += &code;
                raw += "```\n";
            } else {
                raw += &code;
            }
            if let Some(p) = outro {
                raw += p;
                raw += "\n";
            }
            Sample { raw, target }
        })
}
