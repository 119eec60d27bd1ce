//! Records, enums and globals.

use crate::c_front::ast::{RecordKind, Storage};
use crate::c_front::{GlobalDecl, RecordDef};
use crate::javafmt::reindent;

use super::func;
use super::names::{capitalize, class_identifier, java_identifier};
use super::types::{self, java_value_type, CType, JTy};
use super::{
    consts, BitSlot, EnumInfo, FieldInfo, GlobalInfo, JavaSnippet, RecordInfo, SnippetKind,
    TranslateError, TranslationContext,
};

fn tag_of(r: &RecordDef) -> Result<String, TranslateError> {
    r.name.clone().ok_or_else(|| {
        TranslateError::unsupported(format!(
            "anonymous {}{}",
            r.kind.keyword(),
            r.alias
                .as_deref()
                .map(|a| format!(" (typedef {a})"))
                .unwrap_or_default()
        ))
    })
}

pub(super) fn register_record(
    ctx: &mut TranslationContext,
    r: &RecordDef,
) -> Result<(), TranslateError> {
    let tag = tag_of(r)?;
    if r.kind == RecordKind::Enum {
        let spec = r.enumeration().expect("enum definition");
        let mut next = 0i64;
        let mut constants = Vec::new();
        for v in spec.variants.as_deref().unwrap_or(&[]) {
            let value = match &v.value {
                Some(e) => consts::eval(e, ctx)?,
                None => next,
            };
            constants.push((v.name.clone(), value));
            ctx.enum_constants
                .insert(v.name.clone(), (tag.clone(), value));
            next = value + 1;
        }
        ctx.enums.insert(
            tag.clone(),
            EnumInfo {
                java_name: class_identifier(&tag),
                constants,
            },
        );
        if let Some(a) = &r.alias {
            ctx.typedefs.insert(a.clone(), CType::Enum(tag));
        }
        return Ok(());
    }
    let spec = r.record().expect("record definition");
    let mut fields = Vec::new();
    let mut members = Vec::new();
    let mut word: Option<(usize, u32)> = None;
    let mut words = 0usize;
    for f in spec.fields.as_deref().unwrap_or(&[]) {
        let base = types::base_type(&f.specifiers, ctx)?;
        let cty = ctx.resolve(base, &f.declarator)?;
        let name = f
            .declarator
            .name()
            .ok_or_else(|| TranslateError::unsupported("unnamed field"))?
            .to_string();
        if matches!(cty, CType::Array(_, None)) {
            return Err(TranslateError::unsupported(format!(
                "flexible array member {name}"
            )));
        }
        let width = match &f.bit_width {
            Some(e) => Some(consts::eval(e, ctx)?),
            None => None,
        };
        let bits = match width {
            Some(w) if r.kind == RecordKind::Union => {
                let _ = w;
                return Err(TranslateError::unsupported("bitfield in a union"));
            }
            Some(w) => {
                if !matches!(cty, CType::Int | CType::UInt) {
                    return Err(TranslateError::unsupported(format!(
                        "bitfield {name} of type {cty}"
                    )));
                }
                if !(1..=31).contains(&w) {
                    return Err(TranslateError::unsupported(format!(
                        "bitfield {name} of width {w}"
                    )));
                }
                let w = w as u32;
                let (idx, off) = match word {
                    Some((i, used)) if used + w <= 32 => (i, used),
                    _ => {
                        words += 1;
                        (words - 1, 0)
                    }
                };
                word = Some((idx, off + w));
                Some(BitSlot {
                    word: idx,
                    offset: off,
                    width: w,
                    signed: cty == CType::Int,
                })
            }
            None => {
                word = None;
                None
            }
        };
        members.push((cty.clone(), width.map(|w| w as u32)));
        fields.push(FieldInfo {
            java_name: java_identifier(&name),
            c_name: name,
            cty,
            bits,
        });
    }
    let (size, align) = types::record_layout(r.kind == RecordKind::Union, &members, ctx)?;
    ctx.records.insert(
        tag.clone(),
        RecordInfo {
            kind: r.kind,
            java_name: class_identifier(&tag),
            fields,
            size,
            align,
            bit_words: words,
        },
    );
    if let Some(a) = &r.alias {
        let t = if r.kind == RecordKind::Union {
            CType::Union(tag)
        } else {
            CType::Struct(tag)
        };
        ctx.typedefs.insert(a.clone(), t);
    }
    Ok(())
}

pub(super) fn register_global(
    ctx: &mut TranslationContext,
    g: &GlobalDecl,
) -> Result<(), TranslateError> {
    if g.decl.specifiers.storage == Some(Storage::Extern) {
        return Err(TranslateError::unsupported("extern variable declaration"));
    }
    let base = types::base_type(&g.decl.specifiers, ctx)?;
    for d in &g.decl.declarators {
        let cty = ctx.resolve(base.clone(), &d.declarator)?;
        let name = d.declarator.name().unwrap_or_default().to_string();
        let jty = java_value_type(&cty, ctx)?;
        let is_const = g.decl.specifiers.is_const
            && d.declarator.pointers.is_empty()
            && !matches!(cty, CType::Array(..) | CType::Struct(_));
        ctx.globals.insert(
            name.clone(),
            GlobalInfo {
                java_name: java_identifier(&name),
                cty,
                jty,
                is_const,
            },
        );
    }
    Ok(())
}

pub fn translate_global(
    g: &GlobalDecl,
    ctx: &TranslationContext,
) -> Result<JavaSnippet, TranslateError> {
    let mut lines = Vec::new();
    let mut first = None;
    for d in &g.decl.declarators {
        let name = d.declarator.name().unwrap_or_default();
        let info = ctx
            .globals
            .get(name)
            .ok_or_else(|| TranslateError::UnresolvedSymbol {
                name: name.to_string(),
            })?;
        let init = func::global_initializer(ctx, &info.cty, d.init.as_ref())?;
        let fin = if info.is_const { "final " } else { "" };
        lines.push(format!(
            "public static {fin}{} {} = {init};",
            info.jty.render(),
            info.java_name
        ));
        first.get_or_insert_with(|| info.java_name.clone());
    }
    Ok(JavaSnippet::new(
        SnippetKind::StaticField,
        first.unwrap_or_default(),
        lines.join("\n"),
    ))
}

pub fn translate_record(
    r: &RecordDef,
    ctx: &TranslationContext,
) -> Result<JavaSnippet, TranslateError> {
    let tag = tag_of(r)?;
    match r.kind {
        RecordKind::Enum => {
            let info = ctx
                .enums
                .get(&tag)
                .ok_or_else(|| TranslateError::UnresolvedSymbol { name: tag.clone() })?;
            Ok(JavaSnippet::new(
                SnippetKind::NestedClass,
                info.java_name.clone(),
                enum_class(info),
            ))
        }
        // Unions have no class of their own; locals hold their bits.
        RecordKind::Union => Ok(JavaSnippet::new(
            SnippetKind::NestedClass,
            class_identifier(&tag),
            String::new(),
        )),
        RecordKind::Struct => {
            let info = ctx
                .records
                .get(&tag)
                .ok_or_else(|| TranslateError::UnresolvedSymbol { name: tag.clone() })?;
            Ok(JavaSnippet::new(
                SnippetKind::NestedClass,
                info.java_name.clone(),
                struct_class(info, ctx)?,
            ))
        }
    }
}

fn enum_class(info: &EnumInfo) -> String {
    let n = &info.java_name;
    let mut s = format!("public static final class {n} {{\n");
    for (c, v) in &info.constants {
        s += &format!("public static final int {} = {v};\n", java_identifier(c));
    }
    let names: Vec<String> = info
        .constants
        .iter()
        .map(|(c, _)| java_identifier(c))
        .collect();
    let quoted: Vec<String> = info
        .constants
        .iter()
        .map(|(c, _)| format!("\"{c}\""))
        .collect();
    s += &format!(
        "public static final int[] VALUES = {{{}}};\n",
        names.join(", ")
    );
    s += &format!(
        "public static final String[] NAMES = {{{}}};\n",
        quoted.join(", ")
    );
    s += &format!("\nprivate {n}() {{\n}}\n\n");
    s += "public static int ordinal(int value) {\n";
    s += "for (int i = 0; i < VALUES.length; i++) {\n";
    s += "if (VALUES[i] == value) {\nreturn i;\n}\n}\nreturn -1;\n}\n}\n";
    reindent(&s)
}

fn array_dims(t: &CType) -> (CType, Vec<u64>) {
    let mut dims = Vec::new();
    let mut cur = t.clone();
    while let CType::Array(inner, n) = cur {
        dims.push(n.unwrap_or(0));
        cur = *inner;
    }
    (cur, dims)
}

/// `new T[a][b]` for an array type, `new T()` for a record, or `None` when
/// the Java default value is already right.
pub(super) fn fresh_value(
    t: &CType,
    ctx: &TranslationContext,
) -> Result<Option<String>, TranslateError> {
    match t {
        CType::Struct(name) => Ok(Some(format!("new {}()", ctx.class_name_of(name)?))),
        CType::Array(..) => {
            let (elem, dims) = array_dims(t);
            let ej = java_value_type(&elem, ctx)?;
            if let CType::Struct(_) = elem {
                if dims.len() != 1 || dims[0] > 256 {
                    return Err(TranslateError::unsupported(
                        "multi-dimensional or large array of structs",
                    ));
                }
                let one = format!("new {}()", ej.render());
                let items = vec![one; dims[0] as usize];
                return Ok(Some(format!(
                    "new {}[] {{{}}}",
                    ej.render(),
                    items.join(", ")
                )));
            }
            let dims: String = dims.iter().map(|d| format!("[{d}]")).collect();
            Ok(Some(format!("new {}{dims}", ej.render())))
        }
        _ => Ok(None),
    }
}

fn struct_class(info: &RecordInfo, ctx: &TranslationContext) -> Result<String, TranslateError> {
    let n = &info.java_name;
    let mut s = format!("public static class {n} {{\n");
    for w in 0..info.bit_words {
        s += &format!("private int bits{w};\n");
    }
    let mut params = Vec::new();
    for f in &info.fields {
        let jt = if f.bits.is_some() {
            JTy::Int
        } else {
            java_value_type(&f.cty, ctx)?
        };
        if f.bits.is_none() {
            s += &format!("public {} {};\n", jt.render(), f.java_name);
        }
        params.push((jt, f));
    }

    // No-arg constructor.
    s += &format!("\npublic {n}() {{\n");
    for f in &info.fields {
        if f.bits.is_none() {
            if let Some(v) = fresh_value(&f.cty, ctx)? {
                s += &format!("this.{} = {v};\n", f.java_name);
            }
        }
    }
    s += "}\n";

    // Copy constructor.
    s += &format!("\npublic {n}({n} o) {{\n");
    for w in 0..info.bit_words {
        s += &format!("this.bits{w} = o.bits{w};\n");
    }
    for f in &info.fields {
        if f.bits.is_some() {
            continue;
        }
        let j = &f.java_name;
        match &f.cty {
            CType::Struct(name) => {
                s += &format!("this.{j} = new {}(o.{j});\n", ctx.class_name_of(name)?)
            }
            CType::Array(inner, _) => match inner.as_ref() {
                CType::Struct(name) => {
                    let c = ctx.class_name_of(name)?;
                    s += &format!("this.{j} = new {c}[o.{j}.length];\n");
                    s += &format!("for (int i = 0; i < o.{j}.length; i++) {{\n");
                    s += &format!("this.{j}[i] = new {c}(o.{j}[i]);\n}}\n");
                }
                CType::Array(..) => {
                    return Err(TranslateError::unsupported(format!(
                        "multi-dimensional array field {}",
                        f.c_name
                    )))
                }
                // Janino types array clone() as Object.
                _ => {
                    let jt = java_value_type(&f.cty, ctx)?;
                    s += &format!("this.{j} = ({}) o.{j}.clone();\n", jt.render());
                }
            },
            _ => s += &format!("this.{j} = o.{j};\n"),
        }
    }
    s += "}\n";

    // All-fields constructor, unless it would clash with the copy constructor.
    let clashes = params.len() == 1 && params[0].0 == JTy::Class(n.clone());
    if !params.is_empty() && !clashes {
        let sig: Vec<String> = params
            .iter()
            .map(|(jt, f)| format!("{} {}", jt.render(), f.java_name))
            .collect();
        s += &format!("\npublic {n}({}) {{\n", sig.join(", "));
        for (_, f) in &params {
            if f.bits.is_some() {
                s += &format!("set{}({});\n", capitalize(&f.java_name), f.java_name);
            } else {
                s += &format!("this.{0} = {0};\n", f.java_name);
            }
        }
        s += "}\n";
    }

    for f in &info.fields {
        let Some(b) = f.bits else { continue };
        let cap = capitalize(&f.java_name);
        let mask = (1u64 << b.width) - 1;
        let w = format!("bits{}", b.word);
        s += &format!("\npublic int get{cap}() {{\n");
        if b.signed {
            let left = 32 - b.offset - b.width;
            let right = 32 - b.width;
            s += &format!("return ({w} << {left}) >> {right};\n");
        } else {
            s += &format!("return ({w} >>> {}) & 0x{mask:X};\n", b.offset);
        }
        s += "}\n";
        s += &format!("\npublic void set{cap}(int value) {{\n");
        s += &format!(
            "{w} = ({w} & ~(0x{mask:X} << {off})) | ((value & 0x{mask:X}) << {off});\n",
            off = b.offset
        );
        s += "}\n";
    }
    s += "}\n";
    Ok(reindent(&s))
}

/// Nested helper class backing `char[]` string operations.
pub fn cstring_helper() -> JavaSnippet {
    let text = r#"public static final class CString {
private CString() {
}

public static char[] of(String s, int n) {
char[] a = new char[n];
for (int i = 0; i < s.length() && i < n; i++) {
a[i] = s.charAt(i);
}
return a;
}

public static int strlen(char[] s) {
int n = 0;
while (n < s.length && s[n] != '\0') {
n++;
}
return n;
}

public static String str(char[] s) {
return new String(s, 0, strlen(s));
}

public static void strcpy(char[] dst, String src) {
int i = 0;
for (; i < src.length(); i++) {
dst[i] = src.charAt(i);
}
dst[i] = '\0';
}

public static void strcpy(char[] dst, char[] src) {
strcpy(dst, str(src));
}

public static void strcat(char[] dst, String src) {
int n = strlen(dst);
for (int i = 0; i < src.length(); i++) {
dst[n + i] = src.charAt(i);
}
dst[n + src.length()] = '\0';
}

public static void strcat(char[] dst, char[] src) {
strcat(dst, str(src));
}
}
"#;
    JavaSnippet::new(SnippetKind::NestedClass, "CString", reindent(text))
}
