use crate::c_front::ast::{Declaration, ExprKind, Initializer, Storage};
use crate::c_front::Span;

use super::super::records::fresh_value;
use super::super::types::{self, CType, JTy};
use super::super::{RuleId, TranslateError};
use super::expr::{is_null_literal, java_string_literal};
use super::prepass::Decision;
use super::*;

/// Largest initializer list expanded element by element.
const MAX_LIST: usize = 256;

/// One Java variable initialized by a C declarator.
#[derive(Debug, Clone)]
pub(super) struct Part {
    pub jty: String,
    pub target: String,
    pub value: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) enum DeclMode {
    Normal,
    /// Declared ahead of a goto region with a zero value.
    HoistDeclare,
    /// The original declaration inside the region, now an assignment.
    HoistAssign,
}

impl FnCx<'_> {
    /// Builds the variable for a declarator and picks its representation.
    fn make_var(&mut self, name: &str, name_span: Option<Span>, cty: &CType) -> R<Var> {
        let decision = self.decision(name_span);
        match cty {
            CType::Union(tag) => {
                let (size, _) = types::size_align(cty, self.ctx)?;
                let rec = self
                    .ctx
                    .records
                    .get(tag)
                    .ok_or_else(|| TranslateError::UnresolvedSymbol { name: tag.clone() })?;
                if rec.fields.iter().any(|f| !f.cty.is_arithmetic()) || size > 8 {
                    return Err(TranslateError::unsupported(format!(
                        "union {tag} with non-scalar members"
                    )));
                }
                let long = size > 4;
                let java = self.fresh(&format!("{name}_bits"));
                self.note(RuleId::Union);
                Ok(Var {
                    java: java.clone(),
                    cty: cty.clone(),
                    jty: if long { JTy::Long } else { JTy::Int },
                    repr: Repr::Union { bits: java, long },
                })
            }
            CType::Array(elem, _) if elem.is_char() => {
                let java = self.fresh(name);
                if decision == Some(Decision::StringBuf) {
                    self.note(RuleId::Str);
                    return Ok(Var {
                        java,
                        cty: cty.clone(),
                        jty: JTy::String,
                        repr: Repr::StringBuf,
                    });
                }
                Ok(Var {
                    java,
                    cty: cty.clone(),
                    jty: JTy::Array(Box::new(JTy::Char)),
                    repr: Repr::CharArray,
                })
            }
            CType::Pointer(inner) if decision == Some(Decision::PtrPair) => {
                let jt = self.jty(cty)?;
                if !matches!(jt, JTy::Array(_)) {
                    return Err(TranslateError::unsupported(format!(
                        "pointer arithmetic on {cty}"
                    )));
                }
                let _ = inner;
                let idx = self.fresh(&format!("{name}_index"));
                let arr = self.fresh(&format!("{name}_array"));
                self.note(RuleId::Ptr);
                Ok(Var {
                    java: arr.clone(),
                    cty: cty.clone(),
                    jty: jt,
                    repr: Repr::PtrPair { idx, arr },
                })
            }
            CType::Pointer(inner) if decision == Some(Decision::Boxed) => {
                let pj = self.jty(inner)?;
                let boxed = pj.boxed_name().ok_or_else(|| {
                    TranslateError::unsupported(format!("{cty} recovered from void *"))
                })?;
                let java = self.fresh(name);
                self.note(RuleId::VoidPtr);
                Ok(Var {
                    java,
                    cty: cty.clone(),
                    jty: JTy::Boxed(boxed),
                    repr: Repr::Boxed,
                })
            }
            _ => {
                let jt = self.jty(cty)?;
                if jt == JTy::Void {
                    return Err(TranslateError::unsupported("variable of type void"));
                }
                match cty {
                    t if t.store_mask().is_some() => self.note(RuleId::Unsigned),
                    CType::Enum(_) => self.note(RuleId::Enum),
                    t if t.is_function_pointer() => self.note(RuleId::FnPtr),
                    CType::Pointer(p) if **p == CType::Void => self.note(RuleId::VoidPtr),
                    _ => {}
                }
                Ok(Var {
                    java: self.fresh(name),
                    cty: cty.clone(),
                    jty: jt,
                    repr: Repr::Plain,
                })
            }
        }
    }

    /// Translates a local declaration.
    pub(super) fn declaration(&mut self, d: &Declaration, out: &mut Vec<String>) -> R<()> {
        self.declaration_in(d, None, out)
    }

    /// Zero-initialized declarations for a declaration hoisted out of a goto
    /// region. The declaration itself later becomes assignments.
    pub(super) fn hoist_declare(&mut self, d: &Declaration, out: &mut Vec<String>) -> R<()> {
        self.declaration_in(d, Some(DeclMode::HoistDeclare), out)
    }

    fn declaration_in(
        &mut self,
        d: &Declaration,
        forced: Option<DeclMode>,
        out: &mut Vec<String>,
    ) -> R<()> {
        match d.specifiers.storage {
            Some(Storage::Static) => {
                return Err(TranslateError::unsupported("static local variable"))
            }
            Some(Storage::Extern) => {
                return Err(TranslateError::unsupported("extern local declaration"))
            }
            Some(Storage::Typedef) => return Err(TranslateError::unsupported("local typedef")),
            None => {}
        }
        if let crate::c_front::ast::BaseType::Record(r) = &d.specifiers.base {
            if r.fields.is_some() {
                return Err(TranslateError::unsupported(format!(
                    "local {} definition",
                    r.kind.keyword()
                )));
            }
        }
        if let crate::c_front::ast::BaseType::Enum(e) = &d.specifiers.base {
            if e.variants.is_some() {
                return Err(TranslateError::unsupported("local enum definition"));
            }
        }
        let base = types::base_type(&d.specifiers, self.ctx)?;
        for id in &d.declarators {
            let name = id
                .declarator
                .name()
                .ok_or_else(|| TranslateError::unsupported("abstract declarator in a declaration"))?
                .to_string();
            if id.declarator.is_function() {
                return Err(TranslateError::unsupported("local function declaration"));
            }
            let mut cty = self.ctx.resolve(base.clone(), &id.declarator)?;
            if let (CType::Array(elem, None), Some(init)) = (&cty, &id.init) {
                let n = match init {
                    Initializer::List(items, _) => items.len() as u64,
                    Initializer::Expr(e) => match &e.unparen().kind {
                        ExprKind::StrLit(b) if elem.is_char() => b.len() as u64 + 1,
                        _ => return Err(TranslateError::unsupported("unsized array initializer")),
                    },
                };
                cty = CType::Array(elem.clone(), Some(n));
            }
            if let CType::Array(_, None) = cty {
                return Err(TranslateError::unsupported("local array without a size"));
            }
            let key = (self.text_id, id.span);
            let mode = match forced {
                Some(m) => m,
                None if self.hoisted.contains(&key) => DeclMode::HoistAssign,
                None => DeclMode::Normal,
            };
            let var = if mode == DeclMode::HoistAssign {
                self.lookup(&name)
                    .cloned()
                    .ok_or_else(|| TranslateError::UnresolvedSymbol { name: name.clone() })?
            } else {
                let v = self.make_var(&name, id.declarator.name_span(), &cty)?;
                // Visible to its own initializer, as in C.
                self.declare(&name, v.clone());
                v
            };
            if mode == DeclMode::HoistDeclare {
                self.hoisted.insert(key);
                for p in self.init_values(&var, None)? {
                    let zero = match p.jty.as_str() {
                        "int" | "short" => "0".to_string(),
                        "long" => "0L".to_string(),
                        "char" => "'\\0'".to_string(),
                        "float" => "0.0f".to_string(),
                        "double" => "0.0".to_string(),
                        "boolean" => "false".to_string(),
                        _ => "null".to_string(),
                    };
                    out.push(format!("{} {} = {zero};", p.jty, p.target));
                }
                continue;
            }
            let parts = self.init_values(&var, id.init.as_ref())?;
            for p in parts {
                match mode {
                    DeclMode::HoistAssign => {
                        if id.init.is_none()
                            && var.repr == Repr::Plain
                            && !var.cty.is_record()
                            && !matches!(var.cty, CType::Array(..))
                        {
                            continue;
                        }
                        let value = if p.value.starts_with('{') {
                            format!("new {} {}", p.jty, p.value)
                        } else {
                            p.value
                        };
                        out.push(format!("{} = {value};", p.target));
                    }
                    _ => out.push(format!("{} {} = {};", p.jty, p.target, p.value)),
                }
            }
        }
        Ok(())
    }

    /// Java values for each variable backing `var`.
    pub(super) fn init_values(&mut self, var: &Var, init: Option<&Initializer>) -> R<Vec<Part>> {
        let single = |cx: &Self, value: String| -> R<Vec<Part>> {
            let _ = cx;
            Ok(vec![Part {
                jty: var.jty.render(),
                target: var.java.clone(),
                value,
            }])
        };
        match &var.repr {
            Repr::Union { bits, long } => {
                let zero = if *long { "0L" } else { "0" };
                let value = match init {
                    None => zero.to_string(),
                    Some(Initializer::List(items, _)) if items.len() == 1 => {
                        let Initializer::Expr(e) = &items[0] else {
                            return Err(TranslateError::unsupported("nested union initializer"));
                        };
                        let (_, rec) = self.record_of(&var.cty)?;
                        let first = rec.fields[0].cty.clone();
                        let v = self.expr_to(e, &first)?;
                        self.union_write(zero, *long, &first, v)?
                    }
                    Some(_) => return Err(TranslateError::unsupported("union initializer")),
                };
                let _ = bits;
                single(self, value)
            }
            Repr::PtrPair { idx, arr } => {
                let elem_j = var.jty.render();
                let (a, i) = match init {
                    None => ("null".to_string(), "0".to_string()),
                    Some(Initializer::List(..)) => {
                        return Err(TranslateError::unsupported(
                            "brace initializer for a pointer",
                        ))
                    }
                    Some(Initializer::Expr(e)) if is_null_literal(e) => {
                        ("null".to_string(), "0".to_string())
                    }
                    Some(Initializer::Expr(e)) => match self.ptr_parts(e)? {
                        Some((a, i, _)) => (a, i.text),
                        None => {
                            let v = self.expr_hint(e, Some(&var.cty))?;
                            if v.jty != var.jty {
                                return Err(TranslateError::unsupported(format!(
                                    "pointer initialized from {}",
                                    v.cty
                                )));
                            }
                            (v.text, "0".to_string())
                        }
                    },
                };
                Ok(vec![
                    Part {
                        jty: "int".into(),
                        target: idx.clone(),
                        value: i,
                    },
                    Part {
                        jty: elem_j,
                        target: arr.clone(),
                        value: a,
                    },
                ])
            }
            Repr::Boxed => {
                let Some(Initializer::Expr(e)) = init else {
                    return Err(TranslateError::unsupported(
                        "pointer recovered from void * without an initializer",
                    ));
                };
                let inner = match &e.unparen().kind {
                    ExprKind::Cast { expr, .. } => expr.as_ref(),
                    _ => e,
                };
                let v = self.expr(inner)?;
                if v.jty != JTy::Object {
                    return Err(TranslateError::unsupported(format!(
                        "boxed pointer initialized from {}",
                        v.cty
                    )));
                }
                self.fire(RuleId::VoidPtr, e.span)?;
                single(self, format!("({}) {}", var.jty.render(), v.at(P_PRIMARY)))
            }
            Repr::StringBuf => {
                let value = match init {
                    None => "\"\"".to_string(),
                    Some(Initializer::Expr(e)) => match &e.unparen().kind {
                        ExprKind::StrLit(b) => java_string_literal(b),
                        _ => return Err(TranslateError::unsupported("char array initializer")),
                    },
                    Some(Initializer::List(..)) => {
                        return Err(TranslateError::unsupported("char array brace initializer"))
                    }
                };
                single(self, value)
            }
            Repr::CharArray => {
                let value = self.char_array_value(&var.cty, init)?;
                single(self, value)
            }
            Repr::OutParam => Err(TranslateError::unsupported("out-parameter declaration")),
            Repr::Plain => {
                let value = self.plain_value(&var.cty, init)?;
                single(self, value)
            }
        }
    }

    fn char_array_value(&mut self, cty: &CType, init: Option<&Initializer>) -> R<String> {
        let n = match cty {
            CType::Array(_, Some(n)) => *n,
            _ => return Err(TranslateError::unsupported("char array without a size")),
        };
        match init {
            None => Ok(format!("new char[{n}]")),
            Some(Initializer::Expr(e)) => match &e.unparen().kind {
                ExprKind::StrLit(b) => {
                    self.note(RuleId::Str);
                    if b.len() as u64 > n {
                        return Err(TranslateError::unsupported(
                            "string literal longer than its array",
                        ));
                    }
                    Ok(format!("CString.of({}, {n})", java_string_literal(b)))
                }
                _ => Err(TranslateError::unsupported("char array initializer")),
            },
            Some(Initializer::List(items, _)) => {
                let mut vals = Vec::new();
                for it in items {
                    let Initializer::Expr(e) = it else {
                        return Err(TranslateError::unsupported("nested char initializer"));
                    };
                    vals.push(self.expr_to(e, &CType::Char)?.text);
                }
                if vals.len() as u64 > n {
                    return Err(TranslateError::unsupported("too many initializers"));
                }
                while (vals.len() as u64) < n {
                    vals.push("'\\0'".into());
                }
                Ok(format!("{{{}}}", vals.join(", ")))
            }
        }
    }

    /// Value for a plain variable (scalar, pointer, struct, array).
    fn plain_value(&mut self, cty: &CType, init: Option<&Initializer>) -> R<String> {
        match (cty, init) {
            (CType::Struct(_), None) | (CType::Array(..), None) => {
                Ok(fresh_value(cty, self.ctx)?.unwrap_or_else(|| "null".into()))
            }
            (CType::Struct(tag), Some(Initializer::List(items, _))) => {
                self.struct_literal(tag, items)
            }
            (CType::Array(elem, Some(n)), Some(Initializer::List(items, _))) => {
                self.array_literal(elem, *n, items)
            }
            (CType::Array(elem, _), Some(Initializer::Expr(e))) if elem.is_char() => {
                self.char_array_value(cty, Some(&Initializer::Expr(e.clone())))
            }
            (CType::Array(..), Some(Initializer::Expr(_))) => Err(TranslateError::unsupported(
                "array initialized from an expression",
            )),
            (_, None) => Ok(self.jty(cty)?.zero_value().to_string()),
            (_, Some(Initializer::Expr(e))) => {
                if matches!(cty, CType::Enum(_)) {
                    self.note(RuleId::Enum);
                }
                Ok(self.store_value(e, cty)?.text)
            }
            (_, Some(Initializer::List(items, _))) if items.len() == 1 => match &items[0] {
                Initializer::Expr(e) => Ok(self.store_value(e, cty)?.text),
                _ => Err(TranslateError::unsupported("nested scalar initializer")),
            },
            _ => Err(TranslateError::unsupported(
                "brace initializer for a scalar",
            )),
        }
    }

    fn element_value(&mut self, t: &CType, it: &Initializer) -> R<String> {
        match t {
            CType::Array(e, _) if e.is_char() => self.char_array_value(t, Some(it)),
            _ => self.plain_value(t, Some(it)),
        }
    }

    fn struct_literal(&mut self, tag: &str, items: &[Initializer]) -> R<String> {
        let (_, rec) = self.record_of(&CType::Struct(tag.to_string()))?;
        if items.len() > rec.fields.len() {
            return Err(TranslateError::unsupported("too many struct initializers"));
        }
        let clash = rec.fields.len() == 1 && rec.fields[0].cty == CType::Struct(tag.to_string());
        if clash {
            return Err(TranslateError::unsupported(
                "brace initializer for a self-typed struct",
            ));
        }
        let mut args = Vec::new();
        for (i, f) in rec.fields.iter().enumerate() {
            let fty = if f.bits.is_some() {
                CType::Int
            } else {
                f.cty.clone()
            };
            let v = match items.get(i) {
                Some(it) => self.element_value(&fty, it)?,
                None => match fresh_value(&fty, self.ctx)? {
                    Some(v) => v,
                    None => self.jty(&fty)?.zero_value().to_string(),
                },
            };
            let v = if v.starts_with('{') {
                format!("new {} {v}", self.jty(&fty)?.render())
            } else {
                v
            };
            args.push(v);
        }
        Ok(format!("new {}({})", rec.java_name, args.join(", ")))
    }

    fn array_literal(&mut self, elem: &CType, n: u64, items: &[Initializer]) -> R<String> {
        if items.len() as u64 > n {
            return Err(TranslateError::unsupported("too many array initializers"));
        }
        if n as usize > MAX_LIST {
            if items.iter().all(is_zero_init) {
                return Ok(
                    fresh_value(&CType::Array(Box::new(elem.clone()), Some(n)), self.ctx)?
                        .unwrap_or_else(|| "null".into()),
                );
            }
            return Err(TranslateError::unsupported(
                "array initializer longer than 256 elements",
            ));
        }
        let mut vals = Vec::new();
        for it in items {
            vals.push(self.element_value(elem, it)?);
        }
        while (vals.len() as u64) < n {
            let z = match fresh_value(elem, self.ctx)? {
                Some(v) => v,
                None => self.jty(elem)?.zero_value().to_string(),
            };
            vals.push(z);
        }
        // Nested brace rows are fine inside a Java array initializer.
        Ok(format!("{{{}}}", vals.join(", ")))
    }
}

fn is_zero_init(i: &Initializer) -> bool {
    match i {
        Initializer::Expr(e) => matches!(e.unparen().kind, ExprKind::IntLit { value: 0, .. }),
        Initializer::List(items, _) => items.iter().all(is_zero_init),
    }
}
