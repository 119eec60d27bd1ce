//! Function bodies: expressions, statements, and the per-variable
//! representation choices made before translation starts.

mod call;
mod decl;
mod expr;
mod prepass;
mod stmt;

use std::collections::{HashMap, HashSet};

use crate::c_front::ast::{Expr, ExprKind, FunctionDef, Initializer, StmtKind, UnaryOp};
use crate::c_front::Span;
use crate::javafmt::reindent;

use super::names::{java_identifier, RESERVED_NAMES};
use super::types::{self, java_value_type, CType, JTy};
use super::{JavaSnippet, RuleId, SnippetKind, TranslateError, TranslationContext};

pub(super) type R<T> = Result<T, TranslateError>;

// Java operator precedence, higher binds tighter.
pub(super) const P_ASSIGN: u8 = 2;
pub(super) const P_TERN: u8 = 3;
pub(super) const P_OR: u8 = 4;
pub(super) const P_AND: u8 = 5;
pub(super) const P_BOR: u8 = 6;
pub(super) const P_BXOR: u8 = 7;
pub(super) const P_BAND: u8 = 8;
pub(super) const P_EQ: u8 = 9;
pub(super) const P_REL: u8 = 10;
pub(super) const P_SHIFT: u8 = 11;
pub(super) const P_ADD: u8 = 12;
pub(super) const P_MUL: u8 = 13;
pub(super) const P_UNARY: u8 = 14;
pub(super) const P_PRIMARY: u8 = 15;

/// A translated expression with both its C and Java static types.
#[derive(Debug, Clone, PartialEq)]
pub(super) struct JExpr {
    pub text: String,
    pub prec: u8,
    pub cty: CType,
    pub jty: JTy,
    /// For `unsigned int`: the value is already within 0..2^32. For
    /// `unsigned long`: known non-negative.
    pub masked: bool,
    pub konst: Option<i64>,
    /// Usable as a Java expression statement.
    pub effect: bool,
}

impl JExpr {
    pub fn new(text: impl Into<String>, prec: u8, cty: CType, jty: JTy) -> Self {
        JExpr {
            text: text.into(),
            prec,
            cty,
            jty,
            masked: false,
            konst: None,
            effect: false,
        }
    }

    pub fn primary(text: impl Into<String>, cty: CType, jty: JTy) -> Self {
        Self::new(text, P_PRIMARY, cty, jty)
    }

    pub fn masked(mut self, m: bool) -> Self {
        self.masked = m;
        self
    }

    pub fn effect(mut self) -> Self {
        self.effect = true;
        self
    }

    /// Text parenthesized if it binds looser than `min`.
    pub fn at(&self, min: u8) -> String {
        if self.prec < min {
            format!("({})", self.text)
        } else {
            self.text.clone()
        }
    }
}

/// Result of something that may only be expressible as statements.
#[derive(Debug, Clone)]
pub(super) enum Out {
    Expr(JExpr),
    Stmts(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(super) enum Repr {
    Plain,
    /// Pointer into an array: an index plus the array.
    PtrPair {
        idx: String,
        arr: String,
    },
    /// Pointer recovered from `void *`, held as the boxed value.
    Boxed,
    /// `char[]` used only as a string value.
    StringBuf,
    /// `char[]` with element access.
    CharArray,
    /// Union local: raw bits in an int or long.
    Union {
        bits: String,
        long: bool,
    },
    /// The `T **` parameter turned into the return value.
    OutParam,
}

#[derive(Debug, Clone)]
pub(super) struct Var {
    pub java: String,
    pub cty: CType,
    pub jty: JTy,
    pub repr: Repr,
}

#[derive(Default)]
struct Scope {
    vars: HashMap<String, Var>,
    java: HashSet<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) enum LabelKind {
    Fwd,
    Back,
}

pub(super) struct FnCx<'c> {
    ctx: &'c TranslationContext,
    fired: Vec<RuleId>,
    claims: HashMap<(u32, Span), RuleId>,
    scopes: Vec<Scope>,
    decisions: HashMap<Span, prepass::Decision>,
    text_id: u32,
    next_text: u32,
    labels: Vec<(String, String, LabelKind)>,
    ret: CType,
    is_main: bool,
    out_param: Option<String>,
    expanding: Vec<String>,
    in_switch_block: bool,
    /// Statements emitted that are not plain expression statements.
    complex: usize,
    hoisted: HashSet<(u32, Span)>,
    targets: Vec<stmt::Target>,
    switch_unsigned: bool,
}

impl<'c> FnCx<'c> {
    fn new(ctx: &'c TranslationContext) -> Self {
        FnCx {
            ctx,
            fired: Vec::new(),
            claims: HashMap::new(),
            scopes: vec![Scope::default()],
            decisions: HashMap::new(),
            text_id: 0,
            next_text: 1,
            labels: Vec::new(),
            ret: CType::Void,
            is_main: false,
            out_param: None,
            expanding: Vec::new(),
            in_switch_block: false,
            complex: 0,
            hoisted: HashSet::new(),
            targets: Vec::new(),
            switch_unsigned: false,
        }
    }

    // ------------------------------------------------------------- rules

    /// Records `rule` as fired and claims the node at `span`.
    pub(super) fn fire(&mut self, rule: RuleId, span: Span) -> R<()> {
        let key = (self.text_id, span);
        if let Some(prev) = self.claims.get(&key) {
            if *prev != rule {
                return Err(TranslateError::RuleConflict {
                    first: *prev,
                    second: rule,
                    at: span,
                });
            }
        } else {
            self.claims.insert(key, rule);
        }
        self.note(rule);
        Ok(())
    }

    /// Records `rule` without claiming a node.
    pub(super) fn note(&mut self, rule: RuleId) {
        if !self.fired.contains(&rule) {
            self.fired.push(rule);
        }
    }

    // ------------------------------------------------------------ scopes

    pub(super) fn push(&mut self) {
        self.scopes.push(Scope::default());
    }

    pub(super) fn pop(&mut self) {
        self.scopes.pop();
    }

    pub(super) fn lookup(&self, name: &str) -> Option<&Var> {
        self.scopes.iter().rev().find_map(|s| s.vars.get(name))
    }

    fn java_taken(&self, name: &str) -> bool {
        RESERVED_NAMES.contains(&name)
            || self.scopes.iter().any(|s| s.java.contains(name))
            || self.ctx.records.values().any(|r| r.java_name == name)
            || self.ctx.enums.values().any(|e| e.java_name == name)
    }

    /// A Java local name based on `base` not visible in any enclosing scope.
    pub(super) fn fresh(&mut self, base: &str) -> String {
        let b = java_identifier(base);
        let mut cand = b.clone();
        let mut k = 1;
        while self.java_taken(&cand) {
            cand = format!("{b}_{k}");
            k += 1;
        }
        self.scopes
            .last_mut()
            .expect("scope")
            .java
            .insert(cand.clone());
        cand
    }

    pub(super) fn declare(&mut self, c_name: &str, var: Var) {
        let s = self.scopes.last_mut().expect("scope");
        s.java.insert(var.java.clone());
        s.vars.insert(c_name.to_string(), var);
    }

    pub(super) fn decision(&self, name_span: Option<Span>) -> Option<prepass::Decision> {
        if self.text_id != 0 {
            return None;
        }
        name_span.and_then(|s| self.decisions.get(&s).copied())
    }

    // ---------------------------------------------------------- helpers

    pub(super) fn jty(&self, t: &CType) -> R<JTy> {
        java_value_type(t, self.ctx)
    }

    /// Runs `f` without keeping any rule firings or claims it makes.
    pub(super) fn dry<T>(&mut self, f: impl FnOnce(&mut Self) -> R<T>) -> R<T> {
        let fired = self.fired.clone();
        let claims = self.claims.clone();
        let complex = self.complex;
        let r = f(self);
        self.fired = fired;
        self.claims = claims;
        self.complex = complex;
        r
    }

    /// Translates `f` over text parsed from a macro expansion.
    pub(super) fn in_fragment<T>(&mut self, name: &str, f: impl FnOnce(&mut Self) -> R<T>) -> R<T> {
        let saved = self.text_id;
        self.text_id = self.next_text;
        self.next_text += 1;
        self.expanding.push(name.to_string());
        let r = f(self);
        self.expanding.pop();
        self.text_id = saved;
        r
    }

    // --------------------------------------------------------- function

    fn function(&mut self, def: &FunctionDef) -> R<JavaSnippet> {
        let name = def.name();
        let sig = self
            .ctx
            .functions
            .get(name)
            .ok_or_else(|| TranslateError::UnresolvedSymbol {
                name: name.to_string(),
            })?
            .clone();
        if sig.variadic {
            return Err(TranslateError::unsupported("variadic function definition"));
        }
        self.is_main = name == "main";
        self.ret = sig.ret.clone();
        self.decisions = prepass::analyze(def, self.ctx);
        self.push();
        let mut prologue = Vec::new();
        let mut params = Vec::new();
        let real: Vec<_> = sig
            .params
            .iter()
            .enumerate()
            .filter(|(_, (n, t))| !(n.is_none() && *t == CType::Void))
            .collect();
        if self.is_main {
            if !real.is_empty() {
                return Err(TranslateError::unsupported("main with parameters"));
            }
            self.scopes[0].java.insert("args".into());
        }
        let decls = def.params();
        for (i, (cname, cty)) in real {
            let cname = cname.clone().unwrap_or_else(|| format!("arg{i}"));
            let span = decls.get(i).and_then(|p| p.declarator.name_span());
            if sig.out_param == Some(i) {
                let inner = cty.pointee().cloned().unwrap_or(CType::Void);
                let jt = self.jty(&inner)?;
                let java = self.fresh(&cname);
                prologue.push(format!("{} {java} = null;", jt.render()));
                self.note(RuleId::OutParam);
                self.out_param = Some(java.clone());
                self.declare(
                    &cname,
                    Var {
                        java,
                        cty: cty.clone(),
                        jty: jt,
                        repr: Repr::OutParam,
                    },
                );
                continue;
            }
            match cty {
                CType::Struct(_) => {
                    let jt = self.jty(cty)?;
                    let orig = self.fresh(&format!("{cname}_orig"));
                    let java = self.fresh(&cname);
                    params.push(format!("{} {orig}", jt.render()));
                    prologue.push(format!("{0} {java} = new {0}({orig});", jt.render()));
                    self.note(RuleId::Copy);
                    self.declare(
                        &cname,
                        Var {
                            java,
                            cty: cty.clone(),
                            jty: jt,
                            repr: Repr::Plain,
                        },
                    );
                }
                CType::Pointer(_) if self.decision(span) == Some(prepass::Decision::PtrPair) => {
                    let jt = self.jty(cty)?;
                    let arr = self.fresh(&format!("{cname}_array"));
                    let idx = self.fresh(&format!("{cname}_index"));
                    params.push(format!("{} {arr}", jt.render()));
                    prologue.push(format!("int {idx} = 0;"));
                    self.note(RuleId::Ptr);
                    self.declare(
                        &cname,
                        Var {
                            java: arr.clone(),
                            cty: cty.clone(),
                            jty: jt,
                            repr: Repr::PtrPair { idx, arr },
                        },
                    );
                }
                _ => {
                    let jt = self.jty(cty)?;
                    match cty {
                        CType::Pointer(p) if **p == CType::Void => self.note(RuleId::VoidPtr),
                        t if t.is_function_pointer() => self.note(RuleId::FnPtr),
                        t if t.store_mask().is_some() => self.note(RuleId::Unsigned),
                        CType::Enum(_) => self.note(RuleId::Enum),
                        _ => {}
                    }
                    let java = self.fresh(&cname);
                    params.push(format!("{} {java}", jt.render()));
                    self.declare(
                        &cname,
                        Var {
                            java,
                            cty: cty.clone(),
                            jty: jt,
                            repr: Repr::Plain,
                        },
                    );
                }
            }
        }
        let ret_java = if self.is_main {
            "void".to_string()
        } else if sig.out_param.is_some() {
            let t = &sig.params[sig.out_param.unwrap_or(0)].1;
            self.jty(t.pointee().unwrap_or(&CType::Void))?.render()
        } else {
            self.jty(&sig.ret)?.render()
        };
        let mut body = Vec::new();
        let StmtKind::Compound(items) = &def.body.kind else {
            return Err(TranslateError::unsupported("function body is not a block"));
        };
        self.push();
        self.block_items(items, &mut body)?;
        self.pop();
        if stmt::can_complete(&def.body, self.ctx) {
            if let Some(o) = &self.out_param {
                body.push(format!("return {o};"));
            } else if !self.is_main && sig.ret != CType::Void {
                body.push(format!("return {};", self.jty(&sig.ret)?.zero_value()));
            }
        }
        self.pop();
        let head = if self.is_main {
            "public static void main(String[] args) {".to_string()
        } else {
            format!(
                "public static {ret_java} {}({}) {{",
                sig.java_name,
                params.join(", ")
            )
        };
        let mut text = head;
        text.push('\n');
        for l in prologue.iter().chain(body.iter()) {
            text.push_str(l);
            text.push('\n');
        }
        text.push_str("}\n");
        Ok(JavaSnippet::new(
            SnippetKind::Method,
            if self.is_main {
                "main".to_string()
            } else {
                sig.java_name.clone()
            },
            reindent(&text),
        ))
    }
}

/// Translates `def`. Rules fired are copied into `sink` whether or not the
/// translation succeeds.
pub(super) fn translate(
    def: &FunctionDef,
    ctx: &TranslationContext,
    sink: Option<&mut Vec<RuleId>>,
) -> R<(JavaSnippet, Vec<RuleId>)> {
    let mut cx = FnCx::new(ctx);
    let r = cx.function(def);
    if let Some(s) = sink {
        *s = cx.fired.clone();
    }
    r.map(|s| (s, cx.fired))
}

/// Java initializer text for a global of type `cty`.
pub(super) fn global_initializer(
    ctx: &TranslationContext,
    cty: &CType,
    init: Option<&Initializer>,
) -> R<String> {
    let mut cx = FnCx::new(ctx);
    let var = Var {
        java: String::new(),
        cty: cty.clone(),
        jty: cx.jty(cty)?,
        repr: if matches!(cty, CType::Array(e, _) if e.is_char()) {
            Repr::CharArray
        } else {
            Repr::Plain
        },
    };
    let parts = cx.init_values(&var, init)?;
    Ok(parts
        .into_iter()
        .next()
        .map(|p| p.value)
        .unwrap_or_else(|| "null".into()))
}

/// Index of a `T **` parameter of a void function that the body assigns
/// through, which becomes the return value.
pub(super) fn detect_out_param(def: &FunctionDef, ctx: &TranslationContext) -> R<Option<usize>> {
    let base = types::base_type(&def.specifiers, ctx)?;
    if base != CType::Void || !def.declarator.pointers.is_empty() {
        return Ok(None);
    }
    let mut found = None;
    for (i, p) in def.params().iter().enumerate() {
        let Ok(b) = types::base_type(&p.specifiers, ctx) else {
            continue;
        };
        let Ok(t) = ctx.resolve(b, &p.declarator) else {
            continue;
        };
        let t = types::adjust_param(t);
        let is_pp = matches!(&t, CType::Pointer(inner)
            if matches!(inner.as_ref(), CType::Pointer(x) if !x.is_pointer() && !matches!(**x, CType::Function { .. } | CType::Void)));
        if !is_pp {
            continue;
        }
        if let Some(n) = p.declarator.name() {
            if super::body_assigns_through(&def.body, n) {
                if found.is_some() {
                    return Ok(None);
                }
                found = Some(i);
            }
        }
    }
    Ok(found)
}

/// True when evaluating `e` cannot change program state.
pub(super) fn is_pure(e: &Expr) -> bool {
    let mut pure = true;
    crate::c_front::ast::walk_expr(e, &mut |x| match &x.kind {
        ExprKind::Assign { .. } | ExprKind::Postfix { .. } | ExprKind::Call { .. } => pure = false,
        ExprKind::Unary {
            op: UnaryOp::PreInc | UnaryOp::PreDec,
            ..
        } => pure = false,
        _ => {}
    });
    pure
}
