//! Usage scan deciding how pointer and char-array variables are held in
//! Java. Keyed by the span of the declarator name.

use std::collections::HashMap;

use crate::c_front::ast::*;
use crate::c_front::Span;

use super::super::types::{self, CType};
use super::super::TranslationContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Decision {
    PtrPair,
    Boxed,
    StringBuf,
}

#[derive(Debug, Default, Clone, Copy)]
struct Facts {
    arith: bool,
    from_array: bool,
    from_void: bool,
    string_use: bool,
    elem_access: bool,
}

#[derive(Clone, Copy, PartialEq)]
enum Role {
    Value,
    StrArg,
    Sizeof,
}

struct Scan<'a> {
    ctx: &'a TranslationContext,
    scopes: Vec<HashMap<String, Span>>,
    types: HashMap<Span, CType>,
    facts: HashMap<Span, Facts>,
    aliases: Vec<(Span, Span)>,
}

pub(crate) fn analyze(def: &FunctionDef, ctx: &TranslationContext) -> HashMap<Span, Decision> {
    let mut s = Scan {
        ctx,
        scopes: vec![HashMap::new()],
        types: HashMap::new(),
        facts: HashMap::new(),
        aliases: Vec::new(),
    };
    for p in def.params() {
        if let (Some(n), Some(sp)) = (p.declarator.name(), p.declarator.name_span()) {
            if let Ok(b) = types::base_type(&p.specifiers, ctx) {
                if let Ok(t) = ctx.resolve(b, &p.declarator) {
                    s.define(n, sp, types::adjust_param(t));
                }
            }
        }
    }
    s.stmt(&def.body);
    s.decide()
}

fn scalar_pointee(t: &CType) -> Option<&CType> {
    match t {
        CType::Pointer(p) if p.is_arithmetic() => Some(p),
        _ => None,
    }
}

impl Scan<'_> {
    fn define(&mut self, name: &str, span: Span, t: CType) {
        self.scopes
            .last_mut()
            .expect("scope")
            .insert(name.to_string(), span);
        self.types.insert(span, t);
        self.facts.entry(span).or_default();
    }

    fn key(&self, name: &str) -> Option<Span> {
        self.scopes.iter().rev().find_map(|s| s.get(name).copied())
    }

    fn type_of_ident(&self, e: &Expr) -> Option<CType> {
        let n = e.as_ident()?;
        match self.key(n) {
            Some(k) => self.types.get(&k).cloned(),
            None => self.ctx.globals.get(n).map(|g| g.cty.clone()),
        }
    }

    fn fact(&mut self, name: &str) -> Option<&mut Facts> {
        let k = self.key(name)?;
        self.facts.get_mut(&k)
    }

    fn decide(&self) -> HashMap<Span, Decision> {
        let mut ptr: HashMap<Span, bool> = HashMap::new();
        for (k, f) in &self.facts {
            let t = &self.types[k];
            if scalar_pointee(t).is_some() && !t.pointee().is_some_and(|p| p.is_char()) {
                ptr.insert(
                    *k,
                    (f.arith || f.from_array) && !(f.from_void && !f.arith && !f.from_array),
                );
            }
        }
        loop {
            let mut changed = false;
            for (p, q) in &self.aliases {
                if ptr.get(q) == Some(&true) && ptr.get(p) == Some(&false) {
                    ptr.insert(*p, true);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut out = HashMap::new();
        for (k, f) in &self.facts {
            let t = &self.types[k];
            match t {
                CType::Pointer(p) if p.is_char() => {
                    if f.from_void && !f.string_use && !f.arith {
                        out.insert(*k, Decision::Boxed);
                    }
                }
                CType::Pointer(p) if p.is_arithmetic() => {
                    if ptr.get(k) == Some(&true) {
                        out.insert(*k, Decision::PtrPair);
                    } else if f.from_void {
                        out.insert(*k, Decision::Boxed);
                    }
                }
                CType::Array(e, _) if e.is_char() && f.string_use && !f.elem_access => {
                    out.insert(*k, Decision::StringBuf);
                }
                _ => {}
            }
        }
        out
    }

    fn decl(&mut self, d: &Declaration) {
        let Ok(base) = types::base_type(&d.specifiers, self.ctx) else {
            for i in &d.declarators {
                if let Some(init) = &i.init {
                    self.init(init);
                }
            }
            return;
        };
        for i in &d.declarators {
            let (Some(n), Some(sp)) = (i.declarator.name(), i.declarator.name_span()) else {
                continue;
            };
            if let Ok(t) = self.ctx.resolve(base.clone(), &i.declarator) {
                self.define(n, sp, t);
            }
            if let Some(init) = &i.init {
                if let Initializer::Expr(e) = init {
                    self.assigned(sp, e);
                }
                self.init(init);
            }
        }
    }

    fn init(&mut self, init: &Initializer) {
        match init {
            Initializer::Expr(e) => self.expr(e, Role::Value),
            Initializer::List(items, _) => items.iter().for_each(|i| self.init(i)),
        }
    }

    /// Pointer variable `key` receives the value `rhs`.
    fn assigned(&mut self, key: Span, rhs: &Expr) {
        let r = rhs.unparen();
        let is_array = |s: &Self, e: &Expr| matches!(s.type_of_ident(e), Some(CType::Array(..)));
        let ptr_key = |s: &Self, e: &Expr| {
            e.as_ident()
                .and_then(|n| s.key(n))
                .filter(|k| s.types.get(k).is_some_and(|t| t.is_pointer()))
        };
        let mut from_array = false;
        let mut from_void = false;
        match &r.kind {
            ExprKind::Ident(_) if is_array(self, r) => from_array = true,
            ExprKind::Ident(_) => {
                if let Some(q) = ptr_key(self, r) {
                    self.aliases.push((key, q));
                }
            }
            ExprKind::Unary {
                op: UnaryOp::AddrOf,
                operand,
            } if matches!(operand.unparen().kind, ExprKind::Index { .. }) => from_array = true,
            ExprKind::Binary {
                op: BinOp::Add | BinOp::Sub,
                lhs,
                rhs,
            } => {
                for side in [lhs, rhs] {
                    if is_array(self, side) {
                        from_array = true;
                    } else if let Some(q) = ptr_key(self, side) {
                        self.aliases.push((key, q));
                        from_array = true;
                    }
                }
            }
            ExprKind::Cast { expr, .. } => {
                let inner = expr.unparen();
                if matches!(self.type_of_ident(inner), Some(CType::Pointer(p)) if *p == CType::Void)
                {
                    from_void = true;
                }
            }
            _ => {}
        }
        if let Some(f) = self.facts.get_mut(&key) {
            f.from_array |= from_array;
            f.from_void |= from_void;
        }
    }

    fn stmt(&mut self, s: &Stmt) {
        match &s.kind {
            StmtKind::Compound(items) => {
                self.scopes.push(HashMap::new());
                items.iter().for_each(|i| self.stmt(i));
                self.scopes.pop();
            }
            StmtKind::Decl(d) => self.decl(d),
            StmtKind::Expr(Some(e)) | StmtKind::Return(Some(e)) => self.expr(e, Role::Value),
            StmtKind::If { cond, then, els } => {
                self.expr(cond, Role::Value);
                self.stmt(then);
                if let Some(e) = els {
                    self.stmt(e);
                }
            }
            StmtKind::While { cond, body } | StmtKind::DoWhile { body, cond } => {
                self.expr(cond, Role::Value);
                self.stmt(body);
            }
            StmtKind::For {
                init,
                cond,
                step,
                body,
            } => {
                self.scopes.push(HashMap::new());
                match init {
                    Some(ForInit::Decl(d)) => self.decl(d),
                    Some(ForInit::Expr(e)) => self.expr(e, Role::Value),
                    None => {}
                }
                for e in [cond, step].into_iter().flatten() {
                    self.expr(e, Role::Value);
                }
                self.stmt(body);
                self.scopes.pop();
            }
            StmtKind::Switch { cond, body } => {
                self.expr(cond, Role::Value);
                self.stmt(body);
            }
            StmtKind::Case { body, .. }
            | StmtKind::Default { body }
            | StmtKind::Labeled { body, .. } => self.stmt(body),
            _ => {}
        }
    }

    fn expr(&mut self, e: &Expr, role: Role) {
        match &e.kind {
            ExprKind::Ident(n) => {
                let is_char_array = self
                    .type_of_ident(e)
                    .is_some_and(|t| matches!(t, CType::Array(ref x, _) if x.is_char()));
                if let Some(f) = self.fact(n) {
                    match role {
                        Role::StrArg => f.string_use = true,
                        Role::Sizeof => {}
                        Role::Value if is_char_array => f.elem_access = true,
                        Role::Value => {}
                    }
                }
            }
            ExprKind::Paren(inner) => self.expr(inner, role),
            ExprKind::Index { base, index } => {
                if let Some(n) = base.as_ident() {
                    if let Some(f) = self.fact(n) {
                        f.elem_access = true;
                    }
                } else {
                    self.expr(base, Role::Value);
                }
                self.expr(index, Role::Value);
            }
            ExprKind::Unary { op, operand } => {
                let name = operand.as_ident().map(str::to_string);
                match (op, name) {
                    (UnaryOp::Deref, Some(n)) => {
                        if let Some(f) = self.fact(&n) {
                            f.elem_access = true;
                        }
                    }
                    (UnaryOp::PreInc | UnaryOp::PreDec, Some(n)) => {
                        if let Some(f) = self.fact(&n) {
                            f.arith = true;
                        }
                    }
                    _ => self.expr(operand, Role::Value),
                }
            }
            ExprKind::Postfix { operand, .. } => {
                if let Some(n) = operand.as_ident() {
                    if let Some(f) = self.fact(n) {
                        f.arith = true;
                    }
                } else {
                    self.expr(operand, Role::Value);
                }
            }
            ExprKind::Assign { op, lhs, rhs } => {
                let key = lhs
                    .as_ident()
                    .and_then(|n| self.key(n))
                    .filter(|k| self.types.get(k).is_some_and(|t| t.is_pointer()));
                match (key, op) {
                    (Some(k), None) => self.assigned(k, rhs),
                    (Some(k), Some(_)) => {
                        if let Some(f) = self.facts.get_mut(&k) {
                            f.arith = true;
                        }
                    }
                    (None, _) => self.expr(lhs, Role::Value),
                }
                self.expr(rhs, Role::Value);
            }
            ExprKind::Binary { op, lhs, rhs } => {
                if matches!(op, BinOp::Add | BinOp::Sub) {
                    for side in [lhs, rhs] {
                        if let Some(n) = side.as_ident() {
                            let is_ptr = self.type_of_ident(side).is_some_and(|t| t.is_pointer());
                            if let Some(f) = self.fact(n) {
                                if is_ptr {
                                    f.arith = true;
                                } else {
                                    f.elem_access = true;
                                }
                            }
                            continue;
                        }
                        self.expr(side, Role::Value);
                    }
                } else {
                    self.expr(lhs, Role::Value);
                    self.expr(rhs, Role::Value);
                }
            }
            ExprKind::Call { callee, args } => {
                let name = callee.as_ident().unwrap_or("");
                let str_params: Vec<bool> = match name {
                    "printf" => (0..args.len()).map(|i| i > 0).collect(),
                    "puts" | "strlen" => vec![true],
                    "strcpy" | "strcat" => vec![true, true],
                    _ => match self.ctx.functions.get(name) {
                        Some(sig) => sig
                            .params
                            .iter()
                            .map(|(_, t)| matches!(t, CType::Pointer(p) if p.is_char()))
                            .collect(),
                        None => Vec::new(),
                    },
                };
                if callee.as_ident().is_none() {
                    self.expr(callee, Role::Value);
                }
                for (i, a) in args.iter().enumerate() {
                    let r = if str_params.get(i).copied().unwrap_or(false) {
                        Role::StrArg
                    } else {
                        Role::Value
                    };
                    self.expr(a, r);
                }
            }
            ExprKind::SizeofExpr(inner) => self.expr(inner, Role::Sizeof),
            ExprKind::Cast { expr, .. } => self.expr(expr, Role::Value),
            ExprKind::Member { base, .. } => self.expr(base, Role::Value),
            ExprKind::Ternary { cond, then, els } => {
                self.expr(cond, Role::Value);
                self.expr(then, role);
                self.expr(els, role);
            }
            ExprKind::Comma { lhs, rhs } => {
                self.expr(lhs, Role::Value);
                self.expr(rhs, role);
            }
            _ => {}
        }
    }
}
