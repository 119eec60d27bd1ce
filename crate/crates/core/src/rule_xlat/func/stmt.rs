use crate::c_front::ast::{
    walk_stmt_exprs, walk_stmts, Expr, ExprKind, ForInit, Stmt, StmtKind, UnaryOp,
};

use super::super::consts;
use super::super::types::{CType, JTy};
use super::super::{RuleId, TranslateError, TranslationContext};
use super::*;

/// Kinds of statement an unlabeled `break` or `continue` may bind to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) enum Target {
    Loop,
    Switch,
    Region,
}

#[derive(Debug, Clone)]
struct Region {
    start: usize,
    end: usize,
    label: String,
    kind: LabelKind,
}

/// Labels attached directly to `s` (`a: b: stmt`).
fn labels_of(s: &Stmt) -> Vec<&str> {
    let mut v = Vec::new();
    let mut cur = s;
    while let StmtKind::Labeled { label, body } = &cur.kind {
        v.push(label.as_str());
        cur = body;
    }
    v
}

fn contains_goto(s: &Stmt, label: &str) -> bool {
    let mut found = false;
    walk_stmts(s, &mut |x| {
        if let StmtKind::Goto(l) = &x.kind {
            if l == label {
                found = true;
            }
        }
    });
    found
}

fn is_label_like(s: &Stmt) -> bool {
    matches!(
        s.kind,
        StmtKind::Labeled { .. } | StmtKind::Case { .. } | StmtKind::Default { .. }
    )
}

fn mentions(s: &Stmt, name: &str) -> bool {
    let mut found = false;
    walk_stmt_exprs(s, &mut |e| {
        if let ExprKind::Ident(n) = &e.kind {
            if n == name {
                found = true;
            }
        }
    });
    found
}

/// Unlabeled `break` statements that would leave `s` itself.
fn has_break(s: &Stmt) -> bool {
    match &s.kind {
        StmtKind::Break => true,
        StmtKind::Compound(items) => items.iter().any(has_break),
        StmtKind::If { then, els, .. } => has_break(then) || els.as_deref().is_some_and(has_break),
        StmtKind::Labeled { body, .. }
        | StmtKind::Case { body, .. }
        | StmtKind::Default { body } => has_break(body),
        _ => false,
    }
}

fn has_continue(s: &Stmt) -> bool {
    match &s.kind {
        StmtKind::Continue => true,
        StmtKind::Compound(items) => items.iter().any(has_continue),
        StmtKind::If { then, els, .. } => {
            has_continue(then) || els.as_deref().is_some_and(has_continue)
        }
        StmtKind::Labeled { body, .. }
        | StmtKind::Case { body, .. }
        | StmtKind::Default { body }
        | StmtKind::Switch { body, .. } => has_continue(body),
        _ => false,
    }
}

fn const_true(e: Option<&Expr>, ctx: &TranslationContext) -> bool {
    match e {
        None => true,
        Some(e) => consts::eval(e, ctx).is_ok_and(|v| v != 0),
    }
}

fn has_default(s: &Stmt) -> bool {
    match &s.kind {
        StmtKind::Default { .. } => true,
        StmtKind::Compound(items) => items.iter().any(has_default),
        StmtKind::Case { body, .. } | StmtKind::Labeled { body, .. } => has_default(body),
        _ => false,
    }
}

/// Whether control can reach the end of `s`, by the same rules Java uses.
pub(super) fn can_complete(s: &Stmt, ctx: &TranslationContext) -> bool {
    match &s.kind {
        StmtKind::Return(_) | StmtKind::Break | StmtKind::Continue | StmtKind::Goto(_) => false,
        StmtKind::Compound(items) => {
            let mut live = true;
            for it in items {
                if !live && is_label_like(it) {
                    live = true;
                }
                if live {
                    live = can_complete(it, ctx);
                }
            }
            live
        }
        StmtKind::If { then, els, .. } => match els {
            Some(e) => can_complete(then, ctx) || can_complete(e, ctx),
            None => true,
        },
        StmtKind::While { cond, body } => !const_true(Some(cond), ctx) || has_break(body),
        StmtKind::For { cond, body, .. } => !const_true(cond.as_ref(), ctx) || has_break(body),
        StmtKind::DoWhile { body, cond } => !const_true(Some(cond), ctx) || has_break(body),
        StmtKind::Switch { body, .. } => {
            let last_completes = match &body.kind {
                StmtKind::Compound(items) => items.last().is_none_or(|l| can_complete(l, ctx)),
                _ => can_complete(body, ctx),
            };
            !has_default(body) || has_break(body) || last_completes
        }
        StmtKind::Labeled { body, .. }
        | StmtKind::Case { body, .. }
        | StmtKind::Default { body } => can_complete(body, ctx),
        StmtKind::Decl(_) | StmtKind::Expr(_) => true,
    }
}

fn strip_semi(l: &str) -> Option<&str> {
    let t = l.strip_suffix(';')?;
    if t.contains('{') || t.contains('}') || t.starts_with("if ") {
        return None;
    }
    Some(t)
}

impl FnCx<'_> {
    /// Statement bodies are always emitted as braced blocks.
    fn body(&mut self, s: &Stmt, out: &mut Vec<String>) -> R<()> {
        self.push();
        let r = match &s.kind {
            StmtKind::Compound(items) => self.block_items(items, out),
            _ => self.stmt(s, out),
        };
        self.pop();
        r
    }

    fn with_target<T>(&mut self, t: Target, f: impl FnOnce(&mut Self) -> R<T>) -> R<T> {
        self.targets.push(t);
        let r = f(self);
        self.targets.pop();
        r
    }

    pub(super) fn stmt(&mut self, s: &Stmt, out: &mut Vec<String>) -> R<()> {
        let direct = std::mem::replace(&mut self.in_switch_block, false);
        match &s.kind {
            StmtKind::Compound(items) => {
                out.push("{".into());
                self.push();
                let r = self.block_items(items, out);
                self.pop();
                r?;
                out.push("}".into());
            }
            StmtKind::Decl(d) => self.declaration(d, out)?,
            StmtKind::Expr(None) => {}
            StmtKind::Expr(Some(e)) => self.expr_stmt(e, out)?,
            StmtKind::If { .. } => {
                self.complex += 1;
                self.if_chain(s, out)?;
            }
            StmtKind::While { cond, body } => {
                self.complex += 1;
                let c = self.boolean(cond)?;
                if c.text == "false" {
                    return Ok(());
                }
                out.push(format!("while ({}) {{", c.text));
                self.with_target(Target::Loop, |cx| cx.body(body, out))?;
                out.push("}".into());
            }
            StmtKind::DoWhile { body, cond } => {
                self.complex += 1;
                out.push("do {".into());
                self.with_target(Target::Loop, |cx| cx.body(body, out))?;
                let c = self.boolean(cond)?;
                out.push(format!("}} while ({});", c.text));
            }
            StmtKind::For {
                init,
                cond,
                step,
                body,
            } => {
                self.complex += 1;
                self.for_loop(init.as_ref(), cond.as_ref(), step.as_ref(), body, out)?;
            }
            StmtKind::Switch { cond, body } => {
                self.complex += 1;
                self.switch(cond, body, out)?;
            }
            StmtKind::Case { value, body } => {
                if !direct {
                    return Err(TranslateError::unsupported(
                        "case label nested inside a block",
                    ));
                }
                let text = self.case_value(value)?;
                out.push(format!("case {text}:"));
                self.in_switch_block = true;
                self.stmt(body, out)?;
            }
            StmtKind::Default { body } => {
                if !direct {
                    return Err(TranslateError::unsupported(
                        "default label nested inside a block",
                    ));
                }
                out.push("default:".into());
                self.in_switch_block = true;
                self.stmt(body, out)?;
            }
            StmtKind::Break => {
                if self.targets.last() == Some(&Target::Region) {
                    return Err(TranslateError::unsupported("break out of a goto region"));
                }
                out.push("break;".into());
            }
            StmtKind::Continue => {
                for t in self.targets.iter().rev() {
                    match t {
                        Target::Loop => break,
                        Target::Switch => continue,
                        Target::Region => {
                            return Err(TranslateError::unsupported(
                                "continue out of a goto region",
                            ))
                        }
                    }
                }
                out.push("continue;".into());
            }
            StmtKind::Return(e) => self.ret(e.as_ref(), out)?,
            StmtKind::Goto(label) => {
                let Some((_, java, kind)) = self
                    .labels
                    .iter()
                    .rev()
                    .find(|(c, _, _)| c == label)
                    .cloned()
                else {
                    return Err(TranslateError::unsupported(format!(
                        "goto {label} outside a supported forward or backward pattern"
                    )));
                };
                match kind {
                    LabelKind::Fwd => {
                        self.fire(RuleId::GotoFwd, s.span)?;
                        out.push(format!("break {java};"));
                    }
                    LabelKind::Back => {
                        self.fire(RuleId::GotoBack, s.span)?;
                        out.push(format!("continue {java};"));
                    }
                }
            }
            StmtKind::Labeled { body, .. } => {
                self.in_switch_block = direct;
                self.stmt(body, out)?;
            }
        }
        Ok(())
    }

    fn if_chain(&mut self, s: &Stmt, out: &mut Vec<String>) -> R<()> {
        let mut cur = s;
        let mut first = true;
        loop {
            let StmtKind::If { cond, then, els } = &cur.kind else {
                unreachable!()
            };
            let c = self.boolean(cond)?;
            if first {
                out.push(format!("if ({}) {{", c.text));
            } else {
                out.push(format!("}} else if ({}) {{", c.text));
            }
            first = false;
            self.body(then, out)?;
            match els.as_deref() {
                None => break,
                Some(e) if matches!(e.kind, StmtKind::If { .. }) => cur = e,
                Some(e) => {
                    out.push("} else {".into());
                    self.body(e, out)?;
                    break;
                }
            }
        }
        out.push("}".into());
        Ok(())
    }

    fn for_loop(
        &mut self,
        init: Option<&ForInit>,
        cond: Option<&Expr>,
        step: Option<&Expr>,
        body: &Stmt,
        out: &mut Vec<String>,
    ) -> R<()> {
        self.push();
        let mut init_lines = Vec::new();
        match init {
            Some(ForInit::Decl(d)) => self.declaration(d, &mut init_lines)?,
            Some(ForInit::Expr(e)) => self.expr_stmt(e, &mut init_lines)?,
            None => {}
        }
        let c = match cond {
            Some(c) => {
                let b = self.boolean(c)?;
                if b.text == "true" {
                    String::new()
                } else {
                    b.text
                }
            }
            None => String::new(),
        };
        let mut step_lines = Vec::new();
        if let Some(st) = step {
            self.expr_stmt(st, &mut step_lines)?;
        }
        let steps: Option<Vec<&str>> = step_lines.iter().map(|l| strip_semi(l)).collect();
        let inline_init = match init_lines.as_slice() {
            [] => Some(String::new()),
            [one] => strip_semi(one).map(str::to_string),
            _ => None,
        };
        let wrap = inline_init.is_none();
        if wrap {
            out.push("{".into());
            out.extend(init_lines.iter().cloned());
        }
        let head_init = inline_init.unwrap_or_default();
        match steps {
            Some(steps) => {
                out.push(format!("for ({head_init}; {c}; {}) {{", steps.join(", ")));
                self.with_target(Target::Loop, |cx| cx.body(body, out))?;
                out.push("}".into());
            }
            None => {
                if has_continue(body) {
                    self.pop();
                    return Err(TranslateError::unsupported(
                        "continue in a for loop whose update is not an expression list",
                    ));
                }
                if !wrap && !head_init.is_empty() {
                    out.push("{".into());
                    out.push(format!("{head_init};"));
                }
                let cc = if c.is_empty() { "true".to_string() } else { c };
                out.push(format!("while ({cc}) {{"));
                self.with_target(Target::Loop, |cx| cx.body(body, out))?;
                out.extend(step_lines.iter().cloned());
                out.push("}".into());
                if !wrap && !head_init.is_empty() {
                    out.push("}".into());
                }
            }
        }
        if wrap {
            out.push("}".into());
        }
        self.pop();
        Ok(())
    }

    fn case_value(&mut self, value: &Expr) -> R<String> {
        let v = consts::eval(value, self.ctx)?;
        if self.switch_unsigned {
            return Ok((v as i32).to_string());
        }
        let j = self.expr(value)?;
        if j.jty == JTy::Long {
            return Ok((v as i32).to_string());
        }
        Ok(j.text)
    }

    fn switch(&mut self, cond: &Expr, body: &Stmt, out: &mut Vec<String>) -> R<()> {
        let sel = self.expr(cond)?;
        let sel = self.bool_to_int(sel);
        if !sel.cty.is_integer() {
            return Err(TranslateError::unsupported(format!(
                "switch on {}",
                sel.cty
            )));
        }
        let (text, unsigned) = match (&sel.cty, &sel.jty) {
            (CType::UInt, _) => (format!("(int) {}", sel.at(P_UNARY)), true),
            (_, JTy::Long) => return Err(TranslateError::unsupported("switch on a long value")),
            (_, JTy::Char | JTy::Short) => (format!("(int) {}", sel.at(P_UNARY)), false),
            _ => (sel.text.clone(), false),
        };
        self.fire(RuleId::Switch, cond.span)?;
        out.push(format!("switch ({text}) {{"));
        let saved = std::mem::replace(&mut self.switch_unsigned, unsigned);
        self.push();
        let r = self.with_target(Target::Switch, |cx| match &body.kind {
            StmtKind::Compound(items) => {
                let mut dead = false;
                for it in items {
                    if dead && !is_label_like(it) {
                        continue;
                    }
                    cx.in_switch_block = true;
                    cx.stmt(it, out)?;
                    cx.in_switch_block = false;
                    dead = !can_complete(it, cx.ctx);
                }
                Ok(())
            }
            _ => {
                cx.in_switch_block = true;
                let r = cx.stmt(body, out);
                cx.in_switch_block = false;
                r
            }
        });
        self.pop();
        self.switch_unsigned = saved;
        r?;
        out.push("}".into());
        Ok(())
    }

    fn ret(&mut self, e: Option<&Expr>, out: &mut Vec<String>) -> R<()> {
        if self.is_main {
            match e {
                None => out.push("return;".into()),
                Some(x) => {
                    let v = self.expr_to(x, &CType::Int)?;
                    if v.konst == Some(0) {
                        out.push("return;".into());
                    } else {
                        out.push("System.out.flush();".into());
                        out.push(format!("System.exit({});", v.text));
                        out.push("return;".into());
                    }
                }
            }
            return Ok(());
        }
        if let Some(o) = self.out_param.clone() {
            if let Some(x) = e {
                self.expr_stmt(x, out)?;
            }
            out.push(format!("return {o};"));
            return Ok(());
        }
        if self.ret == CType::Void {
            if let Some(x) = e {
                self.expr_stmt(x, out)?;
            }
            out.push("return;".into());
            return Ok(());
        }
        let Some(x) = e else {
            return Err(TranslateError::unsupported(
                "return without a value in a non-void function",
            ));
        };
        let ret = self.ret.clone();
        let v = self.store_value(x, &ret)?;
        out.push(format!("return {};", v.text));
        Ok(())
    }

    /// An expression evaluated for its effects.
    pub(super) fn expr_stmt(&mut self, e: &Expr, out: &mut Vec<String>) -> R<()> {
        match &e.kind {
            ExprKind::Paren(inner) => self.expr_stmt(inner, out),
            ExprKind::Comma { lhs, rhs } => {
                self.expr_stmt(lhs, out)?;
                self.expr_stmt(rhs, out)
            }
            ExprKind::Cast { ty, expr } => {
                let t = consts::type_name(ty, self.ctx)?;
                if t == CType::Void {
                    return self.expr_stmt(expr, out);
                }
                let v = self.expr(e)?;
                self.emit_value_stmt(v, out);
                Ok(())
            }
            ExprKind::Assign { op, lhs, rhs } => {
                let r = self.assign(*op, lhs, rhs, true, e)?;
                self.emit_out(r, out);
                Ok(())
            }
            ExprKind::Postfix { op, operand } => {
                let r = self.incdec(
                    operand,
                    false,
                    *op == crate::c_front::ast::PostfixOp::Inc,
                    true,
                    e,
                )?;
                self.emit_out(r, out);
                Ok(())
            }
            ExprKind::Unary {
                op: op @ (UnaryOp::PreInc | UnaryOp::PreDec),
                operand,
            } => {
                let r = self.incdec(operand, true, *op == UnaryOp::PreInc, true, e)?;
                self.emit_out(r, out);
                Ok(())
            }
            ExprKind::Call { .. } => {
                let r = self.call(e, None, true)?;
                self.emit_out(r, out);
                Ok(())
            }
            ExprKind::Ternary { cond, then, els } => {
                let c = self.boolean(cond)?;
                out.push(format!("if ({}) {{", c.text));
                self.push();
                self.expr_stmt(then, out)?;
                self.pop();
                out.push("} else {".into());
                self.push();
                self.expr_stmt(els, out)?;
                self.pop();
                out.push("}".into());
                self.complex += 1;
                Ok(())
            }
            ExprKind::Binary {
                op: op @ (crate::c_front::ast::BinOp::And | crate::c_front::ast::BinOp::Or),
                lhs,
                rhs,
            } => {
                let c = self.boolean(lhs)?;
                let head = if *op == crate::c_front::ast::BinOp::And {
                    c.text
                } else {
                    format!("!{}", c.at(P_UNARY))
                };
                out.push(format!("if ({head}) {{"));
                self.expr_stmt(rhs, out)?;
                out.push("}".into());
                self.complex += 1;
                Ok(())
            }
            ExprKind::Ident(n) => {
                if let Some(m) = self.ctx.macros.get(n) {
                    if m.params.is_none() && !self.expanding.iter().any(|x| x == n) {
                        let body = m.body.clone();
                        let name = n.clone();
                        self.fire(RuleId::Macro, e.span)?;
                        let s = crate::c_front::parse_statement_fragment(
                            &format!("{body};"),
                            self.ctx.typedef_names(),
                        )?;
                        return self.in_fragment(&name, |cx| cx.stmt(&s, out));
                    }
                }
                self.expr(e)?;
                Ok(())
            }
            _ => {
                let v = self.expr(e)?;
                self.emit_value_stmt(v, out);
                Ok(())
            }
        }
    }

    fn emit_value_stmt(&mut self, v: JExpr, out: &mut Vec<String>) {
        if v.effect {
            out.push(format!("{};", v.text));
        }
    }

    fn emit_out(&mut self, r: Out, out: &mut Vec<String>) {
        match r {
            Out::Expr(j) => self.emit_value_stmt(j, out),
            Out::Stmts(lines) => out.extend(lines),
        }
    }

    // -------------------------------------------------------------- gotos

    fn plan_regions(&self, items: &[Stmt]) -> R<Vec<Region>> {
        let mut regions = Vec::new();
        for (li, it) in items.iter().enumerate() {
            for label in labels_of(it) {
                let users: Vec<usize> = items
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| contains_goto(s, label))
                    .map(|(i, _)| i)
                    .collect();
                if users.is_empty() {
                    continue;
                }
                let before = users.iter().all(|&u| u < li);
                let after = users.iter().all(|&u| u >= li);
                let region = if before {
                    Region {
                        start: users[0],
                        end: li,
                        label: label.to_string(),
                        kind: LabelKind::Fwd,
                    }
                } else if after {
                    Region {
                        start: li,
                        end: users[users.len() - 1] + 1,
                        label: label.to_string(),
                        kind: LabelKind::Back,
                    }
                } else {
                    return Err(TranslateError::RuleConflict {
                        first: RuleId::GotoFwd,
                        second: RuleId::GotoBack,
                        at: it.span,
                    });
                };
                regions.push(region);
            }
        }
        regions.sort_by(|a, b| a.start.cmp(&b.start).then(b.end.cmp(&a.end)));
        for (i, a) in regions.iter().enumerate() {
            for b in &regions[i + 1..] {
                let crosses = b.start < a.end && b.end > a.end;
                if crosses {
                    return Err(TranslateError::unsupported("crossing goto regions"));
                }
            }
        }
        Ok(regions)
    }

    pub(super) fn block_items(&mut self, items: &[Stmt], out: &mut Vec<String>) -> R<()> {
        let regions = self.plan_regions(items)?;
        let mut used = vec![false; regions.len()];
        self.emit_range(items, 0, items.len(), &regions, &mut used, out)
    }

    fn emit_range(
        &mut self,
        items: &[Stmt],
        lo: usize,
        hi: usize,
        regions: &[Region],
        used: &mut [bool],
        out: &mut Vec<String>,
    ) -> R<()> {
        let mut i = lo;
        let mut dead = false;
        while i < hi {
            let next = regions
                .iter()
                .enumerate()
                .find(|(k, r)| !used[*k] && r.start == i && r.end <= hi)
                .map(|(k, r)| (k, r.clone()));
            if let Some((k, r)) = next {
                used[k] = true;
                if dead && !is_label_like(&items[i]) {
                    i = r.end;
                    continue;
                }
                dead = !self.region(items, &r, regions, used, out)?;
                i = r.end;
                continue;
            }
            let it = &items[i];
            i += 1;
            if dead && !is_label_like(it) {
                continue;
            }
            self.stmt(it, out)?;
            dead = !can_complete(it, self.ctx);
        }
        Ok(())
    }

    /// Emits one goto region. Returns whether control can leave it normally.
    fn region(
        &mut self,
        items: &[Stmt],
        r: &Region,
        regions: &[Region],
        used: &mut [bool],
        out: &mut Vec<String>,
    ) -> R<bool> {
        // Declarations whose names are used after the region move out of it.
        for it in &items[r.start..r.end] {
            let StmtKind::Decl(d) = &it.kind else {
                continue;
            };
            let later = d.declarators.iter().any(|id| {
                id.declarator
                    .name()
                    .is_some_and(|n| items[r.end..].iter().any(|s| mentions(s, n)))
            });
            if later {
                self.hoist_declare(d, out)?;
            }
        }
        let java = self.fresh_label(&r.label);
        self.labels.push((r.label.clone(), java.clone(), r.kind));
        match r.kind {
            LabelKind::Fwd => out.push(format!("{java}: do {{")),
            LabelKind::Back => out.push(format!("{java}: while (true) {{")),
        }
        self.push();
        let res = self.with_target(Target::Region, |cx| {
            cx.emit_range(items, r.start, r.end, regions, used, out)
        });
        self.pop();
        self.labels.pop();
        res?;
        let completes = match r.kind {
            LabelKind::Fwd => {
                out.push("} while (false);".into());
                true
            }
            LabelKind::Back => {
                let last_completes = can_complete(&items[r.end - 1], self.ctx);
                if last_completes {
                    out.push("break;".into());
                }
                out.push("}".into());
                last_completes
            }
        };
        Ok(completes)
    }

    fn fresh_label(&mut self, label: &str) -> String {
        let base = super::super::names::java_identifier(label);
        let mut cand = base.clone();
        let mut k = 1;
        while self.labels.iter().any(|(_, j, _)| *j == cand) {
            cand = format!("{base}_{k}");
            k += 1;
        }
        cand
    }
}
