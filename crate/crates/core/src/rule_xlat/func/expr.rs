use crate::c_front::ast::{BinOp, Expr, ExprKind, PostfixOp, UnaryOp};
use crate::c_front::{parse_expression_fragment, parse_statement_fragment};

use super::super::consts;
use super::super::names::capitalize;
use super::super::types::{self, fn_iface, CType, JTy};
use super::super::{RuleId, TranslateError};
use super::*;

const U32_MASK: &str = "0xFFFFFFFFL";

fn java_prec(op: BinOp) -> u8 {
    match op {
        BinOp::Mul | BinOp::Div | BinOp::Rem => P_MUL,
        BinOp::Add | BinOp::Sub => P_ADD,
        BinOp::Shl | BinOp::Shr => P_SHIFT,
        BinOp::Lt | BinOp::Gt | BinOp::Le | BinOp::Ge => P_REL,
        BinOp::Eq | BinOp::Ne => P_EQ,
        BinOp::BitAnd => P_BAND,
        BinOp::BitXor => P_BXOR,
        BinOp::BitOr => P_BOR,
        BinOp::And => P_AND,
        BinOp::Or => P_OR,
    }
}

/// Java binary numeric promotion.
pub(super) fn promote(a: &JTy, b: &JTy) -> JTy {
    match a.numeric_rank().max(b.numeric_rank()) {
        5 => JTy::Double,
        4 => JTy::Float,
        3 => JTy::Long,
        _ => JTy::Int,
    }
}

fn unary_promote(a: &JTy) -> JTy {
    promote(a, &JTy::Int)
}

pub(super) fn java_char_literal(v: i64) -> String {
    let c = (v as u32) & 0xFFFF;
    match c {
        0 => "'\\0'".into(),
        0x0a => "'\\n'".into(),
        0x09 => "'\\t'".into(),
        0x0d => "'\\r'".into(),
        0x27 => "'\\''".into(),
        0x5c => "'\\\\'".into(),
        0x20..=0x7e => format!("'{}'", char::from_u32(c).unwrap_or('?')),
        _ => format!("(char) {c}"),
    }
}

pub(super) fn java_string_literal(bytes: &[u8]) -> String {
    let text = String::from_utf8_lossy(bytes);
    let mut s = String::from("\"");
    for ch in text.chars() {
        match ch {
            '"' => s.push_str("\\\""),
            '\\' => s.push_str("\\\\"),
            '\n' => s.push_str("\\n"),
            '\t' => s.push_str("\\t"),
            '\r' => s.push_str("\\r"),
            c if (c as u32) < 0x20 => s.push_str(&format!("\\{:03o}", c as u32)),
            c if (c as u32) < 0x7f => s.push(c),
            c => {
                let mut buf = [0u16; 2];
                for u in c.encode_utf16(&mut buf) {
                    s.push_str(&format!("\\u{u:04x}"));
                }
            }
        }
    }
    s.push('"');
    s
}

/// C type of an integer literal.
fn int_literal_type(value: u64, unsigned: bool, long: bool, radix: u32) -> CType {
    let fits_i32 = value <= i32::MAX as u64;
    let fits_u32 = value <= u32::MAX as u64;
    let fits_i64 = value <= i64::MAX as u64;
    match (unsigned, long) {
        (true, true) => CType::ULong,
        (true, false) if fits_u32 => CType::UInt,
        (true, false) => CType::ULong,
        (false, true) if fits_i64 => CType::Long,
        (false, true) => CType::ULong,
        (false, false) if fits_i32 => CType::Int,
        (false, false) if radix != 10 && fits_u32 => CType::UInt,
        (false, false) if fits_i64 => CType::Long,
        _ => CType::ULong,
    }
}

fn render_int(value: u64, radix: u32, jty: &JTy) -> String {
    let l = if *jty == JTy::Long { "L" } else { "" };
    if value > i64::MAX as u64 {
        return format!("0x{value:X}L");
    }
    match radix {
        16 => format!("0x{value:X}{l}"),
        8 if value != 0 => format!("0{value:o}{l}"),
        _ => format!("{value}{l}"),
    }
}

fn render_float(v: f64, single: bool) -> String {
    let mut t = format!("{v:?}");
    if !t.contains(['.', 'e', 'E']) {
        t.push_str(".0");
    }
    if single {
        t.push('f');
    }
    t
}

impl FnCx<'_> {
    pub(super) fn expr(&mut self, e: &Expr) -> R<JExpr> {
        self.expr_hint(e, None)
    }

    /// Translates `e` and converts it to `target` as an assignment would.
    pub(super) fn expr_to(&mut self, e: &Expr, target: &CType) -> R<JExpr> {
        let v = self.expr_hint(e, Some(target))?;
        self.coerce(v, target)
    }

    pub(super) fn expr_hint(&mut self, e: &Expr, hint: Option<&CType>) -> R<JExpr> {
        match &e.kind {
            ExprKind::IntLit {
                value,
                unsigned,
                long,
                radix,
            } => {
                let cty = int_literal_type(*value, *unsigned, *long, *radix);
                let jty = if cty == CType::Int {
                    JTy::Int
                } else {
                    JTy::Long
                };
                let mut j = JExpr::primary(render_int(*value, *radix, &jty), cty, jty);
                j.masked = *value <= u32::MAX as u64;
                j.konst = i64::try_from(*value).ok();
                Ok(j)
            }
            ExprKind::FloatLit { value, single } => {
                let (c, j) = if *single {
                    (CType::Float, JTy::Float)
                } else {
                    (CType::Double, JTy::Double)
                };
                Ok(JExpr::primary(render_float(*value, *single), c, j))
            }
            ExprKind::CharLit(v) => {
                let text = java_char_literal(*v);
                let prec = if text.starts_with('(') {
                    P_UNARY
                } else {
                    P_PRIMARY
                };
                let mut j = JExpr::new(text, prec, CType::Int, JTy::Char);
                j.konst = Some(*v);
                j.masked = *v >= 0;
                Ok(j)
            }
            ExprKind::StrLit(bytes) => Ok(JExpr::primary(
                java_string_literal(bytes),
                CType::Array(Box::new(CType::Char), Some(bytes.len() as u64 + 1)),
                JTy::String,
            )),
            ExprKind::Ident(name) => self.ident(name, e, hint),
            ExprKind::Paren(inner) => {
                let v = self.expr_hint(inner, hint)?;
                if v.prec == P_PRIMARY {
                    return Ok(v);
                }
                Ok(JExpr {
                    text: format!("({})", v.text),
                    prec: P_PRIMARY,
                    ..v
                })
            }
            ExprKind::Unary { op, operand } => self.unary(*op, operand, e, hint),
            ExprKind::Postfix { op, operand } => {
                match self.incdec(operand, false, *op == PostfixOp::Inc, false, e)? {
                    Out::Expr(j) => Ok(j),
                    Out::Stmts(_) => Err(TranslateError::unsupported("increment used as a value")),
                }
            }
            ExprKind::Binary { op, lhs, rhs } => self.binary(*op, lhs, rhs, e),
            ExprKind::Assign { op, lhs, rhs } => match self.assign(*op, lhs, rhs, false, e)? {
                Out::Expr(j) => Ok(j),
                Out::Stmts(_) => Err(TranslateError::unsupported("assignment used as a value")),
            },
            ExprKind::Ternary { cond, then, els } => self.ternary(cond, then, els, hint),
            ExprKind::Call { .. } => match self.call(e, hint, false)? {
                Out::Expr(j) => Ok(j),
                Out::Stmts(_) => Err(TranslateError::unsupported("call used as a value")),
            },
            ExprKind::Index { base, index } => self.index(base, index, e),
            ExprKind::Member { base, field, arrow } => self.member(base, field, *arrow, e),
            ExprKind::Cast { ty, expr } => self.cast(ty, expr, e),
            ExprKind::SizeofType(ty) => {
                let t = consts::type_name(ty, self.ctx)?;
                self.sizeof_value(&t, e)
            }
            ExprKind::SizeofExpr(inner) => {
                let t = self.peek_type(inner)?;
                self.sizeof_value(&t, e)
            }
            ExprKind::Comma { .. } => Err(TranslateError::unsupported(
                "comma operator outside a statement or for-update",
            )),
        }
    }

    fn sizeof_value(&mut self, t: &CType, e: &Expr) -> R<JExpr> {
        let (size, _) = types::size_align(t, self.ctx)?;
        self.fire(RuleId::Sizeof, e.span)?;
        let mut j = JExpr::primary(size.to_string(), CType::ULong, JTy::Int);
        j.masked = true;
        j.konst = Some(size as i64);
        Ok(j)
    }

    /// C type of `e` without keeping anything its translation records.
    pub(super) fn peek_type(&mut self, e: &Expr) -> R<CType> {
        if let Some(n) = e.as_ident() {
            if let Some(v) = self.lookup(n) {
                return Ok(v.cty.clone());
            }
        }
        self.dry(|cx| cx.expr(e)).map(|j| j.cty)
    }

    // ------------------------------------------------------------ names

    fn ident(&mut self, name: &str, e: &Expr, hint: Option<&CType>) -> R<JExpr> {
        if let Some(m) = self.ctx.macros.get(name) {
            if m.params.is_none() && !self.expanding.iter().any(|x| x == name) {
                return self.object_macro(name, e, hint);
            }
        }
        if let Some(v) = self.lookup(name).cloned() {
            return self.var_value(&v, name);
        }
        if let Some(g) = self.ctx.globals.get(name) {
            let mut j = JExpr::primary(g.java_name.clone(), g.cty.clone(), g.jty.clone());
            j.masked = true;
            return Ok(j);
        }
        if let Some((tag, value)) = self.ctx.enum_constants.get(name) {
            let class = self.ctx.class_name_of(tag)?;
            self.fire(RuleId::Enum, e.span)?;
            let mut j = JExpr::primary(
                format!("{class}.{}", java_identifier(name)),
                CType::Int,
                JTy::Int,
            );
            j.konst = Some(*value);
            j.masked = *value >= 0;
            return Ok(j);
        }
        if self.ctx.functions.contains_key(name) {
            return self.function_value(name, e, hint);
        }
        match name {
            "NULL" => Ok(JExpr::primary(
                "null",
                CType::Pointer(Box::new(CType::Void)),
                JTy::Null,
            )),
            "true" | "false" => Ok(JExpr::primary(name, CType::Int, JTy::Boolean)),
            _ => Err(TranslateError::UnresolvedSymbol {
                name: name.to_string(),
            }),
        }
    }

    pub(super) fn var_value(&mut self, v: &Var, name: &str) -> R<JExpr> {
        match &v.repr {
            Repr::Plain | Repr::OutParam | Repr::Boxed => {
                let mut j = JExpr::primary(v.java.clone(), v.cty.clone(), v.jty.clone());
                j.masked = true;
                Ok(j)
            }
            Repr::StringBuf => Ok(JExpr::primary(v.java.clone(), v.cty.clone(), JTy::String)),
            Repr::CharArray => Ok(JExpr::primary(v.java.clone(), v.cty.clone(), v.jty.clone())),
            Repr::PtrPair { .. } => Err(TranslateError::unsupported(format!(
                "pointer '{name}' with arithmetic used as a whole value"
            ))),
            Repr::Union { .. } => Err(TranslateError::unsupported(format!(
                "union '{name}' used as a whole value"
            ))),
        }
    }

    fn object_macro(&mut self, name: &str, e: &Expr, hint: Option<&CType>) -> R<JExpr> {
        let body = self.ctx.macros[name].body.clone();
        if body.trim().is_empty() {
            return Err(TranslateError::unsupported(format!(
                "empty macro {name} used as a value"
            )));
        }
        self.fire(RuleId::Macro, e.span)?;
        let parsed = parse_expression_fragment(&body, self.ctx.typedef_names())?;
        self.in_fragment(name, |cx| cx.expr_hint(&parsed, hint))
    }

    /// Expands a function-like macro call. In statement position the
    /// expansion is tried as a statement first.
    pub(super) fn macro_call(
        &mut self,
        name: &str,
        args: &[Expr],
        e: &Expr,
        hint: Option<&CType>,
        as_stmt: bool,
    ) -> R<Out> {
        let m = self.ctx.macros[name].clone();
        let params = m.params.clone().unwrap_or_default();
        if params.len() != args.len() {
            return Err(TranslateError::unsupported(format!(
                "macro {name} called with {} arguments, expects {}",
                args.len(),
                params.len()
            )));
        }
        self.fire(RuleId::Macro, e.span)?;
        let arg_text: Vec<String> = args.iter().map(crate::c_front::print::print_expr).collect();
        let text = crate::c_front::substitute_macro(&m.body, &params, &arg_text)?;
        if as_stmt {
            if let Ok(s) = parse_statement_fragment(&format!("{text};"), self.ctx.typedef_names()) {
                let mut lines = Vec::new();
                self.in_fragment(name, |cx| cx.stmt(&s, &mut lines))?;
                return Ok(Out::Stmts(lines));
            }
        }
        let parsed = parse_expression_fragment(&text, self.ctx.typedef_names())?;
        if as_stmt {
            let mut lines = Vec::new();
            self.in_fragment(name, |cx| cx.expr_stmt(&parsed, &mut lines))?;
            return Ok(Out::Stmts(lines));
        }
        self.in_fragment(name, |cx| cx.expr_hint(&parsed, hint))
            .map(Out::Expr)
    }

    /// An anonymous class wrapping a named function.
    fn function_value(&mut self, name: &str, e: &Expr, hint: Option<&CType>) -> R<JExpr> {
        let sig = self.ctx.functions[name].clone();
        let own = CType::Pointer(Box::new(CType::Function {
            ret: Box::new(sig.ret.clone()),
            params: sig.params.iter().map(|(_, t)| t.clone()).collect(),
            variadic: sig.variadic,
        }));
        let fty = match hint {
            Some(h) if h.is_function_pointer() => h.clone(),
            _ => own,
        };
        let iface = fn_iface(&fty)?;
        let (ret, params) = fty.function_type().expect("function pointer");
        let ret_j = self.jty(ret)?;
        let mut decl = Vec::new();
        let mut pass = Vec::new();
        for (i, p) in params.iter().enumerate() {
            decl.push(format!("{} a{i}", self.jty(p)?.render()));
            pass.push(format!("a{i}"));
        }
        let call = format!("{}({})", sig.java_name, pass.join(", "));
        let body = if ret_j == JTy::Void {
            format!("{call};")
        } else {
            format!("return {call};")
        };
        self.fire(RuleId::FnPtr, e.span)?;
        Ok(JExpr::primary(
            format!(
                "new {}() {{ public {} {}({}) {{ {body} }} }}",
                iface.qualified,
                ret_j.render(),
                iface.method,
                decl.join(", ")
            ),
            fty.clone(),
            JTy::Iface(iface),
        ))
    }

    // ------------------------------------------------------- conversions

    /// Forces an unsigned-int value into 0..2^32.
    pub(super) fn mask_u32(&mut self, v: JExpr) -> JExpr {
        if v.masked && (v.cty == CType::UInt || v.konst.is_some_and(|k| k >= 0)) {
            return v;
        }
        if v.konst.is_some_and(|k| (0..=u32::MAX as i64).contains(&k)) {
            return v;
        }
        self.note(RuleId::Unsigned);
        let mut j = JExpr::new(
            format!("{} & {U32_MASK}", v.at(P_BAND)),
            P_BAND,
            CType::UInt,
            JTy::Long,
        );
        j.masked = true;
        j
    }

    /// Boolean-typed Java values used as C ints.
    pub(super) fn bool_to_int(&mut self, v: JExpr) -> JExpr {
        if v.jty != JTy::Boolean {
            return v;
        }
        JExpr::new(
            format!("{} ? 1 : 0", v.at(P_OR)),
            P_TERN,
            CType::Int,
            JTy::Int,
        )
        .masked(true)
    }

    fn cast_text(v: &JExpr, jt: &JTy) -> String {
        format!("({}) {}", jt.render(), v.at(P_UNARY))
    }

    /// Converts `v` to C type `target` with assignment semantics.
    pub(super) fn coerce(&mut self, v: JExpr, target: &CType) -> R<JExpr> {
        self.convert(v, target, false)
    }

    /// Converts `v` to C type `target`. With `strict`, the Java static type
    /// of the result always matches `target`.
    pub(super) fn convert(&mut self, v: JExpr, target: &CType, strict: bool) -> R<JExpr> {
        if target.is_pointer_like()
            || target.is_record()
            || matches!(target, CType::Function { .. })
        {
            return self.convert_reference(v, target);
        }
        if *target == CType::Void {
            return Ok(v);
        }
        if *target == CType::Bool {
            let b = self.as_condition(v)?;
            return Ok(JExpr {
                cty: CType::Bool,
                ..b
            });
        }
        let mut v = self.bool_to_int(v);
        if matches!(v.jty, JTy::Boxed(_)) {
            let prim = match v.jty {
                JTy::Boxed("Integer") => JTy::Int,
                JTy::Boxed("Long") => JTy::Long,
                JTy::Boxed("Float") => JTy::Float,
                JTy::Boxed("Double") => JTy::Double,
                JTy::Boxed("Character") => JTy::Char,
                JTy::Boxed("Short") => JTy::Short,
                _ => JTy::Int,
            };
            v.jty = prim;
        }
        if !v.jty.is_numeric_primitive() {
            return Err(TranslateError::unsupported(format!(
                "conversion of {} to {target}",
                v.cty
            )));
        }
        if matches!(target, CType::Enum(_)) {
            self.note(RuleId::Enum);
        }
        let tj = self.jty(target)?;
        // Unsigned sources held unmasked must be reduced before widening.
        if v.cty == CType::UInt
            && !v.masked
            && !matches!(
                target,
                CType::Int
                    | CType::Enum(_)
                    | CType::Short
                    | CType::Char
                    | CType::SChar
                    | CType::UChar
                    | CType::UShort
                    | CType::UInt
            )
        {
            v = self.mask_u32(v);
        }
        let out = match target {
            CType::UInt => {
                let widened = if v.jty.is_numeric_primitive() && v.jty.numeric_rank() >= 4 {
                    JExpr::new(
                        Self::cast_text(&v, &JTy::Long),
                        P_UNARY,
                        v.cty.clone(),
                        JTy::Long,
                    )
                } else {
                    v
                };
                let m = self.mask_u32(widened);
                let text = if m.jty == JTy::Long || m.text.ends_with('L') {
                    m.text.clone()
                } else if let Some(k) = m.konst {
                    format!("{k}L")
                } else {
                    m.text.clone()
                };
                let mut j = JExpr {
                    text,
                    cty: CType::UInt,
                    ..m
                };
                j.jty = JTy::Long;
                if j.konst.is_none() && j.prec == P_PRIMARY && !j.text.ends_with('L') && strict {
                    j.text = format!("(long) {}", j.text);
                    j.prec = P_UNARY;
                }
                j
            }
            CType::UChar | CType::UShort => {
                let (mask, max) = if *target == CType::UChar {
                    ("0xFF", 0xFF)
                } else {
                    ("0xFFFF", 0xFFFF)
                };
                if v.konst.is_some_and(|k| (0..=max).contains(&k)) && v.jty != JTy::Long {
                    JExpr {
                        cty: target.clone(),
                        jty: JTy::Int,
                        ..v
                    }
                } else if v.cty == *target {
                    v
                } else {
                    self.note(RuleId::Unsigned);
                    let base = if v.jty.numeric_rank() >= 3 {
                        JExpr::new(
                            Self::cast_text(&v, &JTy::Int),
                            P_UNARY,
                            v.cty.clone(),
                            JTy::Int,
                        )
                    } else {
                        v
                    };
                    JExpr::new(
                        format!("{} & {mask}", base.at(P_BAND)),
                        P_BAND,
                        target.clone(),
                        JTy::Int,
                    )
                    .masked(true)
                }
            }
            _ => {
                let same = v.jty == tj;
                let widening = match (&v.jty, &tj) {
                    (JTy::Char, JTy::Short) | (JTy::Short, JTy::Char) => false,
                    (a, b) => a.numeric_rank() < b.numeric_rank(),
                };
                let konst_fits = v.konst.is_some()
                    && matches!(tj, JTy::Int | JTy::Long)
                    && v.jty != JTy::Char
                    && (tj == JTy::Long || v.konst.is_some_and(|k| i32::try_from(k).is_ok()));
                if same {
                    JExpr {
                        cty: target.clone(),
                        ..v
                    }
                } else if konst_fits && (v.jty == JTy::Int || v.jty == JTy::Long) {
                    let k = v.konst.unwrap_or(0);
                    let text = if tj == JTy::Long {
                        format!("{k}L")
                    } else {
                        k.to_string()
                    };
                    let prec = if k < 0 { P_UNARY } else { P_PRIMARY };
                    let mut j = JExpr::new(text, prec, target.clone(), tj.clone());
                    j.konst = Some(k);
                    j.masked = k >= 0;
                    j
                } else if widening && !strict {
                    JExpr {
                        cty: target.clone(),
                        jty: tj.clone(),
                        ..v
                    }
                } else if let (Some(k), JTy::Float | JTy::Double) = (v.konst, &tj) {
                    let text = if tj == JTy::Float {
                        format!("{k}.0f")
                    } else {
                        format!("{k}.0")
                    };
                    JExpr::new(
                        text,
                        if k < 0 { P_UNARY } else { P_PRIMARY },
                        target.clone(),
                        tj.clone(),
                    )
                } else {
                    JExpr::new(
                        Self::cast_text(&v, &tj),
                        P_UNARY,
                        target.clone(),
                        tj.clone(),
                    )
                }
            }
        };
        Ok(JExpr {
            cty: target.clone(),
            ..out
        })
    }

    fn convert_reference(&mut self, v: JExpr, target: &CType) -> R<JExpr> {
        if let CType::Struct(_) = target {
            if matches!(v.jty, JTy::Class(_)) {
                return Ok(JExpr {
                    cty: target.clone(),
                    ..v
                });
            }
            return Err(TranslateError::unsupported(format!(
                "conversion of {} to {target}",
                v.cty
            )));
        }
        if v.konst == Some(0) || v.jty == JTy::Null {
            return Ok(JExpr::primary("null", target.clone(), self.jty(target)?));
        }
        let tj = self.jty(target)?;
        if v.jty == tj {
            return Ok(JExpr {
                cty: target.clone(),
                ..v
            });
        }
        match (&v.jty, &tj) {
            (_, JTy::Object) if v.jty.is_reference() => {
                self.note(RuleId::VoidPtr);
                Ok(JExpr {
                    cty: target.clone(),
                    jty: JTy::Object,
                    ..v
                })
            }
            (JTy::Object, JTy::Class(_) | JTy::Array(_) | JTy::String) => {
                self.note(RuleId::VoidPtr);
                Ok(JExpr::new(
                    format!("({}) {}", tj.render(), v.at(P_PRIMARY)),
                    P_UNARY,
                    target.clone(),
                    tj,
                ))
            }
            (JTy::Array(inner), JTy::String) if **inner == JTy::Char => {
                self.note(RuleId::Str);
                Ok(JExpr::primary(
                    format!("CString.str({})", v.text),
                    target.clone(),
                    JTy::String,
                ))
            }
            (JTy::Iface(_), JTy::Iface(_)) => Ok(JExpr {
                cty: target.clone(),
                jty: tj,
                ..v
            }),
            _ => Err(TranslateError::unsupported(format!(
                "conversion of {} to {target}",
                v.cty
            ))),
        }
    }

    /// A Java boolean for a C condition.
    pub(super) fn boolean(&mut self, e: &Expr) -> R<JExpr> {
        if let Some(n) = e.as_ident() {
            if let Some(Var {
                repr: Repr::PtrPair { arr, .. },
                ..
            }) = self.lookup(n)
            {
                let arr = arr.clone();
                self.note(RuleId::Bool);
                return Ok(JExpr::new(
                    format!("{arr} != null"),
                    P_EQ,
                    CType::Int,
                    JTy::Boolean,
                ));
            }
        }
        let v = self.expr(e)?;
        self.as_condition(v)
    }

    pub(super) fn as_condition(&mut self, v: JExpr) -> R<JExpr> {
        if v.jty == JTy::Boolean {
            return Ok(v);
        }
        self.note(RuleId::Bool);
        if let Some(k) = v.konst {
            return Ok(JExpr::primary(
                if k != 0 { "true" } else { "false" },
                CType::Int,
                JTy::Boolean,
            ));
        }
        if v.jty.is_reference() && !matches!(v.jty, JTy::Boxed(_)) {
            return Ok(JExpr::new(
                format!("{} != null", v.at(P_REL)),
                P_EQ,
                CType::Int,
                JTy::Boolean,
            ));
        }
        let v = if v.cty == CType::UInt {
            self.mask_u32(v)
        } else {
            v
        };
        Ok(JExpr::new(
            format!("{} != 0", v.at(P_REL)),
            P_EQ,
            CType::Int,
            JTy::Boolean,
        ))
    }

    // ------------------------------------------------------------ unary

    fn unary(&mut self, op: UnaryOp, operand: &Expr, e: &Expr, hint: Option<&CType>) -> R<JExpr> {
        match op {
            UnaryOp::Neg => {
                let v = self.expr(operand)?;
                let v = self.bool_to_int(v);
                if !v.cty.is_arithmetic() {
                    return Err(TranslateError::unsupported(format!(
                        "negation of {}",
                        v.cty
                    )));
                }
                let inner = v.at(P_UNARY);
                let text = if inner.starts_with('-') || inner.starts_with('+') {
                    format!("-({})", v.text)
                } else {
                    format!("-{inner}")
                };
                let mut j = JExpr::new(text, P_UNARY, v.cty.promoted(), unary_promote(&v.jty));
                j.konst = v.konst.map(|k| -k);
                j.masked = false;
                if let Some(k) = j.konst {
                    if v.prec == P_PRIMARY && (v.jty == JTy::Int || v.jty == JTy::Long) {
                        j.masked = k >= 0;
                    }
                }
                Ok(j)
            }
            UnaryOp::Plus => {
                let v = self.expr(operand)?;
                let v = self.bool_to_int(v);
                Ok(JExpr {
                    cty: v.cty.promoted(),
                    ..v
                })
            }
            UnaryOp::Not => {
                let b = self.boolean(operand)?;
                if let Some(stripped) = negate_comparison(&b) {
                    return Ok(stripped);
                }
                Ok(JExpr::new(
                    format!("!{}", b.at(P_UNARY)),
                    P_UNARY,
                    CType::Int,
                    JTy::Boolean,
                ))
            }
            UnaryOp::BitNot => {
                let v = self.expr(operand)?;
                let v = self.bool_to_int(v);
                if !v.cty.is_integer() {
                    return Err(TranslateError::unsupported(format!("~ on {}", v.cty)));
                }
                let mut j = JExpr::new(
                    format!("~{}", v.at(P_UNARY)),
                    P_UNARY,
                    v.cty.promoted(),
                    unary_promote(&v.jty),
                );
                j.konst = v.konst.map(|k| !k);
                Ok(j)
            }
            UnaryOp::Deref => self.deref(operand, e),
            UnaryOp::AddrOf => self.addr_of(operand, e, hint),
            UnaryOp::PreInc | UnaryOp::PreDec => {
                match self.incdec(operand, true, op == UnaryOp::PreInc, false, e)? {
                    Out::Expr(j) => Ok(j),
                    Out::Stmts(_) => Err(TranslateError::unsupported("increment used as a value")),
                }
            }
        }
    }

    fn addr_of(&mut self, operand: &Expr, e: &Expr, hint: Option<&CType>) -> R<JExpr> {
        let inner = operand.unparen();
        if let ExprKind::Unary {
            op: UnaryOp::Deref,
            operand: x,
        } = &inner.kind
        {
            return self.expr_hint(x, hint);
        }
        if let Some(n) = inner.as_ident() {
            if self.lookup(n).is_none()
                && !self.ctx.globals.contains_key(n)
                && self.ctx.functions.contains_key(n)
            {
                return self.function_value(n, e, hint);
            }
        }
        if let Some((arr, idx, elem)) = self.ptr_parts(operand)? {
            if idx.konst == Some(0) {
                let jt = self.jty(&CType::Pointer(Box::new(elem.clone())))?;
                return Ok(JExpr::primary(arr, CType::Pointer(Box::new(elem)), jt));
            }
        }
        let v = self.expr(operand)?;
        match (&v.jty, hint) {
            (JTy::Class(_), _) => {
                self.fire(RuleId::Addr, e.span)?;
                Ok(JExpr {
                    cty: CType::Pointer(Box::new(v.cty.clone())),
                    ..v
                })
            }
            (_, Some(CType::Pointer(p))) if **p == CType::Void && v.jty.is_numeric_primitive() => {
                self.fire(RuleId::Addr, e.span)?;
                self.note(RuleId::VoidPtr);
                Ok(JExpr {
                    cty: CType::Pointer(Box::new(CType::Void)),
                    jty: JTy::Object,
                    ..v
                })
            }
            _ => Err(TranslateError::unsupported(format!(
                "address of {} outside a struct, out-parameter or void * argument",
                v.cty
            ))),
        }
    }

    // ---------------------------------------------------------- pointers

    fn is_pointerish(&mut self, e: &Expr) -> bool {
        match self.peek_type(e) {
            Ok(t) => t.is_pointer_like(),
            Err(_) => false,
        }
    }

    fn index_expr(&mut self, e: &Expr) -> R<JExpr> {
        let v = self.expr(e)?;
        let v = self.bool_to_int(v);
        if !v.cty.is_integer() {
            return Err(TranslateError::unsupported(format!(
                "array index of type {}",
                v.cty
            )));
        }
        if v.jty == JTy::Long {
            if v.cty == CType::UInt && !v.masked {
                let m = self.mask_u32(v);
                return Ok(JExpr::new(
                    format!("(int) {}", m.at(P_UNARY)),
                    P_UNARY,
                    CType::Int,
                    JTy::Int,
                ));
            }
            return Ok(JExpr::new(
                format!("(int) {}", v.at(P_UNARY)),
                P_UNARY,
                CType::Int,
                JTy::Int,
            ));
        }
        Ok(v)
    }

    fn offset(&mut self, idx: JExpr, k: JExpr, sub: bool) -> JExpr {
        if idx.konst == Some(0) && !sub {
            return k;
        }
        if k.konst == Some(0) {
            return idx;
        }
        let sym = if sub { "-" } else { "+" };
        JExpr::new(
            format!("{} {sym} {}", idx.at(P_ADD), k.at(P_ADD + 1)),
            P_ADD,
            CType::Int,
            JTy::Int,
        )
    }

    /// Decomposes a pointer expression into an array and an index.
    pub(super) fn ptr_parts(&mut self, e: &Expr) -> R<Option<(String, JExpr, CType)>> {
        let zero = || {
            let mut z = JExpr::primary("0", CType::Int, JTy::Int);
            z.konst = Some(0);
            z
        };
        let u = e.unparen();
        match &u.kind {
            ExprKind::Ident(n) => {
                if let Some(v) = self.lookup(n).cloned() {
                    let elem = match v.cty.pointee() {
                        Some(t) => t.clone(),
                        None => return Ok(None),
                    };
                    return Ok(match &v.repr {
                        Repr::PtrPair { idx, arr } => Some((
                            arr.clone(),
                            JExpr::primary(idx.clone(), CType::Int, JTy::Int),
                            elem,
                        )),
                        Repr::Plain | Repr::CharArray if matches!(v.jty, JTy::Array(_)) => {
                            Some((v.java.clone(), zero(), elem))
                        }
                        _ => None,
                    });
                }
                if self.ctx.macros.contains_key(n) {
                    return Ok(None);
                }
                if let Some(g) = self.ctx.globals.get(n) {
                    if let (JTy::Array(_), Some(elem)) = (&g.jty, g.cty.pointee()) {
                        return Ok(Some((g.java_name.clone(), zero(), elem.clone())));
                    }
                }
                Ok(None)
            }
            ExprKind::Binary {
                op: op @ (BinOp::Add | BinOp::Sub),
                lhs,
                rhs,
            } => {
                let (p, k) = if self.is_pointerish(lhs) {
                    (lhs, rhs)
                } else if *op == BinOp::Add && self.is_pointerish(rhs) {
                    (rhs, lhs)
                } else {
                    return Ok(None);
                };
                if self.is_pointerish(k) {
                    return Ok(None);
                }
                let Some((arr, idx, elem)) = self.ptr_parts(p)? else {
                    return Ok(None);
                };
                let kv = self.index_expr(k)?;
                self.fire(RuleId::Ptr, u.span)?;
                Ok(Some((arr, self.offset(idx, kv, *op == BinOp::Sub), elem)))
            }
            ExprKind::Postfix { operand, .. }
            | ExprKind::Unary {
                op: UnaryOp::PreInc | UnaryOp::PreDec,
                operand,
            } if operand.as_ident().is_some() => {
                let n = operand.as_ident().unwrap_or_default();
                let Some(Var {
                    repr: Repr::PtrPair { idx, arr },
                    cty,
                    ..
                }) = self.lookup(n).cloned()
                else {
                    return Ok(None);
                };
                let sym = if op_of(u) == Some(true) { "++" } else { "--" };
                let text = match &u.kind {
                    ExprKind::Postfix { .. } => format!("{idx}{sym}"),
                    _ => format!("{sym}{idx}"),
                };
                self.fire(RuleId::Ptr, u.span)?;
                Ok(Some((
                    arr,
                    JExpr::new(text, P_UNARY, CType::Int, JTy::Int),
                    cty.pointee().cloned().unwrap_or(CType::Int),
                )))
            }
            ExprKind::Unary {
                op: UnaryOp::AddrOf,
                operand,
            } => match &operand.unparen().kind {
                ExprKind::Index { base, index } => {
                    let Some((arr, idx, elem)) = self.ptr_parts(base)? else {
                        return Ok(None);
                    };
                    let kv = self.index_expr(index)?;
                    Ok(Some((arr, self.offset(idx, kv, false), elem)))
                }
                ExprKind::Unary {
                    op: UnaryOp::Deref,
                    operand: x,
                } => self.ptr_parts(x),
                _ => Ok(None),
            },
            ExprKind::Cast { ty, expr } => {
                let t = consts::type_name(ty, self.ctx)?;
                let inner_t = self.peek_type(expr)?;
                if t.pointee().is_some() && t.pointee() == inner_t.pointee() {
                    self.ptr_parts(expr)
                } else {
                    Ok(None)
                }
            }
            ExprKind::Member { .. } | ExprKind::Index { .. } => {
                let v = self.expr(u)?;
                match (&v.jty, v.cty.pointee()) {
                    (JTy::Array(_), Some(elem)) => Ok(Some((v.text.clone(), zero(), elem.clone()))),
                    _ => Ok(None),
                }
            }
            _ => Ok(None),
        }
    }

    fn element(&mut self, arr: String, idx: JExpr, elem: CType) -> R<JExpr> {
        let jt = self.jty(&elem)?;
        let mut j = JExpr::primary(format!("{arr}[{}]", idx.text), elem, jt);
        j.masked = true;
        Ok(j)
    }

    fn deref(&mut self, operand: &Expr, e: &Expr) -> R<JExpr> {
        let inner = operand.unparen();
        if let Some(n) = inner.as_ident() {
            if let Some(v) = self.lookup(n).cloned() {
                match &v.repr {
                    Repr::OutParam => {
                        self.fire(RuleId::OutParam, e.span)?;
                        let t = v.cty.pointee().cloned().unwrap_or(CType::Void);
                        return Ok(JExpr::primary(v.java.clone(), t, v.jty.clone()));
                    }
                    Repr::Boxed => {
                        self.fire(RuleId::VoidPtr, e.span)?;
                        let t = v.cty.pointee().cloned().unwrap_or(CType::Void);
                        return Ok(JExpr::primary(v.java.clone(), t, v.jty.clone()));
                    }
                    _ => {}
                }
            }
        }
        if let ExprKind::Unary {
            op: UnaryOp::AddrOf,
            operand: x,
        } = &inner.kind
        {
            return self.expr(x);
        }
        if let Some((arr, idx, elem)) = self.ptr_parts(operand)? {
            self.fire(RuleId::Ptr, e.span)?;
            return self.element(arr, idx, elem);
        }
        let v = self.expr(operand)?;
        let pointee = v
            .cty
            .pointee()
            .cloned()
            .ok_or_else(|| TranslateError::unsupported(format!("dereference of {}", v.cty)))?;
        match &v.jty {
            JTy::Class(_) | JTy::Iface(_) => Ok(JExpr {
                cty: if matches!(v.jty, JTy::Iface(_)) {
                    v.cty.clone()
                } else {
                    pointee
                },
                ..v
            }),
            JTy::String => {
                self.fire(RuleId::Str, e.span)?;
                Ok(JExpr::primary(
                    format!("{}.charAt(0)", v.at(P_PRIMARY)),
                    CType::Char,
                    JTy::Char,
                ))
            }
            JTy::Array(_) => {
                self.fire(RuleId::Ptr, e.span)?;
                self.element(
                    v.at(P_PRIMARY),
                    JExpr::primary("0", CType::Int, JTy::Int),
                    pointee,
                )
            }
            _ => Err(TranslateError::unsupported(format!(
                "dereference of {}",
                v.cty
            ))),
        }
    }

    fn index(&mut self, base: &Expr, index: &Expr, e: &Expr) -> R<JExpr> {
        let (base, index) = if !self.is_pointerish(base) && self.is_pointerish(index) {
            (index, base)
        } else {
            (base, index)
        };
        if let Some(n) = base.as_ident() {
            if let Some(v) = self.lookup(n).cloned() {
                if v.repr == Repr::StringBuf {
                    let i = self.index_expr(index)?;
                    self.fire(RuleId::Str, e.span)?;
                    return Ok(JExpr::primary(
                        format!("{}.charAt({})", v.java, i.text),
                        CType::Char,
                        JTy::Char,
                    ));
                }
                if let Repr::PtrPair { .. } = v.repr {
                    self.fire(RuleId::Ptr, e.span)?;
                }
            }
        }
        if let Some((arr, idx, elem)) = self.ptr_parts(base)? {
            let k = self.index_expr(index)?;
            let i = self.offset(idx, k, false);
            return self.element(arr, i, elem);
        }
        let v = self.expr(base)?;
        let i = self.index_expr(index)?;
        match &v.jty {
            JTy::String => {
                self.fire(RuleId::Str, e.span)?;
                Ok(JExpr::primary(
                    format!("{}.charAt({})", v.at(P_PRIMARY), i.text),
                    CType::Char,
                    JTy::Char,
                ))
            }
            JTy::Array(_) => {
                let elem = v.cty.pointee().cloned().unwrap_or(CType::Int);
                self.element(v.at(P_PRIMARY), i, elem)
            }
            _ => Err(TranslateError::unsupported(format!("indexing {}", v.cty))),
        }
    }

    // ----------------------------------------------------------- records

    pub(super) fn record_of(&self, cty: &CType) -> R<(String, super::super::RecordInfo)> {
        let tag = match cty {
            CType::Struct(t) | CType::Union(t) => t,
            CType::Pointer(p) => match p.as_ref() {
                CType::Struct(t) | CType::Union(t) => t,
                _ => {
                    return Err(TranslateError::unsupported(format!(
                        "member access on {cty}"
                    )))
                }
            },
            _ => {
                return Err(TranslateError::unsupported(format!(
                    "member access on {cty}"
                )))
            }
        };
        let rec = self
            .ctx
            .records
            .get(tag)
            .cloned()
            .ok_or_else(|| TranslateError::UnresolvedSymbol { name: tag.clone() })?;
        Ok((tag.clone(), rec))
    }

    fn member(&mut self, base: &Expr, field: &str, arrow: bool, e: &Expr) -> R<JExpr> {
        if !arrow {
            if let Some(n) = base.as_ident() {
                if let Some(Var {
                    repr: Repr::Union { bits, long },
                    cty,
                    ..
                }) = self.lookup(n).cloned()
                {
                    let (_, rec) = self.record_of(&cty)?;
                    let f = rec.field(field).cloned().ok_or_else(|| {
                        TranslateError::UnresolvedSymbol {
                            name: field.to_string(),
                        }
                    })?;
                    self.fire(RuleId::Union, e.span)?;
                    return self.union_read(&bits, long, &f.cty);
                }
            }
        }
        let v = self.expr(base)?;
        let (_, rec) = self.record_of(&v.cty)?;
        let f = rec
            .field(field)
            .cloned()
            .ok_or_else(|| TranslateError::UnresolvedSymbol {
                name: field.to_string(),
            })?;
        if f.bits.is_some() {
            self.fire(RuleId::Bitfield, e.span)?;
            return Ok(JExpr::primary(
                format!("{}.get{}()", v.at(P_PRIMARY), capitalize(&f.java_name)),
                CType::Int,
                JTy::Int,
            ));
        }
        let jt = self.jty(&f.cty)?;
        let mut j = JExpr::primary(format!("{}.{}", v.at(P_PRIMARY), f.java_name), f.cty, jt);
        j.masked = true;
        Ok(j)
    }

    pub(super) fn union_read(&mut self, bits: &str, long: bool, member: &CType) -> R<JExpr> {
        let (text, jt) = match (member, long) {
            (CType::Float, false) => (format!("Float.intBitsToFloat({bits})"), JTy::Float),
            (CType::Float, true) => (format!("Float.intBitsToFloat((int) {bits})"), JTy::Float),
            (CType::Double, _) => (format!("Double.longBitsToDouble({bits})"), JTy::Double),
            (CType::Int | CType::Enum(_), false) => (bits.to_string(), JTy::Int),
            (CType::Int | CType::Enum(_), true) => (format!("(int) {bits}"), JTy::Int),
            (CType::UInt, _) => (format!("{bits} & 0xFFFFFFFFL"), JTy::Long),
            (CType::Long | CType::ULong | CType::LongLong | CType::ULongLong, true) => {
                (bits.to_string(), JTy::Long)
            }
            (CType::Char | CType::SChar, _) => (format!("(char) ({bits} & 0xFF)"), JTy::Char),
            (CType::UChar, _) => (format!("(int) ({bits} & 0xFF)"), JTy::Int),
            (CType::Short, _) => (format!("(short) {bits}"), JTy::Short),
            (CType::UShort, _) => (format!("(int) ({bits} & 0xFFFF)"), JTy::Int),
            _ => {
                return Err(TranslateError::unsupported(format!(
                    "union member of type {member}"
                )))
            }
        };
        let prec = if text.contains(' ') && !text.ends_with(')') || text.starts_with('(') {
            P_UNARY.min(if text.contains(" & ") {
                P_BAND
            } else {
                P_UNARY
            })
        } else {
            P_PRIMARY
        };
        let mut j = JExpr::new(text, prec, member.clone(), jt);
        j.masked = true;
        Ok(j)
    }

    /// Java expression giving the new bits after storing `v` into a member.
    pub(super) fn union_write(
        &mut self,
        bits: &str,
        long: bool,
        member: &CType,
        v: JExpr,
    ) -> R<String> {
        Ok(match (member, long) {
            (CType::Float, false) => format!("Float.floatToRawIntBits({})", v.text),
            (CType::Float, true) => format!(
                "({bits} & ~0xFFFFFFFFL) | (Float.floatToRawIntBits({}) & 0xFFFFFFFFL)",
                v.text
            ),
            (CType::Double, _) => format!("Double.doubleToRawLongBits({})", v.text),
            (CType::Int | CType::Enum(_), false) => v.text,
            (CType::Int | CType::UInt | CType::Enum(_), true) => {
                format!("({bits} & ~0xFFFFFFFFL) | ({} & 0xFFFFFFFFL)", v.at(P_BAND))
            }
            (CType::UInt, false) => format!("(int) {}", v.at(P_UNARY)),
            (CType::Long | CType::ULong | CType::LongLong | CType::ULongLong, true) => v.text,
            (CType::Char | CType::SChar | CType::UChar, _) => {
                let l = if long { "L" } else { "" };
                format!("({bits} & ~0xFF{l}) | ({} & 0xFF)", v.at(P_BAND))
            }
            (CType::Short | CType::UShort, _) => {
                let l = if long { "L" } else { "" };
                format!("({bits} & ~0xFFFF{l}) | ({} & 0xFFFF)", v.at(P_BAND))
            }
            _ => {
                return Err(TranslateError::unsupported(format!(
                    "union member of type {member}"
                )))
            }
        })
    }

    // ---------------------------------------------------------- binary

    fn binary(&mut self, op: BinOp, lhs: &Expr, rhs: &Expr, e: &Expr) -> R<JExpr> {
        match op {
            BinOp::And | BinOp::Or => {
                let l = self.boolean(lhs)?;
                let r = self.boolean(rhs)?;
                let p = java_prec(op);
                Ok(JExpr::new(
                    format!("{} {} {}", l.at(p), op.symbol(), r.at(p + 1)),
                    p,
                    CType::Int,
                    JTy::Boolean,
                ))
            }
            _ if op.is_comparison() => self.compare(op, lhs, rhs),
            BinOp::Add | BinOp::Sub if self.is_pointerish(lhs) || self.is_pointerish(rhs) => {
                self.pointer_arith(op, lhs, rhs, e)
            }
            _ => {
                let l = self.expr(lhs)?;
                let r = self.expr(rhs)?;
                self.arith(op, l, r)
            }
        }
    }

    fn pointer_arith(&mut self, op: BinOp, lhs: &Expr, rhs: &Expr, e: &Expr) -> R<JExpr> {
        let lp = self.is_pointerish(lhs);
        let rp = self.is_pointerish(rhs);
        if op == BinOp::Sub && lp && rp {
            let a = self.ptr_parts(lhs)?;
            let b = self.ptr_parts(rhs)?;
            if let (Some((aa, ai, _)), Some((ba, bi, _))) = (a, b) {
                if aa == ba {
                    self.fire(RuleId::Ptr, e.span)?;
                    return Ok(JExpr::new(
                        format!("{} - {}", ai.at(P_ADD), bi.at(P_ADD + 1)),
                        P_ADD,
                        CType::Long,
                        JTy::Int,
                    ));
                }
            }
            return Err(TranslateError::unsupported(
                "difference of unrelated pointers",
            ));
        }
        // char * string plus an offset reads as a suffix.
        let (p, k) = if lp { (lhs, rhs) } else { (rhs, lhs) };
        let pv = self.dry(|cx| cx.expr(p));
        if let Ok(pv) = pv {
            if pv.jty == JTy::String && op == BinOp::Add {
                let pv = self.expr(p)?;
                let kv = self.index_expr(k)?;
                self.fire(RuleId::Str, e.span)?;
                return Ok(JExpr::primary(
                    format!("{}.substring({})", pv.at(P_PRIMARY), kv.text),
                    pv.cty.clone(),
                    JTy::String,
                ));
            }
        }
        if let Some((arr, idx, elem)) = self.ptr_parts(e)? {
            if idx.konst == Some(0) {
                let jt = self.jty(&CType::Pointer(Box::new(elem.clone())))?;
                return Ok(JExpr::primary(arr, CType::Pointer(Box::new(elem)), jt));
            }
        }
        Err(TranslateError::unsupported(
            "pointer arithmetic result used as a pointer value",
        ))
    }

    /// Arithmetic and bitwise operators on already-translated operands.
    pub(super) fn arith(&mut self, op: BinOp, l: JExpr, r: JExpr) -> R<JExpr> {
        let l = self.bool_to_int(l);
        let r = self.bool_to_int(r);
        let unbox = |j: JExpr| -> JExpr {
            if let JTy::Boxed(_) = j.jty {
                let jt = match j.jty.numeric_rank() {
                    5 => JTy::Double,
                    4 => JTy::Float,
                    3 => JTy::Long,
                    _ => JTy::Int,
                };
                JExpr { jty: jt, ..j }
            } else {
                j
            }
        };
        let (mut l, mut r) = (unbox(l), unbox(r));
        if !l.cty.is_arithmetic() || !r.cty.is_arithmetic() {
            return Err(TranslateError::unsupported(format!(
                "operator {} on {} and {}",
                op.symbol(),
                l.cty,
                r.cty
            )));
        }
        let shift = matches!(op, BinOp::Shl | BinOp::Shr);
        let ct = if shift {
            l.cty.promoted()
        } else {
            CType::common(&l.cty, &r.cty)
        };
        let mut masked = false;
        let mut sym = op.symbol().to_string();
        let mut call: Option<&str> = None;
        match &ct {
            CType::UInt => {
                self.note(RuleId::Unsigned);
                if matches!(op, BinOp::Div | BinOp::Rem | BinOp::Shr) {
                    l = self.mask_u32(l);
                }
                if matches!(op, BinOp::Div | BinOp::Rem) {
                    r = self.mask_u32(r);
                }
                let lm = l.masked && (l.cty == CType::UInt || l.konst.is_some_and(|k| k >= 0));
                let rm = r.masked && (r.cty == CType::UInt || r.konst.is_some_and(|k| k >= 0));
                masked = match op {
                    BinOp::Div | BinOp::Rem | BinOp::Shr => true,
                    BinOp::BitAnd => lm || rm,
                    BinOp::BitOr | BinOp::BitXor => lm && rm,
                    _ => false,
                };
                if l.jty != JTy::Long && r.jty != JTy::Long {
                    l = JExpr::new(
                        format!("(long) {}", l.at(P_UNARY)),
                        P_UNARY,
                        l.cty.clone(),
                        JTy::Long,
                    );
                }
            }
            CType::ULong => {
                let nonneg = |j: &JExpr| j.masked || j.konst.is_some_and(|k| k >= 0);
                let both = nonneg(&l) && (shift || nonneg(&r));
                match op {
                    BinOp::Div if !both => call = Some("Long.divideUnsigned"),
                    BinOp::Rem if !both => call = Some("Long.remainderUnsigned"),
                    BinOp::Shr if !nonneg(&l) => sym = ">>>".into(),
                    _ => {}
                }
                masked = both
                    && matches!(
                        op,
                        BinOp::Div
                            | BinOp::Rem
                            | BinOp::Shr
                            | BinOp::Add
                            | BinOp::Mul
                            | BinOp::BitAnd
                            | BinOp::BitOr
                            | BinOp::BitXor
                    );
            }
            _ => {
                if l.cty == CType::UInt {
                    l = self.mask_u32(l);
                }
                if r.cty == CType::UInt && !shift {
                    r = self.mask_u32(r);
                }
            }
        }
        let jt = if shift {
            unary_promote(&l.jty)
        } else {
            promote(&l.jty, &r.jty)
        };
        let konst = match (l.konst, r.konst) {
            (Some(a), Some(b)) if ct == CType::Int => match op {
                BinOp::Add => Some((a as i32).wrapping_add(b as i32) as i64),
                BinOp::Sub => Some((a as i32).wrapping_sub(b as i32) as i64),
                BinOp::Mul => Some((a as i32).wrapping_mul(b as i32) as i64),
                _ => None,
            },
            _ => None,
        };
        if let Some(f) = call {
            let mut j = JExpr::primary(format!("{f}({}, {})", l.text, r.text), ct, JTy::Long);
            j.masked = masked;
            return Ok(j);
        }
        let p = java_prec(op);
        let mut j = JExpr::new(format!("{} {sym} {}", l.at(p), r.at(p + 1)), p, ct, jt);
        j.masked = masked;
        j.konst = konst;
        Ok(j)
    }

    fn compare(&mut self, op: BinOp, lhs: &Expr, rhs: &Expr) -> R<JExpr> {
        let p = java_prec(op);
        let sym = op.symbol();
        let lp = self.is_pointerish(lhs) || is_null_literal(lhs);
        let rp = self.is_pointerish(rhs) || is_null_literal(rhs);
        if lp && rp {
            let pair = |cx: &mut Self, x: &Expr| -> R<Option<(String, JExpr)>> {
                if let Some(n) = x.as_ident() {
                    if let Some(Var {
                        repr: Repr::PtrPair { .. },
                        ..
                    }) = cx.lookup(n)
                    {
                        return Ok(cx.ptr_parts(x)?.map(|(a, i, _)| (a, i)));
                    }
                }
                Ok(None)
            };
            let a = pair(self, lhs)?;
            let b = pair(self, rhs)?;
            if a.is_some() || b.is_some() {
                let (a, b) = match (a, b) {
                    (Some(a), Some(b)) => (a, b),
                    (Some((arr, _)), None) | (None, Some((arr, _))) => {
                        let other = if is_null_literal(lhs) || is_null_literal(rhs) {
                            "null"
                        } else {
                            return Err(TranslateError::unsupported(
                                "comparison between an array pointer and another pointer",
                            ));
                        };
                        if !matches!(op, BinOp::Eq | BinOp::Ne) {
                            return Err(TranslateError::unsupported("ordering against NULL"));
                        }
                        return Ok(JExpr::new(
                            format!("{arr} {sym} {other}"),
                            p,
                            CType::Int,
                            JTy::Boolean,
                        ));
                    }
                    _ => unreachable!(),
                };
                if a.0 != b.0 {
                    return Err(TranslateError::unsupported(
                        "comparison of pointers into different arrays",
                    ));
                }
                self.note(RuleId::Ptr);
                return Ok(JExpr::new(
                    format!("{} {sym} {}", a.1.at(p), b.1.at(p + 1)),
                    p,
                    CType::Int,
                    JTy::Boolean,
                ));
            }
            let l = self.expr(lhs)?;
            let r = self.expr(rhs)?;
            if !matches!(op, BinOp::Eq | BinOp::Ne) {
                return Err(TranslateError::unsupported(
                    "ordering comparison of references",
                ));
            }
            let lt = if l.konst == Some(0) {
                "null".to_string()
            } else {
                l.at(p)
            };
            let rt = if r.konst == Some(0) {
                "null".to_string()
            } else {
                r.at(p + 1)
            };
            return Ok(JExpr::new(
                format!("{lt} {sym} {rt}"),
                p,
                CType::Int,
                JTy::Boolean,
            ));
        }
        let l = self.expr(lhs)?;
        let r = self.expr(rhs)?;
        if l.jty == JTy::Boolean && r.jty == JTy::Boolean && matches!(op, BinOp::Eq | BinOp::Ne) {
            return Ok(JExpr::new(
                format!("{} {sym} {}", l.at(p), r.at(p + 1)),
                p,
                CType::Int,
                JTy::Boolean,
            ));
        }
        let mut l = self.bool_to_int(l);
        let mut r = self.bool_to_int(r);
        if !l.cty.is_arithmetic() || !r.cty.is_arithmetic() {
            return Err(TranslateError::unsupported(format!(
                "comparison of {} and {}",
                l.cty, r.cty
            )));
        }
        let ct = CType::common(&l.cty, &r.cty);
        match ct {
            CType::UInt => {
                l = self.mask_u32(l);
                r = self.mask_u32(r);
            }
            CType::ULong => {
                let nonneg = |j: &JExpr| j.masked || j.konst.is_some_and(|k| k >= 0);
                if !(nonneg(&l) && nonneg(&r)) {
                    return Ok(JExpr::new(
                        format!("Long.compareUnsigned({}, {}) {sym} 0", l.text, r.text),
                        p,
                        CType::Int,
                        JTy::Boolean,
                    ));
                }
            }
            _ => {
                if l.cty == CType::UInt {
                    l = self.mask_u32(l);
                }
                if r.cty == CType::UInt {
                    r = self.mask_u32(r);
                }
            }
        }
        Ok(JExpr::new(
            format!("{} {sym} {}", l.at(p), r.at(p + 1)),
            p,
            CType::Int,
            JTy::Boolean,
        ))
    }

    fn ternary(&mut self, cond: &Expr, then: &Expr, els: &Expr, hint: Option<&CType>) -> R<JExpr> {
        let c = self.boolean(cond)?;
        let t = self.expr_hint(then, hint)?;
        let f = self.expr_hint(els, hint)?;
        let (t, f, cty, jty) = if t.jty == JTy::Boolean && f.jty == JTy::Boolean {
            (t, f, CType::Int, JTy::Boolean)
        } else if t.cty.is_arithmetic() && f.cty.is_arithmetic()
            || t.jty == JTy::Boolean
            || f.jty == JTy::Boolean
        {
            let t = self.bool_to_int(t);
            let f = self.bool_to_int(f);
            let ct = CType::common(&t.cty, &f.cty);
            let jt = self.jty(&ct)?;
            let t = self.convert(t, &ct, true)?;
            let f = self.convert(f, &ct, true)?;
            let _ = &jt;
            (t, f, ct, jt)
        } else if t.jty == JTy::Null {
            let jt = f.jty.clone();
            (t, f.clone(), f.cty.clone(), jt)
        } else if f.jty == JTy::Null || t.jty == f.jty {
            let jt = t.jty.clone();
            (t.clone(), f, t.cty.clone(), jt)
        } else {
            return Err(TranslateError::unsupported(format!(
                "conditional with arms {} and {}",
                t.cty, f.cty
            )));
        };
        let masked = t.masked && f.masked;
        let mut j = JExpr::new(
            format!("{} ? {} : {}", c.at(P_OR), t.at(P_TERN + 1), f.at(P_TERN)),
            P_TERN,
            cty,
            jty,
        );
        j.masked = masked;
        Ok(j)
    }

    fn cast(&mut self, ty: &crate::c_front::ast::TypeName, inner: &Expr, e: &Expr) -> R<JExpr> {
        let t = consts::type_name(ty, self.ctx)?;
        if t == CType::Void {
            return Err(TranslateError::unsupported("void cast used as a value"));
        }
        if t.is_arithmetic() {
            let v = self.expr(inner)?;
            if v.cty.is_pointer_like() && v.jty != JTy::Boolean {
                return Err(TranslateError::unsupported(format!(
                    "cast from pointer {} to {t}",
                    v.cty
                )));
            }
            if matches!(v.jty, JTy::Boxed(_)) {
                let prim = self.jty(&v.cty)?;
                let v = JExpr { jty: prim, ..v };
                return self.convert(v, &t, true);
            }
            return self.convert(v, &t, true);
        }
        if let CType::Pointer(pointee) = &t {
            if let ExprKind::Call { callee, args } = &inner.unparen().kind {
                if let Some(n @ ("malloc" | "calloc")) = callee.as_ident() {
                    if !self.ctx.functions.contains_key(n) {
                        return self.alloc(n, pointee, args, e);
                    }
                }
            }
            let v = self.expr_hint(inner, Some(&t))?;
            if v.konst == Some(0) {
                return Ok(JExpr::primary("null", t.clone(), self.jty(&t)?));
            }
            if v.jty == JTy::Object {
                let tj = self.jty(&t)?;
                if tj == JTy::Object {
                    return Ok(JExpr { cty: t, ..v });
                }
                self.fire(RuleId::VoidPtr, e.span)?;
                return Ok(JExpr::new(
                    format!("({}) {}", tj.render(), v.at(P_PRIMARY)),
                    P_UNARY,
                    t,
                    tj,
                ));
            }
            let tj = self.jty(&t)?;
            if tj == JTy::Object && v.jty.is_reference() {
                self.fire(RuleId::VoidPtr, e.span)?;
                return Ok(JExpr {
                    cty: t,
                    jty: JTy::Object,
                    ..v
                });
            }
            if tj == v.jty {
                return Ok(JExpr { cty: t, ..v });
            }
            return Err(TranslateError::unsupported(format!(
                "cast from {} to {t}",
                v.cty
            )));
        }
        Err(TranslateError::unsupported(format!("cast to {t}")))
    }

    /// `malloc`/`calloc` with a known element type.
    pub(super) fn alloc(&mut self, func: &str, elem: &CType, args: &[Expr], e: &Expr) -> R<JExpr> {
        let (esize, _) = types::size_align(elem, self.ctx)
            .map_err(|_| TranslateError::unsupported(format!("allocation of {elem}")))?;
        let count: JExpr = if func == "calloc" {
            if args.len() != 2 {
                return Err(TranslateError::unsupported("calloc arity"));
            }
            self.index_expr(&args[0])?
        } else {
            if args.len() != 1 {
                return Err(TranslateError::unsupported("malloc arity"));
            }
            let a = args[0].unparen();
            let is_sizeof = |x: &Expr| {
                matches!(
                    x.unparen().kind,
                    ExprKind::SizeofType(_) | ExprKind::SizeofExpr(_)
                )
            };
            match &a.kind {
                _ if is_sizeof(a) => {
                    let mut one = JExpr::primary("1", CType::Int, JTy::Int);
                    one.konst = Some(1);
                    one
                }
                ExprKind::Binary {
                    op: BinOp::Mul,
                    lhs,
                    rhs,
                } if is_sizeof(rhs) => self.index_expr(lhs)?,
                ExprKind::Binary {
                    op: BinOp::Mul,
                    lhs,
                    rhs,
                } if is_sizeof(lhs) => self.index_expr(rhs)?,
                _ => match consts::eval(a, self.ctx) {
                    Ok(n) if esize > 0 && (n as u64).is_multiple_of(esize) => {
                        let c = n as u64 / esize;
                        let mut j = JExpr::primary(c.to_string(), CType::Int, JTy::Int);
                        j.konst = Some(c as i64);
                        j
                    }
                    _ => {
                        return Err(TranslateError::unsupported(
                            "malloc size not expressible as a count of elements",
                        ))
                    }
                },
            }
        };
        self.fire(RuleId::Mem, e.span)?;
        let ptr = CType::Pointer(Box::new(elem.clone()));
        match elem {
            CType::Struct(name) => {
                if count.konst != Some(1) {
                    return Err(TranslateError::unsupported(
                        "allocation of an array of structs",
                    ));
                }
                let c = self.ctx.class_name_of(name)?;
                Ok(JExpr::primary(format!("new {c}()"), ptr, JTy::Class(c)).effect())
            }
            t if t.is_arithmetic() && !t.is_char() => {
                let jt = self.jty(t)?;
                Ok(JExpr::primary(
                    format!("new {}[{}]", jt.render(), count.text),
                    ptr,
                    JTy::Array(Box::new(jt)),
                )
                .effect())
            }
            _ => Err(TranslateError::unsupported(format!("allocation of {elem}"))),
        }
    }

    // ------------------------------------------------------- assignment

    pub(super) fn lvalue(&mut self, e: &Expr) -> R<LValue> {
        let u = e.unparen();
        match &u.kind {
            ExprKind::Ident(n) => {
                if let Some(v) = self.lookup(n).cloned() {
                    return Ok(match &v.repr {
                        Repr::PtrPair { idx, arr } => LValue::PtrPair {
                            idx: idx.clone(),
                            arr: arr.clone(),
                        },
                        Repr::Union { bits, .. } => LValue::UnionWhole { bits: bits.clone() },
                        Repr::StringBuf | Repr::CharArray => {
                            return Err(TranslateError::unsupported("assignment to an array"))
                        }
                        Repr::Boxed => {
                            return Err(TranslateError::unsupported(
                                "reassignment of a pointer recovered from void *",
                            ))
                        }
                        _ => LValue::Plain {
                            text: v.java.clone(),
                            cty: v.cty.clone(),
                            jty: v.jty.clone(),
                            pure: true,
                        },
                    });
                }
                if let Some(g) = self.ctx.globals.get(n) {
                    if g.is_const {
                        return Err(TranslateError::unsupported("assignment to a const global"));
                    }
                    return Ok(LValue::Plain {
                        text: g.java_name.clone(),
                        cty: g.cty.clone(),
                        jty: g.jty.clone(),
                        pure: true,
                    });
                }
                Err(TranslateError::UnresolvedSymbol { name: n.clone() })
            }
            ExprKind::Unary {
                op: UnaryOp::Deref,
                operand,
            } => {
                if let Some(n) = operand.as_ident() {
                    if let Some(Var {
                        repr: Repr::Boxed, ..
                    }) = self.lookup(n)
                    {
                        return Err(TranslateError::unsupported(
                            "write through a pointer recovered from void *",
                        ));
                    }
                }
                let v = self.expr(u)?;
                if let CType::Struct(_) = v.cty {
                    return Err(TranslateError::unsupported(
                        "struct assignment through a pointer",
                    ));
                }
                if v.jty == JTy::Char && v.text.contains(".charAt(") {
                    return Err(TranslateError::unsupported(
                        "write into a string literal or char *",
                    ));
                }
                Ok(LValue::Plain {
                    text: v.text,
                    cty: v.cty,
                    jty: v.jty,
                    pure: is_pure(operand),
                })
            }
            ExprKind::Index { base, index } => {
                let v = self.expr(u)?;
                if v.text.contains(".charAt(") {
                    return Err(TranslateError::unsupported("write into a string value"));
                }
                Ok(LValue::Plain {
                    text: v.text,
                    cty: v.cty,
                    jty: v.jty,
                    pure: is_pure(base) && is_pure(index),
                })
            }
            ExprKind::Member { base, field, arrow } => {
                if !*arrow {
                    if let Some(n) = base.as_ident() {
                        if let Some(Var {
                            repr: Repr::Union { bits, long },
                            cty,
                            ..
                        }) = self.lookup(n).cloned()
                        {
                            let (_, rec) = self.record_of(&cty)?;
                            let f = rec.field(field).cloned().ok_or_else(|| {
                                TranslateError::UnresolvedSymbol {
                                    name: field.clone(),
                                }
                            })?;
                            self.fire(RuleId::Union, u.span)?;
                            return Ok(LValue::Union {
                                bits,
                                long,
                                member: f.cty,
                            });
                        }
                    }
                }
                let b = self.expr(base)?;
                let (_, rec) = self.record_of(&b.cty)?;
                let f =
                    rec.field(field)
                        .cloned()
                        .ok_or_else(|| TranslateError::UnresolvedSymbol {
                            name: field.clone(),
                        })?;
                if f.bits.is_some() {
                    self.fire(RuleId::Bitfield, u.span)?;
                    return Ok(LValue::Bitfield {
                        obj: b.at(P_PRIMARY),
                        cap: capitalize(&f.java_name),
                        pure: is_pure(base),
                    });
                }
                let jt = self.jty(&f.cty)?;
                Ok(LValue::Plain {
                    text: format!("{}.{}", b.at(P_PRIMARY), f.java_name),
                    cty: f.cty,
                    jty: jt,
                    pure: is_pure(base),
                })
            }
            _ => Err(TranslateError::unsupported("assignment target")),
        }
    }

    /// `rhs` converted for storage into `target`, copying struct values.
    pub(super) fn store_value(&mut self, rhs: &Expr, target: &CType) -> R<JExpr> {
        let v = self.expr_hint(rhs, Some(target))?;
        if let CType::Struct(_) = target {
            let fresh =
                matches!(rhs.unparen().kind, ExprKind::Call { .. }) || v.text.starts_with("new ");
            if !fresh {
                let c = v.jty.render();
                self.fire(RuleId::Copy, rhs.span)?;
                return Ok(
                    JExpr::primary(format!("new {c}({})", v.text), target.clone(), v.jty).effect(),
                );
            }
        }
        if matches!(target, CType::Enum(_)) {
            self.note(RuleId::Enum);
        }
        self.coerce(v, target)
    }

    pub(super) fn assign(
        &mut self,
        op: Option<BinOp>,
        lhs: &Expr,
        rhs: &Expr,
        as_stmt: bool,
        e: &Expr,
    ) -> R<Out> {
        let lv = self.lvalue(lhs)?;
        match lv {
            LValue::Plain {
                text,
                cty,
                jty,
                pure,
            } => {
                let Some(bop) = op else {
                    let v = self.store_value(rhs, &cty)?;
                    let mut j =
                        JExpr::new(format!("{text} = {}", v.at(P_ASSIGN)), P_ASSIGN, cty, jty);
                    j.masked = true;
                    return Ok(Out::Expr(j.effect()));
                };
                if cty.is_pointer_like() {
                    return Err(TranslateError::unsupported(
                        "compound assignment to a pointer without arithmetic tracking",
                    ));
                }
                let rv = self.expr(rhs)?;
                let rv = self.bool_to_int(rv);
                let unsigned_op = cty.store_mask().is_some()
                    || matches!(CType::common(&cty, &rv.cty), CType::UInt | CType::ULong)
                    || cty == CType::Bool;
                if !unsigned_op && rv.cty.is_arithmetic() && cty.is_arithmetic() {
                    if matches!(cty, CType::Enum(_)) {
                        self.note(RuleId::Enum);
                    }
                    let j = JExpr::new(
                        format!("{text} {}= {}", bop.symbol(), rv.at(P_ASSIGN)),
                        P_ASSIGN,
                        cty,
                        jty,
                    );
                    return Ok(Out::Expr(j.effect()));
                }
                if !pure {
                    return Err(TranslateError::unsupported(
                        "compound assignment to an unsigned lvalue with side effects",
                    ));
                }
                let mut cur = JExpr::primary(text.clone(), cty.clone(), jty.clone());
                cur.masked = true;
                let res = self.arith(bop, cur, rv)?;
                let v = self.coerce(res, &cty)?;
                let mut j = JExpr::new(format!("{text} = {}", v.at(P_ASSIGN)), P_ASSIGN, cty, jty);
                j.masked = true;
                Ok(Out::Expr(j.effect()))
            }
            LValue::PtrPair { idx, arr } => {
                self.fire(RuleId::Ptr, e.span)?;
                match op {
                    Some(BinOp::Add | BinOp::Sub) => {
                        let k = self.index_expr(rhs)?;
                        let sym = if op == Some(BinOp::Add) { "+" } else { "-" };
                        Ok(Out::Expr(
                            JExpr::new(
                                format!("{idx} {sym}= {}", k.at(P_ASSIGN)),
                                P_ASSIGN,
                                CType::Int,
                                JTy::Int,
                            )
                            .effect(),
                        ))
                    }
                    Some(_) => Err(TranslateError::unsupported(
                        "compound assignment on a pointer",
                    )),
                    None => {
                        if !as_stmt {
                            return Err(TranslateError::unsupported(
                                "pointer assignment used as a value",
                            ));
                        }
                        if is_null_literal(rhs) {
                            return Ok(Out::Stmts(vec![
                                format!("{arr} = null;"),
                                format!("{idx} = 0;"),
                            ]));
                        }
                        if let Some((a, i, _)) = self.ptr_parts(rhs)? {
                            if a == arr {
                                return Ok(Out::Stmts(vec![format!("{idx} = {};", i.text)]));
                            }
                            return Ok(Out::Stmts(vec![
                                format!("{idx} = {};", i.text),
                                format!("{arr} = {a};"),
                            ]));
                        }
                        let v = self.expr_hint(rhs, None)?;
                        if matches!(v.jty, JTy::Array(_)) {
                            return Ok(Out::Stmts(vec![
                                format!("{idx} = 0;"),
                                format!("{arr} = {};", v.text),
                            ]));
                        }
                        Err(TranslateError::unsupported(
                            "pointer assignment from this expression",
                        ))
                    }
                }
            }
            LValue::Bitfield { obj, cap, pure } => {
                if !as_stmt {
                    return Err(TranslateError::unsupported(
                        "bitfield assignment used as a value",
                    ));
                }
                let v = match op {
                    None => self.expr_to(rhs, &CType::Int)?,
                    Some(bop) => {
                        if !pure {
                            return Err(TranslateError::unsupported(
                                "compound bitfield assignment with side effects",
                            ));
                        }
                        let cur = JExpr::primary(format!("{obj}.get{cap}()"), CType::Int, JTy::Int);
                        let rv = self.expr(rhs)?;
                        let res = self.arith(bop, cur, rv)?;
                        self.coerce(res, &CType::Int)?
                    }
                };
                Ok(Out::Stmts(vec![format!("{obj}.set{cap}({});", v.text)]))
            }
            LValue::Union { bits, long, member } => {
                if !as_stmt {
                    return Err(TranslateError::unsupported(
                        "union member assignment used as a value",
                    ));
                }
                let v = match op {
                    None => self.expr_to(rhs, &member)?,
                    Some(bop) => {
                        let cur = self.union_read(&bits, long, &member)?;
                        let rv = self.expr(rhs)?;
                        let res = self.arith(bop, cur, rv)?;
                        self.coerce(res, &member)?
                    }
                };
                let enc = self.union_write(&bits, long, &member, v)?;
                Ok(Out::Stmts(vec![format!("{bits} = {enc};")]))
            }
            LValue::UnionWhole { bits } => {
                if op.is_some() || !as_stmt {
                    return Err(TranslateError::unsupported("union assignment form"));
                }
                let Some(n) = rhs.as_ident() else {
                    return Err(TranslateError::unsupported(
                        "union assigned from an expression",
                    ));
                };
                let Some(Var {
                    repr: Repr::Union { bits: rb, .. },
                    ..
                }) = self.lookup(n).cloned()
                else {
                    return Err(TranslateError::unsupported(
                        "union assigned from a non-union",
                    ));
                };
                self.fire(RuleId::Union, e.span)?;
                Ok(Out::Stmts(vec![format!("{bits} = {rb};")]))
            }
        }
    }

    pub(super) fn incdec(
        &mut self,
        operand: &Expr,
        pre: bool,
        inc: bool,
        as_stmt: bool,
        e: &Expr,
    ) -> R<Out> {
        let sym = if inc { "++" } else { "--" };
        let lv = self.lvalue(operand)?;
        match lv {
            LValue::Plain {
                text,
                cty,
                jty,
                pure,
            } => {
                if cty.is_pointer_like() || cty == CType::Bool {
                    return Err(TranslateError::unsupported(format!("{sym} on {cty}")));
                }
                if let Some(mask) = cty.store_mask() {
                    if !pure {
                        return Err(TranslateError::unsupported(format!(
                            "{sym} on an unsigned lvalue with side effects"
                        )));
                    }
                    if !pre && !as_stmt {
                        return Err(TranslateError::unsupported(format!(
                            "postfix {sym} on unsigned used as a value"
                        )));
                    }
                    self.fire(RuleId::Unsigned, e.span)?;
                    let op = if inc { "+" } else { "-" };
                    let mut j = JExpr::new(
                        format!("{text} = ({text} {op} 1) & {mask}"),
                        P_ASSIGN,
                        cty,
                        jty,
                    );
                    j.masked = true;
                    return Ok(Out::Expr(j.effect()));
                }
                if matches!(cty, CType::Enum(_)) {
                    self.note(RuleId::Enum);
                }
                let (t, p) = if pre {
                    (format!("{sym}{text}"), P_UNARY)
                } else {
                    (format!("{text}{sym}"), P_PRIMARY)
                };
                Ok(Out::Expr(JExpr::new(t, p, cty, jty).effect()))
            }
            LValue::PtrPair { idx, .. } => {
                if !as_stmt {
                    return Err(TranslateError::unsupported(
                        "pointer increment used as a value",
                    ));
                }
                self.fire(RuleId::Ptr, e.span)?;
                Ok(Out::Expr(
                    JExpr::primary(format!("{idx}{sym}"), CType::Int, JTy::Int).effect(),
                ))
            }
            LValue::Bitfield { obj, cap, pure } => {
                if !as_stmt || !pure {
                    return Err(TranslateError::unsupported(format!(
                        "{sym} on a bitfield in this position"
                    )));
                }
                let op = if inc { "+" } else { "-" };
                Ok(Out::Stmts(vec![format!(
                    "{obj}.set{cap}({obj}.get{cap}() {op} 1);"
                )]))
            }
            _ => Err(TranslateError::unsupported(format!("{sym} on a union"))),
        }
    }
}

/// For `!(a < b)` style negation of a comparison, nothing fancy: only
/// `x != 0` and `x != null` produced by boolean conversion are flipped.
fn negate_comparison(b: &JExpr) -> Option<JExpr> {
    for (from, to) in [(" != 0", " == 0"), (" != null", " == null")] {
        if b.prec == P_EQ && b.text.ends_with(from) && b.text.matches(" != ").count() == 1 {
            let head = &b.text[..b.text.len() - from.len()];
            return Some(JExpr::new(
                format!("{head}{to}"),
                P_EQ,
                CType::Int,
                JTy::Boolean,
            ));
        }
    }
    None
}

fn op_of(e: &Expr) -> Option<bool> {
    match &e.kind {
        ExprKind::Postfix { op, .. } => Some(*op == PostfixOp::Inc),
        ExprKind::Unary {
            op: UnaryOp::PreInc,
            ..
        } => Some(true),
        ExprKind::Unary {
            op: UnaryOp::PreDec,
            ..
        } => Some(false),
        _ => None,
    }
}

pub(super) fn is_null_literal(e: &Expr) -> bool {
    let u = e.unparen();
    match &u.kind {
        ExprKind::Ident(n) => n == "NULL",
        ExprKind::IntLit { value: 0, .. } => true,
        ExprKind::Cast { expr, .. } => is_null_literal(expr),
        _ => false,
    }
}

#[derive(Debug, Clone)]
pub(super) enum LValue {
    Plain {
        text: String,
        cty: CType,
        jty: JTy,
        pure: bool,
    },
    PtrPair {
        idx: String,
        arr: String,
    },
    Bitfield {
        obj: String,
        cap: String,
        pure: bool,
    },
    Union {
        bits: String,
        long: bool,
        member: CType,
    },
    UnionWhole {
        bits: String,
    },
}
