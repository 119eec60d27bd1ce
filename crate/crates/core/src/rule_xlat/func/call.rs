use crate::c_front::ast::{Expr, ExprKind, UnaryOp};

use super::super::printf::{parse_format, Piece};
use super::super::types::{CType, JTy};
use super::super::{RuleId, TranslateError};
use super::*;

const LIBRARY: &[&str] = &[
    "printf", "puts", "putchar", "strcpy", "strcat", "strlen", "malloc", "calloc", "free", "abs",
    "exit",
];

impl FnCx<'_> {
    pub(super) fn call(&mut self, e: &Expr, hint: Option<&CType>, as_stmt: bool) -> R<Out> {
        let ExprKind::Call { callee, args } = &e.kind else {
            unreachable!("call on non-call expression");
        };
        if let Some(name) = callee.as_ident() {
            if let Some(m) = self.ctx.macros.get(name) {
                if m.params.is_some() && !self.expanding.iter().any(|x| x == name) {
                    return self.macro_call(name, args, e, hint, as_stmt);
                }
            }
            if let Some(v) = self.lookup(name).cloned() {
                return self.pointer_call(&v, args, e).map(Out::Expr);
            }
            if let Some(g) = self.ctx.globals.get(name) {
                let v = Var {
                    java: g.java_name.clone(),
                    cty: g.cty.clone(),
                    jty: g.jty.clone(),
                    repr: Repr::Plain,
                };
                return self.pointer_call(&v, args, e).map(Out::Expr);
            }
            if self.ctx.functions.contains_key(name) {
                return self.user_call(name, args, e, as_stmt);
            }
            if LIBRARY.contains(&name) {
                return self.library_call(name, args, e, hint, as_stmt);
            }
            return Err(TranslateError::UnresolvedSymbol {
                name: name.to_string(),
            });
        }
        if let ExprKind::Unary {
            op: UnaryOp::Deref,
            operand,
        } = &callee.unparen().kind
        {
            if let Some(n) = operand.as_ident() {
                if let Some(v) = self.lookup(n).cloned() {
                    return self.pointer_call(&v, args, e).map(Out::Expr);
                }
            }
        }
        Err(TranslateError::unsupported(
            "call through a computed callee",
        ))
    }

    fn pointer_call(&mut self, v: &Var, args: &[Expr], e: &Expr) -> R<JExpr> {
        let JTy::Iface(iface) = &v.jty else {
            return Err(TranslateError::unsupported(format!(
                "call of non-function {}",
                v.cty
            )));
        };
        let (ret, params) = v
            .cty
            .function_type()
            .ok_or_else(|| TranslateError::unsupported("call of non-function"))?;
        let (ret, params) = (ret.clone(), params.to_vec());
        if params.len() != args.len() {
            return Err(TranslateError::unsupported("argument count mismatch"));
        }
        let mut a = Vec::new();
        for (x, t) in args.iter().zip(&params) {
            a.push(self.expr_to(x, t)?.text);
        }
        self.fire(RuleId::FnPtr, e.span)?;
        let rj = self.jty(&ret)?;
        let mut j = JExpr::primary(
            format!("{}.{}({})", v.java, iface.method, a.join(", ")),
            ret,
            rj,
        );
        j.effect = true;
        j.masked = true;
        Ok(j)
    }

    /// Translates one argument for a parameter of type `t`.
    fn arg_for_param(&mut self, a: &Expr, t: &CType) -> R<String> {
        let u = a.unparen();
        if let ExprKind::Unary {
            op: UnaryOp::AddrOf,
            ..
        } = &u.kind
        {
            let v = self.expr_hint(a, Some(t))?;
            return Ok(self.coerce(v, t)?.text);
        }
        if let Some(n) = u.as_ident() {
            if let Some(Var {
                repr: Repr::PtrPair { idx, arr },
                ..
            }) = self.lookup(n).cloned()
            {
                return Err(TranslateError::unsupported(format!(
                    "pointer {n} ({arr}[{idx}]) with arithmetic passed to a function"
                )));
            }
        }
        let v = self.expr_hint(a, Some(t))?;
        if let (JTy::Array(inner), JTy::String) = (&v.jty, self.jty(t)?) {
            if **inner == JTy::Char {
                self.fire(RuleId::Str, a.span)?;
                return Ok(format!("CString.str({})", v.text));
            }
        }
        Ok(self.coerce(v, t)?.text)
    }

    fn user_call(&mut self, name: &str, args: &[Expr], _e: &Expr, as_stmt: bool) -> R<Out> {
        let sig = self.ctx.functions[name].clone();
        let params: Vec<CType> = sig
            .params
            .iter()
            .filter(|(n, t)| !(n.is_none() && *t == CType::Void))
            .map(|(_, t)| t.clone())
            .collect();
        if args.len() != params.len() && !(sig.variadic && args.len() >= params.len()) {
            return Err(TranslateError::unsupported(format!(
                "call of {name} with {} arguments",
                args.len()
            )));
        }
        let mut out_target = None;
        let mut a = Vec::new();
        for (i, x) in args.iter().enumerate() {
            if sig.out_param == Some(i) {
                let ExprKind::Unary {
                    op: UnaryOp::AddrOf,
                    operand,
                } = &x.unparen().kind
                else {
                    return Err(TranslateError::unsupported(
                        "out-parameter argument that is not an address",
                    ));
                };
                let lv = self.lvalue(operand)?;
                let super::expr::LValue::Plain { text, .. } = lv else {
                    return Err(TranslateError::unsupported("out-parameter target"));
                };
                self.fire(RuleId::OutParam, x.span)?;
                out_target = Some(text);
                continue;
            }
            let t = params
                .get(i)
                .ok_or_else(|| TranslateError::unsupported("variadic user function"))?;
            a.push(self.arg_for_param(x, t)?);
        }
        let text = format!("{}({})", sig.java_name, a.join(", "));
        if let Some(t) = out_target {
            if !as_stmt {
                return Err(TranslateError::unsupported(
                    "out-parameter call used as a value",
                ));
            }
            return Ok(Out::Stmts(vec![format!("{t} = {text};")]));
        }
        let rj = self.jty(&sig.ret)?;
        let mut j = JExpr::primary(text, sig.ret.clone(), rj);
        j.effect = true;
        j.masked = true;
        Ok(Out::Expr(j))
    }

    fn library_call(
        &mut self,
        name: &str,
        args: &[Expr],
        e: &Expr,
        hint: Option<&CType>,
        as_stmt: bool,
    ) -> R<Out> {
        let arity = |n: usize| -> R<()> {
            if args.len() != n {
                return Err(TranslateError::unsupported(format!(
                    "{name} with {} arguments",
                    args.len()
                )));
            }
            Ok(())
        };
        let stmt = |j: JExpr| Ok(Out::Expr(j.effect()));
        match name {
            "printf" => self.printf(args, as_stmt),
            "puts" => {
                arity(1)?;
                let s = self.string_arg(&args[0])?;
                if !as_stmt {
                    return Err(TranslateError::unsupported("puts result used"));
                }
                stmt(JExpr::primary(
                    format!("System.out.println({s})"),
                    CType::Int,
                    JTy::Void,
                ))
            }
            "putchar" => {
                arity(1)?;
                let v = self.expr_to(&args[0], &CType::Char)?;
                if !as_stmt {
                    return Err(TranslateError::unsupported("putchar result used"));
                }
                stmt(JExpr::primary(
                    format!("System.out.print({})", v.text),
                    CType::Int,
                    JTy::Void,
                ))
            }
            "strcpy" | "strcat" => {
                arity(2)?;
                if !as_stmt {
                    return Err(TranslateError::unsupported(format!("{name} result used")));
                }
                self.fire(RuleId::Str, e.span)?;
                let src = self.string_arg(&args[1])?;
                if let Some(n) = args[0].as_ident() {
                    if let Some(v) = self.lookup(n).cloned() {
                        if v.repr == Repr::StringBuf {
                            let rhs = if name == "strcpy" {
                                src
                            } else {
                                format!("{} + {src}", v.java)
                            };
                            return Ok(Out::Stmts(vec![format!("{} = {rhs};", v.java)]));
                        }
                    }
                }
                let dst = self.expr(&args[0])?;
                if dst.jty != JTy::Array(Box::new(JTy::Char)) {
                    return Err(TranslateError::unsupported(format!(
                        "{name} into {}",
                        dst.cty
                    )));
                }
                Ok(Out::Stmts(vec![format!(
                    "CString.{name}({}, {src});",
                    dst.text
                )]))
            }
            "strlen" => {
                arity(1)?;
                self.fire(RuleId::Str, e.span)?;
                let v = self.expr(&args[0])?;
                let text = match &v.jty {
                    JTy::String => format!("{}.length()", v.at(P_PRIMARY)),
                    JTy::Array(inner) if **inner == JTy::Char => {
                        format!("CString.strlen({})", v.text)
                    }
                    _ => return Err(TranslateError::unsupported(format!("strlen of {}", v.cty))),
                };
                let mut j = JExpr::primary(text, CType::ULong, JTy::Int);
                j.masked = true;
                Ok(Out::Expr(j))
            }
            "malloc" | "calloc" => {
                let elem = match hint {
                    Some(CType::Pointer(p)) if **p != CType::Void => (**p).clone(),
                    _ => {
                        return Err(TranslateError::unsupported(format!(
                            "{name} without a known element type"
                        )))
                    }
                };
                self.alloc(name, &elem, args, e).map(Out::Expr)
            }
            "free" => {
                arity(1)?;
                if !as_stmt {
                    return Err(TranslateError::unsupported("free used as a value"));
                }
                self.expr(&args[0])?;
                self.fire(RuleId::Mem, e.span)?;
                Ok(Out::Stmts(Vec::new()))
            }
            "abs" => {
                arity(1)?;
                let v = self.expr_to(&args[0], &CType::Int)?;
                Ok(Out::Expr(JExpr::primary(
                    format!("Math.abs({})", v.text),
                    CType::Int,
                    JTy::Int,
                )))
            }
            "exit" => {
                arity(1)?;
                if !as_stmt {
                    return Err(TranslateError::unsupported("exit used as a value"));
                }
                let v = self.expr_to(&args[0], &CType::Int)?;
                Ok(Out::Stmts(vec![
                    "System.out.flush();".into(),
                    format!("System.exit({});", v.text),
                ]))
            }
            _ => Err(TranslateError::UnresolvedSymbol {
                name: name.to_string(),
            }),
        }
    }

    /// A Java `String` for a C string argument.
    fn string_arg(&mut self, a: &Expr) -> R<String> {
        let v = self.expr(a)?;
        match &v.jty {
            JTy::String => Ok(v.text),
            JTy::Array(inner) if **inner == JTy::Char => {
                self.note(RuleId::Str);
                Ok(format!("CString.str({})", v.text))
            }
            _ => Err(TranslateError::unsupported(format!(
                "string argument of type {}",
                v.cty
            ))),
        }
    }

    fn printf(&mut self, args: &[Expr], as_stmt: bool) -> R<Out> {
        if !as_stmt {
            return Err(TranslateError::unsupported("printf result used"));
        }
        let Some(first) = args.first() else {
            return Err(TranslateError::unsupported("printf without a format"));
        };
        let fmt = match &first.unparen().kind {
            ExprKind::StrLit(b) => String::from_utf8_lossy(b).into_owned(),
            _ => {
                return Err(TranslateError::unsupported(
                    "printf with a non-literal format",
                ))
            }
        };
        let pieces = parse_format(&fmt)?;
        let nconv = pieces
            .iter()
            .filter(|p| matches!(p, Piece::Conv(_)))
            .count();
        if nconv != args.len() - 1 {
            return Err(TranslateError::unsupported(
                "printf argument count mismatch",
            ));
        }
        let mut jfmt = String::new();
        let mut jargs = Vec::new();
        let mut k = 1;
        for p in &pieces {
            let c = match p {
                Piece::Lit(t) => {
                    jfmt.push_str(t);
                    continue;
                }
                Piece::Conv(c) => c,
            };
            let a = &args[k];
            k += 1;
            let v = self.expr(a)?;
            let (spec, text) = match c.conv {
                'd' | 'i' => {
                    let v = self.bool_to_int(v);
                    if !v.cty.is_integer() {
                        return Err(TranslateError::unsupported(format!("%d with {}", v.cty)));
                    }
                    let text = match (&v.cty, &v.jty) {
                        (_, JTy::Char) => format!("(int) {}", v.at(P_UNARY)),
                        (CType::UInt, _) => format!("(int) {}", v.at(P_UNARY)),
                        (CType::ULong, _) if !v.masked => {
                            format!("Long.toUnsignedString({})", v.text)
                        }
                        _ => v.text.clone(),
                    };
                    let conv = if matches!(v.cty, CType::ULong) && !v.masked {
                        's'
                    } else {
                        'd'
                    };
                    (c.java(conv), text)
                }
                'u' => {
                    let v = self.bool_to_int(v);
                    if !v.cty.is_integer() {
                        return Err(TranslateError::unsupported(format!("%u with {}", v.cty)));
                    }
                    match &v.cty {
                        CType::ULong | CType::Long | CType::LongLong | CType::ULongLong
                            if !v.masked || v.cty != CType::ULong =>
                        {
                            if v.masked && v.konst.is_some_and(|k| k >= 0) {
                                (c.java('d'), v.text.clone())
                            } else {
                                (c.java('s'), format!("Long.toUnsignedString({})", v.text))
                            }
                        }
                        CType::ULong => (c.java('d'), v.text.clone()),
                        _ => {
                            let w = if v.jty == JTy::Char {
                                JExpr::new(
                                    format!("(int) {}", v.at(P_UNARY)),
                                    P_UNARY,
                                    v.cty.clone(),
                                    JTy::Int,
                                )
                            } else {
                                v
                            };
                            let m = if w.cty == CType::UInt
                                || matches!(
                                    w.cty,
                                    CType::Int
                                        | CType::Short
                                        | CType::Char
                                        | CType::SChar
                                        | CType::Enum(_)
                                ) {
                                let w = JExpr {
                                    cty: CType::UInt,
                                    masked: w.masked && w.cty == CType::UInt,
                                    ..w
                                };
                                self.mask_u32(w)
                            } else {
                                w
                            };
                            (c.java('d'), m.text)
                        }
                    }
                }
                'x' | 'X' | 'o' => {
                    let v = self.bool_to_int(v);
                    if !v.cty.is_integer() {
                        return Err(TranslateError::unsupported(format!(
                            "%{} with {}",
                            c.conv, v.cty
                        )));
                    }
                    let text = if v.cty == CType::UInt {
                        self.mask_u32(v).text
                    } else if v.jty == JTy::Char {
                        format!("(int) {}", v.at(P_UNARY))
                    } else {
                        v.text
                    };
                    (c.java(c.conv), text)
                }
                'c' => {
                    let text = if v.jty == JTy::Char || v.jty == JTy::Boxed("Character") {
                        v.text
                    } else {
                        let v = self.bool_to_int(v);
                        if !v.cty.is_integer() {
                            return Err(TranslateError::unsupported(format!("%c with {}", v.cty)));
                        }
                        format!("(char) {}", v.at(P_UNARY))
                    };
                    (c.java('c'), text)
                }
                's' => {
                    let text = match &v.jty {
                        JTy::String => v.text,
                        JTy::Array(inner) if **inner == JTy::Char => {
                            self.note(RuleId::Str);
                            format!("CString.str({})", v.text)
                        }
                        _ => return Err(TranslateError::unsupported(format!("%s with {}", v.cty))),
                    };
                    (c.java('s'), text)
                }
                'f' | 'F' | 'e' | 'E' => {
                    if !v.cty.is_floating() && !matches!(v.jty, JTy::Boxed("Float" | "Double")) {
                        return Err(TranslateError::unsupported(format!(
                            "%{} with {}",
                            c.conv, v.cty
                        )));
                    }
                    let conv = if c.conv == 'F' { 'f' } else { c.conv };
                    (c.java(conv), v.text)
                }
                other => return Err(TranslateError::unsupported(format!("printf %{other}"))),
            };
            jfmt.push_str(&spec);
            jargs.push(text);
        }
        let lit = super::expr::java_string_literal(jfmt.as_bytes());
        let text = if jargs.is_empty() {
            if jfmt.contains('%') {
                format!("System.out.printf({lit})")
            } else {
                format!("System.out.print({lit})")
            }
        } else {
            format!("System.out.printf({lit}, {})", jargs.join(", "))
        };
        Ok(Out::Expr(
            JExpr::primary(text, CType::Int, JTy::Void).effect(),
        ))
    }
}
