//! Integer constant expressions: array sizes, enumerator values, bitfield
//! widths and case labels.

use crate::c_front::ast::{BinOp, Expr, ExprKind, UnaryOp};
use crate::c_front::parse_expression_fragment;

use super::types::{self, CType};
use super::{TranslateError, TranslationContext};

pub fn eval(e: &Expr, ctx: &TranslationContext) -> Result<i64, TranslateError> {
    eval_depth(e, ctx, 0)
}

fn not_const(what: &str) -> TranslateError {
    TranslateError::unsupported(format!(
        "non-constant expression ({what}) where a constant is required"
    ))
}

fn eval_depth(e: &Expr, ctx: &TranslationContext, depth: usize) -> Result<i64, TranslateError> {
    if depth > 32 {
        return Err(TranslateError::unsupported(
            "recursive macro in constant expression",
        ));
    }
    let ev = |x: &Expr| eval_depth(x, ctx, depth);
    Ok(match &e.kind {
        ExprKind::IntLit { value, .. } => *value as i64,
        ExprKind::CharLit(c) => *c,
        ExprKind::Paren(inner) => ev(inner)?,
        ExprKind::Ident(name) => {
            if let Some(m) = ctx.macros.get(name) {
                if m.params.is_some() {
                    return Err(not_const(name));
                }
                let body = parse_expression_fragment(&m.body, ctx.typedef_names())?;
                return eval_depth(&body, ctx, depth + 1);
            }
            if let Some((_, v)) = ctx.enum_constants.get(name) {
                return Ok(*v);
            }
            return Err(not_const(name));
        }
        ExprKind::Unary { op, operand } => {
            let v = ev(operand)?;
            match op {
                UnaryOp::Neg => v.wrapping_neg(),
                UnaryOp::Plus => v,
                UnaryOp::Not => (v == 0) as i64,
                UnaryOp::BitNot => !v,
                _ => return Err(not_const("address or dereference")),
            }
        }
        ExprKind::Binary { op, lhs, rhs } => {
            let a = ev(lhs)?;
            if matches!(op, BinOp::And) && a == 0 {
                return Ok(0);
            }
            if matches!(op, BinOp::Or) && a != 0 {
                return Ok(1);
            }
            let b = ev(rhs)?;
            match op {
                BinOp::Mul => a.wrapping_mul(b),
                BinOp::Div | BinOp::Rem if b == 0 => {
                    return Err(TranslateError::unsupported("division by zero in constant"))
                }
                BinOp::Div => a.wrapping_div(b),
                BinOp::Rem => a.wrapping_rem(b),
                BinOp::Add => a.wrapping_add(b),
                BinOp::Sub => a.wrapping_sub(b),
                BinOp::Shl => a.wrapping_shl(b as u32),
                BinOp::Shr => a.wrapping_shr(b as u32),
                BinOp::Lt => (a < b) as i64,
                BinOp::Gt => (a > b) as i64,
                BinOp::Le => (a <= b) as i64,
                BinOp::Ge => (a >= b) as i64,
                BinOp::Eq => (a == b) as i64,
                BinOp::Ne => (a != b) as i64,
                BinOp::BitAnd => a & b,
                BinOp::BitXor => a ^ b,
                BinOp::BitOr => a | b,
                BinOp::And | BinOp::Or => (b != 0) as i64,
            }
        }
        ExprKind::Ternary { cond, then, els } => {
            if ev(cond)? != 0 {
                ev(then)?
            } else {
                ev(els)?
            }
        }
        ExprKind::Cast { ty, expr } => {
            let t = type_name(ty, ctx)?;
            truncate(ev(expr)?, &t)
        }
        ExprKind::SizeofType(ty) => {
            let t = type_name(ty, ctx)?;
            types::size_align(&t, ctx)?.0 as i64
        }
        _ => return Err(not_const("expression")),
    })
}

pub fn type_name(
    ty: &crate::c_front::ast::TypeName,
    ctx: &TranslationContext,
) -> Result<CType, TranslateError> {
    let base = types::base_type(&ty.specifiers, ctx)?;
    ctx.resolve(base, &ty.declarator)
}

/// Value of `v` converted to the integer type `t`.
pub fn truncate(v: i64, t: &CType) -> i64 {
    match t {
        CType::Bool => (v != 0) as i64,
        CType::Char | CType::SChar => v as i8 as i64,
        CType::UChar => v as u8 as i64,
        CType::Short => v as i16 as i64,
        CType::UShort => v as u16 as i64,
        CType::Int | CType::Enum(_) => v as i32 as i64,
        CType::UInt => v as u32 as i64,
        _ => v,
    }
}
