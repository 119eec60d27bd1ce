//! Prints expressions back to C source. Parentheses exist as nodes in the
//! tree, so the output regroups exactly like the input did.

use super::ast::*;

pub fn print_expr(e: &Expr) -> String {
    let mut s = String::new();
    expr(e, &mut s);
    s
}

fn escape_bytes(bytes: &[u8], quote: u8, out: &mut String) {
    for &b in bytes {
        match b {
            b'\n' => out.push_str("\\n"),
            b'\t' => out.push_str("\\t"),
            b'\r' => out.push_str("\\r"),
            b'\\' => out.push_str("\\\\"),
            0 => out.push_str("\\0"),
            _ if b == quote => {
                out.push('\\');
                out.push(b as char);
            }
            0x20..=0x7e => out.push(b as char),
            _ => out.push_str(&format!("\\{b:03o}")),
        }
    }
}

fn expr(e: &Expr, out: &mut String) {
    match &e.kind {
        ExprKind::IntLit {
            value,
            unsigned,
            long,
            radix,
        } => {
            match radix {
                16 => out.push_str(&format!("0x{value:X}")),
                8 if *value != 0 => out.push_str(&format!("0{value:o}")),
                _ => out.push_str(&value.to_string()),
            }
            if *unsigned {
                out.push('u');
            }
            if *long {
                out.push('l');
            }
        }
        ExprKind::FloatLit { value, single } => {
            let mut t = format!("{value:?}");
            if !t.contains(['.', 'e', 'E']) {
                t.push_str(".0");
            }
            out.push_str(&t);
            if *single {
                out.push('f');
            }
        }
        ExprKind::CharLit(c) => {
            out.push('\'');
            escape_bytes(&[*c as u8], b'\'', out);
            out.push('\'');
        }
        ExprKind::StrLit(bytes) => {
            out.push('"');
            escape_bytes(bytes, b'"', out);
            out.push('"');
        }
        ExprKind::Ident(n) => out.push_str(n),
        ExprKind::Paren(inner) => {
            out.push('(');
            expr(inner, out);
            out.push(')');
        }
        ExprKind::Unary { op, operand } => {
            out.push_str(match op {
                UnaryOp::Neg => "-",
                UnaryOp::Plus => "+",
                UnaryOp::Not => "!",
                UnaryOp::BitNot => "~",
                UnaryOp::Deref => "*",
                UnaryOp::AddrOf => "&",
                UnaryOp::PreInc => "++",
                UnaryOp::PreDec => "--",
            });
            // Keep `- -x` and `& &x` from fusing into other tokens.
            if matches!(
                &operand.kind,
                ExprKind::Unary { .. } | ExprKind::IntLit { .. } | ExprKind::FloatLit { .. }
            ) && matches!(op, UnaryOp::Neg | UnaryOp::Plus | UnaryOp::AddrOf)
            {
                out.push(' ');
            }
            expr(operand, out);
        }
        ExprKind::Postfix { op, operand } => {
            expr(operand, out);
            out.push_str(match op {
                PostfixOp::Inc => "++",
                PostfixOp::Dec => "--",
            });
        }
        ExprKind::Binary { op, lhs, rhs } => {
            expr(lhs, out);
            out.push(' ');
            out.push_str(op.symbol());
            out.push(' ');
            expr(rhs, out);
        }
        ExprKind::Assign { op, lhs, rhs } => {
            expr(lhs, out);
            out.push(' ');
            if let Some(op) = op {
                out.push_str(op.symbol());
            }
            out.push_str("= ");
            expr(rhs, out);
        }
        ExprKind::Ternary { cond, then, els } => {
            expr(cond, out);
            out.push_str(" ? ");
            expr(then, out);
            out.push_str(" : ");
            expr(els, out);
        }
        ExprKind::Call { callee, args } => {
            expr(callee, out);
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                expr(a, out);
            }
            out.push(')');
        }
        ExprKind::Index { base, index } => {
            expr(base, out);
            out.push('[');
            expr(index, out);
            out.push(']');
        }
        ExprKind::Member { base, field, arrow } => {
            expr(base, out);
            out.push_str(if *arrow { "->" } else { "." });
            out.push_str(field);
        }
        ExprKind::Cast { ty, expr: inner } => {
            out.push('(');
            out.push_str(&print_type_name(ty));
            out.push(')');
            expr(inner, out);
        }
        ExprKind::SizeofType(ty) => {
            out.push_str("sizeof(");
            out.push_str(&print_type_name(ty));
            out.push(')');
        }
        ExprKind::SizeofExpr(inner) => {
            out.push_str("sizeof ");
            expr(inner, out);
        }
        ExprKind::Comma { lhs, rhs } => {
            expr(lhs, out);
            out.push_str(", ");
            expr(rhs, out);
        }
    }
}

pub fn print_base(spec: &DeclSpec) -> String {
    let mut s = String::new();
    if spec.is_const {
        s.push_str("const ");
    }
    s.push_str(&match &spec.base {
        BaseType::Void => "void".to_string(),
        BaseType::Bool => "_Bool".to_string(),
        BaseType::Char => "char".to_string(),
        BaseType::SChar => "signed char".to_string(),
        BaseType::UChar => "unsigned char".to_string(),
        BaseType::Short => "short".to_string(),
        BaseType::UShort => "unsigned short".to_string(),
        BaseType::Int => "int".to_string(),
        BaseType::UInt => "unsigned int".to_string(),
        BaseType::Long => "long".to_string(),
        BaseType::ULong => "unsigned long".to_string(),
        BaseType::LongLong => "long long".to_string(),
        BaseType::ULongLong => "unsigned long long".to_string(),
        BaseType::Float => "float".to_string(),
        BaseType::Double => "double".to_string(),
        BaseType::LongDouble => "long double".to_string(),
        BaseType::Record(r) => format!("{} {}", r.kind.keyword(), r.tag.as_deref().unwrap_or("")),
        BaseType::Enum(e) => format!("enum {}", e.tag.as_deref().unwrap_or("")),
        BaseType::TypedefName(n) => n.clone(),
    });
    s
}

pub fn print_declarator(d: &Declarator) -> String {
    let mut s = String::new();
    for p in &d.pointers {
        s.push('*');
        if p.is_const {
            s.push_str(" const ");
        }
    }
    match &d.core {
        DeclaratorCore::Name(n, _) => s.push_str(n),
        DeclaratorCore::Abstract => {}
        DeclaratorCore::Nested(inner) => {
            s.push('(');
            s.push_str(&print_declarator(inner));
            s.push(')');
        }
    }
    for suf in &d.suffixes {
        match suf {
            DeclSuffix::Array(None) => s.push_str("[]"),
            DeclSuffix::Array(Some(e)) => {
                s.push('[');
                s.push_str(&print_expr(e));
                s.push(']');
            }
            DeclSuffix::Function { params, variadic } => {
                s.push('(');
                let mut parts: Vec<String> = params
                    .iter()
                    .map(|p| {
                        let d = print_declarator(&p.declarator);
                        if d.is_empty() {
                            print_base(&p.specifiers)
                        } else {
                            format!("{} {d}", print_base(&p.specifiers))
                        }
                    })
                    .collect();
                if *variadic {
                    parts.push("...".into());
                }
                if parts.is_empty() {
                    parts.push("void".into());
                }
                s.push_str(&parts.join(", "));
                s.push(')');
            }
        }
    }
    s
}

pub fn print_type_name(t: &TypeName) -> String {
    let d = print_declarator(&t.declarator);
    if d.is_empty() {
        print_base(&t.specifiers)
    } else {
        format!("{} {d}", print_base(&t.specifiers))
    }
}
