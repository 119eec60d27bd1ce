//! Semantic C types, their Java representation, and the frozen LP64 layout.

use std::fmt;

use crate::c_front::ast::{BaseType, DeclSpec, DeclSuffix, Declarator, DeclaratorCore, Expr};

use super::{TranslateError, TranslationContext};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CType {
    Void,
    Bool,
    Char,
    SChar,
    UChar,
    Short,
    UShort,
    Int,
    UInt,
    Long,
    ULong,
    LongLong,
    ULongLong,
    Float,
    Double,
    LongDouble,
    Pointer(Box<CType>),
    Array(Box<CType>, Option<u64>),
    Function {
        ret: Box<CType>,
        params: Vec<CType>,
        variadic: bool,
    },
    Struct(String),
    Union(String),
    Enum(String),
}

impl fmt::Display for CType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CType::Void => write!(f, "void"),
            CType::Bool => write!(f, "_Bool"),
            CType::Char => write!(f, "char"),
            CType::SChar => write!(f, "signed char"),
            CType::UChar => write!(f, "unsigned char"),
            CType::Short => write!(f, "short"),
            CType::UShort => write!(f, "unsigned short"),
            CType::Int => write!(f, "int"),
            CType::UInt => write!(f, "unsigned int"),
            CType::Long => write!(f, "long"),
            CType::ULong => write!(f, "unsigned long"),
            CType::LongLong => write!(f, "long long"),
            CType::ULongLong => write!(f, "unsigned long long"),
            CType::Float => write!(f, "float"),
            CType::Double => write!(f, "double"),
            CType::LongDouble => write!(f, "long double"),
            CType::Pointer(t) => write!(f, "{t} *"),
            CType::Array(t, Some(n)) => write!(f, "{t}[{n}]"),
            CType::Array(t, None) => write!(f, "{t}[]"),
            CType::Function { ret, params, .. } => {
                write!(f, "{ret}(")?;
                for (i, p) in params.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            CType::Struct(n) => write!(f, "struct {n}"),
            CType::Union(n) => write!(f, "union {n}"),
            CType::Enum(n) => write!(f, "enum {n}"),
        }
    }
}

impl CType {
    pub fn is_integer(&self) -> bool {
        matches!(
            self,
            CType::Bool
                | CType::Char
                | CType::SChar
                | CType::UChar
                | CType::Short
                | CType::UShort
                | CType::Int
                | CType::UInt
                | CType::Long
                | CType::ULong
                | CType::LongLong
                | CType::ULongLong
                | CType::Enum(_)
        )
    }

    pub fn is_floating(&self) -> bool {
        matches!(self, CType::Float | CType::Double | CType::LongDouble)
    }

    pub fn is_arithmetic(&self) -> bool {
        self.is_integer() || self.is_floating()
    }

    pub fn is_pointer(&self) -> bool {
        matches!(self, CType::Pointer(_))
    }

    pub fn is_pointer_like(&self) -> bool {
        matches!(self, CType::Pointer(_) | CType::Array(..))
    }

    pub fn is_char(&self) -> bool {
        matches!(self, CType::Char | CType::SChar | CType::UChar)
    }

    pub fn is_record(&self) -> bool {
        matches!(self, CType::Struct(_) | CType::Union(_))
    }

    pub fn pointee(&self) -> Option<&CType> {
        match self {
            CType::Pointer(t) | CType::Array(t, _) => Some(t),
            _ => None,
        }
    }

    /// Function type behind a function or function-pointer type.
    pub fn function_type(&self) -> Option<(&CType, &[CType])> {
        match self {
            CType::Function { ret, params, .. } => Some((ret, params)),
            CType::Pointer(inner) => match inner.as_ref() {
                CType::Function { ret, params, .. } => Some((ret, params)),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn is_function_pointer(&self) -> bool {
        matches!(self, CType::Pointer(inner) if matches!(**inner, CType::Function { .. }))
    }

    /// `unsigned int`, the type held in a Java long with a 32-bit mask.
    pub fn is_masked_uint(&self) -> bool {
        matches!(self, CType::UInt)
    }

    /// Store mask for narrow unsigned types held in a wider Java type.
    pub fn store_mask(&self) -> Option<&'static str> {
        match self {
            CType::UInt => Some("0xFFFFFFFFL"),
            CType::UChar => Some("0xFF"),
            CType::UShort => Some("0xFFFF"),
            _ => None,
        }
    }

    pub fn is_unsigned(&self) -> bool {
        matches!(
            self,
            CType::UChar | CType::UShort | CType::UInt | CType::ULong | CType::ULongLong
        )
    }

    /// Integer promotion.
    pub fn promoted(&self) -> CType {
        match self {
            CType::Bool
            | CType::Char
            | CType::SChar
            | CType::UChar
            | CType::Short
            | CType::UShort
            | CType::Enum(_) => CType::Int,
            CType::LongLong => CType::Long,
            CType::ULongLong => CType::ULong,
            other => other.clone(),
        }
    }

    /// Usual arithmetic conversions for LP64.
    pub fn common(a: &CType, b: &CType) -> CType {
        if matches!(a, CType::LongDouble) || matches!(b, CType::LongDouble) {
            return CType::LongDouble;
        }
        if matches!(a, CType::Double) || matches!(b, CType::Double) {
            return CType::Double;
        }
        if matches!(a, CType::Float) || matches!(b, CType::Float) {
            return CType::Float;
        }
        let (a, b) = (a.promoted(), b.promoted());
        let rank = |t: &CType| match t {
            CType::ULong => 4,
            CType::Long => 3,
            CType::UInt => 2,
            _ => 1,
        };
        match rank(&a).max(rank(&b)) {
            4 => CType::ULong,
            3 => CType::Long,
            2 => CType::UInt,
            _ => CType::Int,
        }
    }
}

// ------------------------------------------------------------------ Java side

/// Functional interface chosen for a function-pointer type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FnIface {
    pub qualified: &'static str,
    pub method: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum JTy {
    Boolean,
    Char,
    Short,
    Int,
    Long,
    Float,
    Double,
    String,
    Object,
    /// `Integer`, `Float`, `Character`, ...
    Boxed(&'static str),
    Class(String),
    Array(Box<JTy>),
    Iface(FnIface),
    Null,
    Void,
}

impl JTy {
    pub fn render(&self) -> String {
        match self {
            JTy::Boolean => "boolean".into(),
            JTy::Char => "char".into(),
            JTy::Short => "short".into(),
            JTy::Int => "int".into(),
            JTy::Long => "long".into(),
            JTy::Float => "float".into(),
            JTy::Double => "double".into(),
            JTy::String => "String".into(),
            JTy::Object => "Object".into(),
            JTy::Boxed(b) => (*b).into(),
            JTy::Class(c) => c.clone(),
            JTy::Array(t) => format!("{}[]", t.render()),
            JTy::Iface(i) => i.qualified.into(),
            JTy::Null => "Object".into(),
            JTy::Void => "void".into(),
        }
    }

    pub fn is_numeric_primitive(&self) -> bool {
        matches!(
            self,
            JTy::Char | JTy::Short | JTy::Int | JTy::Long | JTy::Float | JTy::Double
        )
    }

    pub fn is_reference(&self) -> bool {
        matches!(
            self,
            JTy::String
                | JTy::Object
                | JTy::Boxed(_)
                | JTy::Class(_)
                | JTy::Array(_)
                | JTy::Iface(_)
                | JTy::Null
        )
    }

    /// Widening order among numeric primitives.
    pub fn numeric_rank(&self) -> u8 {
        match self {
            JTy::Char | JTy::Short => 1,
            JTy::Int => 2,
            JTy::Long => 3,
            JTy::Float => 4,
            JTy::Double => 5,
            JTy::Boxed("Integer") | JTy::Boxed("Character") | JTy::Boxed("Short") => 2,
            JTy::Boxed("Long") => 3,
            JTy::Boxed("Float") => 4,
            JTy::Boxed("Double") => 5,
            _ => 0,
        }
    }

    pub fn zero_value(&self) -> &'static str {
        match self {
            JTy::Boolean => "false",
            JTy::Char => "'\\0'",
            JTy::Short | JTy::Int => "0",
            JTy::Long => "0L",
            JTy::Float => "0.0f",
            JTy::Double => "0.0",
            _ => "null",
        }
    }

    pub fn boxed_name(&self) -> Option<&'static str> {
        Some(match self {
            JTy::Boolean => "Boolean",
            JTy::Char => "Character",
            JTy::Short => "Short",
            JTy::Int => "Integer",
            JTy::Long => "Long",
            JTy::Float => "Float",
            JTy::Double => "Double",
            _ => return None,
        })
    }
}

/// Java type for a C scalar or record value (not pointers to scalars).
pub fn java_value_type(t: &CType, ctx: &TranslationContext) -> Result<JTy, TranslateError> {
    Ok(match t {
        CType::Bool => JTy::Boolean,
        CType::Char | CType::SChar => JTy::Char,
        CType::UChar | CType::UShort => JTy::Int,
        CType::Short => JTy::Short,
        CType::Int | CType::Enum(_) => JTy::Int,
        CType::UInt | CType::Long | CType::ULong | CType::LongLong | CType::ULongLong => JTy::Long,
        CType::Float => JTy::Float,
        CType::Double | CType::LongDouble => JTy::Double,
        CType::Struct(name) => JTy::Class(ctx.class_name_of(name)?),
        CType::Void => JTy::Void,
        CType::Pointer(inner) => match inner.as_ref() {
            CType::Char | CType::SChar | CType::UChar => JTy::String,
            CType::Void => JTy::Object,
            CType::Struct(name) => JTy::Class(ctx.class_name_of(name)?),
            CType::Function { .. } => JTy::Iface(fn_iface(t)?),
            CType::Pointer(_) => {
                return Err(TranslateError::unsupported(format!(
                    "pointer-to-pointer type {t} outside an out-parameter"
                )))
            }
            scalar => JTy::Array(Box::new(java_value_type(scalar, ctx)?)),
        },
        CType::Array(inner, _) => JTy::Array(Box::new(java_value_type(inner, ctx)?)),
        CType::Union(name) => {
            return Err(TranslateError::unsupported(format!(
                "union {name} used as a value type"
            )))
        }
        CType::Function { .. } => return Err(TranslateError::unsupported("bare function type")),
    })
}

fn iface_kind(t: &CType) -> Option<char> {
    match t {
        CType::Int | CType::Enum(_) => Some('i'),
        CType::Long | CType::LongLong => Some('l'),
        CType::Double => Some('d'),
        CType::Void => Some('v'),
        _ => None,
    }
}

/// Maps a function-pointer type to a `java.util.function` interface.
pub fn fn_iface(t: &CType) -> Result<FnIface, TranslateError> {
    let (ret, params) = t
        .function_type()
        .ok_or_else(|| TranslateError::unsupported(format!("{t} is not a function pointer")))?;
    let r = iface_kind(ret);
    let ps: Option<Vec<char>> = params.iter().map(iface_kind).collect();
    let pick = |q: &'static str, m: &'static str| FnIface {
        qualified: q,
        method: m,
    };
    let iface = match (r, ps.as_deref()) {
        (Some('i'), Some(['i', 'i'])) => pick("java.util.function.IntBinaryOperator", "applyAsInt"),
        (Some('i'), Some(['i'])) => pick("java.util.function.IntUnaryOperator", "applyAsInt"),
        (Some('i'), Some([])) => pick("java.util.function.IntSupplier", "getAsInt"),
        (Some('v'), Some(['i'])) => pick("java.util.function.IntConsumer", "accept"),
        (Some('v'), Some([])) => pick("java.lang.Runnable", "run"),
        (Some('l'), Some(['l', 'l'])) => {
            pick("java.util.function.LongBinaryOperator", "applyAsLong")
        }
        (Some('l'), Some(['l'])) => pick("java.util.function.LongUnaryOperator", "applyAsLong"),
        (Some('d'), Some(['d', 'd'])) => {
            pick("java.util.function.DoubleBinaryOperator", "applyAsDouble")
        }
        (Some('d'), Some(['d'])) => pick("java.util.function.DoubleUnaryOperator", "applyAsDouble"),
        _ => {
            return Err(TranslateError::unsupported(format!(
                "function pointer type {t} has no matching functional interface"
            )))
        }
    };
    Ok(iface)
}

// ------------------------------------------------------------ type resolution

pub fn base_type(spec: &DeclSpec, ctx: &TranslationContext) -> Result<CType, TranslateError> {
    Ok(match &spec.base {
        BaseType::Void => CType::Void,
        BaseType::Bool => CType::Bool,
        BaseType::Char => CType::Char,
        BaseType::SChar => CType::SChar,
        BaseType::UChar => CType::UChar,
        BaseType::Short => CType::Short,
        BaseType::UShort => CType::UShort,
        BaseType::Int => CType::Int,
        BaseType::UInt => CType::UInt,
        BaseType::Long => CType::Long,
        BaseType::ULong => CType::ULong,
        BaseType::LongLong => CType::LongLong,
        BaseType::ULongLong => CType::ULongLong,
        BaseType::Float => CType::Float,
        BaseType::Double => CType::Double,
        BaseType::LongDouble => CType::LongDouble,
        BaseType::Record(r) => {
            let tag = r.tag.clone().ok_or_else(|| {
                TranslateError::unsupported(format!("anonymous {}", r.kind.keyword()))
            })?;
            match r.kind {
                crate::c_front::ast::RecordKind::Union => CType::Union(tag),
                _ => CType::Struct(tag),
            }
        }
        BaseType::Enum(e) => CType::Enum(
            e.tag
                .clone()
                .ok_or_else(|| TranslateError::unsupported("anonymous enum"))?,
        ),
        BaseType::TypedefName(n) => ctx
            .typedefs
            .get(n)
            .cloned()
            .ok_or_else(|| TranslateError::UnresolvedSymbol { name: n.clone() })?,
    })
}

/// Applies a declarator to a base type.
pub fn apply_declarator(
    base: CType,
    d: &Declarator,
    ctx: &TranslationContext,
    eval: &dyn Fn(&Expr) -> Result<i64, TranslateError>,
) -> Result<CType, TranslateError> {
    let mut t = base;
    for _ in &d.pointers {
        t = CType::Pointer(Box::new(t));
    }
    for s in d.suffixes.iter().rev() {
        t = match s {
            DeclSuffix::Array(None) => CType::Array(Box::new(t), None),
            DeclSuffix::Array(Some(e)) => {
                let n = eval(e)?;
                if n <= 0 {
                    return Err(TranslateError::unsupported("non-positive array size"));
                }
                CType::Array(Box::new(t), Some(n as u64))
            }
            DeclSuffix::Function { params, variadic } => {
                let mut ps = Vec::new();
                for p in params {
                    let b = base_type(&p.specifiers, ctx)?;
                    let pt = apply_declarator(b, &p.declarator, ctx, eval)?;
                    ps.push(adjust_param(pt));
                }
                CType::Function {
                    ret: Box::new(t),
                    params: ps,
                    variadic: *variadic,
                }
            }
        };
    }
    match &d.core {
        DeclaratorCore::Nested(inner) => apply_declarator(t, inner, ctx, eval),
        _ => Ok(t),
    }
}

/// Array and function parameters decay to pointers.
pub fn adjust_param(t: CType) -> CType {
    match t {
        CType::Array(inner, _) => CType::Pointer(inner),
        f @ CType::Function { .. } => CType::Pointer(Box::new(f)),
        other => other,
    }
}

// --------------------------------------------------------------------- layout

/// Frozen x86-64 SysV (LP64) sizes, matching what the reference gcc reports.
pub const PLATFORM_SIZES: &[(&str, u64)] = &[
    ("char", 1),
    ("short", 2),
    ("int", 4),
    ("long", 8),
    ("long long", 8),
    ("float", 4),
    ("double", 8),
    ("long double", 16),
    ("void *", 8),
    ("enum", 4),
    ("_Bool", 1),
];

fn platform(name: &str) -> u64 {
    PLATFORM_SIZES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| *s)
        .unwrap_or(0)
}

/// `(size, align)` of a complete type.
pub fn size_align(t: &CType, ctx: &TranslationContext) -> Result<(u64, u64), TranslateError> {
    let scalar = |n: &str| {
        let s = platform(n);
        Ok((s, s))
    };
    match t {
        CType::Bool => scalar("_Bool"),
        CType::Char | CType::SChar | CType::UChar => scalar("char"),
        CType::Short | CType::UShort => scalar("short"),
        CType::Int | CType::UInt => scalar("int"),
        CType::Long | CType::ULong => scalar("long"),
        CType::LongLong | CType::ULongLong => scalar("long long"),
        CType::Float => scalar("float"),
        CType::Double => scalar("double"),
        CType::LongDouble => scalar("long double"),
        CType::Enum(_) => scalar("enum"),
        CType::Pointer(_) => scalar("void *"),
        CType::Array(inner, Some(n)) => {
            let (s, a) = size_align(inner, ctx)?;
            Ok((s * n, a))
        }
        CType::Array(_, None) => Err(TranslateError::unsupported("sizeof incomplete array")),
        CType::Struct(name) | CType::Union(name) => {
            let rec = ctx
                .records
                .get(name)
                .ok_or_else(|| TranslateError::UnresolvedSymbol { name: name.clone() })?;
            Ok((rec.size, rec.align))
        }
        CType::Void | CType::Function { .. } => {
            Err(TranslateError::unsupported(format!("sizeof({t})")))
        }
    }
}

/// Computes size and alignment of a record from its members, following the
/// SysV bitfield allocation rules.
pub fn record_layout(
    is_union: bool,
    members: &[(CType, Option<u32>)],
    ctx: &TranslationContext,
) -> Result<(u64, u64), TranslateError> {
    let mut bit_off: u64 = 0;
    let mut max_size: u64 = 0;
    let mut align: u64 = 1;
    for (t, width) in members {
        let (s, a) = size_align(t, ctx)?;
        align = align.max(a);
        if is_union {
            max_size = max_size.max(s);
            continue;
        }
        match width {
            Some(w) => {
                let w = *w as u64;
                let unit = s * 8;
                // A bitfield may not straddle a boundary of its own type's size.
                if bit_off / unit != (bit_off + w - 1) / unit {
                    bit_off = bit_off.div_ceil(unit) * unit;
                }
                bit_off += w;
            }
            None => {
                let byte = bit_off.div_ceil(8);
                let placed = byte.div_ceil(a) * a;
                bit_off = (placed + s) * 8;
            }
        }
    }
    let raw = if is_union {
        max_size
    } else {
        bit_off.div_ceil(8)
    };
    Ok((raw.div_ceil(align).max(1) * align, align))
}
