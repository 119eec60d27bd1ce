//! Syntax tree for the supported C subset.
//!
//! Every node carries the byte span it was parsed from. Parentheses are kept
//! as explicit [`ExprKind::Paren`] nodes so that printers can reproduce the
//! source grouping exactly.

use super::Span;

#[derive(Debug, Clone, PartialEq)]
pub struct TranslationUnit {
    pub items: Vec<ExternalDecl>,
    pub includes: Vec<IncludeDirective>,
}

/// An `#include` line. Recognized and otherwise ignored.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct IncludeDirective {
    pub target: String,
    pub span: Span,
}

// Built once per file; boxing the function variant buys nothing.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq)]
pub enum ExternalDecl {
    Function(FunctionDef),
    Declaration(Declaration),
}

impl ExternalDecl {
    pub fn span(&self) -> Span {
        match self {
            ExternalDecl::Function(f) => f.span,
            ExternalDecl::Declaration(d) => d.span,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FunctionDef {
    pub specifiers: DeclSpec,
    pub declarator: Declarator,
    pub body: Stmt,
    pub span: Span,
}

impl FunctionDef {
    pub fn name(&self) -> &str {
        self.declarator.name().unwrap_or("")
    }

    /// Parameters of the outermost function suffix of the declarator.
    pub fn params(&self) -> &[ParamDecl] {
        self.declarator
            .function_suffix()
            .map(|(p, _)| p)
            .unwrap_or(&[])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Storage {
    Typedef,
    Static,
    Extern,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeclSpec {
    pub storage: Option<Storage>,
    pub is_const: bool,
    pub base: BaseType,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BaseType {
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
    Record(RecordSpec),
    Enum(EnumSpec),
    TypedefName(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordKind {
    Struct,
    Union,
    Enum,
}

impl RecordKind {
    pub fn keyword(self) -> &'static str {
        match self {
            RecordKind::Struct => "struct",
            RecordKind::Union => "union",
            RecordKind::Enum => "enum",
        }
    }
}

/// `struct Tag`, `union Tag`, optionally with a field list.
#[derive(Debug, Clone, PartialEq)]
pub struct RecordSpec {
    pub kind: RecordKind,
    pub tag: Option<String>,
    pub fields: Option<Vec<FieldDecl>>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldDecl {
    pub specifiers: DeclSpec,
    pub declarator: Declarator,
    pub bit_width: Option<Expr>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnumSpec {
    pub tag: Option<String>,
    pub variants: Option<Vec<Enumerator>>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Enumerator {
    pub name: String,
    pub value: Option<Expr>,
    pub span: Span,
}

/// A (possibly abstract) declarator.
///
/// Types are built inside out: `pointers` wrap the base type first, then the
/// `suffixes` are applied right to left, and finally the nested declarator (if
/// any) wraps the result.
#[derive(Debug, Clone, PartialEq)]
pub struct Declarator {
    pub pointers: Vec<PointerQual>,
    pub core: DeclaratorCore,
    pub suffixes: Vec<DeclSuffix>,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointerQual {
    pub is_const: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DeclaratorCore {
    Name(String, Span),
    Abstract,
    Nested(Box<Declarator>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum DeclSuffix {
    Array(Option<Expr>),
    Function {
        params: Vec<ParamDecl>,
        variadic: bool,
    },
}

impl Declarator {
    pub fn name(&self) -> Option<&str> {
        match &self.core {
            DeclaratorCore::Name(n, _) => Some(n),
            DeclaratorCore::Abstract => None,
            DeclaratorCore::Nested(inner) => inner.name(),
        }
    }

    pub fn name_span(&self) -> Option<Span> {
        match &self.core {
            DeclaratorCore::Name(_, s) => Some(*s),
            DeclaratorCore::Abstract => None,
            DeclaratorCore::Nested(inner) => inner.name_span(),
        }
    }

    /// True when the declared entity is itself a function (not a pointer to
    /// one): `int f(void)` but not `int (*f)(void)`.
    pub fn is_function(&self) -> bool {
        self.function_suffix().is_some()
    }

    pub fn function_suffix(&self) -> Option<(&[ParamDecl], bool)> {
        if !matches!(self.core, DeclaratorCore::Name(..)) {
            return None;
        }
        match self.suffixes.first() {
            Some(DeclSuffix::Function { params, variadic }) => Some((params, *variadic)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParamDecl {
    pub specifiers: DeclSpec,
    pub declarator: Declarator,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Declaration {
    pub specifiers: DeclSpec,
    pub declarators: Vec<InitDeclarator>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InitDeclarator {
    pub declarator: Declarator,
    pub init: Option<Initializer>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Initializer {
    Expr(Expr),
    List(Vec<Initializer>, Span),
}

impl Initializer {
    pub fn span(&self) -> Span {
        match self {
            Initializer::Expr(e) => e.span,
            Initializer::List(_, s) => *s,
        }
    }
}

/// Type name as used in casts and `sizeof(T)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TypeName {
    pub specifiers: DeclSpec,
    pub declarator: Declarator,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StmtKind {
    Compound(Vec<Stmt>),
    Decl(Declaration),
    Expr(Option<Expr>),
    If {
        cond: Expr,
        then: Box<Stmt>,
        els: Option<Box<Stmt>>,
    },
    While {
        cond: Expr,
        body: Box<Stmt>,
    },
    DoWhile {
        body: Box<Stmt>,
        cond: Expr,
    },
    For {
        init: Option<ForInit>,
        cond: Option<Expr>,
        step: Option<Expr>,
        body: Box<Stmt>,
    },
    Switch {
        cond: Expr,
        body: Box<Stmt>,
    },
    Case {
        value: Expr,
        body: Box<Stmt>,
    },
    Default {
        body: Box<Stmt>,
    },
    Break,
    Continue,
    Return(Option<Expr>),
    Goto(String),
    Labeled {
        label: String,
        body: Box<Stmt>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum ForInit {
    Decl(Declaration),
    Expr(Expr),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Mul,
    Div,
    Rem,
    Add,
    Sub,
    Shl,
    Shr,
    Lt,
    Gt,
    Le,
    Ge,
    Eq,
    Ne,
    BitAnd,
    BitXor,
    BitOr,
    And,
    Or,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Rem => "%",
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Shl => "<<",
            BinOp::Shr => ">>",
            BinOp::Lt => "<",
            BinOp::Gt => ">",
            BinOp::Le => "<=",
            BinOp::Ge => ">=",
            BinOp::Eq => "==",
            BinOp::Ne => "!=",
            BinOp::BitAnd => "&",
            BinOp::BitXor => "^",
            BinOp::BitOr => "|",
            BinOp::And => "&&",
            BinOp::Or => "||",
        }
    }

    pub fn is_comparison(self) -> bool {
        matches!(
            self,
            BinOp::Lt | BinOp::Gt | BinOp::Le | BinOp::Ge | BinOp::Eq | BinOp::Ne
        )
    }

    pub fn is_logical(self) -> bool {
        matches!(self, BinOp::And | BinOp::Or)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Plus,
    Not,
    BitNot,
    Deref,
    AddrOf,
    PreInc,
    PreDec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PostfixOp {
    Inc,
    Dec,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    IntLit {
        value: u64,
        unsigned: bool,
        long: bool,
        radix: u32,
    },
    FloatLit {
        value: f64,
        single: bool,
    },
    CharLit(i64),
    /// Adjacent literals are merged; `value` excludes the terminating NUL.
    StrLit(Vec<u8>),
    Ident(String),
    Paren(Box<Expr>),
    Unary {
        op: UnaryOp,
        operand: Box<Expr>,
    },
    Postfix {
        op: PostfixOp,
        operand: Box<Expr>,
    },
    Binary {
        op: BinOp,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Assign {
        op: Option<BinOp>,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Ternary {
        cond: Box<Expr>,
        then: Box<Expr>,
        els: Box<Expr>,
    },
    Call {
        callee: Box<Expr>,
        args: Vec<Expr>,
    },
    Index {
        base: Box<Expr>,
        index: Box<Expr>,
    },
    Member {
        base: Box<Expr>,
        field: String,
        arrow: bool,
    },
    Cast {
        ty: Box<TypeName>,
        expr: Box<Expr>,
    },
    SizeofType(Box<TypeName>),
    SizeofExpr(Box<Expr>),
    Comma {
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
}

impl Expr {
    /// Strips any number of enclosing parentheses.
    pub fn unparen(&self) -> &Expr {
        let mut e = self;
        while let ExprKind::Paren(inner) = &e.kind {
            e = inner;
        }
        e
    }

    pub fn as_ident(&self) -> Option<&str> {
        match &self.unparen().kind {
            ExprKind::Ident(n) => Some(n),
            _ => None,
        }
    }
}

/// Visits every expression reachable from a statement, in source order.
pub fn walk_stmt_exprs<'a>(stmt: &'a Stmt, f: &mut dyn FnMut(&'a Expr)) {
    match &stmt.kind {
        StmtKind::Compound(items) => items.iter().for_each(|s| walk_stmt_exprs(s, f)),
        StmtKind::Decl(d) => walk_decl_exprs(d, f),
        StmtKind::Expr(Some(e)) | StmtKind::Return(Some(e)) => walk_expr(e, f),
        StmtKind::Expr(None) | StmtKind::Return(None) => {}
        StmtKind::If { cond, then, els } => {
            walk_expr(cond, f);
            walk_stmt_exprs(then, f);
            if let Some(e) = els {
                walk_stmt_exprs(e, f);
            }
        }
        StmtKind::While { cond, body } | StmtKind::DoWhile { body, cond } => {
            walk_expr(cond, f);
            walk_stmt_exprs(body, f);
        }
        StmtKind::For {
            init,
            cond,
            step,
            body,
        } => {
            match init {
                Some(ForInit::Decl(d)) => walk_decl_exprs(d, f),
                Some(ForInit::Expr(e)) => walk_expr(e, f),
                None => {}
            }
            if let Some(c) = cond {
                walk_expr(c, f);
            }
            if let Some(s) = step {
                walk_expr(s, f);
            }
            walk_stmt_exprs(body, f);
        }
        StmtKind::Switch { cond, body } => {
            walk_expr(cond, f);
            walk_stmt_exprs(body, f);
        }
        StmtKind::Case { value, body } => {
            walk_expr(value, f);
            walk_stmt_exprs(body, f);
        }
        StmtKind::Default { body } | StmtKind::Labeled { body, .. } => walk_stmt_exprs(body, f),
        StmtKind::Break | StmtKind::Continue | StmtKind::Goto(_) => {}
    }
}

pub fn walk_decl_exprs<'a>(decl: &'a Declaration, f: &mut dyn FnMut(&'a Expr)) {
    for d in &decl.declarators {
        if let Some(init) = &d.init {
            walk_init(init, f);
        }
    }
}

fn walk_init<'a>(init: &'a Initializer, f: &mut dyn FnMut(&'a Expr)) {
    match init {
        Initializer::Expr(e) => walk_expr(e, f),
        Initializer::List(items, _) => items.iter().for_each(|i| walk_init(i, f)),
    }
}

/// Pre-order walk over an expression tree.
pub fn walk_expr<'a>(expr: &'a Expr, f: &mut dyn FnMut(&'a Expr)) {
    f(expr);
    match &expr.kind {
        ExprKind::IntLit { .. }
        | ExprKind::FloatLit { .. }
        | ExprKind::CharLit(_)
        | ExprKind::StrLit(_)
        | ExprKind::Ident(_)
        | ExprKind::SizeofType(_) => {}
        ExprKind::Paren(e)
        | ExprKind::Unary { operand: e, .. }
        | ExprKind::Postfix { operand: e, .. }
        | ExprKind::Cast { expr: e, .. }
        | ExprKind::SizeofExpr(e)
        | ExprKind::Member { base: e, .. } => walk_expr(e, f),
        ExprKind::Binary { lhs, rhs, .. }
        | ExprKind::Assign { lhs, rhs, .. }
        | ExprKind::Comma { lhs, rhs } => {
            walk_expr(lhs, f);
            walk_expr(rhs, f);
        }
        ExprKind::Index { base, index } => {
            walk_expr(base, f);
            walk_expr(index, f);
        }
        ExprKind::Ternary { cond, then, els } => {
            walk_expr(cond, f);
            walk_expr(then, f);
            walk_expr(els, f);
        }
        ExprKind::Call { callee, args } => {
            walk_expr(callee, f);
            args.iter().for_each(|a| walk_expr(a, f));
        }
    }
}

/// Visits every statement (including nested ones) in source order.
pub fn walk_stmts<'a>(stmt: &'a Stmt, f: &mut dyn FnMut(&'a Stmt)) {
    f(stmt);
    match &stmt.kind {
        StmtKind::Compound(items) => items.iter().for_each(|s| walk_stmts(s, f)),
        StmtKind::If { then, els, .. } => {
            walk_stmts(then, f);
            if let Some(e) = els {
                walk_stmts(e, f);
            }
        }
        StmtKind::While { body, .. }
        | StmtKind::DoWhile { body, .. }
        | StmtKind::For { body, .. }
        | StmtKind::Switch { body, .. }
        | StmtKind::Case { body, .. }
        | StmtKind::Default { body }
        | StmtKind::Labeled { body, .. } => walk_stmts(body, f),
        _ => {}
    }
}
