//! Deterministic rule-based C-to-Java translator.
//!
//! Every translation decision is attributed to a [`RuleId`]; the set of rules
//! that fired for a function is available through [`applicable_rules`].

mod consts;
mod func;
mod names;
mod printf;
mod records;
pub mod types;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::c_front::ast::{FunctionDef, RecordKind, Stmt};
use crate::c_front::{CDecomposition, GlobalDecl, MacroDef, ParseError, RecordDef, Span};

pub use names::{class_identifier, java_identifier};
pub use records::{cstring_helper, translate_global, translate_record};
use types::{CType, JTy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleId {
    #[serde(rename = "R-goto-fwd")]
    GotoFwd,
    #[serde(rename = "R-goto-back")]
    GotoBack,
    #[serde(rename = "R-union")]
    Union,
    #[serde(rename = "R-unsigned")]
    Unsigned,
    #[serde(rename = "R-addr")]
    Addr,
    #[serde(rename = "R-ptr")]
    Ptr,
    #[serde(rename = "R-copy")]
    Copy,
    #[serde(rename = "R-macro")]
    Macro,
    #[serde(rename = "R-bool")]
    Bool,
    #[serde(rename = "R-mem")]
    Mem,
    #[serde(rename = "R-str")]
    Str,
    #[serde(rename = "R-voidptr")]
    VoidPtr,
    #[serde(rename = "R-outparam")]
    OutParam,
    #[serde(rename = "R-fnptr")]
    FnPtr,
    #[serde(rename = "R-enum")]
    Enum,
    #[serde(rename = "R-sizeof")]
    Sizeof,
    #[serde(rename = "R-switch")]
    Switch,
    #[serde(rename = "R-bitfield")]
    Bitfield,
}

impl RuleId {
    /// Registry order. Lists of fired rules are reported in this order.
    pub const ALL: [RuleId; 18] = [
        RuleId::GotoFwd,
        RuleId::GotoBack,
        RuleId::Union,
        RuleId::Unsigned,
        RuleId::Addr,
        RuleId::Ptr,
        RuleId::Copy,
        RuleId::Macro,
        RuleId::Bool,
        RuleId::Mem,
        RuleId::Str,
        RuleId::VoidPtr,
        RuleId::OutParam,
        RuleId::FnPtr,
        RuleId::Enum,
        RuleId::Sizeof,
        RuleId::Switch,
        RuleId::Bitfield,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::GotoFwd => "R-goto-fwd",
            RuleId::GotoBack => "R-goto-back",
            RuleId::Union => "R-union",
            RuleId::Unsigned => "R-unsigned",
            RuleId::Addr => "R-addr",
            RuleId::Ptr => "R-ptr",
            RuleId::Copy => "R-copy",
            RuleId::Macro => "R-macro",
            RuleId::Bool => "R-bool",
            RuleId::Mem => "R-mem",
            RuleId::Str => "R-str",
            RuleId::VoidPtr => "R-voidptr",
            RuleId::OutParam => "R-outparam",
            RuleId::FnPtr => "R-fnptr",
            RuleId::Enum => "R-enum",
            RuleId::Sizeof => "R-sizeof",
            RuleId::Switch => "R-switch",
            RuleId::Bitfield => "R-bitfield",
        }
    }

    pub fn parse(s: &str) -> Option<RuleId> {
        RuleId::ALL.into_iter().find(|r| r.as_str() == s)
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("unsupported construct: {construct}")]
    Unsupported { construct: String },
    #[error("unresolved symbol '{name}'")]
    UnresolvedSymbol { name: String },
    #[error("rule conflict: {first} and {second} both claim the node at bytes {}..{}", at.start, at.end)]
    RuleConflict {
        first: RuleId,
        second: RuleId,
        at: Span,
    },
    #[error("in {function}: {source}")]
    InFunction {
        function: String,
        #[source]
        source: Box<TranslateError>,
    },
    #[error("macro expansion failed: {0}")]
    Macro(#[from] ParseError),
}

impl TranslateError {
    pub fn unsupported(construct: impl Into<String>) -> Self {
        TranslateError::Unsupported {
            construct: construct.into(),
        }
    }

    fn in_function(self, function: &str) -> Self {
        match self {
            e @ TranslateError::InFunction { .. } => e,
            e => TranslateError::InFunction {
                function: function.to_string(),
                source: Box::new(e),
            },
        }
    }

    /// The error with any function wrapper removed.
    pub fn root(&self) -> &TranslateError {
        match self {
            TranslateError::InFunction { source, .. } => source.root(),
            e => e,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SnippetKind {
    StaticField,
    NestedClass,
    Method,
}

/// One translated fragment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JavaSnippet {
    pub kind: SnippetKind,
    pub name: String,
    pub text: String,
}

impl JavaSnippet {
    pub fn new(kind: SnippetKind, name: impl Into<String>, text: impl Into<String>) -> Self {
        JavaSnippet {
            kind,
            name: name.into(),
            text: text.into(),
        }
    }
}

// ------------------------------------------------------------------ context

#[derive(Debug, Clone, PartialEq)]
pub struct GlobalInfo {
    pub java_name: String,
    pub cty: CType,
    pub jty: JTy,
    pub is_const: bool,
}

/// Location of a bitfield inside the packed backing words of its class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BitSlot {
    pub word: usize,
    pub offset: u32,
    pub width: u32,
    pub signed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldInfo {
    pub c_name: String,
    pub java_name: String,
    pub cty: CType,
    pub bits: Option<BitSlot>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecordInfo {
    pub kind: RecordKind,
    pub java_name: String,
    pub fields: Vec<FieldInfo>,
    pub size: u64,
    pub align: u64,
    pub bit_words: usize,
}

impl RecordInfo {
    pub fn field(&self, name: &str) -> Option<&FieldInfo> {
        self.fields.iter().find(|f| f.c_name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumInfo {
    pub java_name: String,
    pub constants: Vec<(String, i64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSig {
    pub java_name: String,
    pub ret: CType,
    pub params: Vec<(Option<String>, CType)>,
    pub variadic: bool,
    /// Index of a `T **` parameter rewritten into the return value.
    pub out_param: Option<usize>,
    pub defined: bool,
}

/// Read-only symbol views shared by all translations of one file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TranslationContext {
    pub globals: BTreeMap<String, GlobalInfo>,
    pub records: BTreeMap<String, RecordInfo>,
    pub macros: BTreeMap<String, MacroDef>,
    pub enums: BTreeMap<String, EnumInfo>,
    /// Enumerator name to (enum tag, value).
    pub enum_constants: BTreeMap<String, (String, i64)>,
    pub typedefs: BTreeMap<String, CType>,
    pub functions: BTreeMap<String, FunctionSig>,
}

impl TranslationContext {
    pub fn build(parts: &CDecomposition) -> Result<Self, TranslateError> {
        let mut ctx = TranslationContext {
            macros: parts
                .macros
                .iter()
                .map(|m| (m.name.clone(), m.clone()))
                .collect(),
            ..Default::default()
        };
        enum Item<'a> {
            Record(&'a RecordDef),
            Typedef(&'a crate::c_front::TypedefDecl),
            Global(&'a GlobalDecl),
            Proto(&'a crate::c_front::Prototype),
            Func(&'a crate::c_front::FunctionEntry),
        }
        let mut items: Vec<(Span, Item)> = Vec::new();
        items.extend(parts.records.iter().map(|r| (r.span, Item::Record(r))));
        items.extend(parts.typedefs.iter().map(|r| (r.span, Item::Typedef(r))));
        items.extend(parts.globals.iter().map(|r| (r.span, Item::Global(r))));
        items.extend(parts.prototypes.iter().map(|r| (r.span, Item::Proto(r))));
        items.extend(parts.functions.iter().map(|r| (r.span, Item::Func(r))));
        items.sort_by_key(|(s, _)| *s);
        for (_, item) in items {
            match item {
                Item::Record(r) => records::register_record(&mut ctx, r)?,
                Item::Typedef(t) => {
                    let base = types::base_type(&t.decl.specifiers, &ctx)?;
                    for d in &t.decl.declarators {
                        let ty = ctx.resolve(base.clone(), &d.declarator)?;
                        if let Some(n) = d.declarator.name() {
                            ctx.typedefs.insert(n.to_string(), ty);
                        }
                    }
                }
                Item::Global(g) => records::register_global(&mut ctx, g)?,
                Item::Proto(p) => {
                    let decl = &p.decl;
                    if decl.declarators.is_empty() {
                        continue;
                    }
                    let base = types::base_type(&decl.specifiers, &ctx)?;
                    for d in &decl.declarators {
                        let name = d.declarator.name().unwrap_or_default().to_string();
                        if ctx.functions.get(&name).is_some_and(|f| f.defined) {
                            continue;
                        }
                        let sig = ctx.signature(base.clone(), &d.declarator, None, false)?;
                        ctx.functions.insert(name, sig);
                    }
                }
                Item::Func(f) => {
                    let base = types::base_type(&f.def.specifiers, &ctx)?;
                    let out = func::detect_out_param(&f.def, &ctx)?;
                    let sig = ctx.signature(base, &f.def.declarator, out, true)?;
                    ctx.functions.insert(f.name.clone(), sig);
                }
            }
        }
        Ok(ctx)
    }

    fn signature(
        &self,
        base: CType,
        d: &crate::c_front::ast::Declarator,
        out_param: Option<usize>,
        defined: bool,
    ) -> Result<FunctionSig, TranslateError> {
        let name = d.name().unwrap_or_default().to_string();
        let (params_ast, variadic) = d
            .function_suffix()
            .ok_or_else(|| TranslateError::unsupported(format!("{name} is not a function")))?;
        // Return type: apply the declarator without its function suffix.
        let mut ret = base;
        for _ in &d.pointers {
            ret = CType::Pointer(Box::new(ret));
        }
        let mut params = Vec::new();
        for p in params_ast {
            let pb = types::base_type(&p.specifiers, self)?;
            let pt = types::adjust_param(self.resolve(pb, &p.declarator)?);
            params.push((p.declarator.name().map(str::to_string), pt));
        }
        Ok(FunctionSig {
            java_name: names::java_identifier(&name),
            ret,
            params,
            variadic,
            out_param,
            defined,
        })
    }

    pub(crate) fn resolve(
        &self,
        base: CType,
        d: &crate::c_front::ast::Declarator,
    ) -> Result<CType, TranslateError> {
        types::apply_declarator(base, d, self, &|e| consts::eval(e, self))
    }

    /// Java class name for a struct or enum tag.
    pub fn class_name_of(&self, tag: &str) -> Result<String, TranslateError> {
        if let Some(r) = self.records.get(tag) {
            return Ok(r.java_name.clone());
        }
        if let Some(e) = self.enums.get(tag) {
            return Ok(e.java_name.clone());
        }
        Err(TranslateError::UnresolvedSymbol {
            name: tag.to_string(),
        })
    }

    /// Names of all typedefs, for parsing macro expansions.
    pub fn typedef_names(&self) -> Vec<String> {
        self.typedefs.keys().cloned().collect()
    }
}

/// Translates one function definition.
pub fn translate_function(
    def: &FunctionDef,
    ctx: &TranslationContext,
) -> Result<JavaSnippet, TranslateError> {
    func::translate(def, ctx, None)
        .map(|(snippet, _)| snippet)
        .map_err(|e| e.in_function(def.name()))
}

/// Rule ids fired while translating `def`, in registry order. When
/// translation fails part-way, the rules fired before the failure are
/// returned.
pub fn applicable_rules(def: &FunctionDef, ctx: &TranslationContext) -> Vec<RuleId> {
    let mut fired = Vec::new();
    let _ = func::translate(def, ctx, Some(&mut fired));
    let mut v: Vec<RuleId> = RuleId::ALL
        .into_iter()
        .filter(|r| fired.contains(r))
        .collect();
    v.dedup();
    v
}

/// Rules fired anywhere in a decomposed file (functions and records).
pub fn applicable_rules_for_file(parts: &CDecomposition) -> Result<Vec<RuleId>, TranslateError> {
    let ctx = TranslationContext::build(parts)?;
    let mut all = Vec::new();
    for f in &parts.functions {
        all.extend(applicable_rules(&f.def, &ctx));
    }
    if ctx.records.values().any(|r| r.bit_words > 0) {
        all.push(RuleId::Bitfield);
    }
    Ok(RuleId::ALL
        .into_iter()
        .filter(|r| all.contains(r))
        .collect())
}

/// Translates every part of a decomposed file, in decomposition order:
/// globals, records, then functions. Helper classes required by the
/// generated methods are appended after the records.
pub fn translate_file(parts: &CDecomposition) -> Result<Vec<JavaSnippet>, TranslateError> {
    let ctx = TranslationContext::build(parts)?;
    let mut out = Vec::new();
    for g in &parts.globals {
        out.push(translate_global(g, &ctx)?);
    }
    for r in &parts.records {
        out.push(translate_record(r, &ctx)?);
    }
    let mut methods = Vec::new();
    for f in &parts.functions {
        methods.push(translate_function(&f.def, &ctx)?);
    }
    if methods.iter().any(|m| m.text.contains("CString.")) {
        out.push(cstring_helper());
    }
    out.extend(methods);
    Ok(out)
}

/// Walks a function body for `*name = ...` assignments.
fn body_assigns_through(body: &Stmt, name: &str) -> bool {
    use crate::c_front::ast::{walk_stmt_exprs, ExprKind, UnaryOp};
    let mut found = false;
    walk_stmt_exprs(body, &mut |e| {
        if let ExprKind::Assign { op: None, lhs, .. } = &e.kind {
            if let ExprKind::Unary {
                op: UnaryOp::Deref,
                operand,
            } = &lhs.unparen().kind
            {
                if operand.as_ident() == Some(name) {
                    found = true;
                }
            }
        }
    });
    found
}
