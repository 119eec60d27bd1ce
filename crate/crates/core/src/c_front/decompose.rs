use serde::Serialize;

use super::ast::*;
use super::macros::MacroDef;
use super::{CSourceFile, ParseError, Span};

#[derive(Debug, Clone, PartialEq)]
pub struct GlobalDecl {
    pub decl: Declaration,
    pub text: String,
    pub span: Span,
}

impl GlobalDecl {
    pub fn names(&self) -> Vec<&str> {
        self.decl
            .declarators
            .iter()
            .filter_map(|d| d.declarator.name())
            .collect()
    }
}

/// A struct, union or enum definition together with any typedef alias
/// introduced by the same declaration.
#[derive(Debug, Clone, PartialEq)]
pub struct RecordDef {
    pub kind: RecordKind,
    pub name: Option<String>,
    pub alias: Option<String>,
    pub decl: Declaration,
    pub text: String,
    pub span: Span,
}

impl RecordDef {
    pub fn record(&self) -> Option<&RecordSpec> {
        match &self.decl.specifiers.base {
            BaseType::Record(r) => Some(r),
            _ => None,
        }
    }

    pub fn enumeration(&self) -> Option<&EnumSpec> {
        match &self.decl.specifiers.base {
            BaseType::Enum(e) => Some(e),
            _ => None,
        }
    }

    /// Tag if present, else the typedef alias.
    pub fn display_name(&self) -> Option<&str> {
        self.name.as_deref().or(self.alias.as_deref())
    }
}

/// Function prototypes and bodiless forward declarations.
#[derive(Debug, Clone, PartialEq)]
pub struct Prototype {
    pub name: Option<String>,
    pub decl: Declaration,
    pub text: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TypedefDecl {
    pub names: Vec<String>,
    pub decl: Declaration,
    pub text: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FunctionEntry {
    pub name: String,
    pub def: FunctionDef,
    pub text: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IncludeEntry {
    pub target: String,
    pub text: String,
    pub span: Span,
}

/// The semantic parts of one C file. Each list is in source order.
#[derive(Debug, Clone, PartialEq)]
pub struct CDecomposition {
    pub includes: Vec<IncludeEntry>,
    pub macros: Vec<MacroDef>,
    pub globals: Vec<GlobalDecl>,
    pub records: Vec<RecordDef>,
    pub typedefs: Vec<TypedefDecl>,
    pub prototypes: Vec<Prototype>,
    pub functions: Vec<FunctionEntry>,
}

/// Counts per category, for reports and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PartCounts {
    pub macros: usize,
    pub globals: usize,
    pub records: usize,
    pub typedefs: usize,
    pub prototypes: usize,
    pub functions: usize,
}

impl CDecomposition {
    pub fn counts(&self) -> PartCounts {
        PartCounts {
            macros: self.macros.len(),
            globals: self.globals.len(),
            records: self.records.len(),
            typedefs: self.typedefs.len(),
            prototypes: self.prototypes.len(),
            functions: self.functions.len(),
        }
    }

    pub fn function(&self, name: &str) -> Option<&FunctionEntry> {
        self.functions.iter().find(|f| f.name == name)
    }

    /// Every entry's span, sorted by start offset.
    pub fn spans(&self) -> Vec<Span> {
        let mut v: Vec<Span> = self
            .includes
            .iter()
            .map(|e| e.span)
            .chain(self.macros.iter().map(|e| e.span))
            .chain(self.globals.iter().map(|e| e.span))
            .chain(self.records.iter().map(|e| e.span))
            .chain(self.typedefs.iter().map(|e| e.span))
            .chain(self.prototypes.iter().map(|e| e.span))
            .chain(self.functions.iter().map(|e| e.span))
            .collect();
        v.sort();
        v
    }
}

fn defines_type(base: &BaseType) -> Option<(RecordKind, Option<String>)> {
    match base {
        BaseType::Record(r) if r.fields.is_some() => Some((r.kind, r.tag.clone())),
        BaseType::Enum(e) if e.variants.is_some() => Some((RecordKind::Enum, e.tag.clone())),
        _ => None,
    }
}

pub fn decompose(
    unit: &TranslationUnit,
    source: &CSourceFile,
    macros: &[MacroDef],
) -> Result<CDecomposition, ParseError> {
    let text_of = |s: Span| source.slice(s).to_string();
    let mut out = CDecomposition {
        includes: unit
            .includes
            .iter()
            .map(|i| IncludeEntry {
                target: i.target.clone(),
                text: text_of(i.span),
                span: i.span,
            })
            .collect(),
        macros: macros.to_vec(),
        globals: vec![],
        records: vec![],
        typedefs: vec![],
        prototypes: vec![],
        functions: vec![],
    };
    for item in &unit.items {
        match item {
            ExternalDecl::Function(f) => {
                let name = f.name().to_string();
                if out.functions.iter().any(|g| g.name == name) {
                    return Err(source.syntax_error(
                        f.declarator.name_span().unwrap_or(f.span),
                        format!("redefinition of function '{name}'"),
                    ));
                }
                out.functions.push(FunctionEntry {
                    name,
                    def: f.clone(),
                    text: text_of(f.span),
                    span: f.span,
                });
            }
            ExternalDecl::Declaration(d) => {
                let text = text_of(d.span);
                let is_typedef = d.specifiers.storage == Some(Storage::Typedef);
                if let Some((kind, name)) = defines_type(&d.specifiers.base) {
                    let alias = if is_typedef {
                        d.declarators
                            .first()
                            .and_then(|x| x.declarator.name())
                            .map(str::to_string)
                    } else {
                        None
                    };
                    out.records.push(RecordDef {
                        kind,
                        name,
                        alias,
                        decl: d.clone(),
                        text,
                        span: d.span,
                    });
                } else if is_typedef {
                    out.typedefs.push(TypedefDecl {
                        names: d
                            .declarators
                            .iter()
                            .filter_map(|x| x.declarator.name())
                            .map(str::to_string)
                            .collect(),
                        decl: d.clone(),
                        text,
                        span: d.span,
                    });
                } else if d.declarators.is_empty() {
                    out.prototypes.push(Prototype {
                        name: None,
                        decl: d.clone(),
                        text,
                        span: d.span,
                    });
                } else if d.declarators.iter().all(|x| x.declarator.is_function()) {
                    out.prototypes.push(Prototype {
                        name: d.declarators[0].declarator.name().map(str::to_string),
                        decl: d.clone(),
                        text,
                        span: d.span,
                    });
                } else if d.declarators.iter().any(|x| x.declarator.is_function()) {
                    return Err(
                        source.unsupported("declaration mixing functions and variables", d.span)
                    );
                } else {
                    out.globals.push(GlobalDecl {
                        decl: d.clone(),
                        text,
                        span: d.span,
                    });
                }
            }
        }
    }
    Ok(out)
}
