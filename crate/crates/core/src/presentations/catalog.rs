use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

use super::ast::Relation;
use super::key::AlgebraKey;
use super::parser::parse_relation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Transcribed as listed.
    Printed,
    /// A repaired reading of a defective listing.
    Normalized,
    /// Right-side coefficients replaced by unknowns.
    Recover,
}

impl Variant {
    fn suffix(self) -> &'static str {
        match self {
            Variant::Printed => "",
            Variant::Normalized => " normalized",
            Variant::Recover => " recover",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub variant: Variant,
    pub relation: Relation,
    /// Text after the label, as it appears in the file.
    pub source: String,
}

impl CatalogEntry {
    pub fn label(&self) -> String {
        format!("{}{}", self.id, self.variant.suffix())
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.label(), self.relation)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// Lines are `id[ variant]: relation`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Catalog> {
        let mut entries = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = |msg: String| Error::Catalog(format!("line {}: {msg}", lineno + 1));
            let (label, body) = line.split_once(':').ok_or_else(|| at("missing ':' after the label".into()))?;
            let mut parts = label.split_whitespace();
            let id = parts.next().ok_or_else(|| at("empty label".into()))?.to_string();
            let variant = match parts.next() {
                None => Variant::Printed,
                Some("normalized") => Variant::Normalized,
                Some("recover") => Variant::Recover,
                Some(v) => return Err(at(format!("unknown variant {v:?}"))),
            };
            if parts.next().is_some() {
                return Err(at("trailing words in the label".into()));
            }
            let source = body.trim().to_string();
            let relation = parse_relation(&source).map_err(|e| at(e.to_string()))?;
            if variant == Variant::Recover && !relation.has_unknowns() {
                return Err(at("recover entry without unknowns".into()));
            }
            if variant != Variant::Recover && relation.has_unknowns() {
                return Err(at("unknowns outside a recover entry".into()));
            }
            entries.push(CatalogEntry {
                id,
                variant,
                relation,
                source,
            });
        }
        Ok(Catalog { entries })
    }

    pub fn builtin(key: &AlgebraKey) -> Catalog {
        Catalog::parse(key.catalog_source()).expect("built-in catalog parses")
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The printed (or failing that, normalized) entry with this id.
    pub fn reference(&self, id: &str) -> Option<&CatalogEntry> {
        let all: Vec<_> = self.entries.iter().filter(|e| e.id == id).collect();
        all.iter()
            .find(|e| e.variant == Variant::Normalized)
            .or_else(|| all.iter().find(|e| e.variant == Variant::Printed))
            .copied()
    }
}

impl fmt::Display for Catalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}
