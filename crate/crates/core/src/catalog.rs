//! Named reference diagrams with optional frozen invariant values.
//!
//! The built-in catalog seeds the verification harness and the CLI's
//! `--name` lookup. External catalogs are JSON arrays of entries; names
//! must be unique and codes must parse and validate.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::gauss::TwistedCode;

/// One catalog entry: a named diagram, a human note, and optionally some
/// frozen invariant values keyed by `<variant>-<kind>:<target>` (for
/// coloring counts) or other invariant names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub code: String,
    pub notes: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expected: BTreeMap<String, u64>,
}

impl CatalogEntry {
    pub fn parsed(&self) -> TwistedCode {
        TwistedCode::parse(&self.code).expect("catalog codes are validated on load")
    }
}

#[derive(Debug)]
pub enum CatalogError {
    Io(std::io::Error),
    Json(serde_json::Error),
    InvalidCode { name: String, message: String },
    DuplicateName(String),
}

impl fmt::Display for CatalogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogError::Io(e) => write!(f, "cannot read catalog: {e}"),
            CatalogError::Json(e) => write!(f, "malformed catalog JSON: {e}"),
            CatalogError::InvalidCode { name, message } => {
                write!(f, "entry '{name}' has an invalid code: {message}")
            }
            CatalogError::DuplicateName(name) => {
                write!(f, "duplicate catalog entry name '{name}'")
            }
        }
    }
}

impl std::error::Error for CatalogError {}

fn entry(name: &str, code: &str, notes: &str, expected: &[(&str, u64)]) -> CatalogEntry {
    CatalogEntry {
        name: name.into(),
        code: code.into(),
        notes: notes.into(),
        expected: expected
            .iter()
            .map(|(k, v)| (k.to_string(), *v))
            .collect(),
    }
}

/// The built-in catalog.
pub fn builtin_catalog() -> Vec<CatalogEntry> {
    vec![
        entry(
            "unknot",
            "()",
            "crossingless unknot",
            &[("twisted-group:S3", 36), ("cover-components", 2)],
        ),
        entry(
            "unknot-bar",
            "(*)",
            "unknot with a single bar; its double cover is a one-component unknot",
            &[("twisted-group:S3", 6), ("cover-components", 1)],
        ),
        entry(
            "trefoil",
            "(O1+ U2+ O3+ U1+ O2+ U3+)",
            "classical positive trefoil",
            &[("upper-group:S3", 12), ("upper-quandle:R3", 9)],
        ),
        entry(
            "virtual-trefoil",
            "(O1+ O2+ U1+ U2+)",
            "two-crossing virtual knot; its underlying surface diagram has genus 1",
            &[],
        ),
        entry(
            "kink-bar",
            "(O1+ U1+ *)",
            "one positive kink and one bar; the associated surface piece is non-orientable",
            &[("cover-components", 1)],
        ),
        entry(
            "kishino",
            "(O1+ U2+ O2+ U1+ O3- U4- O4- U3-)",
            "connected sum of two clasps that each unknot alone; all upper coloring \
             counts here match the unknot's, so these invariants do not separate it",
            &[("upper-group:S3", 6), ("upper-quandle:R3", 3)],
        ),
        entry(
            "kishino-bars",
            "(O1+ * U2+ O2+ * U1+ O3- U4- O4- U3-)",
            "the kishino diagram with two bars around its left clasp; every twisted \
             invariant computed here matches the unknot's",
            &[("twisted-group:S3", 36), ("cover-components", 2)],
        ),
        entry(
            "fig5-left",
            "(O1- U2- O2- U1- O3+ U4+ O4+ U3+)",
            "the kishino diagram traversed from its other clasp",
            &[("upper-group:S3", 6)],
        ),
        entry(
            "fig5-bottom-left",
            "(* U1+ * U2+ O2+ * O1+ * O3- U4- O4- U3-)",
            "obtained from the kishino diagram by two bar-pair insertions and one \
             bar slide through crossing 1; twisted-equivalent to it by construction",
            &[("twisted-group:S3", 36)],
        ),
    ]
}

fn check(entries: Vec<CatalogEntry>) -> Result<Vec<CatalogEntry>, CatalogError> {
    let mut names = BTreeSet::new();
    for e in &entries {
        if !names.insert(e.name.clone()) {
            return Err(CatalogError::DuplicateName(e.name.clone()));
        }
        TwistedCode::parse(&e.code).map_err(|err| CatalogError::InvalidCode {
            name: e.name.clone(),
            message: err.to_string(),
        })?;
    }
    Ok(entries)
}

/// Parse a catalog from its JSON text.
pub fn catalog_from_json(text: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    check(serde_json::from_str(text).map_err(CatalogError::Json)?)
}

/// Load a catalog: the built-in one when `path` is `None`, otherwise the
/// JSON file at `path`.
pub fn catalog_load(path: Option<&Path>) -> Result<Vec<CatalogEntry>, CatalogError> {
    match path {
        None => Ok(builtin_catalog()),
        Some(p) => {
            catalog_from_json(&std::fs::read_to_string(p).map_err(CatalogError::Io)?)
        }
    }
}

/// Look an entry up by name.
pub fn catalog_find<'a>(entries: &'a [CatalogEntry], name: &str) -> Option<&'a CatalogEntry> {
    entries.iter().find(|e| e.name == name)
}
