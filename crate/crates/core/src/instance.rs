//! Interchange documents for spaces and monoids.
//!
//! A document lists the carrier, the full open-set family by member names,
//! and (for monoids) the Cayley table row by row. Serialization is
//! canonical: opens are ordered by cardinality then lexicographically by
//! member position, members appear in declared point order, and the JSON is
//! compact with a fixed key order, so equal instances produce identical
//! bytes and therefore identical digests.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::finspace::FiniteSpace;
use crate::semigroup::CayleyTable;
use crate::topmonoid::TopMonoid;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub kind: String,
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone)]
pub enum ParsedInstance {
    Space(FiniteSpace),
    Monoid(TopMonoid),
}

impl ParsedInstance {
    pub fn kind(&self) -> &'static str {
        match self {
            ParsedInstance::Space(_) => "space",
            ParsedInstance::Monoid(_) => "monoid",
        }
    }

    pub fn space(&self) -> &FiniteSpace {
        match self {
            ParsedInstance::Space(s) => s,
            ParsedInstance::Monoid(m) => m.space(),
        }
    }

    pub fn doc(&self) -> InstanceDoc {
        match self {
            ParsedInstance::Space(s) => doc_from_space(s),
            ParsedInstance::Monoid(m) => doc_from_monoid(m),
        }
    }
}

pub fn doc_from_space(space: &FiniteSpace) -> InstanceDoc {
    InstanceDoc {
        kind: "space".into(),
        points: space.points().to_vec(),
        opens: space.opens().iter().map(|&o| space.set_names(o)).collect(),
        table: None,
    }
}

pub fn doc_from_table(space: &FiniteSpace, table: &CayleyTable) -> Vec<Vec<String>> {
    let n = space.n();
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| table.points()[table.mul(x, y)].clone())
                .collect()
        })
        .collect()
}

pub fn doc_from_monoid(tm: &TopMonoid) -> InstanceDoc {
    let mut doc = doc_from_space(tm.space());
    doc.kind = "monoid".into();
    doc.table = Some(doc_from_table(tm.space(), tm.algebra()));
    doc
}

pub fn space_from_doc(doc: &InstanceDoc) -> Result<FiniteSpace> {
    FiniteSpace::make_space(doc.points.clone(), &doc.opens)
}

pub fn monoid_from_doc(doc: &InstanceDoc) -> Result<TopMonoid> {
    let table_rows = doc
        .table
        .as_ref()
        .ok_or_else(|| Error::Document("monoid document is missing its table".into()))?;
    let space = space_from_doc(doc)?;
    let table = CayleyTable::make_table(doc.points.clone(), table_rows)?;
    TopMonoid::assemble(space, table)
}

pub fn instance_from_doc(doc: &InstanceDoc) -> Result<ParsedInstance> {
    match doc.kind.as_str() {
        "space" => {
            if doc.table.is_some() {
                return Err(Error::Document(
                    "a space document must not carry a table; use kind `monoid`".into(),
                ));
            }
            Ok(ParsedInstance::Space(space_from_doc(doc)?))
        }
        "monoid" => Ok(ParsedInstance::Monoid(monoid_from_doc(doc)?)),
        other => Err(Error::Document(format!(
            "unknown kind `{other}`; expected `space` or `monoid`"
        ))),
    }
}

/// Compact JSON with the fixed key order `kind`, `points`, `opens`,
/// `table`. Build the document through [`doc_from_space`] or
/// [`doc_from_monoid`] to guarantee the canonical open ordering.
pub fn to_canonical_json(doc: &InstanceDoc) -> String {
    serde_json::to_string(doc).expect("instance documents always serialize")
}

/// Hex SHA-256 of the canonical serialization.
pub fn digest(doc: &InstanceDoc) -> String {
    digest_str(&to_canonical_json(doc))
}

/// Hex SHA-256 of an arbitrary payload string, for fingerprinting composite
/// inputs (instance pairs, instance-plus-partition bundles) the same way
/// single documents are fingerprinted.
pub fn digest_str(payload: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(payload.as_bytes());
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}
