//! JSON documents and preset names.
//!
//! All documents serialize compactly with keys in declaration order, so writing and
//! re-reading a document reproduces it byte for byte.
//!
//! | document | shape |
//! |----------|-------|
//! | group | `{"name", "order", "cayley", "generators"?}` |
//! | bracket | `{"group": <group document or file reference>, "star"}` |
//! | construction | `{"H", "K", "sigma", "starK", "gamma", "beta"}` |
//!
//! Group references are resolved as files relative to the referring document and
//! otherwise as preset names: `Zn`, `Dn` (order `2n`), `Qm` (quaternion of order
//! `m`), `S3`, `AxB` and `A:B:sigma=<file>` where the file holds the per-element
//! image tables of the action.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construction::{Action, ConstructionData, ConstructionError, GammaMap, PairingMap};
use crate::group::{
    make_cyclic, make_dihedral, make_direct, make_quaternion, make_semidirect, Elem, FiniteGroup,
    GroupError, GroupRef,
};
use crate::mla::{LieBracket, MlaError};
use crate::search::{EnumerationResult, InducedBracket};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("unknown group preset {0:?}")]
    Preset(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Mla(#[from] MlaError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

pub fn read_file(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), IoError> {
    fs::write(path, contents).map_err(|source| IoError::File {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub name: String,
    pub order: usize,
    pub cayley: Vec<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Elem>>,
}

impl GroupDoc {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupDoc {
            name: g.name().to_string(),
            order: g.order(),
            cayley: g.cayley_rows(),
            generators: g.declared_generators().map(|s| s.to_vec()),
        }
    }

    pub fn to_group(&self) -> Result<FiniteGroup, IoError> {
        if self.cayley.len() != self.order {
            return Err(IoError::Malformed(format!(
                "order {} but {} table rows",
                self.order,
                self.cayley.len()
            )));
        }
        Ok(FiniteGroup::from_table(
            self.name.clone(),
            &self.cayley,
            self.generators.clone(),
        )?)
    }
}

/// An embedded group document or a reference (file path or preset name).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSource {
    Inline(GroupDoc),
    Reference(String),
}

impl GroupSource {
    pub fn resolve(&self, base: &Path) -> Result<GroupRef, IoError> {
        match self {
            GroupSource::Inline(doc) => Ok(Arc::new(doc.to_group()?)),
            GroupSource::Reference(r) => resolve_group(r, base),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketDoc {
    pub group: GroupSource,
    pub star: Vec<Vec<Elem>>,
}

impl BracketDoc {
    pub fn from_bracket(b: &LieBracket) -> Self {
        BracketDoc {
            group: GroupSource::Inline(GroupDoc::from_group(b.group())),
            star: b.rows(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionDoc {
    #[serde(rename = "H")]
    pub h: GroupSource,
    #[serde(rename = "K")]
    pub k: GroupSource,
    pub sigma: Vec<Vec<Elem>>,
    #[serde(rename = "starK")]
    pub star_k: Vec<Vec<Elem>>,
    pub gamma: Vec<Vec<Elem>>,
    pub beta: Vec<Vec<Elem>>,
}

impl ConstructionDoc {
    pub fn from_data(data: &ConstructionData) -> Self {
        ConstructionDoc {
            h: GroupSource::Inline(GroupDoc::from_group(data.h())),
            k: GroupSource::Inline(GroupDoc::from_group(data.k())),
            sigma: data.sigma().tables().to_vec(),
            star_k: data.star_k().rows(),
            gamma: data.gamma().tables().to_vec(),
            beta: data.beta().rows(),
        }
    }

    pub fn to_data(&self, base: &Path) -> Result<ConstructionData, IoError> {
        let h = self.h.resolve(base)?;
        let k = self.k.resolve(base)?;
        let sigma = Action::new(h.clone(), k.clone(), self.sigma.clone())?;
        let star_k = LieBracket::new(k.clone(), &self.star_k)?;
        let gamma = GammaMap::new(h.clone(), k.clone(), self.gamma.clone())?;
        let beta = PairingMap::new(h, k, &self.beta)?;
        Ok(ConstructionData::new(sigma, star_k, gamma, beta)?)
    }
}

/// Compact JSON with keys in declaration order.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("documents always serialize")
}

pub fn group_to_json(g: &FiniteGroup) -> String {
    to_canonical_json(&GroupDoc::from_group(g))
}

pub fn group_from_json(text: &str) -> Result<FiniteGroup, IoError> {
    let doc: GroupDoc = serde_json::from_str(text)?;
    doc.to_group()
}

pub fn bracket_to_json(b: &LieBracket) -> String {
    to_canonical_json(&BracketDoc::from_bracket(b))
}

/// The group and raw table of a bracket document, without verifying the axioms.
pub fn bracket_table_from_json(
    text: &str,
    base: &Path,
) -> Result<(GroupRef, Vec<Vec<Elem>>), IoError> {
    let doc: BracketDoc = serde_json::from_str(text)?;
    Ok((doc.group.resolve(base)?, doc.star))
}

/// A verified bracket.
pub fn bracket_from_json(text: &str, base: &Path) -> Result<LieBracket, IoError> {
    let (g, rows) = bracket_table_from_json(text, base)?;
    Ok(LieBracket::new(g, &rows)?)
}

pub fn construction_to_json(data: &ConstructionData) -> String {
    to_canonical_json(&ConstructionDoc::from_data(data))
}

pub fn construction_from_json(text: &str, base: &Path) -> Result<ConstructionData, IoError> {
    let doc: ConstructionDoc = serde_json::from_str(text)?;
    doc.to_data(base)
}

pub fn brackets_result_to_json(r: &EnumerationResult<LieBracket>) -> String {
    to_canonical_json(&r.clone().map(|b| BracketDoc::from_bracket(&b)))
}

pub fn induced_result_to_json(r: &EnumerationResult<InducedBracket>) -> String {
    to_canonical_json(&r.clone().map(|b| BracketDoc::from_bracket(&b.bracket)))
}

/// A file (relative to `base`) holding a group document, or a preset name.
pub fn resolve_group(reference: &str, base: &Path) -> Result<GroupRef, IoError> {
    let path = base.join(reference);
    if path.is_file() {
        return Ok(Arc::new(group_from_json(&read_file(&path)?)?));
    }
    Ok(Arc::new(parse_preset(reference, base)?))
}

/// Builds a preset group from its name.
pub fn parse_preset(name: &str, base: &Path) -> Result<FiniteGroup, IoError> {
    let name = name.trim();
    let unknown = || IoError::Preset(name.to_string());
    if let Some((left, rest)) = name.split_once(':') {
        let (right, file) = rest.split_once(":sigma=").ok_or_else(unknown)?;
        let h: GroupRef = Arc::new(parse_preset(left, base)?);
        let k: GroupRef = Arc::new(parse_preset(right, base)?);
        let tables: Vec<Vec<Elem>> = serde_json::from_str(&read_file(&base.join(file))?)?;
        let sigma = Action::new(h.clone(), k.clone(), tables)?;
        return Ok(make_semidirect(&h, &k, &sigma)?);
    }
    if let Some((left, right)) = name.rsplit_once('x') {
        return Ok(make_direct(
            &parse_preset(left, base)?,
            &parse_preset(right, base)?,
        ));
    }
    if name == "S3" {
        return Ok(make_dihedral(3).with_name("S3"));
    }
    let (kind, digits) = name.split_at(
        name.find(|c: char| c.is_ascii_digit())
            .ok_or_else(unknown)?,
    );
    let n: usize = digits.parse().map_err(|_| unknown())?;
    match kind {
        "Z" if n >= 1 => Ok(make_cyclic(n)),
        "D" if n >= 2 => Ok(make_dihedral(n)),
        "Q" if n >= 4 && n.is_multiple_of(4) => Ok(make_quaternion(n / 4)),
        _ => Err(unknown()),
    }
}
