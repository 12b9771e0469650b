//! Bundled diagram corpus: named PD codes plus the Reidemeister-move
//! regression pairs. The JSON file ships at `corpus/diagrams.json` and is
//! also embedded so loaders work from any working directory.

use crate::diagram::{LinkDiagram, PdError};
use serde::Deserialize;
use std::collections::BTreeMap;

pub const EMBEDDED_CORPUS: &str =
    include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus/diagrams.json"));

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("corpus file is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("corpus entry `{name}` has an invalid PD code: {source}")]
    BadEntry {
        name: String,
        #[source]
        source: PdError,
    },
    #[error("no corpus diagram named `{0}`")]
    UnknownName(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Deserialize)]
struct CorpusFile {
    #[allow(dead_code)]
    schema: u32,
    diagrams: Vec<CorpusEntry>,
    #[serde(default)]
    reidemeister_pairs: Vec<(String, String)>,
}

#[derive(Debug, Deserialize)]
struct CorpusEntry {
    name: String,
    pd: String,
    #[serde(default)]
    #[allow(dead_code)]
    comment: String,
}

#[derive(Debug)]
pub struct Corpus {
    pd_codes: BTreeMap<String, String>,
    pairs: Vec<(String, String)>,
}

impl Corpus {
    pub fn from_json(text: &str) -> Result<Corpus, CorpusError> {
        let file: CorpusFile = serde_json::from_str(text)?;
        let pd_codes = file.diagrams.into_iter().map(|e| (e.name, e.pd)).collect();
        Ok(Corpus { pd_codes, pairs: file.reidemeister_pairs })
    }

    pub fn bundled() -> Corpus {
        Corpus::from_json(EMBEDDED_CORPUS).expect("embedded corpus parses")
    }

    pub fn from_path(path: &std::path::Path) -> Result<Corpus, CorpusError> {
        Corpus::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.pd_codes.keys().map(String::as_str)
    }

    pub fn pd_code(&self, name: &str) -> Result<&str, CorpusError> {
        self.pd_codes
            .get(name)
            .map(String::as_str)
            .ok_or_else(|| CorpusError::UnknownName(name.into()))
    }

    pub fn diagram(&self, name: &str) -> Result<LinkDiagram, CorpusError> {
        let pd = self.pd_code(name)?;
        LinkDiagram::parse_pd(pd).map_err(|source| CorpusError::BadEntry { name: name.into(), source })
    }

    pub fn reidemeister_pairs(&self) -> &[(String, String)] {
        &self.pairs
    }
}
