//! JSON model files.
//!
//! ```json
//! {
//!   "hypotheses": ["A", "B"],
//!   "observations": ["heads", "tails"],
//!   "mappings": [
//!     { "A": { "heads": "1", "tails": "0" }, "B": { "heads": "1/2", "tails": "1/2" } }
//!   ],
//!   "prior": { "A": "1/2", "B": "1/2" }
//! }
//! ```
//!
//! One mapping describes a classical evidence space, several describe a
//! generalized one. `prior` and `description` are optional. Validation errors
//! name the offending field, e.g. `mappings[1].A.heads`.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dist::Dist;
use crate::error::Error;
use crate::evidence::{EvidenceSpace, LikelihoodMapping};
use crate::generalized::GeneralizedEvidenceSpace;
use crate::label::Label;
use crate::rational::Rational;

pub type RawMapping = BTreeMap<String, BTreeMap<String, Rational>>;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub hypotheses: Vec<String>,
    pub observations: Vec<String>,
    pub mappings: Vec<RawMapping>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prior: Option<BTreeMap<String, Rational>>,
}

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> ModelError {
    ModelError::Invalid {
        path: path.into(),
        message: message.into(),
    }
}

/// A validated model: the space (a singleton Δ for classical models) and the
/// optional prior.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Model {
    pub description: Option<String>,
    pub space: GeneralizedEvidenceSpace,
    pub prior: Option<Dist>,
}

impl Model {
    pub fn load(path: impl AsRef<Path>) -> Result<Model, ModelError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| ModelError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Model::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Model, ModelError> {
        let file: ModelFile = serde_json::from_str(text)?;
        file.validate()
    }

    pub fn is_classical(&self) -> bool {
        self.space.len() == 1
    }

    /// The single evidence space of a one-mapping model.
    pub fn classical(&self) -> Option<&EvidenceSpace> {
        match self.space.spaces() {
            [only] => Some(only),
            _ => None,
        }
    }
}

fn check_labels(field: &str, labels: &[String]) -> Result<BTreeSet<String>, ModelError> {
    if labels.is_empty() {
        return Err(invalid(field, "must list at least one label"));
    }
    let mut set = BTreeSet::new();
    for (i, l) in labels.iter().enumerate() {
        if l.is_empty() {
            return Err(invalid(format!("{field}[{i}]"), "empty label"));
        }
        if !set.insert(l.clone()) {
            return Err(invalid(format!("{field}[{i}]"), format!("duplicate label {l:?}")));
        }
    }
    Ok(set)
}

fn check_keys<V>(
    path: &str,
    map: &BTreeMap<String, V>,
    expected: &BTreeSet<String>,
    what: &str,
) -> Result<(), ModelError> {
    if let Some(extra) = map.keys().find(|k| !expected.contains(*k)) {
        return Err(invalid(format!("{path}.{extra}"), format!("unknown {what}")));
    }
    if let Some(missing) = expected.iter().find(|k| !map.contains_key(*k)) {
        return Err(invalid(path, format!("missing {what} {missing:?}")));
    }
    Ok(())
}

fn to_dist(path: &str, masses: &BTreeMap<String, Rational>) -> Result<Dist, ModelError> {
    for (label, m) in masses {
        if m.is_negative() {
            return Err(invalid(format!("{path}.{label}"), format!("negative mass {m}")));
        }
    }
    Dist::from_pairs(masses.iter().map(|(l, m)| (Label::new(l), m.clone())))
        .map_err(|e| invalid(path, e.to_string()))
}

impl ModelFile {
    pub fn validate(&self) -> Result<Model, ModelError> {
        let hypotheses = check_labels("hypotheses", &self.hypotheses)?;
        let observations = check_labels("observations", &self.observations)?;
        if self.mappings.is_empty() {
            return Err(invalid("mappings", "must contain at least one likelihood mapping"));
        }
        let mut mappings = Vec::with_capacity(self.mappings.len());
        for (i, raw) in self.mappings.iter().enumerate() {
            let path = format!("mappings[{i}]");
            check_keys(&path, raw, &hypotheses, "hypothesis")?;
            let mut functions = Vec::new();
            for (h, masses) in raw {
                let hpath = format!("{path}.{h}");
                check_keys(&hpath, masses, &observations, "observation")?;
                functions.push((Label::new(h), to_dist(&hpath, masses)?));
            }
            let mapping = LikelihoodMapping::new(functions).map_err(|e| invalid(&path, e.to_string()))?;
            mappings.push(mapping);
        }
        let space = GeneralizedEvidenceSpace::new(mappings).map_err(|e| match e {
            Error::InMapping { index, source } => invalid(format!("mappings[{index}]"), source.to_string()),
            Error::DuplicateMapping { first, second } => invalid(
                format!("mappings[{second}]"),
                format!("duplicate of mappings[{first}]"),
            ),
            other => invalid("mappings", other.to_string()),
        })?;
        let prior = match &self.prior {
            None => None,
            Some(p) => {
                check_keys("prior", p, &hypotheses, "hypothesis")?;
                Some(to_dist("prior", p)?)
            }
        };
        Ok(Model {
            description: self.description.clone(),
            space,
            prior,
        })
    }

    /// Model file describing a single evidence space.
    pub fn from_space(space: &EvidenceSpace, description: Option<String>) -> ModelFile {
        ModelFile {
            description,
            hypotheses: space.hypotheses().map(|h| h.to_string()).collect(),
            observations: space.observations().map(|o| o.to_string()).collect(),
            mappings: vec![raw_mapping(space.mapping())],
            prior: None,
        }
    }

    pub fn from_generalized(space: &GeneralizedEvidenceSpace, description: Option<String>) -> ModelFile {
        ModelFile {
            description,
            hypotheses: space.hypotheses().map(|h| h.to_string()).collect(),
            observations: space.observations().map(|o| o.to_string()).collect(),
            mappings: space.mappings().map(raw_mapping).collect(),
            prior: None,
        }
    }
}

pub fn raw_mapping(mapping: &LikelihoodMapping) -> RawMapping {
    mapping
        .iter()
        .map(|(h, mu)| {
            let masses = mu.iter().map(|(o, m)| (o.to_string(), m.clone())).collect();
            (h.to_string(), masses)
        })
        .collect()
}
