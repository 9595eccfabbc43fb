//! Facet-list text files and JSON facet documents.

use serde::{Deserialize, Serialize};

use crate::complex::{Label, SimplicialComplex};
use crate::error::{Error, Result};

/// `{"labels": [...], "facets": [[...], ...]}`; `labels` is optional and
/// lists vertices that must be present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Label>>,
    pub facets: Vec<Vec<Label>>,
}

impl ComplexDocument {
    pub fn of(complex: &SimplicialComplex) -> Self {
        ComplexDocument {
            labels: Some(complex.labels().to_vec()),
            facets: complex.facets().iter().map(|f| complex.labels_of(*f)).collect(),
        }
    }

    pub fn into_complex(self) -> Result<SimplicialComplex> {
        if let Some(labels) = &self.labels {
            let used: std::collections::BTreeSet<&Label> = self.facets.iter().flatten().collect();
            if let Some(missing) = labels.iter().find(|l| !used.contains(l)) {
                return Err(Error::Parse {
                    line: 0,
                    column: 0,
                    message: format!("label {missing} lies in no facet"),
                });
            }
        }
        if self.facets.len() == 1 && self.facets[0].is_empty() {
            return Ok(SimplicialComplex::irrelevant());
        }
        SimplicialComplex::from_facets(self.facets)
    }
}

/// One facet per line, labels separated by whitespace, `#` starts a comment.
/// A line holding only `{}` denotes the empty face, so `{∅}` can be written.
pub fn parse_text(text: &str) -> Result<SimplicialComplex> {
    let mut facets: Vec<Vec<Label>> = Vec::new();
    for (number, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        if line.trim() == "{}" {
            facets.push(Vec::new());
            continue;
        }
        let mut facet = Vec::new();
        for token in line.split_whitespace() {
            let offset = token.as_ptr() as usize - line.as_ptr() as usize;
            if let Some((at, bad)) = token.char_indices().find(|(_, c)| matches!(c, '{' | '}' | '[' | ']' | ',' | '"')) {
                return Err(Error::Parse {
                    line: number + 1,
                    column: line[..offset + at].chars().count() + 1,
                    message: format!("unexpected character `{bad}`"),
                });
            }
            facet.push(Label::parse(token));
        }
        facets.push(facet);
    }
    if facets.iter().all(Vec::is_empty) && !facets.is_empty() {
        return Ok(SimplicialComplex::irrelevant());
    }
    facets.retain(|f| !f.is_empty());
    SimplicialComplex::from_facets(facets)
}

pub fn parse_json(text: &str) -> Result<SimplicialComplex> {
    let document: ComplexDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    document.into_complex()
}

/// Chooses JSON when the first non-blank character is `{` followed by a quote.
pub fn parse_auto(text: &str) -> Result<SimplicialComplex> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') && trimmed[1..].trim_start().starts_with(['"', '}']) && trimmed.trim() != "{}" {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

pub fn read_complex(path: &std::path::Path) -> Result<SimplicialComplex> {
    parse_auto(&std::fs::read_to_string(path)?)
}

pub fn to_text(complex: &SimplicialComplex) -> String {
    if complex.is_irrelevant() {
        return "{}\n".to_string();
    }
    complex.to_string()
}

pub fn to_json(complex: &SimplicialComplex) -> String {
    serde_json::to_string_pretty(&ComplexDocument::of(complex)).expect("documents serialize")
}
