//! Labeled edge paths in a Cayley complex.

use serde::{Deserialize, Serialize};

use crate::complex::{ComplexKind, Vertex};
use crate::error::{Error, Result};
use crate::letter::{label_string, labels_to_string, Label};
use crate::selement::SElement;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgePath {
    pub base: SElement,
    #[serde(with = "label_string")]
    pub labels: Vec<Label>,
}

impl EdgePath {
    pub fn new(base: SElement, labels: Vec<Label>) -> EdgePath {
        EdgePath { base, labels }
    }

    pub fn parse(base: &str, labels: &str) -> Result<EdgePath> {
        Ok(EdgePath::new(SElement::parse(base)?, Label::parse_all(labels)?))
    }

    pub fn constant(base: SElement) -> EdgePath {
        EdgePath::new(base, Vec::new())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// All `len + 1` vertices, starting at the base.
    pub fn vertices(&self) -> Vec<SElement> {
        let mut out = Vec::with_capacity(self.labels.len() + 1);
        let mut v = self.base.clone();
        out.push(v.clone());
        for &l in &self.labels {
            v.push_label(l);
            out.push(v.clone());
        }
        out
    }

    /// Vertices in a chosen representation; `None` if some label is unavailable there.
    pub fn vertices_as<V: Vertex>(&self) -> Option<Vec<V>> {
        let mut v = V::from_selement(&self.base)?;
        let mut out = Vec::with_capacity(self.labels.len() + 1);
        out.push(v.clone());
        for &l in &self.labels {
            if !v.try_push(l) {
                return None;
            }
            out.push(v.clone());
        }
        Some(out)
    }

    pub fn end(&self) -> SElement {
        let mut v = self.base.clone();
        for &l in &self.labels {
            v.push_label(l);
        }
        v
    }

    pub fn is_loop(&self) -> bool {
        self.end() == self.base
    }

    pub fn check_in(&self, kind: ComplexKind) -> Result<()> {
        match self.labels.iter().find(|l| !kind.contains(**l)) {
            Some(l) => Err(Error::Path(format!("label {l} is not a generator of {kind}"))),
            None => Ok(()),
        }
    }

    pub fn inverse(&self) -> EdgePath {
        EdgePath::new(self.end(), crate::letter::inverse_labels(&self.labels))
    }

    pub fn label_string(&self) -> String {
        labels_to_string(&self.labels)
    }
}
