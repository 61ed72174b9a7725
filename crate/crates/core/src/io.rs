//! JSON complex files: `{"name": ..., "facets": [[..], ..], "coords": {"<vertex>": [..]}}`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::complex::{Complex, VertexId};
use crate::error::Result;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ComplexFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub facets: Vec<Vec<VertexId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<BTreeMap<VertexId, Vec<f64>>>,
}

impl ComplexFile {
    pub fn from_complex(name: Option<String>, complex: &Complex) -> Self {
        ComplexFile { name, facets: complex.facet_lists(), coords: None }
    }

    pub fn to_complex(&self) -> Result<Complex> {
        Complex::from_facets(&self.facets)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("complex files always serialize")
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }
}
