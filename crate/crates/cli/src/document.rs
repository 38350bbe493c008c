use std::path::Path;

use eulerlab::{Polytope, Rational, Vector};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// On-disk polytope: vertex coordinates as exact rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeDocument {
    pub dimension: usize,
    pub vertices: Vec<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl PolytopeDocument {
    pub fn from_polytope(p: &Polytope, name: Option<String>) -> Self {
        PolytopeDocument {
            dimension: p.ambient_dim(),
            vertices: p.ambient_vertices().iter().map(|v| v.coords().to_vec()).collect(),
            name,
        }
    }

    pub fn points(&self) -> Result<Vec<Vector>, CliError> {
        self.vertices
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if v.len() == self.dimension {
                    Ok(Vector::new(v.clone()))
                } else {
                    Err(CliError::Input(format!(
                        "vertex {i} has {} coordinates, dimension is {}",
                        v.len(),
                        self.dimension
                    )))
                }
            })
            .collect()
    }

    pub fn polytope(&self) -> Result<Polytope, CliError> {
        eulerlab::build_polytope(&self.points()?).map_err(CliError::from)
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }
}
