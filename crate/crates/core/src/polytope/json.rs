use serde::{Deserialize, Serialize};

use super::Polytope;
use crate::error::{Error, Result};
use crate::math::{format_rat, parse_rat, RatVec};

/// Wire form `{"dim": d, "vertices": [["p/q", …], …]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
}

impl PolytopeJson {
    pub fn to_polytope(&self) -> Result<Polytope> {
        let pts = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|s| parse_rat(s)).collect::<Result<RatVec>>())
            .collect::<Result<Vec<_>>>()?;
        Polytope::convex_hull(&pts, self.dim)
    }
}

impl Polytope {
    pub fn to_json(&self) -> PolytopeJson {
        PolytopeJson {
            dim: self.dim(),
            vertices: self.vertices().iter().map(|v| v.iter().map(format_rat).collect()).collect(),
        }
    }

    /// Canonical JSON text; identical polytopes give identical bytes.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("plain data serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: PolytopeJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        j.to_polytope()
    }
}
