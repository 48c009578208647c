//! Generator-map files:
//!
//! ```json
//! {"source": "W_sl21", "target": "V_gl11", "level": "critical",
//!  "images": {"G+": "e12", "G-": "e21", "J": "e11", "S": "e11 + e22"}}
//! ```
//!
//! `source` and `target` are catalog labels, or products such as
//! `A_phi*M`. `level` is `generic`, `critical` or a rational value of k.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{GenMap, MorphismError};
use crate::presentations::{build_standard, Level};
use crate::scalars::parse_rat;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapFile {
    #[serde(default)]
    pub name: Option<String>,
    pub source: String,
    pub target: String,
    #[serde(default = "generic")]
    pub level: String,
    pub images: BTreeMap<String, String>,
}

fn generic() -> String {
    "generic".into()
}

pub fn parse_level(text: &str) -> Result<Level, MorphismError> {
    match text.trim() {
        "generic" => Ok(Level::Generic),
        "critical" => Ok(Level::Critical),
        other => parse_rat(other)
            .map(Level::Value)
            .map_err(|_| MorphismError::Invalid { map: String::new(), msg: format!("bad level `{other}`") }),
    }
}

impl MapFile {
    pub fn to_map(&self) -> Result<GenMap, MorphismError> {
        let name = self.name.clone().unwrap_or_else(|| format!("{}->{}", self.source, self.target));
        let images: Vec<(&str, &str)> = self.images.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        GenMap::from_text(
            &name,
            build_standard(&self.source)?,
            build_standard(&self.target)?,
            &images,
            parse_level(&self.level)?,
        )
    }
}

pub fn map_from_json(text: &str) -> Result<GenMap, MorphismError> {
    let f: MapFile = serde_json::from_str(text)
        .map_err(|e| MorphismError::Invalid { map: String::new(), msg: format!("malformed map file: {e}") })?;
    f.to_map()
}
