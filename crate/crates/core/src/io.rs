//! Facet-list text format and its JSON counterpart.
//!
//! Text: one facet per line, labels separated by whitespace, `#` starts a
//! comment. JSON: `{"name": "...", "facets": [["a", "b", ...], ...]}`.

use serde::{Deserialize, Serialize};

use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct JsonComplex {
    #[serde(default)]
    name: Option<String>,
    facets: Vec<Vec<String>>,
}

/// A complex read from a file, together with its optional name.
#[derive(Debug, Clone)]
pub struct NamedComplex {
    pub name: Option<String>,
    pub complex: SimplicialComplex,
}

pub fn parse_text(input: &str) -> Result<SimplicialComplex> {
    let mut facets = Vec::new();
    for (lineno, line) in input.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        let labels: Vec<&str> = body.split_whitespace().collect();
        if labels.is_empty() {
            continue;
        }
        let simplex = Simplex::from_labels(&labels).map_err(|e| Error::Parse {
            line: lineno + 1,
            msg: e.to_string(),
        })?;
        facets.push(simplex);
    }
    SimplicialComplex::from_simplices(facets)
}

pub fn parse_json(input: &str) -> Result<NamedComplex> {
    let raw: JsonComplex = serde_json::from_str(input).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    let facets = raw
        .facets
        .iter()
        .map(|f| {
            let vs = f.iter().map(Vertex::new).collect::<Result<Vec<_>>>()?;
            Simplex::new(vs)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NamedComplex {
        name: raw.name,
        complex: SimplicialComplex::from_simplices(facets)?,
    })
}

/// Parses either format; input whose first non-blank character is `{` is JSON.
pub fn parse_any(input: &str) -> Result<NamedComplex> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        Ok(NamedComplex {
            name: None,
            complex: parse_text(input)?,
        })
    }
}

pub fn to_text(c: &SimplicialComplex, name: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(name) = name {
        out.push_str(&format!("# {name}\n"));
    }
    for f in c.facets() {
        out.push_str(&f.labels().join(" "));
        out.push('\n');
    }
    out
}

pub fn to_json(c: &SimplicialComplex, name: Option<&str>) -> serde_json::Value {
    serde_json::json!({
        "name": name,
        "facets": c.facets().iter().map(Simplex::labels).collect::<Vec<_>>(),
    })
}
