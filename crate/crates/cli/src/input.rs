//! Input documents.
//!
//! ```json
//! {
//!   "vertices": ["a", "b", "c"],
//!   "simplices": [["a", "b"], ["b", "c"], ["a", "c"]],
//!   "cochain0": {"a": "0", "b": "1/2", "c": "2"},
//!   "angles": {"a": "0", "b": "1", "c": "2"},
//!   "cocycle": {"a,b": "1", "b,c": "1", "c,a": "1"},
//!   "alpha": "3",
//!   "base": "a"
//! }
//! ```
//!
//! Only `vertices` and `simplices` are required. Rationals are strings `p` or
//! `p/q`.

use std::collections::BTreeMap;
use std::path::Path;

use cocycle_core::cochain::{CircleMap, Cochain0, Cochain1};
use cocycle_core::complex::SimplicialComplex;
use cocycle_core::Rational;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    vertices: Vec<String>,
    simplices: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cochain0: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    angles: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cocycle: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    base: Option<String>,
}

/// A validated input document with names resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputDocument {
    pub vertices: Vec<String>,
    /// Simplices as listed, vertex indices sorted.
    pub simplices: Vec<Vec<usize>>,
    pub cochain0: Option<Vec<Rational>>,
    pub angles: Option<Vec<Rational>>,
    /// Values on oriented edges, as listed.
    pub cocycle: Option<BTreeMap<(usize, usize), Rational>>,
    pub alpha: Option<Rational>,
    pub base: Option<usize>,
    complex: SimplicialComplex,
}

pub fn parse_rational(s: &str, field: &str) -> Result<Rational, CliError> {
    let bad = |message: String| CliError::Parse {
        field: field.to_string(),
        line: None,
        message,
    };
    let t = s.trim();
    let (p, q) = match t.split_once('/') {
        Some((p, q)) => (p, q),
        None => (t, "1"),
    };
    let p: i128 = p
        .parse()
        .map_err(|_| bad(format!("not a rational: {s:?}")))?;
    let q: i128 = q
        .parse()
        .map_err(|_| bad(format!("not a rational: {s:?}")))?;
    if q == 0 {
        return Err(bad(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(p, q))
}

pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl InputDocument {
    pub fn from_path(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let raw: RawDocument = serde_json::from_str(text).map_err(|e| CliError::Parse {
            field: "document".to_string(),
            line: Some(e.line()),
            message: e.to_string(),
        })?;
        Self::from_raw(raw)
    }

    fn from_raw(raw: RawDocument) -> Result<Self, CliError> {
        let mut index = BTreeMap::new();
        for (i, name) in raw.vertices.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(CliError::Schema(format!("vertex {name:?} declared twice")));
            }
        }
        let lookup = |name: &str, what: &str| -> Result<usize, CliError> {
            index.get(name).copied().ok_or_else(|| {
                CliError::Schema(format!("{what} refers to unknown vertex {name:?}"))
            })
        };
        let mut simplices = Vec::new();
        for s in &raw.simplices {
            let what = format!("simplex [{}]", s.join(","));
            if s.is_empty() {
                return Err(CliError::Schema(format!("{what} is empty")));
            }
            let mut ids = s
                .iter()
                .map(|v| lookup(v, &what))
                .collect::<Result<Vec<_>, _>>()?;
            ids.sort_unstable();
            if ids.windows(2).any(|w| w[0] == w[1]) {
                return Err(CliError::Schema(format!("{what} repeats a vertex")));
            }
            simplices.push(ids);
        }
        let per_vertex = |map: &Option<BTreeMap<String, String>>, field: &str| {
            let Some(map) = map else { return Ok(None) };
            let mut values = vec![None; raw.vertices.len()];
            for (name, v) in map {
                let i = lookup(name, field)?;
                values[i] = Some(parse_rational(v, &format!("{field}.{name}"))?);
            }
            values
                .into_iter()
                .enumerate()
                .map(|(i, v)| {
                    v.ok_or_else(|| {
                        CliError::Schema(format!(
                            "{field} has no value for vertex {:?}",
                            raw.vertices[i]
                        ))
                    })
                })
                .collect::<Result<Vec<_>, _>>()
                .map(Some)
        };
        let cochain0 = per_vertex(&raw.cochain0, "cochain0")?;
        let angles = per_vertex(&raw.angles, "angles")?;
        let cocycle = match &raw.cocycle {
            None => None,
            Some(map) => {
                let mut out = BTreeMap::new();
                for (key, v) in map {
                    let field = format!("cocycle.{key}");
                    let (a, b) = key
                        .split_once(',')
                        .ok_or_else(|| CliError::Schema(format!("{field}: expected \"a,b\"")))?;
                    let what = format!("cocycle edge {key:?}");
                    let (a, b) = (lookup(a.trim(), &what)?, lookup(b.trim(), &what)?);
                    if a == b {
                        return Err(CliError::Schema(format!("{what} is a loop")));
                    }
                    if out.contains_key(&(b, a)) || out.contains_key(&(a, b)) {
                        return Err(CliError::Schema(format!("{what} given twice")));
                    }
                    out.insert((a, b), parse_rational(v, &field)?);
                }
                Some(out)
            }
        };
        let alpha = raw
            .alpha
            .as_deref()
            .map(|a| parse_rational(a, "alpha"))
            .transpose()?;
        let base = raw.base.as_deref().map(|b| lookup(b, "base")).transpose()?;
        let complex = SimplicialComplex::build(raw.vertices.len(), &simplices)
            .map_err(|e| CliError::Schema(e.to_string()))?;
        if let Some(c) = &cocycle {
            for &(a, b) in c.keys() {
                if complex.id_of(&[a.min(b), a.max(b)]).is_none() {
                    return Err(CliError::Schema(format!(
                        "cocycle edge \"{},{}\" is not an edge of the complex",
                        raw.vertices[a], raw.vertices[b]
                    )));
                }
            }
        }
        Ok(Self {
            vertices: raw.vertices,
            simplices,
            cochain0,
            angles,
            cocycle,
            alpha,
            base,
            complex,
        })
    }

    /// The face closure of the listed simplices.
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex(&self, name: &str) -> Result<usize, CliError> {
        self.vertices
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| CliError::Schema(format!("unknown vertex {name:?}")))
    }

    pub fn cochain0(&self) -> Result<Cochain0, CliError> {
        self.cochain0
            .clone()
            .map(Cochain0::new)
            .ok_or_else(|| CliError::Schema("document has no cochain0".to_string()))
    }

    pub fn cocycle1(&self) -> Result<Cochain1, CliError> {
        let c = self
            .cocycle
            .as_ref()
            .ok_or_else(|| CliError::Schema("document has no cocycle".to_string()))?;
        Ok(c.iter()
            .fold(Cochain1::new(), |acc, (&(a, b), &v)| acc.with(a, b, v)))
    }

    pub fn alpha(&self) -> Result<Rational, CliError> {
        self.alpha
            .ok_or_else(|| CliError::Schema("document has no alpha".to_string()))
    }

    pub fn circle_map(&self) -> Result<Option<CircleMap>, CliError> {
        match &self.angles {
            None => Ok(None),
            Some(a) => Ok(Some(CircleMap::new(a.clone(), self.alpha()?)?)),
        }
    }

    pub fn to_json(&self) -> String {
        let per_vertex = |v: &Option<Vec<Rational>>| {
            v.as_ref().map(|v| {
                v.iter()
                    .enumerate()
                    .map(|(i, x)| (self.vertices[i].clone(), format_rational(x)))
                    .collect()
            })
        };
        let raw = RawDocument {
            vertices: self.vertices.clone(),
            simplices: self
                .simplices
                .iter()
                .map(|s| s.iter().map(|&v| self.vertices[v].clone()).collect())
                .collect(),
            cochain0: per_vertex(&self.cochain0),
            angles: per_vertex(&self.angles),
            cocycle: self.cocycle.as_ref().map(|c| {
                c.iter()
                    .map(|(&(a, b), v)| {
                        (
                            format!("{},{}", self.vertices[a], self.vertices[b]),
                            format_rational(v),
                        )
                    })
                    .collect()
            }),
            alpha: self.alpha.as_ref().map(format_rational),
            base: self.base.map(|b| self.vertices[b].clone()),
        };
        serde_json::to_string_pretty(&raw).expect("document serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cocycle_core::rational::{int, ratio};

    const CIRCLE: &str = r#"{
        "vertices": ["0", "1", "2"],
        "simplices": [["0", "1"], ["1", "2"], ["0", "2"]],
        "cocycle": {"0,1": "1", "1,2": "1", "2,0": "1"},
        "alpha": "3/1"
    }"#;

    #[test]
    fn reads_circle() {
        let d = InputDocument::from_json(CIRCLE).unwrap();
        assert_eq!(d.vertices.len(), 3);
        assert_eq!(d.complex().of_dim(1).count(), 3);
        assert_eq!(d.alpha, Some(int(3)));
        let c = d.cocycle1().unwrap();
        assert_eq!(c.get(0, 2), Some(int(-1)));
        assert_eq!(InputDocument::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/6", "x").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("7", "x").unwrap(), int(7));
        assert!(matches!(
            parse_rational("0.1x", "x"),
            Err(CliError::Parse { .. })
        ));
        assert!(matches!(
            parse_rational("1/0", "x"),
            Err(CliError::Parse { .. })
        ));
        assert_eq!(format_rational(&int(3)), "3/1");
    }

    #[test]
    fn schema_errors() {
        let unknown = r#"{"vertices": ["a", "b"], "simplices": [["a", "z"]]}"#;
        match InputDocument::from_json(unknown) {
            Err(CliError::Schema(m)) => assert!(m.contains("[a,z]") && m.contains("\"z\"")),
            other => panic!("{other:?}"),
        }
        let twice = r#"{"vertices": ["a", "a"], "simplices": []}"#;
        assert!(matches!(
            InputDocument::from_json(twice),
            Err(CliError::Schema(_))
        ));
        let syntax = "{\n\"vertices\": [,]}";
        match InputDocument::from_json(syntax) {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, Some(2)),
            other => panic!("{other:?}"),
        }
        let bad_value = r#"{"vertices": ["a"], "simplices": [["a"]], "cochain0": {"a": "0.1x"}}"#;
        match InputDocument::from_json(bad_value) {
            Err(CliError::Parse { field, .. }) => assert_eq!(field, "cochain0.a"),
            other => panic!("{other:?}"),
        }
    }
}
