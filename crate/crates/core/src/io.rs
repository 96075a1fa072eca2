//! JSON file formats: matroid descriptions and set-function vectors.
//!
//! A matroid file is an object with a `"type"` of `"binary"`, `"graphic"` or
//! `"uniform"`:
//!
//! ```json
//! {"type": "binary", "columns": ["001", "010", "011"], "weights": [1, "3/2", 2]}
//! {"type": "graphic", "vertices": 3, "edges": [[0, 1], [1, 2], [0, 2]]}
//! {"type": "uniform", "rank": 2, "size": 4}
//! ```
//!
//! Binary columns are `0`/`1` strings, leftmost character is row 0. Graph
//! vertices are 0-based. `weights` is optional (all 1 when absent); entries
//! are integers or `"p/q"` strings. Set-function vectors are objects keyed by
//! hex subset masks (`"0x5"` is `{1, 3}`) in ascending mask order.

use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::linalg::{BitMatrix, BitVector};
use crate::matroid::{Graph, Matroid, WeightFunction};
use crate::setfunc::SetFunctionVector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum MatroidKind {
    Binary {
        columns: Vec<String>,
    },
    Graphic {
        vertices: usize,
        edges: Vec<[usize; 2]>,
    },
    Uniform {
        rank: usize,
        size: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightEntry {
    Integer(u64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(flatten)]
    pub kind: MatroidKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<WeightEntry>>,
}

fn parse_err(field: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        field: field.into(),
        message: message.into(),
    }
}

impl MatroidFile {
    /// Parses JSON text; syntax errors carry line and column.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            parse_err(
                format!("line {} column {}", e.line(), e.column()),
                e.to_string(),
            )
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("matroid file serializes") + "\n"
    }

    pub fn matroid(&self) -> Result<Matroid> {
        let to_parse = |e: Error| match e {
            Error::Parse { .. } => e,
            other => parse_err("matroid", other.to_string()),
        };
        match &self.kind {
            MatroidKind::Binary { columns } => {
                let first = columns
                    .first()
                    .ok_or_else(|| parse_err("columns", "at least one column is required"))?;
                let rows = first.chars().count();
                let cols = columns
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        let v = BitVector::parse(c)
                            .map_err(|e| parse_err(format!("columns[{i}]"), e.to_string()))?;
                        if v.len() != rows {
                            return Err(parse_err(
                                format!("columns[{i}]"),
                                format!("length {} differs from column 0 length {rows}", v.len()),
                            ));
                        }
                        Ok(v)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Matroid::binary(BitMatrix::from_columns(rows, &cols)?).map_err(to_parse)
            }
            MatroidKind::Graphic { vertices, edges } => {
                if let Some((i, e)) = edges
                    .iter()
                    .enumerate()
                    .find(|(_, e)| e[0] >= *vertices || e[1] >= *vertices)
                {
                    return Err(parse_err(
                        format!("edges[{i}]"),
                        format!("endpoint of {e:?} outside 0..{vertices}"),
                    ));
                }
                let g = Graph::new(*vertices, edges.iter().map(|e| (e[0], e[1])).collect())
                    .map_err(to_parse)?;
                Matroid::graphic(g).map_err(to_parse)
            }
            MatroidKind::Uniform { rank, size } => Matroid::uniform(*rank, *size).map_err(to_parse),
        }
    }

    /// Weights, defaulting to all ones.
    pub fn weight_function(&self, n: usize) -> Result<WeightFunction> {
        let Some(entries) = &self.weights else {
            return Ok(WeightFunction::unit(n));
        };
        if entries.len() != n {
            return Err(parse_err(
                "weights",
                format!("{} weights for {n} elements", entries.len()),
            ));
        }
        let values = entries
            .iter()
            .enumerate()
            .map(|(i, entry)| match entry {
                WeightEntry::Integer(x) => Ok(BigRational::from_integer((*x).into())),
                WeightEntry::Text(s) => BigRational::from_str(s.trim())
                    .map_err(|e| parse_err(format!("weights[{i}]"), format!("{s:?}: {e}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        WeightFunction::new(values).map_err(|e| parse_err("weights", e.to_string()))
    }

    pub fn parts(&self) -> Result<(Matroid, WeightFunction)> {
        let m = self.matroid()?;
        let w = self.weight_function(m.len())?;
        Ok((m, w))
    }

    /// Describes `m` (and `w`, unless it is all ones) as a file.
    pub fn from_parts(name: Option<String>, m: &Matroid, w: &WeightFunction) -> Self {
        let kind = match m {
            Matroid::Binary(a) => MatroidKind::Binary {
                columns: (0..a.cols()).map(|c| a.column(c).to_string()).collect(),
            },
            Matroid::Graphic(g) => MatroidKind::Graphic {
                vertices: g.vertices(),
                edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
            },
            &Matroid::Uniform { rank, size } => MatroidKind::Uniform { rank, size },
        };
        let weights = (w != &WeightFunction::unit(m.len())).then(|| {
            w.as_slice()
                .iter()
                .map(|x| {
                    match x
                        .is_integer()
                        .then(|| x.to_integer().try_into().ok())
                        .flatten()
                    {
                        Some(i) => WeightEntry::Integer(i),
                        None => WeightEntry::Text(x.to_string()),
                    }
                })
                .collect()
        });
        MatroidFile {
            name,
            kind,
            weights,
        }
    }
}

/// `{"0x1": f(v₁), "0x2": f(v₂), …}` in ascending mask order.
pub fn set_function_json<T>(v: &SetFunctionVector<T>, mut f: impl FnMut(&T) -> Value) -> Value {
    let mut map = Map::new();
    for (s, x) in v.iter() {
        map.insert(s.to_hex(), f(x));
    }
    Value::Object(map)
}

/// Exact values serialized as strings such as `"3/2"`.
pub fn rational_vector_json(v: &SetFunctionVector<BigRational>) -> Value {
    set_function_json(v, |x| Value::String(x.to_string()))
}

pub fn float_vector_json(v: &SetFunctionVector<f64>) -> Value {
    set_function_json(v, |&x| {
        serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
    })
}

/// Reads a rational-valued vector written by [`rational_vector_json`].
pub fn rational_vector_from_json(value: &Value) -> Result<SetFunctionVector<BigRational>> {
    let map = value
        .as_object()
        .ok_or_else(|| parse_err("vector", "expected a JSON object"))?;
    let n = (map.len() + 1).trailing_zeros() as usize;
    if map.len() + 1 != 1 << n {
        return Err(parse_err(
            "vector",
            format!("{} entries is not 2^n - 1", map.len()),
        ));
    }
    let mut values = vec![None; map.len()];
    for (key, x) in map {
        let mask = key
            .strip_prefix("0x")
            .and_then(|h| usize::from_str_radix(h, 16).ok())
            .filter(|&m| m >= 1 && m <= values.len())
            .ok_or_else(|| parse_err(key.clone(), "bad subset key"))?;
        let text = match x {
            Value::String(s) => s.clone(),
            Value::Number(num) => num.to_string(),
            _ => return Err(parse_err(key.clone(), "expected a rational string")),
        };
        let q = BigRational::from_str(&text).map_err(|e| parse_err(key.clone(), e.to_string()))?;
        values[mask - 1] = Some(q);
    }
    let values = values
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .expect("all keys distinct and in range");
    SetFunctionVector::new(n, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::Subset;

    #[test]
    fn parse_binary_with_weights() {
        let f = MatroidFile::from_json(
            r#"{"type": "binary", "columns": ["10", "01", "11"], "weights": [1, "3/2", 0]}"#,
        )
        .unwrap();
        let (m, w) = f.parts().unwrap();
        assert_eq!(m.len(), 3);
        assert_eq!(m.rank(Subset::full(3)), 2);
        assert_eq!(w.get(1), &BigRational::new(3.into(), 2.into()));
    }

    #[test]
    fn diagnostics() {
        let e = MatroidFile::from_json("{\n \"type\": \"binary\",\n \"columns\": [\"10\" \"01\"]}")
            .unwrap_err();
        assert!(
            matches!(&e, Error::Parse { field, .. } if field.starts_with("line 3")),
            "{e}"
        );

        let f = MatroidFile::from_json(r#"{"type": "binary", "columns": ["10", "011"]}"#).unwrap();
        assert!(matches!(f.matroid(), Err(Error::Parse { field, .. }) if field == "columns[1]"));

        let f = MatroidFile::from_json(r#"{"type": "graphic", "vertices": 2, "edges": [[0, 2]]}"#)
            .unwrap();
        assert!(matches!(f.matroid(), Err(Error::Parse { field, .. }) if field == "edges[0]"));

        let f =
            MatroidFile::from_json(r#"{"type": "uniform", "rank": 1, "size": 2, "weights": [1]}"#)
                .unwrap();
        assert!(matches!(f.parts(), Err(Error::Parse { field, .. }) if field == "weights"));

        let f = MatroidFile::from_json(
            r#"{"type": "uniform", "rank": 1, "size": 2, "weights": [1, "x"]}"#,
        )
        .unwrap();
        assert!(matches!(f.parts(), Err(Error::Parse { field, .. }) if field == "weights[1]"));

        assert!(MatroidFile::from_json(r#"{"type": "matrix"}"#).is_err());
    }

    #[test]
    fn vector_json_keys_ascending() {
        let v = SetFunctionVector::new(
            2,
            vec![
                BigRational::from_integer(1.into()),
                BigRational::from_integer(1.into()),
                BigRational::new(3.into(), 2.into()),
            ],
        )
        .unwrap();
        let json = rational_vector_json(&v);
        assert_eq!(json.to_string(), r#"{"0x1":"1","0x2":"1","0x3":"3/2"}"#);
        assert_eq!(rational_vector_from_json(&json).unwrap(), v);
    }
}
