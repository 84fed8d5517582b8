//! JSON matrix format.
//!
//! ```json
//! {"rows": 2, "cols": 2, "entries": [[[5, 7], [9, 6]], [[0, 5], [10, 3]]]}
//! ```
//!
//! Each entry is `[re, im]`; a plain number or a string such as `"5+7i"`, `"-2.5-i"`,
//! `"3"` or `"4i"` is accepted on input. Output always uses the `[re, im]` form.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{LinalgError, Result};
use crate::linalg::matrix::{ComplexMatrix, C64};

/// Parses `"a+bi"`, `"a-bi"`, `"a"`, `"bi"`, `"i"`, `"-i"` (whitespace ignored).
pub fn parse_complex(s: &str) -> Result<C64> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || LinalgError::Parse(format!("cannot parse complex number {s:?}"));
    if s.is_empty() {
        return Err(err());
    }
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return s.parse::<f64>().map(|re| C64::new(re, 0.0)).map_err(|_| err());
    };
    // Split at the last sign that is not part of an exponent or the leading sign.
    let bytes = body.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
            split = Some(k);
            break;
        }
    }
    let parse_imag = |t: &str| -> Result<f64> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => t.parse::<f64>().map_err(|_| err()),
        }
    };
    let (re, im) = match split {
        Some(k) => (body[..k].parse::<f64>().map_err(|_| err())?, parse_imag(&body[k..])?),
        None => (0.0, parse_imag(body)?),
    };
    let z = C64::new(re, im);
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(err());
    }
    Ok(z)
}

/// Text form used in tables, e.g. `5+7i`, `-3`, `-2i`.
pub fn format_complex(z: C64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

fn entry_from_value(v: &Value) -> Result<C64> {
    match v {
        Value::Number(n) => n
            .as_f64()
            .map(|x| C64::new(x, 0.0))
            .ok_or_else(|| LinalgError::Parse(format!("bad number {n}"))),
        Value::String(s) => parse_complex(s),
        Value::Array(pair) if pair.len() == 2 => {
            let part = |p: &Value| {
                p.as_f64()
                    .ok_or_else(|| LinalgError::Parse(format!("bad component {p}")))
            };
            Ok(C64::new(part(&pair[0])?, part(&pair[1])?))
        }
        other => Err(LinalgError::Parse(format!("unsupported entry {other}"))),
    }
}

impl ComplexMatrix {
    /// Reads the JSON matrix format.
    pub fn from_json_value(v: &Value) -> Result<Self> {
        let dim = |key: &str| -> Result<Option<usize>> {
            match v.get(key) {
                None => Ok(None),
                Some(x) => x
                    .as_u64()
                    .map(|n| Some(n as usize))
                    .ok_or_else(|| LinalgError::Parse(format!("`{key}` must be a positive integer"))),
            }
        };
        let entries = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| LinalgError::Parse("missing `entries` array".into()))?;
        let mut data = Vec::new();
        let mut cols_seen = None;
        for row in entries {
            let row = row
                .as_array()
                .ok_or_else(|| LinalgError::Parse("each row of `entries` must be an array".into()))?;
            if let Some(c) = cols_seen {
                if c != row.len() {
                    return Err(LinalgError::Parse("ragged `entries` rows".into()));
                }
            }
            cols_seen = Some(row.len());
            for e in row {
                data.push(entry_from_value(e)?);
            }
        }
        let rows_found = entries.len();
        let cols_found = cols_seen.unwrap_or(0);
        let rows = dim("rows")?.unwrap_or(rows_found);
        let cols = dim("cols")?.unwrap_or(cols_found);
        if rows != rows_found || cols != cols_found {
            return Err(LinalgError::Parse(format!(
                "declared {rows}x{cols} but entries are {rows_found}x{cols_found}"
            )));
        }
        Self::new(rows, cols, data)
    }

    pub fn to_json_value(&self) -> Value {
        let entries: Vec<Value> = (0..self.rows())
            .map(|i| Value::Array(self.row(i).iter().map(|z| json!([z.re, z.im])).collect()))
            .collect();
        json!({"rows": self.rows(), "cols": self.cols(), "entries": entries})
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| LinalgError::Parse(e.to_string()))?;
        Self::from_json_value(&v)
    }

    pub fn to_json_string(&self) -> String {
        self.to_json_value().to_string()
    }
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(deserializer)?;
        ComplexMatrix::from_json_value(&v).map_err(D::Error::custom)
    }
}
