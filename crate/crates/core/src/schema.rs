//! JSON schemas for the domain objects: matrices of linear forms, block
//! normal forms, and scroll types, discriminated by a "kind" field. Parsing
//! reports the JSON pointer of the offending field.

use crate::invariants::ScrollType;
use crate::pencil::{KWBlock, KWForm, LinearForm, LinearFormMatrix};
use crate::rational::Rational;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("schema error at `{pointer}`: {message}")]
pub struct SchemaError {
    pub pointer: String,
    pub message: String,
}

fn err<T>(pointer: impl Into<String>, message: impl Into<String>) -> Result<T, SchemaError> {
    Err(SchemaError {
        pointer: pointer.into(),
        message: message.into(),
    })
}

/// A parsed input object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Matrix(LinearFormMatrix),
    Blocks(KWForm),
    Scroll(ScrollType),
}

pub fn parse_input(value: &Value) -> Result<Input, SchemaError> {
    let obj = value
        .as_object()
        .ok_or(SchemaError {
            pointer: "".into(),
            message: "expected a JSON object".into(),
        })?;
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or(SchemaError {
            pointer: "/kind".into(),
            message: "expected \"matrix\", \"blocks\" or \"scroll\"".into(),
        })?;
    match kind {
        "matrix" => Ok(Input::Matrix(parse_matrix(obj)?)),
        "blocks" => Ok(Input::Blocks(parse_blocks(obj)?)),
        "scroll" => Ok(Input::Scroll(parse_scroll(obj)?)),
        other => err("/kind", format!("unknown kind `{other}`")),
    }
}

fn parse_rational(v: &Value, pointer: &str) -> Result<Rational, SchemaError> {
    match v {
        Value::String(s) => s
            .parse::<Rational>()
            .map_err(|e| SchemaError {
                pointer: pointer.into(),
                message: e.to_string(),
            }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_int(i))
            } else {
                err(pointer, "expected an integer or a \"p/q\" string")
            }
        }
        _ => err(pointer, "expected an integer or a \"p/q\" string"),
    }
}

fn parse_matrix(obj: &Map<String, Value>) -> Result<LinearFormMatrix, SchemaError> {
    let vars_v = obj.get("variables").ok_or(SchemaError {
        pointer: "/variables".into(),
        message: "missing".into(),
    })?;
    let vars_arr = vars_v
        .as_array()
        .ok_or(SchemaError {
            pointer: "/variables".into(),
            message: "expected an array of names".into(),
        })?;
    let mut variables = Vec::new();
    for (i, v) in vars_arr.iter().enumerate() {
        match v.as_str() {
            Some(s) if !s.is_empty() => variables.push(s.to_string()),
            _ => return err(format!("/variables/{i}"), "expected a nonempty string"),
        }
    }
    let mut seen = std::collections::HashSet::new();
    for (i, v) in variables.iter().enumerate() {
        if !seen.insert(v.clone()) {
            return err(format!("/variables/{i}"), "duplicate variable name");
        }
    }
    let rows_v = obj.get("rows").ok_or(SchemaError {
        pointer: "/rows".into(),
        message: "missing".into(),
    })?;
    let rows_arr = rows_v.as_array().ok_or(SchemaError {
        pointer: "/rows".into(),
        message: "expected an array of two rows".into(),
    })?;
    if rows_arr.len() != 2 {
        return err("/rows", format!("expected 2 rows, found {}", rows_arr.len()));
    }
    let n = variables.len();
    let mut rows: Vec<Vec<LinearForm>> = Vec::new();
    for (r, row_v) in rows_arr.iter().enumerate() {
        let entries = row_v.as_array().ok_or(SchemaError {
            pointer: format!("/rows/{r}"),
            message: "expected an array of entries".into(),
        })?;
        let mut row = Vec::new();
        for (c, entry) in entries.iter().enumerate() {
            let map = entry.as_object().ok_or(SchemaError {
                pointer: format!("/rows/{r}/{c}"),
                message: "expected an object of variable: coefficient pairs".into(),
            })?;
            let mut form = LinearForm::zero(n);
            for (name, coeff) in map {
                let Some(idx) = variables.iter().position(|v| v == name) else {
                    return err(
                        format!("/rows/{r}/{c}/{name}"),
                        "not a declared variable",
                    );
                };
                form.coeffs[idx] =
                    parse_rational(coeff, &format!("/rows/{r}/{c}/{name}"))?;
            }
            row.push(form);
        }
        rows.push(row);
    }
    if rows[0].len() != rows[1].len() || rows[0].is_empty() {
        return err("/rows", "rows must have equal, positive length");
    }
    let rows: [Vec<LinearForm>; 2] = [rows[0].clone(), rows[1].clone()];
    Ok(LinearFormMatrix::new(variables, rows))
}

fn parse_blocks(obj: &Map<String, Value>) -> Result<KWForm, SchemaError> {
    let blocks_v = obj.get("blocks").ok_or(SchemaError {
        pointer: "/blocks".into(),
        message: "missing".into(),
    })?;
    let arr = blocks_v.as_array().ok_or(SchemaError {
        pointer: "/blocks".into(),
        message: "expected an array".into(),
    })?;
    if arr.is_empty() {
        return err("/blocks", "at least one block required");
    }
    let mut blocks = Vec::new();
    for (i, b) in arr.iter().enumerate() {
        let ptr = format!("/blocks/{i}");
        let map = b.as_object().ok_or(SchemaError {
            pointer: ptr.clone(),
            message: "expected an object".into(),
        })?;
        let kind = map
            .get("kind")
            .and_then(Value::as_str)
            .ok_or(SchemaError {
                pointer: format!("{ptr}/kind"),
                message: "expected \"nilpotent\", \"scroll\" or \"jordan\"".into(),
            })?;
        let length = map
            .get("length")
            .and_then(Value::as_u64)
            .ok_or(SchemaError {
                pointer: format!("{ptr}/length"),
                message: "expected a positive integer".into(),
            })? as usize;
        if length == 0 {
            return err(format!("{ptr}/length"), "length must be positive");
        }
        let block = match kind {
            "nilpotent" => KWBlock::Nilpotent { length },
            "scroll" => KWBlock::Scroll { length },
            "jordan" => {
                let ev = map.get("eigenvalue").ok_or(SchemaError {
                    pointer: format!("{ptr}/eigenvalue"),
                    message: "missing for a jordan block".into(),
                })?;
                KWBlock::Jordan {
                    length,
                    eigenvalue: parse_rational(ev, &format!("{ptr}/eigenvalue"))?,
                }
            }
            other => return err(format!("{ptr}/kind"), format!("unknown kind `{other}`")),
        };
        blocks.push(block);
    }
    Ok(KWForm::new(blocks))
}

fn parse_scroll(obj: &Map<String, Value>) -> Result<ScrollType, SchemaError> {
    let t = obj.get("type").ok_or(SchemaError {
        pointer: "/type".into(),
        message: "missing".into(),
    })?;
    let arr = t.as_array().ok_or(SchemaError {
        pointer: "/type".into(),
        message: "expected an array of positive integers".into(),
    })?;
    if arr.is_empty() {
        return err("/type", "at least one block length required");
    }
    let mut lens = Vec::new();
    for (i, v) in arr.iter().enumerate() {
        match v.as_u64() {
            Some(n) if n >= 1 => lens.push(n as usize),
            _ => return err(format!("/type/{i}"), "expected a positive integer"),
        }
    }
    Ok(ScrollType::new(lens))
}

pub fn matrix_to_value(x: &LinearFormMatrix) -> Value {
    let rows: Vec<Value> = (0..2)
        .map(|r| {
            let entries: Vec<Value> = (0..x.num_cols())
                .map(|c| {
                    let mut map = Map::new();
                    for (i, coeff) in x.rows[r][c].coeffs.iter().enumerate() {
                        if !coeff.is_zero() {
                            map.insert(x.variables[i].clone(), json!(coeff.to_string()));
                        }
                    }
                    Value::Object(map)
                })
                .collect();
            json!(entries)
        })
        .collect();
    json!({
        "kind": "matrix",
        "variables": x.variables,
        "rows": rows,
    })
}

pub fn blocks_to_value(form: &KWForm) -> Value {
    let blocks: Vec<Value> = form
        .blocks
        .iter()
        .map(|b| match b {
            KWBlock::Nilpotent { length } => json!({"kind": "nilpotent", "length": length}),
            KWBlock::Scroll { length } => json!({"kind": "scroll", "length": length}),
            KWBlock::Jordan { length, eigenvalue } => {
                json!({"kind": "jordan", "length": length, "eigenvalue": eigenvalue.to_string()})
            }
        })
        .collect();
    json!({ "blocks": blocks })
}
