//! Canonical JSON for towers and their elements.
//!
//! A rational is the string `"num/den"`. An element written at level `k` is
//! a list of `deg(m_k)` coefficients, each written at level `k − 1`, so the
//! nesting depth of a value is the level it is written at. A tower is a list
//! of `{"label", "minpoly"}` objects, minimal polynomial coefficients written
//! at the level below. Output is compact and deterministic.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{format_q, parse_q};
use crate::tower::{Elem, Tower};

pub fn elem_to_json(t: &Tower, x: &Elem, level: usize) -> Value {
    if level == 0 {
        let q = x.as_rational().expect("element above its written level");
        return Value::String(format_q(q));
    }
    let d = t.degree_of(level);
    Value::Array(
        (0..d)
            .map(|i| elem_to_json(t, &x.coeff(level, i), level - 1))
            .collect(),
    )
}

/// Parse an element; its level is the nesting depth of the JSON value.
pub fn elem_from_json(t: &Tower, v: &Value) -> Result<Elem> {
    Ok(parse_elem(t, v)?.0)
}

fn parse_elem(t: &Tower, v: &Value) -> Result<(Elem, usize)> {
    match v {
        Value::String(s) => Ok((Elem::Rat(parse_q(s)?), 0)),
        Value::Number(n) => Ok((Elem::Rat(parse_q(&n.to_string())?), 0)),
        Value::Array(items) => {
            let parsed = items
                .iter()
                .map(|i| parse_elem(t, i))
                .collect::<Result<Vec<_>>>()?;
            let depth = parsed
                .first()
                .map(|p| p.1)
                .ok_or_else(|| bad("empty coefficient list"))?;
            if parsed.iter().any(|p| p.1 != depth) {
                return Err(bad("ragged coefficient nesting"));
            }
            let level = depth + 1;
            if level > t.height() {
                return Err(Error::LevelOutOfRange {
                    found: level,
                    height: t.height(),
                });
            }
            if items.len() > t.degree_of(level) {
                return Err(bad(&format!("too many coefficients at level {level}")));
            }
            let coeffs = parsed.into_iter().map(|p| p.0).collect();
            Ok((Elem::from_coeffs(level, coeffs), level))
        }
        _ => Err(bad("expected a rational string or a coefficient list")),
    }
}

fn bad(msg: &str) -> Error {
    Error::Parse(msg.to_string())
}

pub fn tower_to_json(t: &Tower) -> Value {
    Value::Array(
        t.levels()
            .iter()
            .enumerate()
            .map(|(i, lv)| {
                let coeffs: Vec<Value> = lv.minpoly.iter().map(|c| elem_to_json(t, c, i)).collect();
                json!({"label": lv.label, "minpoly": coeffs})
            })
            .collect(),
    )
}

pub fn tower_from_json(v: &Value) -> Result<Tower> {
    let levels = v
        .as_array()
        .ok_or_else(|| bad("tower must be a list of levels"))?;
    let mut t = Tower::rationals();
    for lv in levels {
        let label = lv
            .get("label")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("level without label"))?;
        let coeffs = lv
            .get("minpoly")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("level without minpoly"))?;
        let minpoly = coeffs
            .iter()
            .map(|c| elem_from_json(&t, c))
            .collect::<Result<Vec<_>>>()?;
        t = t.extend(label, minpoly)?;
    }
    Ok(t)
}

pub fn vec_to_json(t: &Tower, v: &[Elem], level: usize) -> Value {
    Value::Array(v.iter().map(|x| elem_to_json(t, x, level)).collect())
}

pub fn vec_from_json(t: &Tower, v: &Value) -> Result<Vec<Elem>> {
    v.as_array()
        .ok_or_else(|| bad("expected a list of elements"))?
        .iter()
        .map(|x| elem_from_json(t, x))
        .collect()
}

pub fn matrix_to_json(t: &Tower, m: &[Vec<Elem>], level: usize) -> Value {
    Value::Array(m.iter().map(|row| vec_to_json(t, row, level)).collect())
}

pub fn matrix_from_json(t: &Tower, v: &Value) -> Result<Vec<Vec<Elem>>> {
    v.as_array()
        .ok_or_else(|| bad("expected a matrix"))?
        .iter()
        .map(|row| vec_from_json(t, row))
        .collect()
}

pub fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(&format!("missing field {key:?}")))
}

pub fn get_usize(v: &Value, key: &str) -> Result<usize> {
    get(v, key)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| bad(&format!("field {key:?} must be a non-negative integer")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_round_trip() {
        let t = Tower::from_int_minpolys(&[&[-2, 0, 1], &[-3, 0, 1]]).unwrap();
        let x = &t.mul(&t.gen(1), &t.gen(2)) + &Elem::frac(-1, 3);
        let j = elem_to_json(&t, &x, 2);
        assert_eq!(j.to_string(), r#"[["-1/3","0/1"],["0/1","1/1"]]"#);
        assert_eq!(elem_from_json(&t, &j).unwrap(), x);
        // A rational written at level 0 parses back to the same value.
        assert_eq!(elem_from_json(&t, &json!("4/2")).unwrap(), Elem::int(2));
    }

    #[test]
    fn tower_round_trip() {
        let t = Tower::from_int_minpolys(&[&[-1, -2, 1, 1]]).unwrap();
        let t = t.adjoin_sqrt("s", &t.gen(1)).unwrap();
        let j = tower_to_json(&t);
        let back = tower_from_json(&j).unwrap();
        assert_eq!(back, t);
        assert_eq!(tower_to_json(&back).to_string(), j.to_string());
    }

    #[test]
    fn rejects_malformed() {
        let t = Tower::from_int_minpolys(&[&[-2, 0, 1]]).unwrap();
        assert!(elem_from_json(&t, &json!([["1/1"]])).is_err());
        assert!(elem_from_json(&t, &json!(["1/1", "2/1", "3/1"])).is_err());
        assert!(elem_from_json(&t, &json!(["1/1", ["2/1"]])).is_err());
        assert!(elem_from_json(&t, &json!("1/0")).is_err());
        assert!(tower_from_json(&json!([{"label": "x", "minpoly": ["1/1", "2/1"]}])).is_err());
    }
}
