//! JSON encodings of the domain values.
//!
//! | value | encoding |
//! |---|---|
//! | rational | `"p/q"` or `"p"` (an integer JSON number is also accepted) |
//! | cyclotomic | `{"conductor": n, "coeffs": {"e": "p/q", …}}`, omitted exponents are zero |
//! | integer matrix | `{"rows": r, "cols": c, "entries": [[…], …]}` |
//! | group | `{"orders": [k₁, …]}` |
//! | virtual character | `{"group": G, "coeffs": {"l₁,l₂,…": n}}` |
//! | class function | `{"group": G, "values": {"g₁,g₂,…": cyclotomic}}`, omitted elements are zero |
//! | torus class function | a class function with `"modulo": "character-lattice"` |
//! | subgroup | `{"ambient": G, "generators": [[…], …]}` |
//! | holonomy data | `{"group": G, "sectors": {"g": [{"theta": t, "plus": [t, …], "minus": [t, …]}]}}` |
//!
//! Turns in holonomy data are rationals; a floating-point JSON number is read
//! as an inexact turn.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational, Cyclotomic, IntMatrix, Rational};
use crate::grouprep::{ClassFunction, Embedding, FiniteAbelianGroup, RepRingElement};
use crate::hatk_point::TorusClassFunction;
use crate::mtorus::{EigenSector, HolonomyData, Turn};

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn parse_str(s: &str) -> Result<Value> {
    serde_json::from_str(s).map_err(|e| err(format!("invalid JSON: {e}")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| err(format!("{what} must be a JSON object")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| err(format!("{what} is missing \"{key}\"")))
}

fn as_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| err(format!("{what} must be an integer")))
}

fn as_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| err(format!("{what} must be a nonnegative integer")))
}

/// `"1,2"` → `[1, 2]`.
pub fn parse_key(s: &str) -> Result<Vec<i64>> {
    s.split(',').map(|p| p.trim().parse::<i64>().map_err(|_| err(format!("bad tuple key {s:?}")))).collect()
}

pub fn format_key(coords: &[u64]) -> String {
    coords.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

pub fn parse_rational_value(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        _ => Err(err(format!("expected a rational \"p/q\", found {v}"))),
    }
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

/// A bare rational is accepted as a cyclotomic of conductor 1.
pub fn parse_cyclotomic(v: &Value) -> Result<Cyclotomic> {
    if !v.is_object() {
        return Ok(Cyclotomic::from_rational(parse_rational_value(v)?));
    }
    let obj = object(v, "cyclotomic")?;
    let n = as_u64(field(obj, "conductor", "cyclotomic")?, "conductor")?;
    if n == 0 {
        return Err(err("conductor must be positive"));
    }
    let coeffs = object(field(obj, "coeffs", "cyclotomic")?, "coeffs")?;
    let mut terms = Vec::with_capacity(coeffs.len());
    for (e, c) in coeffs {
        let e: u64 = e.trim().parse().map_err(|_| err(format!("bad exponent {e:?}")))?;
        terms.push((e % n, parse_rational_value(c)?));
    }
    Cyclotomic::from_terms(n, terms)
}

pub fn cyclotomic_to_json(c: &Cyclotomic) -> Value {
    let coeffs: Map<String, Value> = c.terms().map(|(e, r)| (e.to_string(), rational_to_json(r))).collect();
    json!({ "conductor": c.conductor(), "coeffs": coeffs })
}

pub fn parse_matrix(v: &Value) -> Result<IntMatrix> {
    let obj = object(v, "matrix")?;
    let rows = as_u64(field(obj, "rows", "matrix")?, "rows")? as usize;
    let cols = as_u64(field(obj, "cols", "matrix")?, "cols")? as usize;
    let entries = field(obj, "entries", "matrix")?.as_array().ok_or_else(|| err("entries must be an array"))?;
    if entries.len() != rows {
        return Err(Error::Shape(format!("{} rows listed, {rows} declared", entries.len())));
    }
    let parsed: Vec<Vec<i64>> = entries
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| err("matrix rows must be arrays"))?
                .iter()
                .map(|x| as_i64(x, "matrix entry"))
                .collect()
        })
        .collect::<Result<_>>()?;
    IntMatrix::from_rows(cols, &parsed)
}

pub fn matrix_to_json(m: &IntMatrix) -> Value {
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": m.to_rows() })
}

pub fn parse_group(v: &Value) -> Result<FiniteAbelianGroup> {
    let obj = object(v, "group")?;
    let orders = field(obj, "orders", "group")?.as_array().ok_or_else(|| err("orders must be an array"))?;
    FiniteAbelianGroup::new(orders.iter().map(|o| as_u64(o, "order")).collect::<Result<_>>()?)
}

pub fn group_to_json(g: &FiniteAbelianGroup) -> Value {
    json!({ "orders": g.orders() })
}

/// Reads `"group"` from `obj`, falling back to `default`; a group given in
/// both places must agree.
fn group_of(obj: &Map<String, Value>, default: Option<&FiniteAbelianGroup>, what: &str) -> Result<FiniteAbelianGroup> {
    match (obj.get("group"), default) {
        (Some(g), Some(d)) => {
            let g = parse_group(g)?;
            d.check_same(&g)?;
            Ok(g)
        }
        (Some(g), None) => parse_group(g),
        (None, Some(d)) => Ok(d.clone()),
        (None, None) => Err(err(format!("{what} is missing \"group\""))),
    }
}

pub fn parse_rep(v: &Value, group: Option<&FiniteAbelianGroup>) -> Result<RepRingElement> {
    let obj = object(v, "virtual character")?;
    let group = group_of(obj, group, "virtual character")?;
    let coeffs = object(field(obj, "coeffs", "virtual character")?, "coeffs")?;
    let mut sums: BTreeMap<Vec<u64>, i64> = BTreeMap::new();
    for (k, n) in coeffs {
        let labels = group.element(&parse_key(k)?)?.coords().to_vec();
        let n = as_i64(n, "multiplicity")?;
        let entry = sums.entry(labels).or_insert(0);
        *entry = entry.checked_add(n).ok_or_else(|| Error::BoundExceeded("multiplicity overflows i64".into()))?;
    }
    let terms: Vec<(Vec<i64>, i64)> =
        sums.into_iter().map(|(k, n)| (k.into_iter().map(|x| x as i64).collect(), n)).collect();
    RepRingElement::from_terms(&group, terms.iter().map(|(k, n)| (k.as_slice(), *n)))
}

pub fn rep_to_json(x: &RepRingElement) -> Value {
    let coeffs: Map<String, Value> = x.terms().map(|(k, n)| (format_key(k), json!(n))).collect();
    json!({ "group": group_to_json(x.group()), "coeffs": coeffs })
}

pub fn parse_classfun(v: &Value, group: Option<&FiniteAbelianGroup>) -> Result<ClassFunction> {
    let obj = object(v, "class function")?;
    let group = group_of(obj, group, "class function")?;
    let given = object(field(obj, "values", "class function")?, "values")?;
    let mut values = vec![Cyclotomic::zero(); group.order()];
    for (k, c) in given {
        let g = group.element(&parse_key(k)?)?;
        values[g.index()] = values[g.index()].checked_add(&parse_cyclotomic(c)?)?;
    }
    ClassFunction::new(&group, values)
}

pub fn classfun_to_json(f: &ClassFunction) -> Value {
    let g = f.group();
    let values: Map<String, Value> = f
        .values()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (format_key(&g.coords_of(i)), cyclotomic_to_json(c)))
        .collect();
    json!({ "group": group_to_json(g), "values": values })
}

pub fn parse_torus_classfun(v: &Value, group: Option<&FiniteAbelianGroup>) -> Result<TorusClassFunction> {
    if let Some(m) = v.get("modulo") {
        if m != "character-lattice" {
            return Err(err(format!("unsupported modulus {m}")));
        }
    }
    TorusClassFunction::new(parse_classfun(v, group)?)
}

pub fn torus_classfun_to_json(u: &TorusClassFunction) -> Value {
    let mut v = classfun_to_json(u.representative());
    v["modulo"] = json!("character-lattice");
    v
}

/// Character coefficients of a torus class, each reduced modulo Z where
/// possible.
pub fn torus_coefficients_to_json(u: &TorusClassFunction) -> Value {
    let coeffs: Map<String, Value> = u
        .coefficients_mod_z()
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (format_key(k), cyclotomic_to_json(c)))
        .collect();
    Value::Object(coeffs)
}

pub fn parse_subgroup(v: &Value) -> Result<Embedding> {
    let obj = object(v, "subgroup")?;
    let ambient = parse_group(field(obj, "ambient", "subgroup")?)?;
    let gens = field(obj, "generators", "subgroup")?.as_array().ok_or_else(|| err("generators must be an array"))?;
    let gens: Vec<Vec<i64>> = gens
        .iter()
        .map(|g| {
            g.as_array()
                .ok_or_else(|| err("a generator must be an array"))?
                .iter()
                .map(|x| as_i64(x, "generator coordinate"))
                .collect()
        })
        .collect::<Result<_>>()?;
    match obj.get("domain") {
        Some(d) => Embedding::new(&parse_group(d)?, &ambient, &gens),
        None => Embedding::generated_by(&ambient, &gens),
    }
}

pub fn subgroup_to_json(e: &Embedding) -> Value {
    json!({
        "ambient": group_to_json(e.ambient()),
        "domain": group_to_json(e.domain()),
        "generators": e.images(),
    })
}

fn parse_turn(v: &Value) -> Result<Turn> {
    match v {
        Value::Number(n) if !n.is_i64() && !n.is_u64() => {
            let x = n.as_f64().ok_or_else(|| err("turn is not a finite number"))?;
            Ok(Turn::Approx(x))
        }
        _ => Ok(Turn::Exact(parse_rational_value(v)?)),
    }
}

fn turn_to_json(t: &Turn) -> Value {
    match t {
        Turn::Exact(r) => rational_to_json(r),
        Turn::Approx(x) => json!(x),
    }
}

pub fn parse_holonomy(v: &Value) -> Result<HolonomyData> {
    let obj = object(v, "holonomy data")?;
    let group = parse_group(field(obj, "group", "holonomy data")?)?;
    let sectors = object(field(obj, "sectors", "holonomy data")?, "sectors")?;
    let mut d = HolonomyData::new(&group);
    for (k, list) in sectors {
        let g = group.element(&parse_key(k)?)?;
        let list = list.as_array().ok_or_else(|| err("each element's sectors must be an array"))?;
        for rec in list {
            let rec = object(rec, "sector")?;
            let theta = parse_rational_value(field(rec, "theta", "sector")?)?;
            let turns = |key: &str| -> Result<Vec<Turn>> {
                match rec.get(key) {
                    None => Ok(Vec::new()),
                    Some(a) => a.as_array().ok_or_else(|| err(format!("{key} must be an array")))?.iter().map(parse_turn).collect(),
                }
            };
            d.insert(&g, EigenSector::new(theta, turns("plus")?, turns("minus")?))?;
        }
    }
    Ok(d)
}

pub fn holonomy_to_json(d: &HolonomyData) -> Value {
    let sectors: Map<String, Value> = d
        .sectors()
        .map(|(g, list)| {
            let recs: Vec<Value> = list
                .iter()
                .map(|s| {
                    json!({
                        "theta": rational_to_json(&s.theta),
                        "plus": s.plus.iter().map(turn_to_json).collect::<Vec<_>>(),
                        "minus": s.minus.iter().map(turn_to_json).collect::<Vec<_>>(),
                    })
                })
                .collect();
            (format_key(g.coords()), Value::Array(recs))
        })
        .collect();
    json!({ "group": group_to_json(d.group()), "sectors": sectors })
}
