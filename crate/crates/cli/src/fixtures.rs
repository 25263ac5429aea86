//! Golden values: each fixture is an `orbk` command line and a JSON value
//! that must be contained in its output.

use std::path::Path;

use serde_json::{json, Value};

use crate::{evaluate, CliError, Context};

const BUILTIN: &[(&str, &str)] = &[
    ("cp1_k2.json", include_str!("../fixtures/cp1_k2.json")),
    ("dual_pairing.json", include_str!("../fixtures/dual_pairing.json")),
];

#[derive(Clone, Debug, PartialEq)]
pub struct Fixture {
    pub id: String,
    pub anchor: String,
    pub args: Vec<String>,
    pub expect: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixtureOutcome {
    pub id: String,
    pub anchor: String,
    pub pass: bool,
    pub detail: Option<String>,
}

fn parse_one(v: &Value, source: &str) -> Result<Fixture, CliError> {
    let bad = |m: &str| CliError::Input(format!("{source}: {m}"));
    let text = |key: &str| v.get(key).and_then(Value::as_str).map(str::to_string).ok_or_else(|| bad(&format!("missing string \"{key}\"")));
    let args = v
        .get("args")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing \"args\" array"))?
        .iter()
        .map(|a| a.as_str().map(str::to_string).ok_or_else(|| bad("arguments must be strings")))
        .collect::<Result<_, _>>()?;
    Ok(Fixture {
        id: text("id")?,
        anchor: text("anchor")?,
        args,
        expect: v.get("expect").cloned().ok_or_else(|| bad("missing \"expect\""))?,
    })
}

/// A fixture file holds one fixture object or an array of them.
pub fn parse_file(text: &str, source: &str) -> Result<Vec<Fixture>, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Input(format!("{source}: {e}")))?;
    match &v {
        Value::Array(items) => items.iter().map(|x| parse_one(x, source)).collect(),
        _ => Ok(vec![parse_one(&v, source)?]),
    }
}

pub fn builtin() -> Vec<Fixture> {
    BUILTIN
        .iter()
        .flat_map(|(name, text)| parse_file(text, name).expect("built-in fixtures are well formed"))
        .collect()
}

/// All `*.json` fixtures in `dir`, in file-name order. An empty directory is
/// an input error.
pub fn load_dir(dir: &Path) -> Result<Vec<Fixture>, CliError> {
    let entries = std::fs::read_dir(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let mut out = Vec::new();
    for p in paths {
        let text = std::fs::read_to_string(&p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
        out.extend(parse_file(&text, &p.display().to_string())?);
    }
    if out.is_empty() {
        return Err(CliError::Input(format!("no fixtures found in {}", dir.display())));
    }
    Ok(out)
}

/// Whether `expected` is contained in `actual`: objects match key by key on
/// the expected keys, everything else must be equal.
fn contains(actual: &Value, expected: &Value, path: &str) -> Result<(), String> {
    match (actual, expected) {
        (Value::Object(a), Value::Object(e)) => {
            for (k, ev) in e {
                let p = format!("{path}/{k}");
                match a.get(k) {
                    Some(av) => contains(av, ev, &p)?,
                    None => return Err(format!("{p}: missing, expected {ev}")),
                }
            }
            Ok(())
        }
        _ if actual == expected => Ok(()),
        _ => Err(format!("{}: expected {expected}, got {actual}", if path.is_empty() { "/" } else { path })),
    }
}

pub fn reproduce(fixtures: &[Fixture], ctx: &Context) -> Vec<FixtureOutcome> {
    fixtures
        .iter()
        .map(|f| {
            let args = std::iter::once("orbk".to_string()).chain(f.args.iter().cloned());
            let result = evaluate(args, ctx).and_then(|actual| contains(&actual, &f.expect, ""));
            FixtureOutcome { id: f.id.clone(), anchor: f.anchor.clone(), pass: result.is_ok(), detail: result.err() }
        })
        .collect()
}

pub fn report(outcomes: &[FixtureOutcome]) -> Value {
    let passed = outcomes.iter().filter(|o| o.pass).count();
    json!({
        "fixtures": outcomes
            .iter()
            .map(|o| {
                let mut v = json!({ "id": o.id, "anchor": o.anchor, "pass": o.pass });
                if let Some(d) = &o.detail {
                    v["diff"] = json!(d);
                }
                v
            })
            .collect::<Vec<_>>(),
        "passed": passed,
        "failed": outcomes.len() - passed,
    })
}
