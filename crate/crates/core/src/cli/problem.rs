use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{parse_polynomial, Polynomial, Ring, VariableSet, WeightVector};

/// A validated problem file.
#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub vars: VariableSet,
    pub weights: Option<WeightVector>,
    pub param: Option<String>,
    pub f_text: String,
    pub ring: Arc<Ring>,
    pub f: Polynomial,
}

struct Entry<'a> {
    line: usize,
    column: usize,
    value: &'a str,
}

fn at(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Moves an error reported against a single value to its place in the file.
fn relocate(e: Error, entry: &Entry) -> Error {
    match e {
        Error::Parse { column, message, .. } => at(entry.line, entry.column + column.max(1) - 1, message),
        Error::MalformedScalar(m) => at(entry.line, entry.column, m),
        other => other,
    }
}

fn split_list(value: &str) -> Vec<&str> {
    value
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect()
}

pub fn parse_problem_file(text: &str) -> Result<ProblemSpec> {
    let mut entries: BTreeMap<&str, Entry> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once(':') else {
            return Err(at(line, 1, "expected `key: value`"));
        };
        let key = key.trim();
        if !matches!(key, "vars" | "weights" | "param" | "f") {
            return Err(at(line, 1, format!("unknown key {key:?}")));
        }
        let lead = value.len() - value.trim_start().len();
        let column = content.len() - value.len() + lead + 1;
        let entry = Entry {
            line,
            column,
            value: value.trim(),
        };
        if entries.insert(key, entry).is_some() {
            return Err(at(line, 1, format!("duplicate key {key:?}")));
        }
    }
    let missing = |k: &str| at(1, 1, format!("missing `{k}:` line"));
    let vars_entry = entries.get("vars").ok_or_else(|| missing("vars"))?;
    let names: Vec<String> = split_list(vars_entry.value)
        .into_iter()
        .map(String::from)
        .collect();
    if names.len() < 2 {
        return Err(at(
            vars_entry.line,
            vars_entry.column,
            "at least two variables are required",
        ));
    }
    let vars = VariableSet::new(names, 0).map_err(|e| relocate(e, vars_entry))?;

    let weights = match entries.get("weights") {
        None => None,
        Some(e) => {
            let ws = split_list(e.value)
                .into_iter()
                .map(|w| {
                    w.parse::<u32>()
                        .map_err(|_| at(e.line, e.column, format!("bad weight {w:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if ws.len() != vars.len() {
                return Err(at(
                    e.line,
                    e.column,
                    format!("{} weights for {} variables", ws.len(), vars.len()),
                ));
            }
            Some(WeightVector::new(ws).map_err(|err| relocate(err, e))?)
        }
    };

    let param = match entries.get("param") {
        None => None,
        Some(e) => {
            let p = e.value;
            let valid = p.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && p.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(at(e.line, e.column, format!("invalid parameter name {p:?}")));
            }
            Some(p.to_string())
        }
    };

    let ring = Ring::new(vars.clone(), weights.clone(), param.clone()).map_err(|err| {
        relocate(
            err,
            entries
                .get("param")
                .or(entries.get("weights"))
                .unwrap_or(vars_entry),
        )
    })?;
    let f_entry = entries.get("f").ok_or_else(|| missing("f"))?;
    let f = parse_polynomial(f_entry.value, &ring).map_err(|e| relocate(e, f_entry))?;
    Ok(ProblemSpec {
        vars,
        weights,
        param,
        f_text: f_entry.value.to_string(),
        ring,
        f,
    })
}
