//! `--config FILE`: a JSON object whose entries become flags.
//!
//! `{"seed": 7, "solver": "brute-force", "full": true, "n": [2, 3]}` expands
//! to `--seed 7 --solver brute-force --full --n 2,3`, inserted right after
//! the subcommand path so that flags given on the command line come later
//! and win. Underscores in keys become hyphens; `false` and `null` are
//! dropped.

use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::Value;
use sisz_core::rng::derive_seed;

use crate::error::CliError;

const SUBCOMMANDS: &[&str] = &[
    "gen", "instance", "basis", "solve", "reduce", "stats", "moddist", "lift", "incompat", "uniformity", "sweep",
    "eta", "help",
];

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

fn flags_from(value: &Value) -> Result<Vec<String>, CliError> {
    let obj = value
        .as_object()
        .ok_or_else(|| CliError::Usage("config file must hold a JSON object".into()))?;
    let mut out = Vec::new();
    for (key, v) in obj {
        let flag = format!("--{}", key.replace('_', "-"));
        match v {
            Value::Null | Value::Bool(false) => {}
            Value::Bool(true) => out.push(flag),
            Value::Array(items) => {
                let parts = items
                    .iter()
                    .map(|x| scalar(x).ok_or_else(|| CliError::Usage(format!("config key {key:?}: nested value"))))
                    .collect::<Result<Vec<_>, _>>()?;
                out.push(flag);
                out.push(parts.join(","));
            }
            Value::Object(_) => return Err(CliError::Usage(format!("config key {key:?}: nested object"))),
            other => {
                out.push(flag);
                out.push(scalar(other).expect("string or number"));
            }
        }
    }
    Ok(out)
}

/// Removes `--config FILE` from `args` and splices the file's flags in after
/// the subcommand path.
pub fn expand_config(args: Vec<String>) -> Result<Vec<String>, CliError> {
    let mut path = None;
    let mut rest = Vec::with_capacity(args.len());
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            path = Some(it.next().ok_or_else(|| CliError::Usage("--config needs a file".into()))?);
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = path else { return Ok(rest) };
    let text = std::fs::read_to_string(&path).map_err(|source| CliError::Io { path: path.clone(), source })?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("config file {path}: {e}")))?;
    let flags = flags_from(&value)?;
    let split = 1 + rest.iter().skip(1).take_while(|a| SUBCOMMANDS.contains(&a.as_str())).count();
    let split = split.min(rest.len());
    let tail = rest.split_off(split);
    rest.extend(flags);
    rest.extend(tail);
    Ok(rest)
}

/// A seed for runs that did not name one. It is recorded in every output.
pub fn fresh_seed() -> u64 {
    let t = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_nanos() as u64);
    derive_seed(t, std::process::id() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn v(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn flags_expand_in_order() {
        let f = flags_from(&json!({"seed": 7, "full": true, "no_certify": false, "n": [2, 3], "solver": "brute-force"}))
            .unwrap();
        assert_eq!(f, v(&["--full", "--n", "2,3", "--seed", "7", "--solver", "brute-force"]));
        assert!(flags_from(&json!([1])).is_err());
        assert!(flags_from(&json!({"a": {"b": 1}})).is_err());
    }

    #[test]
    fn splice_after_subcommand_path() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.json");
        std::fs::write(&p, r#"{"Q": 10}"#).unwrap();
        let args = v(&["sisz", "stats", "moddist", "--config", p.to_str().unwrap(), "--q", "3"]);
        assert_eq!(expand_config(args).unwrap(), v(&["sisz", "stats", "moddist", "--Q", "10", "--q", "3"]));
        assert_eq!(expand_config(v(&["sisz", "eta"])).unwrap(), v(&["sisz", "eta"]));
    }
}
