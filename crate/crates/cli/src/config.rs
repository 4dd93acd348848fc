//! `--config FILE`: a JSON object whose keys stand in for flags.
//!
//! `"paths": 1000` becomes `--paths=1000`, `"dt_step"` and `"dt-step"` both
//! map to `--dt-step`, `true` becomes a bare flag, `false` and `null` are
//! dropped, arrays repeat the flag and a nested array is joined with commas
//! (`"point": [[0.5, 0]]` is `--point=0.5,0`). Flags given on the command
//! line win over the file.

use std::collections::HashSet;
use std::path::Path;

use firstexit::{Error, Result};
use serde_json::Value;

/// Value of `--config` before any other parsing, so required flags can come
/// from the file.
pub fn config_path(args: &[String]) -> Option<String> {
    let mut it = args.iter().skip(1);
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(v) = a.strip_prefix("--config=") {
            return Some(v.to_string());
        }
    }
    None
}

/// `domains list` takes no flags, so a config file is ignored there.
pub fn is_domains_command(args: &[String]) -> bool {
    args.iter().skip(1).find(|a| !a.starts_with('-')).is_some_and(|a| a == "domains")
}

pub fn merge(args: &[String], path: &Path) -> Result<Vec<String>> {
    let text = std::fs::read_to_string(path)?;
    let json: Value = serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    let Value::Object(map) = json else {
        return Err(Error::Config(format!("{}: expected a JSON object", path.display())));
    };
    let given: HashSet<String> = args
        .iter()
        .filter_map(|a| a.strip_prefix("--"))
        .map(|a| a.split('=').next().unwrap_or(a).to_string())
        .collect();
    let mut merged = args.to_vec();
    for (key, value) in map {
        let flag = key.replace('_', "-");
        if flag == "config" || given.contains(&flag) {
            continue;
        }
        match value {
            Value::Array(items) => {
                for item in items {
                    push(&mut merged, &flag, &item)?;
                }
            }
            other => push(&mut merged, &flag, &other)?,
        }
    }
    Ok(merged)
}

fn push(args: &mut Vec<String>, flag: &str, value: &Value) -> Result<()> {
    match value {
        Value::Bool(true) => args.push(format!("--{flag}")),
        Value::Bool(false) | Value::Null => {}
        other => args.push(format!("--{flag}={}", scalar(flag, other)?)),
    }
    Ok(())
}

fn scalar(flag: &str, value: &Value) -> Result<String> {
    match value {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        Value::Array(items) => items.iter().map(|v| scalar(flag, v)).collect::<Result<Vec<_>>>().map(|v| v.join(",")),
        _ => Err(Error::Config(format!("unsupported value for `{flag}`: {value}"))),
    }
}
