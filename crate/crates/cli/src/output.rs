use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};
use steadycert_core::groebner::Budget;

use crate::commands::CliError;

/// Wraps a result with the provenance every report carries.
pub fn envelope(command: &str, argv: &[String], seed: u64, budget: &Budget, result: impl Serialize) -> Result<Value, CliError> {
    Ok(json!({
        "schema": 1,
        "tool": "steadycert",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "seed": seed,
        "budget": budget,
        "input": argv,
        "result": serde_json::to_value(result)?,
    }))
}

pub fn write_text(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes())?;
            so.flush()?;
        }
    }
    Ok(())
}

pub fn write_json(out: Option<&Path>, v: &Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    write_text(out, &text)
}
