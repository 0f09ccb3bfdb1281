//! Output helpers: JSON envelope and 6-significant-digit tables.

use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: &str = "hyperspec/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "table" => Ok(Format::Table),
            other => Err(format!("unknown format `{other}` (expected json|table)")),
        }
    }
}

/// Wraps a command payload in the versioned report envelope.
pub fn envelope<T: Serialize>(command: &str, payload: &T) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "report": payload,
    })
}

pub fn print_json(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

/// Rounds to 6 significant digits for table output.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    let rendered = format!("{x:.decimals$}");
    // strip trailing zeros after the decimal point
    if rendered.contains('.') {
        rendered.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        rendered
    }
}

pub fn table_row(label: &str, value: &str) {
    println!("{label:<28} {value}");
}
