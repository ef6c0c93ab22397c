//! JSON rendering shared by every subcommand.

use std::path::Path;

use arglab_core::{ArgumentationGraph, Labelling, Rational};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

/// Decimal places in the human-readable rendering of a rational.
pub const DECIMAL_PLACES: usize = 6;

pub const SCHEMA_VERSION: u32 = 1;

pub fn rational(value: &Rational) -> Value {
    json!({
        "num": value.numer().to_string(),
        "den": value.denom().to_string(),
        "decimal": value.to_decimal(DECIMAL_PLACES),
    })
}

pub fn labelling(graph: &ArgumentationGraph, labelling: &Labelling) -> Value {
    let mut out = Map::new();
    for (i, label) in labelling.labels().iter().enumerate() {
        out.insert(graph.id(i).to_string(), Value::from(label.as_str()));
    }
    Value::Object(out)
}

pub fn id_list<'a>(ids: impl IntoIterator<Item = &'a str>) -> Value {
    Value::Array(ids.into_iter().map(Value::from).collect())
}

pub fn edge_list(edges: Vec<(&str, &str)>) -> Value {
    Value::Array(edges.into_iter().map(|(a, b)| json!([a, b])).collect())
}

/// Files read while serving one command, with their content digests.
#[derive(Default)]
pub struct Inputs {
    entries: Vec<Value>,
}

impl Inputs {
    pub fn record(&mut self, role: &str, path: &Path, content: &[u8]) {
        let digest = Sha256::digest(content);
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        self.entries.push(json!({
            "role": role,
            "path": path.display().to_string(),
            "sha256": hex,
        }));
    }

    pub fn into_value(self) -> Value {
        Value::Array(self.entries)
    }
}

/// Envelope around a command's result.
pub fn envelope(command: Vec<String>, inputs: Inputs, result: Value) -> Value {
    json!({
        "schema": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs.into_value(),
        "result": result,
    })
}
