//! Resolution of the scenario configuration: defaults, then an optional
//! file, then command-line flags.

use std::path::Path;

use eraser_core::ScenarioConfig;
use serde_json::{Map, Value};

use crate::error::CliError;

/// Alternative spellings accepted in configuration files.
fn canonical_key(key: &str) -> String {
    let key = key.trim().replace('-', "_");
    match key.as_str() {
        "s_phi" => "s_phi_override".into(),
        "s_gamma" => "s_gamma_override".into(),
        "late_decay" => "include_late_decay".into(),
        _ => key,
    }
}

fn defaults() -> Map<String, Value> {
    match serde_json::to_value(ScenarioConfig::default()) {
        Ok(Value::Object(map)) => map,
        _ => unreachable!("ScenarioConfig serializes to an object"),
    }
}

/// Layered configuration under construction.
pub struct ConfigBuilder {
    fields: Map<String, Value>,
}

impl ConfigBuilder {
    pub fn new() -> Self {
        ConfigBuilder { fields: defaults() }
    }

    pub fn set(&mut self, key: &str, value: Value) -> Result<(), CliError> {
        let key = canonical_key(key);
        match self.fields.get_mut(&key) {
            Some(slot) => {
                *slot = value;
                Ok(())
            }
            None => Err(CliError::Config(format!("unknown configuration key {key:?}"))),
        }
    }

    pub fn load_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        if text.trim_start().starts_with('{') {
            self.load_json(&text, path)
        } else {
            self.load_key_values(&text, path)
        }
    }

    fn load_json(&mut self, text: &str, path: &Path) -> Result<(), CliError> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| CliError::Config(format!("{}: invalid JSON: {e}", path.display())))?;
        let Value::Object(mut object) = value else {
            return Err(CliError::Config(format!("{}: expected a JSON object", path.display())));
        };
        // A run manifest carries its configuration under "config".
        if let Some(Value::Object(inner)) = object.remove("config") {
            object = inner;
        }
        for (k, v) in object {
            self.set(&k, v)?;
        }
        Ok(())
    }

    fn load_key_values(&mut self, text: &str, path: &Path) -> Result<(), CliError> {
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, raw)) = line.split_once('=') else {
                return Err(CliError::Config(format!(
                    "{}:{}: expected key=value, got {line:?}",
                    path.display(),
                    n + 1
                )));
            };
            let raw = raw.trim();
            let value = match raw {
                "none" | "null" | "" => Value::Null,
                _ => match serde_json::from_str::<Value>(raw) {
                    Ok(v @ (Value::Number(_) | Value::Bool(_))) => v,
                    _ => Value::String(raw.to_owned()),
                },
            };
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn build(self) -> Result<ScenarioConfig, CliError> {
        let cfg: ScenarioConfig = serde_json::from_value(Value::Object(self.fields))
            .map_err(|e| CliError::Config(format!("invalid configuration: {e}")))?;
        cfg.validate().map_err(|e| CliError::Config(e.to_string()))?;
        Ok(cfg)
    }
}

/// Defaults, then `file`, then `overrides`.
pub fn resolve(file: Option<&Path>, overrides: &[(&str, Value)]) -> Result<ScenarioConfig, CliError> {
    let mut builder = ConfigBuilder::new();
    if let Some(path) = file {
        builder.load_file(path)?;
    }
    for (k, v) in overrides {
        builder.set(k, v.clone())?;
    }
    builder.build()
}
