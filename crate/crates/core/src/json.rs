use serde::de::DeserializeOwned;
use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// A JSON object holding exactly `fields`.
pub(crate) fn object(text: &str, fields: &[&str]) -> Result<Map<String, Value>> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    let Value::Object(map) = value else {
        return Err(Error::Malformed("expected a JSON object".to_string()));
    };
    if let Some(k) = map.keys().find(|k| !fields.contains(&k.as_str())) {
        return Err(Error::Malformed(format!("unknown field `{k}`")));
    }
    if let Some(k) = fields.iter().find(|k| !map.contains_key(**k)) {
        return Err(Error::Malformed(format!("missing field `{k}`")));
    }
    Ok(map)
}

pub(crate) fn field<T: DeserializeOwned>(map: &Map<String, Value>, name: &str) -> Result<T> {
    T::deserialize(&map[name]).map_err(|e| Error::Malformed(format!("field `{name}`: {e}")))
}
