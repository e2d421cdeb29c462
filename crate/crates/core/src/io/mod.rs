//! Versioned JSON documents and the JSON Lines stream format.
//!
//! Every document is a JSON object carrying `"format"` and `"version"` keys
//! next to its own fields. Streams are JSON Lines: a header object with the
//! same two keys, then one record per line.

mod config;
mod stream;

pub use config::Config;
pub use stream::{parse_stream, stream_to_string, write_jsonl};

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::context::World;
use crate::harness::ScenarioScript;
use crate::hierarchy::HierarchyDoc;
use crate::kg::{Eg, Etg};
use crate::labels::{LabelSpace, LabelVector};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {error}")]
    Io { path: PathBuf, error: std::io::Error },
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("expected a `{expected}` document, found {found}")]
    Format { expected: String, found: String },
    #[error("unsupported {format} version {found} (supported: {FORMAT_VERSION})")]
    Version { format: String, found: String },
    #[error("invalid {format} document{}: {message}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Invalid {
        format: String,
        line: Option<usize>,
        message: String,
    },
}

impl IoError {
    fn syntax(e: serde_json::Error) -> Self {
        IoError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }

    fn invalid(format: &str, line: Option<usize>, message: impl ToString) -> Self {
        IoError::Invalid {
            format: format.into(),
            line,
            message: message.to_string(),
        }
    }
}

/// A top-level file type.
pub trait Document: Serialize + DeserializeOwned {
    const FORMAT: &'static str;
}

impl Document for Etg {
    const FORMAT: &'static str = "etg";
}

impl Document for Eg {
    const FORMAT: &'static str = "eg";
}

impl Document for World {
    const FORMAT: &'static str = "world";
}

impl Document for HierarchyDoc {
    const FORMAT: &'static str = "hierarchy";
}

impl Document for ScenarioScript {
    const FORMAT: &'static str = "scenario";
}

impl Document for Config {
    const FORMAT: &'static str = "config";
}

/// A sequence of label vectors with the node order they index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelsDoc {
    pub order: Vec<String>,
    pub vectors: Vec<LabelVector>,
}

impl Document for LabelsDoc {
    const FORMAT: &'static str = "labels";
}

impl LabelsDoc {
    pub fn new(space: &LabelSpace, vectors: Vec<LabelVector>) -> Self {
        LabelsDoc {
            order: space.order().to_vec(),
            vectors,
        }
    }

    /// Checks that the order matches `space` and every vector has its length.
    pub fn check(&self, space: &LabelSpace) -> Result<(), String> {
        if self.order != space.order() {
            return Err("node order differs from the hierarchy".into());
        }
        match self.vectors.iter().position(|v| v.len() != space.len()) {
            Some(i) => Err(format!(
                "vector {i} has {} bits, expected {}",
                self.vectors[i].len(),
                space.len()
            )),
            None => Ok(()),
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a, T> {
    format: &'a str,
    version: &'a str,
    #[serde(flatten)]
    body: &'a T,
}

/// Splits off and checks the `format` and `version` keys.
fn open_envelope(value: Value, expected: &str) -> Result<serde_json::Map<String, Value>, IoError> {
    let Value::Object(mut map) = value else {
        return Err(IoError::Format {
            expected: expected.into(),
            found: "a non-object value".into(),
        });
    };
    match map.remove("format") {
        Some(Value::String(f)) if f == expected => {}
        Some(other) => {
            return Err(IoError::Format {
                expected: expected.into(),
                found: format!("format {other}"),
            })
        }
        None => {
            return Err(IoError::Format {
                expected: expected.into(),
                found: "no `format` key".into(),
            })
        }
    }
    match map.remove("version") {
        Some(Value::String(v)) if v == FORMAT_VERSION => Ok(map),
        Some(other) => Err(IoError::Version {
            format: expected.into(),
            found: other.to_string(),
        }),
        None => Err(IoError::Version {
            format: expected.into(),
            found: "(missing)".into(),
        }),
    }
}

fn parse_value(text: &str) -> Result<Value, IoError> {
    serde_json::from_str(text).map_err(IoError::syntax)
}

pub fn from_json_str<T: Document>(text: &str) -> Result<T, IoError> {
    let body = open_envelope(parse_value(text)?, T::FORMAT)?;
    serde_json::from_value(Value::Object(body)).map_err(|e| IoError::invalid(T::FORMAT, None, e))
}

/// Pretty JSON with `format` and `version` first and a trailing newline.
pub fn to_json_string<T: Document>(doc: &T) -> String {
    let env = Envelope {
        format: T::FORMAT,
        version: FORMAT_VERSION,
        body: doc,
    };
    let mut s = serde_json::to_string_pretty(&env).expect("documents serialize");
    s.push('\n');
    s
}

pub fn read_text(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|error| IoError::Io {
        path: path.into(),
        error,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<(), IoError> {
    fs::write(path, text).map_err(|error| IoError::Io {
        path: path.into(),
        error,
    })
}

pub fn load<T: Document>(path: &Path) -> Result<T, IoError> {
    from_json_str(&read_text(path)?)
}

pub fn save<T: Document>(path: &Path, doc: &T) -> Result<(), IoError> {
    write_text(path, &to_json_string(doc))
}

pub fn parse_etg(text: &str) -> Result<Etg, IoError> {
    from_json_str(text)
}

pub fn parse_eg(text: &str) -> Result<Eg, IoError> {
    from_json_str(text)
}

pub fn parse_world(text: &str) -> Result<World, IoError> {
    from_json_str(text)
}

pub fn parse_hierarchy(text: &str) -> Result<HierarchyDoc, IoError> {
    from_json_str(text)
}

pub fn parse_scenario(text: &str) -> Result<ScenarioScript, IoError> {
    from_json_str(text)
}

pub fn parse_config(text: &str) -> Result<Config, IoError> {
    let c: Config = from_json_str(text)?;
    c.check().map_err(|m| IoError::invalid(Config::FORMAT, None, m))?;
    Ok(c)
}

pub fn parse_labels(text: &str) -> Result<LabelsDoc, IoError> {
    from_json_str(text)
}
