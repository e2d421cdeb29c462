use serde::Serialize;
use serde_json::Value;

use super::{open_envelope, IoError, FORMAT_VERSION};
use crate::context::StreamRecord;

const FORMAT: &str = "stream";

/// Parses a JSON Lines stream: a header line, then one record per line.
/// Blank lines are skipped. Ordering is not checked here.
pub fn parse_stream(text: &str) -> Result<Vec<StreamRecord>, IoError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let Some((_, header)) = lines.next() else {
        return Err(IoError::Format {
            expected: FORMAT.into(),
            found: "an empty file".into(),
        });
    };
    let rest = open_envelope(super::parse_value(header)?, FORMAT)?;
    if let Some(key) = rest.keys().next() {
        return Err(IoError::invalid(FORMAT, Some(1), format!("unknown header key `{key}`")));
    }
    let mut out = Vec::new();
    for (i, line) in lines {
        let n = i + 1;
        let value: Value = serde_json::from_str(line).map_err(|e| IoError::Syntax {
            line: n,
            column: e.column(),
            message: e.to_string(),
        })?;
        out.push(serde_json::from_value(value).map_err(|e| IoError::invalid(FORMAT, Some(n), e))?);
    }
    Ok(out)
}

/// Header plus one compact JSON object per line.
pub fn stream_to_string(records: &[StreamRecord]) -> String {
    let header = serde_json::json!({ "format": FORMAT, "version": FORMAT_VERSION });
    let mut s = write_jsonl([&header]);
    s.push_str(&write_jsonl(records));
    s
}

/// One compact JSON object per line, newline terminated.
pub fn write_jsonl<'a, I, T>(items: I) -> String
where
    I: IntoIterator<Item = &'a T>,
    T: Serialize + ?Sized + 'a,
{
    let mut s = String::new();
    for item in items {
        s.push_str(&serde_json::to_string(item).expect("jsonl items serialize"));
        s.push('\n');
    }
    s
}
