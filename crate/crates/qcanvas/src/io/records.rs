//! Record streams: one JSON object per line.
//!
//! Field names are those of [`DiatomicRecord`]; unknown fields are rejected.
//! Numbers are written in their shortest round-trip decimal form, so reading
//! back reproduces every value exactly.

use std::path::Path;

use qcanvas_core::DiatomicRecord;

use super::{read_to_string, write_atomic, FormatError};

pub fn render_records(records: &[DiatomicRecord]) -> String {
    let mut s = String::new();
    for r in records {
        // Serialising plain data with string keys cannot fail.
        s.push_str(&serde_json::to_string(r).expect("record serialises"));
        s.push('\n');
    }
    s
}

pub fn write_records(records: &[DiatomicRecord], path: &Path) -> Result<(), FormatError> {
    write_atomic(path, render_records(records).as_bytes())
}

/// Parses a stream; blank lines are skipped and an empty input is an empty
/// collection.
pub fn parse_records(text: &str, path: &Path) -> Result<Vec<DiatomicRecord>, FormatError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let rec: DiatomicRecord = serde_json::from_str(line).map_err(|e| FormatError::Record {
            path: path.to_path_buf(),
            line: i + 1,
            pair_id: pair_id_of(line),
            message: e.to_string(),
        })?;
        out.push(rec);
    }
    Ok(out)
}

pub fn read_records(path: &Path) -> Result<Vec<DiatomicRecord>, FormatError> {
    parse_records(&read_to_string(path)?, path)
}

/// Best-effort `pair_id` of a line that failed to parse as a record.
fn pair_id_of(line: &str) -> Option<String> {
    let v: serde_json::Value = serde_json::from_str(line).ok()?;
    v.get("pair_id")?.as_str().map(str::to_owned)
}
