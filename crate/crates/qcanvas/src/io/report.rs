//! Statistics reports as pretty-printed JSON.

use std::path::Path;

use qcanvas_core::stats::StatsReport;

use super::{read_to_string, write_atomic, FormatError};

pub fn write_report(report: &StatsReport, path: &Path) -> Result<(), FormatError> {
    let mut s = serde_json::to_string_pretty(report).expect("report serialises");
    s.push('\n');
    write_atomic(path, s.as_bytes())
}

pub fn read_report(path: &Path) -> Result<StatsReport, FormatError> {
    let text = read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| FormatError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        message: e.to_string(),
    })
}
