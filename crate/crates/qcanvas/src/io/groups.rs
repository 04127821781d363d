//! Element-to-group mapping, a TOML table of group name to symbol list:
//!
//! ```toml
//! alkali = ["Li", "Na"]
//! halogen = ["F", "Cl"]
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use super::{line_of, read_to_string, FormatError};

/// Returns `symbol → group`. A symbol listed under two groups is an error.
pub fn parse_groups(text: &str, path: &Path) -> Result<BTreeMap<String, String>, FormatError> {
    let parse_err = |line, message: String| FormatError::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let raw: BTreeMap<String, Vec<String>> =
        toml::from_str(text).map_err(|e| parse_err(e.span().map_or(1, |s| line_of(text, s.start)), e.message().into()))?;
    let mut out = BTreeMap::new();
    for (group, symbols) in raw {
        for sym in symbols {
            if let Some(prev) = out.insert(sym.clone(), group.clone()) {
                let line = text.find(&format!("\"{sym}\"")).map_or(1, |at| line_of(text, at));
                return Err(parse_err(line, format!("{sym} listed under both {prev} and {group}")));
            }
        }
    }
    Ok(out)
}

pub fn load_groups(path: &Path) -> Result<BTreeMap<String, String>, FormatError> {
    parse_groups(&read_to_string(path)?, path)
}
