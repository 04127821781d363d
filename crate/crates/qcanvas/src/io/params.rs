//! Element parameter tables.
//!
//! ```toml
//! [[element]]
//! symbol = "H"
//! z = 1
//! shells = ["s"]
//! onsite = [-0.24]      # Ha, one per shell
//! hubbard_u = 0.42      # Ha
//! n_valence = 1.0       # electrons, spin-orbital convention
//! hop_scale = 0.40      # Ha
//! hop_decay = 1.5       # bohr
//! overlap_scale = 0.5
//! overlap_decay = 1.5   # bohr
//! rep_a = 2.0           # Ha
//! rep_b = 2.0           # 1/bohr
//! ```

use std::collections::HashSet;
use std::path::Path;

use qcanvas_core::model::{ElementParams, ParamError, Shell};
use serde::Deserialize;

use super::{line_of, read_to_string, FormatError};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Table {
    #[serde(default)]
    element: Vec<RawElement>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawElement {
    symbol: String,
    z: u32,
    shells: Vec<String>,
    onsite: Vec<f64>,
    hubbard_u: f64,
    n_valence: f64,
    hop_scale: f64,
    hop_decay: f64,
    overlap_scale: f64,
    overlap_decay: f64,
    rep_a: f64,
    rep_b: f64,
}

impl RawElement {
    fn into_params(self) -> Result<ElementParams, ParamError> {
        let err = |reason: String| ParamError {
            symbol: self.symbol.clone(),
            reason,
        };
        if !self.symbol.chars().all(|c| c.is_ascii_alphanumeric()) {
            return Err(err("symbol must be ASCII alphanumeric".into()));
        }
        if self.shells.len() != self.onsite.len() {
            return Err(err(format!(
                "{} shells but {} on-site energies",
                self.shells.len(),
                self.onsite.len()
            )));
        }
        let shells = self
            .shells
            .iter()
            .zip(&self.onsite)
            .map(|(s, &e)| {
                Shell::from_label(s)
                    .map(|sh| (sh, e))
                    .ok_or_else(|| err(format!("unknown shell {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let p = ElementParams {
            symbol: self.symbol,
            z: self.z,
            shells,
            hubbard_u: self.hubbard_u,
            n_valence: self.n_valence,
            hop_scale: self.hop_scale,
            hop_decay: self.hop_decay,
            overlap_scale: self.overlap_scale,
            overlap_decay: self.overlap_decay,
            rep_a: self.rep_a,
            rep_b: self.rep_b,
        };
        p.validate()?;
        Ok(p)
    }
}

/// Parses and validates a parameter table, keeping file order.
pub fn parse_params(text: &str, path: &Path) -> Result<Vec<ElementParams>, FormatError> {
    let table: Table = toml::from_str(text).map_err(|e| FormatError::Parse {
        path: path.to_path_buf(),
        line: e.span().map_or(1, |s| line_of(text, s.start)),
        message: e.message().to_string(),
    })?;
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(table.element.len());
    for raw in table.element {
        if !seen.insert(raw.symbol.clone()) {
            return Err(FormatError::DuplicateElement {
                path: path.to_path_buf(),
                symbol: raw.symbol,
            });
        }
        out.push(raw.into_params().map_err(|source| FormatError::Param {
            path: path.to_path_buf(),
            source,
        })?);
    }
    Ok(out)
}

pub fn load_params(path: &Path) -> Result<Vec<ElementParams>, FormatError> {
    parse_params(&read_to_string(path)?, path)
}

/// Renders a table in the format read by [`parse_params`]. Floats use the
/// shortest representation that parses back to the same value.
pub fn render_params(table: &[ElementParams]) -> String {
    let mut s = String::new();
    for p in table {
        let shells: Vec<String> = p.shells.iter().map(|(sh, _)| format!("{:?}", sh.label())).collect();
        let onsite: Vec<String> = p.shells.iter().map(|(_, e)| format!("{e:?}")).collect();
        s.push_str("[[element]]\n");
        s.push_str(&format!("symbol = {:?}\n", p.symbol));
        s.push_str(&format!("z = {}\n", p.z));
        s.push_str(&format!("shells = [{}]\n", shells.join(", ")));
        s.push_str(&format!("onsite = [{}]\n", onsite.join(", ")));
        for (k, v) in [
            ("hubbard_u", p.hubbard_u),
            ("n_valence", p.n_valence),
            ("hop_scale", p.hop_scale),
            ("hop_decay", p.hop_decay),
            ("overlap_scale", p.overlap_scale),
            ("overlap_decay", p.overlap_decay),
            ("rep_a", p.rep_a),
            ("rep_b", p.rep_b),
        ] {
            s.push_str(&format!("{k} = {v:?}\n"));
        }
        s.push('\n');
    }
    s
}
