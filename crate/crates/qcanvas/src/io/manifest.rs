//! Run manifests: a small YAML document of `key: value` lines, nested lists
//! and maps, written in a fixed order so that two runs on the same inputs
//! differ only in `created_unix`.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use qcanvas_core::image::Channel;
use qcanvas_core::labels::ETA_FLOOR;

use super::{write_atomic, FormatError};

pub const TIMESTAMP_KEY: &str = "created_unix";

#[derive(Debug, Clone, Default)]
pub struct Manifest {
    lines: Vec<String>,
}

/// Double-quoted scalar (JSON string syntax is valid YAML).
pub fn quoted(s: &str) -> String {
    serde_json::to_string(s).expect("string serialises")
}

impl Manifest {
    pub fn new(command: &str) -> Self {
        let mut m = Self::default();
        m.field("tool", "qcanvas");
        m.field("version", env!("CARGO_PKG_VERSION"));
        m.field("command", command);
        m
    }

    pub fn field(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.lines.push(format!("{key}: {value}"));
        self
    }

    pub fn list<T: Display>(&mut self, key: &str, items: impl IntoIterator<Item = T>) -> &mut Self {
        let items: Vec<String> = items.into_iter().map(|i| format!("  - {i}")).collect();
        if items.is_empty() {
            self.lines.push(format!("{key}: []"));
        } else {
            self.lines.push(format!("{key}:"));
            self.lines.extend(items);
        }
        self
    }

    pub fn map<K: Display, V: Display>(&mut self, key: &str, items: impl IntoIterator<Item = (K, V)>) -> &mut Self {
        self.lines.push(format!("{key}:"));
        self.lines.extend(items.into_iter().map(|(k, v)| format!("  {k}: {v}")));
        self
    }

    /// Records a file by path and SHA-256 digest under `key`.
    pub fn file(&mut self, key: &str, path: &Path, sha256: &str) -> &mut Self {
        self.map(key, [("path", quoted(&path.display().to_string())), ("sha256", sha256.to_string())])
    }

    /// Fixed conventions shared by every command.
    pub fn conventions(&mut self) -> &mut Self {
        self.field("occupation_convention", "spin_orbital");
        self.field("units", "energies eV, lengths angstrom, dipoles debye, charges e");
        self.field("ip_ea_method", "koopmans");
        self.field("eta_floor_ev", format!("{ETA_FLOOR:?}"));
        self.map("upsampling", [("omap", "nearest"), ("other", "bilinear_corner_aligned")]);
        self.map("channel_map", Channel::ALL.iter().map(|c| (c.index(), c.name())))
    }

    pub fn render(&self, created_unix: u64) -> String {
        let mut s = String::new();
        for (i, line) in self.lines.iter().enumerate() {
            if i == 3 {
                s.push_str(&format!("{TIMESTAMP_KEY}: {created_unix}\n"));
            }
            s.push_str(line);
            s.push('\n');
        }
        s
    }

    pub fn write(&self, path: &Path) -> Result<(), FormatError> {
        let now = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        write_atomic(path, self.render(now).as_bytes())
    }
}

/// Manifest path belonging to an output file: `<out>.manifest.yaml`.
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.yaml");
    PathBuf::from(s)
}
