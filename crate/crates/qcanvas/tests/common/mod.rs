#![allow(dead_code)]

use std::path::PathBuf;

use qcanvas::io::params::load_params;
use qcanvas::pipeline::{enumerate_all, simulate, SimulateConfig};
use qcanvas_core::{DiatomicRecord, ElementParams};

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn toy_table() -> Vec<ElementParams> {
    load_params(&data("toy_params.toml")).unwrap()
}

pub fn toy_config() -> SimulateConfig {
    SimulateConfig {
        t_e: 0.01,
        ..SimulateConfig::default()
    }
}

/// Records for the first `n` pairs of the toy table.
pub fn toy_records(n: usize) -> Vec<DiatomicRecord> {
    let table = toy_table();
    let pairs: Vec<_> = enumerate_all(&table).into_iter().take(n).collect();
    simulate(&table, &pairs, &toy_config(), 4).into_iter().map(Result::unwrap).collect()
}
