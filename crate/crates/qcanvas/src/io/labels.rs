//! Label tables: CSV with one header row and the columns of
//! [`ScalarLabels::COLUMNS`]. Undefined values are written as `NA`; numbers
//! use the shortest round-trip decimal form.

use std::path::Path;

use qcanvas_core::ScalarLabels;

use super::{read_bytes, write_atomic, FormatError};

pub const NA: &str = "NA";

fn num(v: f64) -> String {
    format!("{v:?}")
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| NA.to_string(), num)
}

fn row(l: &ScalarLabels) -> Vec<String> {
    let mut cells = vec![l.pair_id.clone(), l.elem_a.clone(), l.elem_b.clone()];
    cells.extend(l.numeric().into_iter().map(opt));
    cells
}

pub fn render_labels(labels: &[ScalarLabels]) -> Vec<u8> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    // Writes into a Vec cannot fail.
    w.write_record(ScalarLabels::COLUMNS).expect("in-memory write");
    for l in labels {
        w.write_record(row(l)).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

pub fn write_labels(labels: &[ScalarLabels], path: &Path) -> Result<(), FormatError> {
    write_atomic(path, &render_labels(labels))
}

pub fn parse_labels(bytes: &[u8], path: &Path) -> Result<Vec<ScalarLabels>, FormatError> {
    let err = |line: usize, pair_id: Option<String>, message: String| FormatError::Record {
        path: path.to_path_buf(),
        line,
        pair_id,
        message,
    };
    let mut r = csv::ReaderBuilder::new().has_headers(true).flexible(true).from_reader(bytes);
    let header = r.headers().map_err(|e| err(1, None, e.to_string()))?.clone();
    if header.iter().ne(ScalarLabels::COLUMNS) {
        return Err(err(1, None, format!("header does not match the {} label columns", ScalarLabels::COLUMNS.len())));
    }
    let mut out = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| err(line, None, e.to_string()))?;
        if rec.len() != ScalarLabels::COLUMNS.len() {
            return Err(err(
                line,
                rec.get(0).map(str::to_owned),
                format!("expected {} columns, found {}", ScalarLabels::COLUMNS.len(), rec.len()),
            ));
        }
        let id = rec[0].to_string();
        let cell = |k: usize| -> Result<Option<f64>, FormatError> {
            let s = &rec[k];
            if s == NA {
                return Ok(None);
            }
            s.parse::<f64>()
                .map(Some)
                .map_err(|_| err(line, Some(id.clone()), format!("column {}: bad number {s:?}", ScalarLabels::COLUMNS[k])))
        };
        let req = |k: usize| -> Result<f64, FormatError> {
            cell(k)?.ok_or_else(|| err(line, Some(id.clone()), format!("column {} may not be NA", ScalarLabels::COLUMNS[k])))
        };
        out.push(ScalarLabels {
            pair_id: id.clone(),
            elem_a: rec[1].to_string(),
            elem_b: rec[2].to_string(),
            e_g: cell(3)?,
            e_homo: req(4)?,
            e_lumo: cell(5)?,
            e_fermi: req(6)?,
            e_band: req(7)?,
            e_rep: req(8)?,
            e_tot: req(9)?,
            mermin_f: req(10)?,
            ip: req(11)?,
            ea: cell(12)?,
            chi: cell(13)?,
            eta: cell(14)?,
            softness: cell(15)?,
            mu_chem: cell(16)?,
            omega: cell(17)?,
            mu_x: req(18)?,
            mu_y: req(19)?,
            mu_z: req(20)?,
            mu_norm: req(21)?,
            bond_r: req(22)?,
            q_maxabs: req(23)?,
            q_absmean: req(24)?,
            q_std: req(25)?,
        });
    }
    Ok(out)
}

pub fn read_labels(path: &Path) -> Result<Vec<ScalarLabels>, FormatError> {
    parse_labels(&read_bytes(path)?, path)
}
