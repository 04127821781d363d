//! Batch operations behind the CLI subcommands.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use qcanvas_core::image::ImageError;
use qcanvas_core::labels::LabelError;
use qcanvas_core::model::Violation;
use qcanvas_core::scc::SccError;
use qcanvas_core::{assemble_labels, encode_tensor, validate_record, DiatomicRecord, ElementParams, ImageTensor};
use qcanvas_core::{RelaxOptions, SccOptions, ScalarLabels};
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PairError {
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("malformed pair {0:?} (expected A-B)")]
    Malformed(String),
    #[error("no pairs requested")]
    Empty,
}

/// Indices into the parameter table for atoms A and B.
pub type Pair = (usize, usize);

/// Table indices in canonical element order: ascending `(z, symbol)`.
pub fn canonical_order(table: &[ElementParams]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..table.len()).collect();
    idx.sort_by(|&a, &b| (table[a].z, &table[a].symbol).cmp(&(table[b].z, &table[b].symbol)));
    idx
}

/// Every unordered pair with repetition, `A ≤ B` in canonical order:
/// `n(n+1)/2` pairs for `n` elements.
pub fn enumerate_all(table: &[ElementParams]) -> Vec<Pair> {
    let order = canonical_order(table);
    let mut out = Vec::with_capacity(order.len() * (order.len() + 1) / 2);
    for (i, &a) in order.iter().enumerate() {
        for &b in &order[i..] {
            out.push((a, b));
        }
    }
    out
}

/// Parses `A-B` items separated by commas, whitespace or newlines; `#`
/// starts a comment. Pairs keep the given atom order.
pub fn parse_pair_list(text: &str, table: &[ElementParams]) -> Result<Vec<Pair>, PairError> {
    let index: HashMap<&str, usize> = table.iter().enumerate().map(|(i, p)| (p.symbol.as_str(), i)).collect();
    let find = |s: &str| index.get(s).copied().ok_or_else(|| PairError::UnknownElement(s.to_string()));
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for item in line.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
            let (a, b) = item.split_once('-').ok_or_else(|| PairError::Malformed(item.to_string()))?;
            if a.is_empty() || b.is_empty() || b.contains('-') {
                return Err(PairError::Malformed(item.to_string()));
            }
            out.push((find(a)?, find(b)?));
        }
    }
    if out.is_empty() {
        return Err(PairError::Empty);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulateConfig {
    /// Electronic temperature in Hartree.
    pub t_e: f64,
    pub charge_total: f64,
    pub scc: SccOptions,
    pub relax: RelaxOptions,
}

impl Default for SimulateConfig {
    fn default() -> Self {
        Self {
            t_e: 1e-3,
            charge_total: 0.0,
            scc: SccOptions::default(),
            relax: RelaxOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairFailure {
    pub pair_id: String,
    pub error: SccError,
}

impl fmt::Display for PairFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pair_id, self.error)
    }
}

fn run_pool<T: Send, R: Send>(threads: usize, items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R>
where
    T: Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| items.par_iter().map(f).collect())
}

/// Relaxes every pair on `threads` workers. Results come back in input
/// order and are independent of the thread count.
pub fn simulate(
    table: &[ElementParams],
    pairs: &[Pair],
    cfg: &SimulateConfig,
    threads: usize,
) -> Vec<Result<DiatomicRecord, PairFailure>> {
    run_pool(threads, pairs, |&(a, b)| {
        let (pa, pb) = (&table[a], &table[b]);
        qcanvas_core::simulate_pair(pa, pb, cfg.t_e, cfg.charge_total, &cfg.scc, &cfg.relax).map_err(|error| {
            PairFailure {
                pair_id: format!("{}-{}", pa.symbol, pb.symbol),
                error,
            }
        })
    })
}

/// Labels of all records. Flagged records are skipped (and their ids
/// returned) when `skip_flagged` is set, otherwise they are an error.
pub fn label(records: &[DiatomicRecord], skip_flagged: bool) -> Result<(Vec<ScalarLabels>, Vec<String>), LabelError> {
    let mut rows = Vec::with_capacity(records.len());
    let mut skipped = Vec::new();
    for r in records {
        if r.is_flagged() && skip_flagged {
            skipped.push(r.pair_id.clone());
            continue;
        }
        rows.push(assemble_labels(r)?);
    }
    Ok((rows, skipped))
}

pub fn encode(records: &[DiatomicRecord], threads: usize) -> Result<Vec<ImageTensor>, ImageError> {
    run_pool(threads, records, encode_tensor).into_iter().collect()
}

/// One inconsistency found by [`validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct Finding {
    pub pair_id: Option<String>,
    pub message: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.pair_id {
            Some(id) => write!(f, "{id}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

fn finding(pair_id: Option<&str>, message: impl Into<String>) -> Finding {
    Finding {
        pair_id: pair_id.map(str::to_owned),
        message: message.into(),
    }
}

fn violations_text(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// Cross-checks records against their own invariants and, when given,
/// against a label table and a tensor file: labels and tensors are
/// re-derived from the records and must match exactly.
pub fn validate(
    records: &[DiatomicRecord],
    labels: Option<&[ScalarLabels]>,
    tensors: Option<&[ImageTensor]>,
) -> Vec<Finding> {
    let mut out = Vec::new();
    for r in records {
        let v = validate_record(r);
        if !v.is_empty() {
            out.push(finding(Some(&r.pair_id), violations_text(&v)));
        }
    }

    if let Some(labels) = labels {
        let by_id: BTreeMap<&str, &DiatomicRecord> = records.iter().map(|r| (r.pair_id.as_str(), r)).collect();
        let mut labelled = BTreeMap::new();
        for l in labels {
            let id = l.pair_id.as_str();
            if let (Some(g), Some(lumo)) = (l.e_g, l.e_lumo) {
                if g != lumo - l.e_homo {
                    out.push(finding(Some(id), "e_g differs from e_lumo - e_homo"));
                }
            }
            if labelled.insert(id, ()).is_some() {
                out.push(finding(Some(id), "duplicate label row"));
                continue;
            }
            match by_id.get(id) {
                None => out.push(finding(Some(id), "label row has no record")),
                Some(r) => match assemble_labels(r) {
                    Ok(expect) if expect == *l => {}
                    Ok(_) => out.push(finding(Some(id), "label row differs from labels derived from the record")),
                    Err(e) => out.push(finding(Some(id), format!("record cannot be labelled: {e}"))),
                },
            }
        }
        for r in records {
            if !r.is_flagged() && !labelled.contains_key(r.pair_id.as_str()) {
                out.push(finding(Some(&r.pair_id), "converged record has no label row"));
            }
        }
    }

    if let Some(tensors) = tensors {
        if tensors.len() != records.len() {
            out.push(finding(
                None,
                format!("{} tensors for {} records", tensors.len(), records.len()),
            ));
        } else {
            for (r, t) in records.iter().zip(tensors) {
                if t.pair_id != r.pair_id {
                    out.push(finding(Some(&r.pair_id), format!("tensor is for {}", t.pair_id)));
                    continue;
                }
                match encode_tensor(r) {
                    Ok(expect) if expect.data() == t.data() => {}
                    Ok(_) => out.push(finding(Some(&r.pair_id), "tensor differs from re-encoding of the record")),
                    Err(e) => out.push(finding(Some(&r.pair_id), format!("record cannot be encoded: {e}"))),
                }
            }
        }
    }
    out
}
