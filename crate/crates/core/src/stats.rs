//! Dataset-level summaries of label rows and image tensors.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::image::{Channel, ImageTensor, CHANNELS, SIZE};
use crate::labels::ScalarLabels;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StatsError {
    #[error("no data")]
    NoData,
    #[error("non-finite value in input")]
    NonFinite,
    #[error("element {0} has no group in the mapping")]
    UnmappedElement(String),
    #[error("bin edges must be finite and strictly increasing")]
    BadEdges,
    #[error("{labels} labels given for {bins} bins")]
    LabelCount { labels: usize, bins: usize },
    #[error("target columns have different lengths")]
    Ragged,
}

/// Distribution summary; quantiles are type 7, `std` is the population
/// standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

/// Type-7 quantile of ascending `sorted` at probability `p ∈ [0, 1]`.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = libm::floor(h) as usize;
    if lo + 1 >= sorted.len() {
        return sorted[sorted.len() - 1];
    }
    let a = sorted[lo];
    a + (h - lo as f64) * (sorted[lo + 1] - a)
}

/// Summary of `values`. The result does not depend on input order: values
/// are sorted before any accumulation.
pub fn summarize(values: &[f64]) -> Result<Summary, StatsError> {
    if values.is_empty() {
        return Err(StatsError::NoData);
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(StatsError::NonFinite);
    }
    let mut s = values.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    let mean = neumaier_sum(s.iter().copied()) / n;
    let var = neumaier_sum(s.iter().map(|&x| (x - mean) * (x - mean))) / n;
    Ok(Summary {
        count: s.len(),
        mean,
        std: libm::sqrt(var),
        min: s[0],
        q1: quantile_sorted(&s, 0.25),
        median: quantile_sorted(&s, 0.5),
        q3: quantile_sorted(&s, 0.75),
        max: s[s.len() - 1],
    })
}

/// Compensated (Neumaier) summation.
#[derive(Debug, Clone, Copy, Default)]
struct Neumaier {
    sum: f64,
    c: f64,
}

impl Neumaier {
    #[inline]
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.c
    }
}

fn neumaier_sum(it: impl Iterator<Item = f64>) -> f64 {
    let mut acc = Neumaier::default();
    it.for_each(|x| acc.add(x));
    acc.value()
}

/// Pearson coefficient over the cases where both `x` and `y` are present.
/// `None` for fewer than two cases or a constant side.
pub fn pearson(x: &[Option<f64>], y: &[Option<f64>]) -> Option<f64> {
    let (mut n, mut mx, mut my, mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (Some(a), Some(b)) = (a, b) else { continue };
        n += 1.0;
        let dx = a - mx;
        let dy = b - my;
        mx += dx / n;
        my += dy / n;
        sxx += dx * (a - mx);
        syy += dy * (b - my);
        sxy += dx * (b - my);
    }
    if n < 2.0 || !(sxx > 0.0) || !(syy > 0.0) {
        return None;
    }
    Some((sxy / libm::sqrt(sxx * syy)).clamp(-1.0, 1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PearsonMatrix {
    pub targets: Vec<String>,
    /// Row-major; `None` where a pair has too few shared cases.
    pub r: Vec<Vec<Option<f64>>>,
    /// Targets left out for being constant or having fewer than two values.
    pub excluded: Vec<String>,
}

impl PearsonMatrix {
    pub fn get(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.targets.iter().position(|t| t == a)?;
        let j = self.targets.iter().position(|t| t == b)?;
        self.r[i][j]
    }
}

/// Correlation matrix over named, record-aligned columns.
pub fn pearson_matrix(table: &[(String, Vec<Option<f64>>)]) -> Result<PearsonMatrix, StatsError> {
    let n = table.first().map_or(0, |t| t.1.len());
    if table.iter().any(|t| t.1.len() != n) {
        return Err(StatsError::Ragged);
    }
    let mut kept = Vec::new();
    let mut excluded = Vec::new();
    for (name, col) in table {
        if pearson(col, col).is_some() {
            kept.push((name, col));
        } else {
            excluded.push(name.clone());
        }
    }
    let k = kept.len();
    let mut r = vec![vec![None; k]; k];
    for i in 0..k {
        r[i][i] = Some(1.0);
        for j in i + 1..k {
            let v = pearson(kept[i].1, kept[j].1);
            r[i][j] = v;
            r[j][i] = v;
        }
    }
    Ok(PearsonMatrix {
        targets: kept.into_iter().map(|(n, _)| n.clone()).collect(),
        r,
        excluded,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupPairStats {
    pub group_a: String,
    pub group_b: String,
    pub count: usize,
    /// Rows contributing to `mean_gap` (those with a defined gap).
    pub gap_count: usize,
    pub mean_gap: Option<f64>,
    pub mean_bond_r: f64,
}

/// Counts and means per unordered element-group pair.
pub fn group_aggregate(
    rows: &[ScalarLabels],
    groups: &BTreeMap<String, String>,
) -> Result<Vec<GroupPairStats>, StatsError> {
    let lookup = |s: &String| groups.get(s).ok_or_else(|| StatsError::UnmappedElement(s.clone()));
    let mut buckets: BTreeMap<(&String, &String), (usize, usize, Neumaier, Neumaier)> = BTreeMap::new();
    for row in rows {
        let (ga, gb) = (lookup(&row.elem_a)?, lookup(&row.elem_b)?);
        let key = if ga <= gb { (ga, gb) } else { (gb, ga) };
        let e = buckets.entry(key).or_default();
        e.0 += 1;
        if let Some(g) = row.e_g {
            e.1 += 1;
            e.2.add(g);
        }
        e.3.add(row.bond_r);
    }
    Ok(buckets
        .into_iter()
        .map(|((a, b), (count, gap_count, gap, bond))| GroupPairStats {
            group_a: a.clone(),
            group_b: b.clone(),
            count,
            gap_count,
            mean_gap: (gap_count > 0).then(|| gap.value() / gap_count as f64),
            mean_bond_r: bond.value() / count as f64,
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub name: String,
    pub edges: Vec<f64>,
    pub labels: Vec<String>,
    pub counts: Vec<usize>,
}

/// Bins `values` into `(−∞, e_0), [e_0, e_1), …, [e_last, ∞)`.
pub fn bin_counts(name: &str, values: &[f64], edges: &[f64], labels: &[&str]) -> Result<Histogram, StatsError> {
    if edges.iter().any(|e| !e.is_finite()) || edges.windows(2).any(|w| w[0] >= w[1]) {
        return Err(StatsError::BadEdges);
    }
    if labels.len() != edges.len() + 1 {
        return Err(StatsError::LabelCount {
            labels: labels.len(),
            bins: edges.len() + 1,
        });
    }
    if values.iter().any(|v| v.is_nan()) {
        return Err(StatsError::NonFinite);
    }
    let mut counts = vec![0usize; labels.len()];
    for &v in values {
        counts[edges.partition_point(|&e| e <= v)] += 1;
    }
    Ok(Histogram {
        name: name.to_string(),
        edges: edges.to_vec(),
        labels: labels.iter().map(|s| s.to_string()).collect(),
        counts,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelStat {
    pub mean: f64,
    pub std: f64,
}

/// Streaming per-channel mean and population standard deviation over every
/// pixel of every tensor pushed.
///
/// Sums of `x − K` and `(x − K)²` are compensated, with `K` the first pixel
/// seen in the channel, so the result is stable and insensitive to tensor
/// order up to rounding of the compensated sums.
#[derive(Debug, Clone)]
pub struct ChannelAccumulator {
    shift: Option<[f64; CHANNELS]>,
    sum: [Neumaier; CHANNELS],
    sum_sq: [Neumaier; CHANNELS],
    pixels: u64,
}

impl Default for ChannelAccumulator {
    fn default() -> Self {
        Self {
            shift: None,
            sum: [Neumaier::default(); CHANNELS],
            sum_sq: [Neumaier::default(); CHANNELS],
            pixels: 0,
        }
    }
}

impl ChannelAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, t: &ImageTensor) {
        let shift = *self
            .shift
            .get_or_insert_with(|| Channel::ALL.map(|c| f64::from(t.channel(c)[0])));
        for c in Channel::ALL {
            let k = c.index();
            for &v in t.channel(c) {
                let d = f64::from(v) - shift[k];
                self.sum[k].add(d);
                self.sum_sq[k].add(d * d);
            }
        }
        self.pixels += (SIZE * SIZE) as u64;
    }

    pub fn tensors(&self) -> u64 {
        self.pixels / (SIZE * SIZE) as u64
    }

    pub fn finish(&self) -> Result<[ChannelStat; CHANNELS], StatsError> {
        let shift = self.shift.ok_or(StatsError::NoData)?;
        let n = self.pixels as f64;
        Ok(core::array::from_fn(|k| {
            let m = self.sum[k].value() / n;
            let var = (self.sum_sq[k].value() / n - m * m).max(0.0);
            ChannelStat {
                mean: shift[k] + m,
                std: libm::sqrt(var),
            }
        }))
    }
}

pub fn channel_statistics<'a>(
    tensors: impl IntoIterator<Item = &'a ImageTensor>,
) -> Result<[ChannelStat; CHANNELS], StatsError> {
    let mut acc = ChannelAccumulator::new();
    tensors.into_iter().for_each(|t| acc.push(t));
    acc.finish()
}

/// Bond-length categories in Å.
pub const BOND_EDGES: [f64; 2] = [2.0, 3.0];
pub const BOND_LABELS: [&str; 3] = ["short", "medium", "long"];
/// Dipole categories in Debye.
pub const DIPOLE_EDGES: [f64; 2] = [1.0, 5.0];
pub const DIPOLE_LABELS: [&str; 3] = ["weakly_polar", "moderately_polar", "strongly_polar"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TargetSummary {
    pub summary: Option<Summary>,
    /// Rows whose value is undefined for this target.
    pub excluded: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedChannelStat {
    pub channel: String,
    pub mean: f64,
    pub std: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    pub records: usize,
    pub targets: BTreeMap<String, TargetSummary>,
    pub pearson: PearsonMatrix,
    pub group_pairs: Option<Vec<GroupPairStats>>,
    pub bins: Vec<Histogram>,
    pub channel_stats: Option<Vec<NamedChannelStat>>,
}

/// Record-aligned numeric columns of a label table.
pub fn label_columns(rows: &[ScalarLabels]) -> Vec<(String, Vec<Option<f64>>)> {
    let numeric: Vec<_> = rows.iter().map(ScalarLabels::numeric).collect();
    ScalarLabels::COLUMNS[3..]
        .iter()
        .enumerate()
        .map(|(k, name)| (name.to_string(), numeric.iter().map(|r| r[k]).collect()))
        .collect()
}

/// Full report over a label table; the group-pair table and channel
/// statistics are included when their inputs are given.
pub fn build_report(
    rows: &[ScalarLabels],
    groups: Option<&BTreeMap<String, String>>,
    channels: Option<[ChannelStat; CHANNELS]>,
) -> Result<StatsReport, StatsError> {
    if rows.is_empty() {
        return Err(StatsError::NoData);
    }
    let columns = label_columns(rows);
    let mut targets = BTreeMap::new();
    for (name, col) in &columns {
        let present: Vec<f64> = col.iter().flatten().copied().collect();
        let summary = if present.is_empty() { None } else { Some(summarize(&present)?) };
        targets.insert(
            name.clone(),
            TargetSummary {
                summary,
                excluded: col.len() - present.len(),
            },
        );
    }
    let bond: Vec<f64> = rows.iter().map(|r| r.bond_r).collect();
    let dipole: Vec<f64> = rows.iter().map(|r| r.mu_norm).collect();
    Ok(StatsReport {
        records: rows.len(),
        targets,
        pearson: pearson_matrix(&columns)?,
        group_pairs: groups.map(|g| group_aggregate(rows, g)).transpose()?,
        bins: vec![
            bin_counts("bond_length", &bond, &BOND_EDGES, &BOND_LABELS)?,
            bin_counts("dipole", &dipole, &DIPOLE_EDGES, &DIPOLE_LABELS)?,
        ],
        channel_stats: channels.map(|cs| {
            Channel::ALL
                .iter()
                .zip(cs)
                .map(|(c, s)| NamedChannelStat {
                    channel: c.name().to_string(),
                    mean: s.mean,
                    std: s.std,
                })
                .collect()
        }),
    })
}
