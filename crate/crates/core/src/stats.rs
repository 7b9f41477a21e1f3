//! Snapshot statistics and the novelty, reoccurrence, surprise and node
//! activity indices.
//!
//! Set sizes are exact integers; every index is a single quotient of those
//! integers, or a mean of such quotients taken in snapshot order.

use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec;
use crate::graph::{EdgeKey, EdgeSet, EventStream, Snapshot, SnapshotSequence, Timestamp, TimeUnit};
use crate::transform::{chronological_split, discretize, Granularity, SplitSpec};

/// Default row cap for [`tet_matrix`].
pub const TET_ROW_CAP: usize = 100_000;

/// Whether empty snapshots count towards a per-snapshot average.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmptySnapshots {
    Include,
    Exclude,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnapshotCount {
    pub num_nodes: usize,
    pub num_edges: usize,
    pub num_events: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SnapshotCounts(pub Vec<SnapshotCount>);

impl SnapshotCounts {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeSeries {
    /// `2 |E_t| / |V_t|`, or 0 for an empty snapshot.
    pub avg_degree: Vec<f64>,
    /// Mean of `avg_degree` over non-empty snapshots.
    pub overall_mean: f64,
}

impl DegreeSeries {
    /// Rebuilds the series from per-snapshot values; zero marks an empty
    /// snapshot since a non-empty one always has positive degree.
    pub fn from_values(avg_degree: Vec<f64>) -> Self {
        let (sum, n) = avg_degree
            .iter()
            .filter(|&&d| d > 0.0)
            .fold((0.0, 0usize), |(s, n), d| (s + d, n + 1));
        let overall_mean = if n == 0 { 0.0 } else { sum / n as f64 };
        DegreeSeries {
            avg_degree,
            overall_mean,
        }
    }

    pub fn len(&self) -> usize {
        self.avg_degree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.avg_degree.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TeaRow {
    pub new_edges: usize,
    pub repeated_edges: usize,
}

impl TeaRow {
    pub fn total(&self) -> usize {
        self.new_edges + self.repeated_edges
    }
}

/// Per-snapshot split of the edge set into first-seen and repeated edges.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TeaSeries(pub Vec<TeaRow>);

impl TeaSeries {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TetRow {
    pub edge: EdgeKey,
    pub first_seen: usize,
    pub last_seen: usize,
}

/// Edge × snapshot presence raster.
///
/// Rows are ordered by `(first_seen, last_seen, src, dst)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TetMatrix {
    rows: Vec<TetRow>,
    num_snapshots: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl TetMatrix {
    pub fn new(num_snapshots: usize, rows: Vec<TetRow>) -> Self {
        let words_per_row = num_snapshots.div_ceil(64);
        TetMatrix {
            bits: vec![0; words_per_row * rows.len()],
            rows,
            num_snapshots,
            words_per_row,
        }
    }

    pub fn rows(&self) -> &[TetRow] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_snapshots(&self) -> usize {
        self.num_snapshots
    }

    pub fn is_present(&self, row: usize, snapshot: usize) -> bool {
        debug_assert!(snapshot < self.num_snapshots);
        let w = self.bits[row * self.words_per_row + snapshot / 64];
        w >> (snapshot % 64) & 1 == 1
    }

    pub fn set_present(&mut self, row: usize, snapshot: usize) {
        assert!(snapshot < self.num_snapshots, "snapshot out of range");
        self.bits[row * self.words_per_row + snapshot / 64] |= 1 << (snapshot % 64);
    }

    /// Row presence as a `'0'`/`'1'` string, one character per snapshot.
    pub fn presence_string(&self, row: usize) -> String {
        (0..self.num_snapshots)
            .map(|t| if self.is_present(row, t) { '1' } else { '0' })
            .collect()
    }

    pub fn column_sums(&self) -> Vec<usize> {
        (0..self.num_snapshots)
            .map(|t| (0..self.rows.len()).filter(|&r| self.is_present(r, t)).count())
            .collect()
    }
}

/// Dataset-level summary of one stream.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub num_nodes: usize,
    pub num_events: usize,
    pub num_unique_edges: usize,
    pub num_unique_steps: usize,
    pub duration: Duration,
    pub reoccurrence: f64,
    pub surprise: f64,
    pub node_activity: f64,
    pub novelty: f64,
    pub discretization_tag: String,
    pub num_snapshots: usize,
    pub train_fraction: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Duration {
    pub t_min: Timestamp,
    pub t_max: Timestamp,
    pub unit: TimeUnit,
}

/// Denominator choices for [`summarize_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryOptions {
    pub activity_empty: EmptySnapshots,
    pub novelty_empty: EmptySnapshots,
}

impl Default for SummaryOptions {
    fn default() -> Self {
        SummaryOptions {
            activity_empty: EmptySnapshots::Include,
            novelty_empty: EmptySnapshots::Exclude,
        }
    }
}

pub fn snapshot_counts(seq: &SnapshotSequence) -> SnapshotCounts {
    SnapshotCounts(exec::map(seq.snapshots(), |s| SnapshotCount {
        num_nodes: s.nodes().len(),
        num_edges: s.edges().len(),
        num_events: s.event_count(),
    }))
}

/// Mean over all source nodes of the fraction of snapshots in which the node
/// is an endpoint; empty snapshots are part of the denominator.
pub fn average_node_activity(seq: &SnapshotSequence) -> f64 {
    average_node_activity_with(seq, EmptySnapshots::Include)
}

pub fn average_node_activity_with(seq: &SnapshotSequence, empty: EmptySnapshots) -> f64 {
    let num_nodes = seq.source_meta().num_nodes;
    let periods = match empty {
        EmptySnapshots::Include => seq.len(),
        EmptySnapshots::Exclude => seq.num_nonempty(),
    };
    if num_nodes == 0 || periods == 0 {
        return 0.0;
    }
    // each node appears at most once per snapshot, so the sum of per-node
    // presence counts is the sum of snapshot node counts
    let presence: u64 = exec::map(seq.snapshots(), |s| s.nodes().len() as u64)
        .into_iter()
        .sum();
    presence as f64 / (periods as f64 * num_nodes as f64)
}

/// Per-node count of snapshots in which the node appears.
pub fn node_presence(seq: &SnapshotSequence) -> Vec<u64> {
    exec::fold_counts(seq.snapshots(), seq.source_meta().num_nodes, |acc, s: &Snapshot| {
        for n in s.nodes() {
            acc[n.index()] += 1;
        }
    })
}

pub fn average_degree_series(seq: &SnapshotSequence) -> DegreeSeries {
    let avg_degree = exec::map(seq.snapshots(), |s| {
        if s.is_empty() {
            0.0
        } else {
            2.0 * s.edges().len() as f64 / s.nodes().len() as f64
        }
    });
    DegreeSeries::from_values(avg_degree)
}

pub fn tea_series(seq: &SnapshotSequence) -> TeaSeries {
    let mut seen: FxHashSet<EdgeKey> = FxHashSet::default();
    let rows = seq
        .snapshots()
        .iter()
        .map(|s| {
            let mut new_edges = 0;
            for e in s.edges() {
                if seen.insert(*e) {
                    new_edges += 1;
                }
            }
            TeaRow {
                new_edges,
                repeated_edges: s.edges().len() - new_edges,
            }
        })
        .collect();
    TeaSeries(rows)
}

pub fn tet_matrix(seq: &SnapshotSequence) -> Result<TetMatrix> {
    tet_matrix_capped(seq, TET_ROW_CAP)
}

pub fn tet_matrix_capped(seq: &SnapshotSequence, cap: usize) -> Result<TetMatrix> {
    let mut span: FxHashMap<EdgeKey, (usize, usize)> = FxHashMap::default();
    for (t, s) in seq.snapshots().iter().enumerate() {
        for e in s.edges() {
            span.entry(*e).and_modify(|r| r.1 = t).or_insert((t, t));
        }
    }
    if span.len() > cap {
        return Err(Error::TooManyRows {
            rows: span.len(),
            cap,
        });
    }
    let mut rows: Vec<TetRow> = span
        .into_iter()
        .map(|(edge, (first_seen, last_seen))| TetRow {
            edge,
            first_seen,
            last_seen,
        })
        .collect();
    rows.sort_unstable_by_key(|r| (r.first_seen, r.last_seen, r.edge));

    let index: FxHashMap<EdgeKey, usize> =
        rows.iter().enumerate().map(|(i, r)| (r.edge, i)).collect();
    let mut m = TetMatrix::new(seq.len(), rows);
    for (t, s) in seq.snapshots().iter().enumerate() {
        for e in s.edges() {
            m.set_present(index[e], t);
        }
    }
    Ok(m)
}

/// Mean fraction of first-seen edges per snapshot, over non-empty snapshots.
pub fn novelty(seq: &SnapshotSequence) -> Result<f64> {
    novelty_with(seq, EmptySnapshots::Exclude)
}

pub fn novelty_with(seq: &SnapshotSequence, empty: EmptySnapshots) -> Result<f64> {
    novelty_from_tea(&tea_series(seq), empty)
}

pub fn novelty_from_tea(tea: &TeaSeries, empty: EmptySnapshots) -> Result<f64> {
    let mut sum = 0.0;
    let mut nonempty = 0usize;
    for row in &tea.0 {
        if row.total() > 0 {
            sum += row.new_edges as f64 / row.total() as f64;
            nonempty += 1;
        }
    }
    if nonempty == 0 {
        return Err(Error::NoEdges);
    }
    let periods = match empty {
        EmptySnapshots::Include => tea.len(),
        EmptySnapshots::Exclude => nonempty,
    };
    Ok(sum / periods as f64)
}

/// `|train ∩ test| / |train|`.
pub fn reoccurrence(train: &EdgeSet, test: &EdgeSet) -> Result<f64> {
    if train.is_empty() {
        return Err(Error::EmptyTrain);
    }
    Ok(train.intersection_len(test) as f64 / train.len() as f64)
}

/// `|test \ train| / |test|`.
pub fn surprise(train: &EdgeSet, test: &EdgeSet) -> Result<f64> {
    if test.is_empty() {
        return Err(Error::EmptyTest);
    }
    Ok(test.difference_len(train) as f64 / test.len() as f64)
}

pub fn summarize(stream: &EventStream, g: Granularity, spec: SplitSpec) -> Result<StatsReport> {
    summarize_with(stream, g, spec, SummaryOptions::default())
}

pub fn summarize_with(
    stream: &EventStream,
    g: Granularity,
    spec: SplitSpec,
    opts: SummaryOptions,
) -> Result<StatsReport> {
    let seq = discretize(stream, g)?;
    let (train, test) = chronological_split(stream, spec)?;
    let tea = tea_series(&seq);
    Ok(StatsReport {
        name: None,
        num_nodes: stream.num_nodes(),
        num_events: stream.num_events(),
        num_unique_edges: stream.unique_edges().len(),
        num_unique_steps: stream.unique_timestamps(),
        duration: Duration {
            t_min: stream.t_min(),
            t_max: stream.t_max(),
            unit: stream.unit(),
        },
        reoccurrence: reoccurrence(&train, &test)?,
        surprise: surprise(&train, &test)?,
        node_activity: average_node_activity_with(&seq, opts.activity_empty),
        novelty: novelty_from_tea(&tea, opts.novelty_empty)?,
        discretization_tag: seq.granularity_tag(),
        num_snapshots: seq.len(),
        train_fraction: spec.train_fraction(),
    })
}

impl StatsReport {
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Pretty JSON in declaration order, newline-terminated.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Aligned plain-text table; `ansi` bolds the header row.
    pub fn to_table(&self, ansi: bool) -> String {
        let header = [
            "Dataset",
            "Nodes",
            "Total Edges",
            "Unique Edges",
            "Timestamp",
            "Duration",
            "Unique Steps",
            "Reoccurrence",
            "Surprise",
            "Node Activity",
            "Novelty",
            "Disc.",
        ];
        let values = [
            self.name.clone().unwrap_or_else(|| "-".into()),
            thousands(self.num_nodes),
            thousands(self.num_events),
            thousands(self.num_unique_edges),
            unit_label(self.duration.unit).to_string(),
            duration_label(&self.duration),
            thousands(self.num_unique_steps),
            format!("{:.3}", self.reoccurrence),
            format!("{:.3}", self.surprise),
            format!("{:.3}", self.node_activity),
            format!("{:.3}", self.novelty),
            self.discretization_tag.clone(),
        ];
        let widths: Vec<usize> = header
            .iter()
            .zip(&values)
            .map(|(h, v)| h.len().max(v.chars().count()))
            .collect();
        // first two columns are text, the numeric ones right-aligned
        let numeric = |i: usize| matches!(i, 1..=3 | 6..=10);
        let line = |cells: &mut dyn Iterator<Item = (usize, &str)>| -> String {
            cells
                .map(|(i, c)| {
                    if numeric(i) {
                        format!("{:>w$}", c, w = widths[i])
                    } else {
                        format!("{:<w$}", c, w = widths[i])
                    }
                })
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        let head = line(&mut header.iter().copied().enumerate());
        let rule = "-".repeat(head.chars().count());
        let body = line(&mut values.iter().map(String::as_str).enumerate());
        if ansi {
            format!("\x1b[1m{head}\x1b[0m\n{rule}\n{body}\n")
        } else {
            format!("{head}\n{rule}\n{body}\n")
        }
    }
}

fn unit_label(unit: TimeUnit) -> &'static str {
    match unit {
        TimeUnit::UnixSeconds => "Unix",
        TimeUnit::Days => "days",
        TimeUnit::Years => "years",
        TimeUnit::Index => "index",
    }
}

fn duration_label(d: &Duration) -> String {
    let span = d.t_max as i128 - d.t_min as i128;
    match d.unit {
        TimeUnit::UnixSeconds => {
            let days = span as f64 / 86_400.0;
            format!("{days:.1} days")
        }
        TimeUnit::Days => format!("{} days", span + 1),
        TimeUnit::Years => format!("{} years", span + 1),
        TimeUnit::Index => format!("{} steps", span + 1),
    }
}

pub(crate) fn thousands(n: usize) -> String {
    let digits = n.to_string();
    let mut out = String::with_capacity(digits.len() + digits.len() / 3);
    for (i, ch) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i).is_multiple_of(3) {
            out.push(',');
        }
        out.push(ch);
    }
    out
}
