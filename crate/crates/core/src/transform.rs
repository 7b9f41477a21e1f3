//! Discretization, sub-sampling and chronological splitting.

use std::fmt;
use std::str::FromStr;

use rand_xoshiro::rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec;
use crate::graph::{EdgeEvent, EdgeSet, EventStream, NodeId, Snapshot, SnapshotSequence, TimeUnit};

pub const SECONDS_PER_DAY: i64 = 86_400;
pub const SECONDS_PER_WEEK: i64 = 7 * SECONDS_PER_DAY;
/// Fixed 30-day month anchored at the first timestamp.
pub const SECONDS_PER_MONTH: i64 = 30 * SECONDS_PER_DAY;
/// Fixed 365-day year anchored at the first timestamp.
pub const SECONDS_PER_YEAR: i64 = 365 * SECONDS_PER_DAY;

/// How a stream is cut into snapshots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Granularity {
    Daily,
    Weekly,
    Monthly,
    Yearly,
    /// `k` equal-width intervals over `[t_min, t_max]`, any time unit.
    Bins(u64),
}

impl Granularity {
    /// Interval width in seconds for the named variants.
    pub fn width_seconds(self) -> Option<i64> {
        match self {
            Granularity::Daily => Some(SECONDS_PER_DAY),
            Granularity::Weekly => Some(SECONDS_PER_WEEK),
            Granularity::Monthly => Some(SECONDS_PER_MONTH),
            Granularity::Yearly => Some(SECONDS_PER_YEAR),
            Granularity::Bins(_) => None,
        }
    }
}

impl fmt::Display for Granularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Granularity::Daily => f.write_str("daily"),
            Granularity::Weekly => f.write_str("weekly"),
            Granularity::Monthly => f.write_str("monthly"),
            Granularity::Yearly => f.write_str("yearly"),
            Granularity::Bins(k) => write!(f, "bins:{k}"),
        }
    }
}

impl FromStr for Granularity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "daily" => Ok(Granularity::Daily),
            "weekly" => Ok(Granularity::Weekly),
            "monthly" => Ok(Granularity::Monthly),
            "yearly" => Ok(Granularity::Yearly),
            other => other
                .strip_prefix("bins:")
                .unwrap_or(other)
                .parse::<u64>()
                .map(Granularity::Bins)
                .map_err(|_| {
                    format!("unknown granularity '{other}' (daily, weekly, monthly, yearly or bins:k)")
                }),
        }
    }
}

/// Fraction of events (by chronological order) assigned to the train side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    train_fraction: f64,
}

impl SplitSpec {
    pub const DEFAULT_TRAIN_FRACTION: f64 = 0.85;

    pub fn new(train_fraction: f64) -> Result<Self> {
        if train_fraction > 0.0 && train_fraction < 1.0 {
            Ok(SplitSpec { train_fraction })
        } else {
            Err(Error::InvalidSplit(train_fraction))
        }
    }

    pub fn train_fraction(&self) -> f64 {
        self.train_fraction
    }
}

impl Default for SplitSpec {
    fn default() -> Self {
        SplitSpec {
            train_fraction: Self::DEFAULT_TRAIN_FRACTION,
        }
    }
}

/// Dispatches to [`discretize_bins`] or [`discretize_granularity`].
pub fn discretize(stream: &EventStream, g: Granularity) -> Result<SnapshotSequence> {
    match g {
        Granularity::Bins(k) => discretize_bins(stream, k),
        named => discretize_granularity(stream, named),
    }
}

/// Splits `[t_min, t_max]` into `k` intervals of exact rational width
/// `(t_max - t_min + 1) / k`. An event at `t` lands in bin
/// `floor((t - t_min) * k / span)`; empty bins are kept.
pub fn discretize_bins(stream: &EventStream, k: u64) -> Result<SnapshotSequence> {
    if k == 0 {
        return Err(Error::InvalidBins(k));
    }
    let t_min = stream.t_min();
    let span = (stream.t_max() as i128 - t_min as i128 + 1) as u128;
    let k128 = k as u128;
    // smallest integer offset that maps to bin i is ceil(i * span / k)
    let bounds: Vec<i64> = (0..=k)
        .map(|i| {
            let off = (i as u128 * span).div_ceil(k128);
            (t_min as i128 + off as i128) as i64
        })
        .collect();
    Ok(build_sequence(stream, &bounds, Granularity::Bins(k)))
}

/// Fixed-width intervals anchored at `t_min`; requires unix-second timestamps.
pub fn discretize_granularity(stream: &EventStream, g: Granularity) -> Result<SnapshotSequence> {
    let width = match g.width_seconds() {
        Some(w) => w as i128,
        None => return discretize(stream, g),
    };
    if stream.unit() != TimeUnit::UnixSeconds {
        return Err(Error::UnitMismatch {
            granularity: g.to_string(),
            unit: stream.unit().to_string(),
        });
    }
    let t_min = stream.t_min() as i128;
    let t_max = stream.t_max() as i128;
    let n = (t_max - t_min) / width + 1;
    let bounds: Vec<i64> = (0..=n)
        .map(|i| {
            if i == n {
                (t_max + 1) as i64
            } else {
                (t_min + i * width) as i64
            }
        })
        .collect();
    Ok(build_sequence(stream, &bounds, g))
}

/// `bounds` has one more entry than there are snapshots; snapshot `i` covers
/// `[bounds[i], bounds[i + 1])` and the last bound is `t_max + 1`.
fn build_sequence(stream: &EventStream, bounds: &[i64], granularity: Granularity) -> SnapshotSequence {
    let events = stream.events();
    let cuts: Vec<usize> = bounds
        .iter()
        .map(|&b| events.partition_point(|e| e.time < b))
        .collect();
    debug_assert_eq!(*cuts.last().unwrap(), events.len());
    let snapshots = exec::map_range(bounds.len() - 1, |i| {
        let slice = &events[cuts[i]..cuts[i + 1]];
        let edges = EdgeSet::from_vec(slice.iter().map(EdgeEvent::key).collect());
        Snapshot::new(i, bounds[i], bounds[i + 1], edges, slice.len())
    });
    SnapshotSequence {
        snapshots,
        granularity,
        source_meta: *stream.meta(),
    }
}

/// Index of the snapshot whose interval contains `t`, if any.
pub fn snapshot_of(seq: &SnapshotSequence, t: i64) -> Option<usize> {
    let snaps = seq.snapshots();
    let i = snaps.partition_point(|s| s.end() <= t);
    snaps.get(i).filter(|s| s.contains_time(t)).map(Snapshot::index)
}

/// Keeps events with at least one endpoint in `nodes`; node IDs are
/// re-densified in ascending order of their old IDs.
pub fn subsample(stream: &EventStream, nodes: &[NodeId]) -> Result<EventStream> {
    let mut selected = vec![false; stream.num_nodes()];
    for n in nodes {
        if let Some(slot) = selected.get_mut(n.index()) {
            *slot = true;
        }
    }
    let kept: Vec<EdgeEvent> = stream
        .events()
        .iter()
        .filter(|e| selected[e.src.index()] || selected[e.dst.index()])
        .copied()
        .collect();
    if kept.is_empty() {
        return Err(Error::EmptyResult);
    }

    let mut present = vec![false; stream.num_nodes()];
    for e in &kept {
        present[e.src.index()] = true;
        present[e.dst.index()] = true;
    }
    let mut remap = vec![NodeId(u32::MAX); stream.num_nodes()];
    let mut labels = Vec::new();
    for (old, _) in present.iter().enumerate().filter(|(_, &p)| p) {
        remap[old] = NodeId(labels.len() as u32);
        labels.push(stream.labels()[old].clone());
    }
    let events = kept
        .into_iter()
        .map(|e| EdgeEvent {
            src: remap[e.src.index()],
            dst: remap[e.dst.index()],
            time: e.time,
        })
        .collect();
    EventStream::from_sorted_parts(events, labels, stream.unit())
}

/// Draws `count` distinct node IDs from `[0, num_nodes)`.
///
/// The draw is a partial Fisher-Yates shuffle driven by SplitMix64 seeded
/// with `seed`. Step `i` swaps position `i` with `i + r`, where `r` is a
/// uniform draw in `[0, n - i)` obtained by rejecting raw outputs below
/// `2^64 mod (n - i)` and reducing the rest modulo `n - i`. The first
/// `count` positions are returned in draw order.
pub fn sample_nodes(num_nodes: usize, count: usize, seed: u64) -> Result<Vec<NodeId>> {
    if count > num_nodes {
        return Err(Error::CountTooLarge {
            requested: count,
            available: num_nodes,
        });
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut pool: Vec<u32> = (0..num_nodes as u32).collect();
    for i in 0..count {
        let bound = (num_nodes - i) as u64;
        let threshold = bound.wrapping_neg() % bound;
        let r = loop {
            let x = rng.next_u64();
            if x >= threshold {
                break x % bound;
            }
        };
        pool.swap(i, i + r as usize);
    }
    pool.truncate(count);
    Ok(pool.into_iter().map(NodeId).collect())
}

/// [`subsample`] on `count` nodes drawn by [`sample_nodes`].
pub fn subsample_random(stream: &EventStream, count: usize, seed: u64) -> Result<EventStream> {
    let nodes = sample_nodes(stream.num_nodes(), count, seed)?;
    subsample(stream, &nodes)
}

/// Train/test edge sets from a chronological cut of the event stream.
///
/// The cut starts at `floor(train_fraction * num_events)` and moves forward
/// past every event sharing the last train timestamp.
pub fn chronological_split(stream: &EventStream, spec: SplitSpec) -> Result<(EdgeSet, EdgeSet)> {
    let events = stream.events();
    let cut = split_index(events, spec);
    if cut == 0 {
        return Err(Error::DegenerateSplit("train"));
    }
    if cut == events.len() {
        return Err(Error::DegenerateSplit("test"));
    }
    let train = EdgeSet::from_vec(events[..cut].iter().map(EdgeEvent::key).collect());
    let test = EdgeSet::from_vec(events[cut..].iter().map(EdgeEvent::key).collect());
    Ok((train, test))
}

/// Number of events on the train side of the split.
pub fn split_index(events: &[EdgeEvent], spec: SplitSpec) -> usize {
    let n = events.len();
    let mut m = ((spec.train_fraction * n as f64).floor() as usize).min(n);
    if m > 0 {
        let boundary = events[m - 1].time;
        m += events[m..].partition_point(|e| e.time == boundary);
    }
    m
}
