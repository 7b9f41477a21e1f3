//! In-memory temporal graph model: the continuous-time event stream and the
//! discrete-time snapshot sequence derived from it.

use std::cmp::Ordering;
use std::fmt;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec;
use crate::transform::Granularity;

/// Event time in the dataset's native unit.
pub type Timestamp = i64;

/// Dense node index in `[0, num_nodes)`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Directed edge identity used by every set-based statistic.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
pub struct EdgeKey {
    pub src: NodeId,
    pub dst: NodeId,
}

impl EdgeKey {
    #[inline]
    pub fn new(src: u32, dst: u32) -> Self {
        EdgeKey {
            src: NodeId(src),
            dst: NodeId(dst),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeEvent {
    pub src: NodeId,
    pub dst: NodeId,
    pub time: Timestamp,
}

impl EdgeEvent {
    #[inline]
    pub fn key(&self) -> EdgeKey {
        EdgeKey {
            src: self.src,
            dst: self.dst,
        }
    }
}

/// Unit of the raw timestamp column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeUnit {
    #[default]
    UnixSeconds,
    Days,
    Years,
    Index,
}

impl TimeUnit {
    pub fn as_str(self) -> &'static str {
        match self {
            TimeUnit::UnixSeconds => "unix_seconds",
            TimeUnit::Days => "days",
            TimeUnit::Years => "years",
            TimeUnit::Index => "index",
        }
    }
}

impl fmt::Display for TimeUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for TimeUnit {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "unix_seconds" | "unix" => Ok(TimeUnit::UnixSeconds),
            "days" => Ok(TimeUnit::Days),
            "years" => Ok(TimeUnit::Years),
            "index" => Ok(TimeUnit::Index),
            other => Err(format!(
                "unknown time unit '{other}' (expected unix_seconds, days, years or index)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StreamMeta {
    pub t_min: Timestamp,
    pub t_max: Timestamp,
    pub num_nodes: usize,
    pub num_events: usize,
    pub unit: TimeUnit,
}

/// Deduplicated set of directed edges, stored sorted by `(src, dst)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct EdgeSet(Vec<EdgeKey>);

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet(Vec::new())
    }

    /// Sorts and deduplicates `keys`.
    pub fn from_vec(mut keys: Vec<EdgeKey>) -> Self {
        exec::sort_unstable(&mut keys);
        keys.dedup();
        EdgeSet(keys)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, EdgeKey> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[EdgeKey] {
        &self.0
    }

    pub fn contains(&self, key: &EdgeKey) -> bool {
        self.0.binary_search(key).is_ok()
    }

    /// `|self ∩ other|` by merging the two sorted runs.
    pub fn intersection_len(&self, other: &EdgeSet) -> usize {
        let (mut i, mut j, mut n) = (0, 0, 0);
        let (a, b) = (&self.0, &other.0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }

    /// `|self \ other|`.
    pub fn difference_len(&self, other: &EdgeSet) -> usize {
        self.len() - self.intersection_len(other)
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        EdgeSet::from_vec(v)
    }

    pub fn into_vec(self) -> Vec<EdgeKey> {
        self.0
    }
}

impl FromIterator<EdgeKey> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = EdgeKey>>(iter: I) -> Self {
        EdgeSet::from_vec(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a EdgeSet {
    type Item = &'a EdgeKey;
    type IntoIter = std::slice::Iter<'a, EdgeKey>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Continuous-time dynamic graph: time-sorted directed edge events.
///
/// Duplicate `(src, dst, time)` events are kept; the stream is a multiset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventStream {
    events: Vec<EdgeEvent>,
    labels: Vec<String>,
    meta: StreamMeta,
}

impl EventStream {
    /// Builds a stream from events already sorted by time whose node IDs are
    /// dense over `labels`.
    pub(crate) fn from_sorted_parts(
        events: Vec<EdgeEvent>,
        labels: Vec<String>,
        unit: TimeUnit,
    ) -> Result<Self> {
        let (first, last) = match (events.first(), events.last()) {
            (Some(f), Some(l)) => (f.time, l.time),
            _ => return Err(Error::EmptyInput),
        };
        debug_assert!(events.windows(2).all(|w| w[0].time <= w[1].time));
        let meta = StreamMeta {
            t_min: first,
            t_max: last,
            num_nodes: labels.len(),
            num_events: events.len(),
            unit,
        };
        Ok(EventStream {
            events,
            labels,
            meta,
        })
    }

    pub fn events(&self) -> &[EdgeEvent] {
        &self.events
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, id: NodeId) -> &str {
        &self.labels[id.index()]
    }

    pub fn meta(&self) -> &StreamMeta {
        &self.meta
    }

    pub fn num_nodes(&self) -> usize {
        self.meta.num_nodes
    }

    pub fn num_events(&self) -> usize {
        self.meta.num_events
    }

    pub fn t_min(&self) -> Timestamp {
        self.meta.t_min
    }

    pub fn t_max(&self) -> Timestamp {
        self.meta.t_max
    }

    pub fn unit(&self) -> TimeUnit {
        self.meta.unit
    }

    /// Returns the same stream with a different declared timestamp unit.
    pub fn with_unit(mut self, unit: TimeUnit) -> Self {
        self.meta.unit = unit;
        self
    }

    /// Events relabelled with their original node labels.
    pub fn triplets(&self) -> impl Iterator<Item = (&str, &str, Timestamp)> + '_ {
        self.events
            .iter()
            .map(|e| (self.label(e.src), self.label(e.dst), e.time))
    }

    /// Deduplicated directed `(src, dst)` pairs over all events.
    pub fn unique_edges(&self) -> EdgeSet {
        EdgeSet::from_vec(self.events.iter().map(EdgeEvent::key).collect())
    }

    /// Number of distinct timestamp values.
    pub fn unique_timestamps(&self) -> usize {
        // events are time-sorted, so distinct values are run boundaries
        let mut n = 0;
        let mut prev = None;
        for e in &self.events {
            if prev != Some(e.time) {
                n += 1;
                prev = Some(e.time);
            }
        }
        n
    }
}

/// Incremental constructor for [`EventStream`].
///
/// Labels are assigned dense IDs in order of first appearance; `finish`
/// stably sorts the events by time.
#[derive(Debug, Default)]
pub struct StreamBuilder {
    ids: FxHashMap<Box<str>, NodeId>,
    labels: Vec<String>,
    events: Vec<EdgeEvent>,
    unit: TimeUnit,
    undirected: bool,
}

impl StreamBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(events: usize) -> Self {
        StreamBuilder {
            events: Vec::with_capacity(events),
            ..Self::default()
        }
    }

    pub fn unit(mut self, unit: TimeUnit) -> Self {
        self.unit = unit;
        self
    }

    /// Normalizes every edge so its endpoint labels are in ascending order.
    pub fn undirected(mut self, undirected: bool) -> Self {
        self.undirected = undirected;
        self
    }

    fn intern(&mut self, label: &str) -> Result<NodeId> {
        if let Some(&id) = self.ids.get(label) {
            return Ok(id);
        }
        let id = u32::try_from(self.labels.len())
            .map(NodeId)
            .map_err(|_| Error::InvalidFormat("more than 2^32 distinct nodes".into()))?;
        self.ids.insert(label.into(), id);
        self.labels.push(label.to_owned());
        Ok(id)
    }

    pub fn push(&mut self, src: &str, dst: &str, time: Timestamp) -> Result<()> {
        // t_max + 1 must be representable for half-open snapshot bounds
        if time == Timestamp::MAX {
            return Err(Error::TimestampOverflow(time.to_string()));
        }
        let (src, dst) = if self.undirected && dst < src {
            (dst, src)
        } else {
            (src, dst)
        };
        let src = self.intern(src)?;
        let dst = self.intern(dst)?;
        self.events.push(EdgeEvent { src, dst, time });
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn finish(self) -> Result<EventStream> {
        let StreamBuilder {
            mut events,
            labels,
            unit,
            ..
        } = self;
        if events.is_empty() {
            return Err(Error::EmptyInput);
        }
        if !events.windows(2).all(|w| w[0].time <= w[1].time) {
            events.sort_by_key(|e| e.time);
        }
        EventStream::from_sorted_parts(events, labels, unit)
    }
}

/// Builds an [`EventStream`] from `(src label, dst label, time)` triplets.
pub fn build_stream<I, S>(raw: I) -> Result<EventStream>
where
    I: IntoIterator<Item = (S, S, Timestamp)>,
    S: AsRef<str>,
{
    let mut builder = StreamBuilder::new();
    for (src, dst, t) in raw {
        builder.push(src.as_ref(), dst.as_ref(), t)?;
    }
    builder.finish()
}

/// One discretization interval and the deduplicated edges observed in it.
///
/// The interval is half-open, `[start, end)`. The last snapshot of a
/// sequence ends at `t_max + 1`, so it contains `t_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snapshot {
    pub(crate) index: usize,
    pub(crate) start: Timestamp,
    pub(crate) end: Timestamp,
    pub(crate) edges: EdgeSet,
    pub(crate) event_count: usize,
    pub(crate) nodes: Vec<NodeId>,
}

impl Snapshot {
    pub(crate) fn new(
        index: usize,
        start: Timestamp,
        end: Timestamp,
        edges: EdgeSet,
        event_count: usize,
    ) -> Self {
        let mut nodes: Vec<NodeId> = edges.iter().flat_map(|e| [e.src, e.dst]).collect();
        nodes.sort_unstable();
        nodes.dedup();
        Snapshot {
            index,
            start,
            end,
            edges,
            event_count,
            nodes,
        }
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn start(&self) -> Timestamp {
        self.start
    }

    /// Exclusive upper bound.
    pub fn end(&self) -> Timestamp {
        self.end
    }

    pub fn contains_time(&self, t: Timestamp) -> bool {
        self.start <= t && t < self.end
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn event_count(&self) -> usize {
        self.event_count
    }

    /// Sorted distinct endpoints of `edges`.
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Discrete-time dynamic graph: contiguous equal-width snapshots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnapshotSequence {
    pub(crate) snapshots: Vec<Snapshot>,
    pub(crate) granularity: Granularity,
    pub(crate) source_meta: StreamMeta,
}

impl SnapshotSequence {
    /// Sequence with one unit-width snapshot per edge set, starting at time 0.
    ///
    /// Each edge set counts as one event per distinct edge. Useful for
    /// computing statistics over hand-built snapshot data.
    pub fn from_edge_sets<I, E>(sets: I) -> Self
    where
        I: IntoIterator<Item = E>,
        E: IntoIterator<Item = EdgeKey>,
    {
        let snapshots: Vec<Snapshot> = sets
            .into_iter()
            .enumerate()
            .map(|(i, edges)| {
                let edges: EdgeSet = edges.into_iter().collect();
                let n = edges.len();
                Snapshot::new(i, i as Timestamp, i as Timestamp + 1, edges, n)
            })
            .collect();
        let num_nodes = snapshots
            .iter()
            .flat_map(|s| s.nodes.last())
            .map(|n| n.index() + 1)
            .max()
            .unwrap_or(0);
        let source_meta = StreamMeta {
            t_min: 0,
            t_max: snapshots.len().saturating_sub(1) as Timestamp,
            num_nodes,
            num_events: snapshots.iter().map(|s| s.event_count).sum(),
            unit: TimeUnit::Index,
        };
        SnapshotSequence {
            granularity: Granularity::Bins(snapshots.len().max(1) as u64),
            snapshots,
            source_meta,
        }
    }

    pub fn snapshots(&self) -> &[Snapshot] {
        &self.snapshots
    }

    pub fn len(&self) -> usize {
        self.snapshots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snapshots.is_empty()
    }

    pub fn granularity(&self) -> Granularity {
        self.granularity
    }

    /// `"bins:k"` or the granularity name.
    pub fn granularity_tag(&self) -> String {
        self.granularity.to_string()
    }

    pub fn source_meta(&self) -> &StreamMeta {
        &self.source_meta
    }

    pub fn num_nonempty(&self) -> usize {
        self.snapshots.iter().filter(|s| !s.is_empty()).count()
    }
}
