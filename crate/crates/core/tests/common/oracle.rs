//! Brute-force reference implementation working directly on label triplets.
//!
//! Nothing here calls into the library: bins come from the closed-form
//! `floor((t - t_min) * k / span)`, sets are `BTreeSet`s of label pairs and
//! every index is recomputed from scratch.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

pub type Triplet = (String, String, i64);
pub type Pair = (String, String);

/// SplitMix64, used only to generate test inputs.
pub struct Gen(u64);

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen(seed)
    }

    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

/// Up to `max_events` events over at most `max_nodes` labels and
/// `max_times` distinct timestamps (spread with gaps so some bins are empty).
pub fn random_triplets(g: &mut Gen, max_events: u64, max_nodes: u64, max_times: u64) -> Vec<Triplet> {
    let n_events = 1 + g.below(max_events);
    let n_nodes = 1 + g.below(max_nodes);
    let n_times = 1 + g.below(max_times);
    let base = g.below(1000) as i64 - 500;
    let stride = 1 + g.below(5) as i64;
    let times: Vec<i64> = (0..n_times as i64)
        .map(|i| base + i * stride + g.below(stride as u64) as i64)
        .collect();
    (0..n_events)
        .map(|_| {
            (
                format!("n{}", g.below(n_nodes)),
                format!("n{}", g.below(n_nodes)),
                times[g.below(n_times) as usize],
            )
        })
        .collect()
}

/// Stable sort by time, as the stream model requires.
pub fn sorted(events: &[Triplet]) -> Vec<Triplet> {
    let mut v = events.to_vec();
    v.sort_by_key(|e| e.2);
    v
}

pub struct Snap {
    pub edges: BTreeSet<Pair>,
    pub nodes: BTreeSet<String>,
    pub events: usize,
}

fn build(events: &[Triplet], n: usize, bin: impl Fn(i64) -> usize) -> Vec<Snap> {
    let mut snaps: Vec<Snap> = (0..n)
        .map(|_| Snap {
            edges: BTreeSet::new(),
            nodes: BTreeSet::new(),
            events: 0,
        })
        .collect();
    for (s, d, t) in events {
        let b = bin(*t);
        snaps[b].edges.insert((s.clone(), d.clone()));
        snaps[b].nodes.insert(s.clone());
        snaps[b].nodes.insert(d.clone());
        snaps[b].events += 1;
    }
    snaps
}

/// `k` equal-width bins over `[t_min, t_max]`.
pub fn bins(events: &[Triplet], k: u64) -> Vec<Snap> {
    let t_min = events.iter().map(|e| e.2).min().unwrap() as i128;
    let t_max = events.iter().map(|e| e.2).max().unwrap() as i128;
    let span = t_max - t_min + 1;
    build(events, k as usize, |t| {
        ((t as i128 - t_min) * k as i128 / span) as usize
    })
}

/// Fixed-width intervals anchored at `t_min`.
pub fn fixed_width(events: &[Triplet], width: i64) -> Vec<Snap> {
    let t_min = events.iter().map(|e| e.2).min().unwrap();
    let t_max = events.iter().map(|e| e.2).max().unwrap();
    let n = ((t_max - t_min) / width + 1) as usize;
    build(events, n, |t| ((t - t_min) / width) as usize)
}

pub fn num_nodes(events: &[Triplet]) -> usize {
    events
        .iter()
        .flat_map(|(s, d, _)| [s.clone(), d.clone()])
        .collect::<BTreeSet<_>>()
        .len()
}

/// `(new, repeated)` per snapshot.
pub fn tea(snaps: &[Snap]) -> Vec<(usize, usize)> {
    let mut seen: BTreeSet<Pair> = BTreeSet::new();
    snaps
        .iter()
        .map(|s| {
            let new = s.edges.iter().filter(|e| !seen.contains(*e)).count();
            seen.extend(s.edges.iter().cloned());
            (new, s.edges.len() - new)
        })
        .collect()
}

/// Presence vector per edge.
pub fn tet(snaps: &[Snap]) -> BTreeMap<Pair, Vec<bool>> {
    let mut m: BTreeMap<Pair, Vec<bool>> = BTreeMap::new();
    for (t, s) in snaps.iter().enumerate() {
        for e in &s.edges {
            m.entry(e.clone()).or_insert_with(|| vec![false; snaps.len()])[t] = true;
        }
    }
    m
}

/// Mean of `new / total` over non-empty snapshots (or all, with empty
/// ones contributing 0).
pub fn novelty(snaps: &[Snap], include_empty: bool) -> Option<f64> {
    let tea = tea(snaps);
    let mut sum = 0.0;
    let mut n = 0usize;
    for (new, rep) in tea {
        let total = new + rep;
        if total == 0 {
            if include_empty {
                n += 1;
            }
            continue;
        }
        sum += new as f64 / total as f64;
        n += 1;
    }
    (n > 0 && snaps.iter().any(|s| !s.edges.is_empty())).then(|| sum / n as f64)
}

pub fn node_activity(snaps: &[Snap], num_nodes: usize, include_empty: bool) -> f64 {
    let present: usize = snaps.iter().map(|s| s.nodes.len()).sum();
    let t = if include_empty {
        snaps.len()
    } else {
        snaps.iter().filter(|s| !s.edges.is_empty()).count()
    };
    present as f64 / (t as f64 * num_nodes as f64)
}

/// Per-snapshot `2|E| / |V|`, with 0 for empty snapshots, and the mean over
/// non-empty ones.
pub fn degree(snaps: &[Snap]) -> (Vec<f64>, f64) {
    let per: Vec<f64> = snaps
        .iter()
        .map(|s| {
            if s.nodes.is_empty() {
                0.0
            } else {
                2.0 * s.edges.len() as f64 / s.nodes.len() as f64
            }
        })
        .collect();
    let nonempty: Vec<f64> = snaps
        .iter()
        .zip(&per)
        .filter(|(s, _)| !s.edges.is_empty())
        .map(|(_, &d)| d)
        .collect();
    let mean = if nonempty.is_empty() {
        0.0
    } else {
        nonempty.iter().sum::<f64>() / nonempty.len() as f64
    };
    (per, mean)
}

/// Train and test edge sets, or `None` when a side would be empty.
pub fn split(events: &[Triplet], frac: f64) -> Option<(BTreeSet<Pair>, BTreeSet<Pair>)> {
    let ev = sorted(events);
    let n = ev.len();
    let mut m = ((frac * n as f64).floor() as usize).min(n);
    // no timestamp may straddle the cut
    while m > 0 && m < n && ev[m].2 == ev[m - 1].2 {
        m += 1;
    }
    if m == 0 || m == n {
        return None;
    }
    let pairs = |s: &[Triplet]| -> BTreeSet<Pair> {
        s.iter().map(|(a, b, _)| (a.clone(), b.clone())).collect()
    };
    Some((pairs(&ev[..m]), pairs(&ev[m..])))
}

pub fn reoccurrence(train: &BTreeSet<Pair>, test: &BTreeSet<Pair>) -> f64 {
    train.intersection(test).count() as f64 / train.len() as f64
}

pub fn surprise(train: &BTreeSet<Pair>, test: &BTreeSet<Pair>) -> f64 {
    test.difference(train).count() as f64 / test.len() as f64
}
