//! Library-vs-oracle comparison returning the first discrepancy.
//!
//! Requires `oracle` to be declared as a sibling module.

#![allow(dead_code)]

use std::collections::BTreeSet;

use tempograph::stats::{self, EmptySnapshots};
use tempograph::transform::{chronological_split, discretize_bins, SplitSpec};
use tempograph::{build_stream, EdgeKey, EdgeSet, EventStream, SnapshotSequence};

use super::oracle::{self, Pair, Snap, Triplet};

pub const EPS: f64 = 1e-12;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

pub fn stream(events: &[Triplet]) -> EventStream {
    build_stream(events.iter().map(|(s, d, t)| (s.as_str(), d.as_str(), *t))).unwrap()
}

fn pair(s: &EventStream, e: &EdgeKey) -> Pair {
    (s.label(e.src).to_string(), s.label(e.dst).to_string())
}

pub fn labelled(s: &EventStream, set: &EdgeSet) -> BTreeSet<Pair> {
    set.iter().map(|e| pair(s, e)).collect()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= EPS
}

/// Snapshots, TEA, TET, node activity, novelty and degree.
pub fn sequence(s: &EventStream, seq: &SnapshotSequence, want: &[Snap]) -> Result<(), String> {
    ensure!(seq.len() == want.len(), "{} snapshots, oracle has {}", seq.len(), want.len());
    for (i, (got, w)) in seq.snapshots().iter().zip(want).enumerate() {
        ensure!(labelled(s, got.edges()) == w.edges, "snapshot {i}: edge sets differ");
        let nodes: BTreeSet<String> = got.nodes().iter().map(|&n| s.label(n).to_string()).collect();
        ensure!(nodes == w.nodes, "snapshot {i}: node sets differ");
        ensure!(got.event_count() == w.events, "snapshot {i}: event counts differ");
    }

    let tea = stats::tea_series(seq);
    let got: Vec<(usize, usize)> = tea.0.iter().map(|r| (r.new_edges, r.repeated_edges)).collect();
    ensure!(got == oracle::tea(want), "TEA {got:?} vs {:?}", oracle::tea(want));

    let tet = stats::tet_matrix(seq).map_err(|e| e.to_string())?;
    let want_tet = oracle::tet(want);
    ensure!(tet.num_rows() == want_tet.len(), "TET has {} rows, oracle {}", tet.num_rows(), want_tet.len());
    for (i, row) in tet.rows().iter().enumerate() {
        let presence: Vec<bool> = (0..seq.len()).map(|t| tet.is_present(i, t)).collect();
        let key = pair(s, &row.edge);
        ensure!(want_tet.get(&key) == Some(&presence), "TET row {key:?} differs");
        ensure!(
            Some(row.first_seen) == presence.iter().position(|&p| p)
                && Some(row.last_seen) == presence.iter().rposition(|&p| p),
            "TET row {key:?}: first/last seen"
        );
    }
    let keys: Vec<_> = tet.rows().iter().map(|r| (r.first_seen, r.last_seen, r.edge)).collect();
    ensure!(keys.windows(2).all(|w| w[0] < w[1]), "TET rows out of order");

    let n = s.num_nodes();
    for (mode, include) in [(EmptySnapshots::Include, true), (EmptySnapshots::Exclude, false)] {
        let got = stats::average_node_activity_with(seq, mode);
        let want_a = oracle::node_activity(want, n, include);
        ensure!(close(got, want_a), "node activity ({mode:?}) {got} vs {want_a}");
        match (stats::novelty_with(seq, mode), oracle::novelty(want, include)) {
            (Ok(a), Some(b)) => ensure!(close(a, b), "novelty ({mode:?}) {a} vs {b}"),
            (Err(_), None) => {}
            (a, b) => return Err(format!("novelty ({mode:?}) {a:?} vs {b:?}")),
        }
    }

    let deg = stats::average_degree_series(seq);
    let (want_deg, want_mean) = oracle::degree(want);
    ensure!(
        deg.avg_degree.iter().zip(&want_deg).all(|(a, b)| close(*a, *b)),
        "degree series differs"
    );
    ensure!(close(deg.overall_mean, want_mean), "mean degree {} vs {want_mean}", deg.overall_mean);
    Ok(())
}

/// Train/test sets, reoccurrence and surprise.
pub fn split(s: &EventStream, events: &[Triplet], frac: f64) -> Result<(), String> {
    let spec = SplitSpec::new(frac).map_err(|e| e.to_string())?;
    match (chronological_split(s, spec), oracle::split(events, frac)) {
        (Ok((train, test)), Some((wtrain, wtest))) => {
            ensure!(labelled(s, &train) == wtrain, "train set differs at f={frac}");
            ensure!(labelled(s, &test) == wtest, "test set differs at f={frac}");
            let r = stats::reoccurrence(&train, &test).map_err(|e| e.to_string())?;
            let p = stats::surprise(&train, &test).map_err(|e| e.to_string())?;
            let (wr, wp) = (oracle::reoccurrence(&wtrain, &wtest), oracle::surprise(&wtrain, &wtest));
            ensure!(close(r, wr), "reoccurrence {r} vs {wr}");
            ensure!(close(p, wp), "surprise {p} vs {wp}");
            Ok(())
        }
        (Err(_), None) => Ok(()),
        (a, b) => Err(format!("split at f={frac}: library {:?}, oracle degenerate={}", a.map(|_| ()), b.is_none())),
    }
}

/// Bins `{1, 2, 3, 7, n, extra_k}` and splits `{0.5, 0.85, frac}`.
pub fn all(events: &[Triplet], extra_k: u64, frac: f64) -> Result<(), String> {
    let s = stream(events);
    let n = events.len() as u64;
    for k in [1, 2, 3, 7, n, extra_k] {
        let seq = discretize_bins(&s, k).map_err(|e| e.to_string())?;
        sequence(&s, &seq, &oracle::bins(events, k)).map_err(|e| format!("k={k}: {e}"))?;
    }
    for f in [0.5, 0.85, frac] {
        split(&s, events, f)?;
    }
    Ok(())
}
