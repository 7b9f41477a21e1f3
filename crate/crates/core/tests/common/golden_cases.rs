//! The render examples pinned by the checked-in golden SVG files.

#![allow(dead_code)]

use tempograph::stats::{
    DegreeSeries, SnapshotCount, SnapshotCounts, TeaRow, TeaSeries, TetMatrix, TetRow,
};
use tempograph::viz::{
    render_counts_chart, render_degree_chart, render_tea_chart, render_tet_chart, ChartConfig,
};
use tempograph::EdgeKey;

fn counts(rows: &[(usize, usize, usize)]) -> SnapshotCounts {
    SnapshotCounts(
        rows.iter()
            .map(|&(num_nodes, num_edges, num_events)| SnapshotCount {
                num_nodes,
                num_edges,
                num_events,
            })
            .collect(),
    )
}

fn tea(rows: &[(usize, usize)]) -> TeaSeries {
    TeaSeries(
        rows.iter()
            .map(|&(new_edges, repeated_edges)| TeaRow {
                new_edges,
                repeated_edges,
            })
            .collect(),
    )
}

/// Rows are presence strings; first/last seen follow from them.
pub fn tet(rows: &[&str]) -> TetMatrix {
    let n = rows[0].len();
    let meta = rows
        .iter()
        .enumerate()
        .map(|(i, p)| TetRow {
            edge: EdgeKey::new(i as u32, i as u32 + 1),
            first_seen: p.find('1').unwrap(),
            last_seen: p.rfind('1').unwrap(),
        })
        .collect();
    let mut m = TetMatrix::new(n, meta);
    for (i, p) in rows.iter().enumerate() {
        for (t, c) in p.chars().enumerate() {
            if c == '1' {
                m.set_present(i, t);
            }
        }
    }
    m
}

/// `(file name, rendered document)` for every golden case.
pub fn cases() -> Vec<(&'static str, String)> {
    let wide: Vec<(usize, usize, usize)> = (0..30)
        .map(|i| (10 + (i * 7) % 23, 5 + (i * 11) % 31, 6 + (i * 13) % 40))
        .collect();
    let big_tet: Vec<String> = (0..40)
        .map(|r| (0..60).map(|t| if (t * 7 + r * 3) % 5 < 2 && t >= r / 2 { '1' } else { '0' }).collect())
        .map(|s: String| if s.contains('1') { s } else { format!("1{}", &s[1..]) })
        .collect();
    let big_tet: Vec<&str> = big_tet.iter().map(String::as_str).collect();

    let c = ChartConfig::counts();
    let d = ChartConfig::degree();
    let a = ChartConfig::tea();
    let t = ChartConfig::tet();
    let r = |x: tempograph::Result<String>| x.expect("golden case renders");
    vec![
        ("counts_single.svg", r(render_counts_chart(&counts(&[(2, 1, 1)]), &c))),
        ("counts_small.svg", r(render_counts_chart(&counts(&[(3, 2, 2), (4, 3, 5), (2, 1, 1), (0, 0, 0), (5, 6, 9)]), &c))),
        ("counts_30.svg", r(render_counts_chart(&counts(&wide), &c))),
        ("degree_constant.svg", r(render_degree_chart(&DegreeSeries::from_values(vec![3.0; 5]), &d))),
        ("degree_two_point.svg", r(render_degree_chart(&DegreeSeries::from_values(vec![1.0, 3.0]), &d))),
        ("degree_with_empty.svg", r(render_degree_chart(&DegreeSeries::from_values(vec![2.0, 0.0, 1.5, 2.5]), &d))),
        ("tea_first.svg", r(render_tea_chart(&tea(&[(1, 0)]), &a))),
        ("tea_stacked.svg", r(render_tea_chart(&tea(&[(2, 0), (1, 1)]), &a))),
        ("tea_series.svg", r(render_tea_chart(&tea(&[(5, 0), (3, 2), (1, 6), (0, 0), (2, 7)]), &a))),
        ("tet_2x3.svg", r(render_tet_chart(&tet(&["110", "011"]), &t))),
        ("tet_saturated.svg", r(render_tet_chart(&tet(&["1111", "1111", "1111"]), &t))),
        ("tet_dense.svg", r(render_tet_chart(&tet(&big_tet), &t))),
    ]
}
