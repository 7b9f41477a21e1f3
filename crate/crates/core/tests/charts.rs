#[path = "common/golden_cases.rs"]
mod golden_cases;
#[path = "common/svg_check.rs"]
mod svg_check;

use std::path::PathBuf;

use tempograph::stats::{DegreeSeries, TeaRow, TeaSeries};
use tempograph::viz::{
    render_degree_chart, render_tea_chart, render_tet_chart, ChartConfig, MEAN_LINE_COLOR,
    NEW_EDGE_COLOR, REPEATED_EDGE_COLOR,
};

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Set UPDATE_GOLDEN=1 to rewrite the files after an intended change.
#[test]
fn golden_files_match() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some_and(|v| v == "1");
    let dir = golden_dir();
    for (name, doc) in golden_cases::cases() {
        let path = dir.join(name);
        if update {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &doc).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("{}: {e} (run with UPDATE_GOLDEN=1)", path.display()));
        assert!(want == doc, "{name} differs from its golden file");
    }
}

#[test]
fn every_case_is_valid_and_in_bounds() {
    for (name, doc) in golden_cases::cases() {
        if let Err(e) = svg_check::validate(&doc) {
            panic!("{name}: {e}");
        }
    }
}

fn elems_in_group(doc: &str, class: &str) -> Vec<svg_check::Element> {
    let start = doc.find(&format!("<g class=\"{class}\">")).unwrap();
    let body = &doc[start..];
    let end = body.find("</g>").unwrap();
    let chunk = format!("<svg width=\"1\" height=\"1\">{}</g></svg>", &body[..end]);
    svg_check::parse(&chunk).unwrap().into_iter().skip(2).collect()
}

#[test]
fn constant_degree_mean_coincides_with_series() {
    let s = DegreeSeries::from_values(vec![3.0; 4]);
    let doc = render_degree_chart(&s, &ChartConfig::degree()).unwrap();
    let series = elems_in_group(&doc, "series");
    let poly = series.iter().find(|e| e.name == "polyline").unwrap();
    let mean = series.iter().find(|e| e.name == "line").unwrap();
    assert_eq!(mean.attr("stroke"), Some(MEAN_LINE_COLOR));
    let y = mean.num("y1");
    for p in poly.attr("points").unwrap().split(' ') {
        assert_eq!(p.split_once(',').unwrap().1.parse::<f64>().unwrap(), y);
    }
}

#[test]
fn two_point_degree_mean_is_midway() {
    let s = DegreeSeries::from_values(vec![1.0, 3.0]);
    assert_eq!(s.overall_mean, 2.0);
    let doc = render_degree_chart(&s, &ChartConfig::degree()).unwrap();
    let series = elems_in_group(&doc, "series");
    let ys: Vec<f64> = series
        .iter()
        .find(|e| e.name == "polyline")
        .unwrap()
        .attr("points")
        .unwrap()
        .split(' ')
        .map(|p| p.split_once(',').unwrap().1.parse().unwrap())
        .collect();
    let mean_y = series.iter().find(|e| e.name == "line").unwrap().num("y1");
    assert!((mean_y - (ys[0] + ys[1]) / 2.0).abs() <= 0.01);
}

#[test]
fn stacked_bar_segments_are_proportional() {
    let tea = TeaSeries(vec![
        TeaRow { new_edges: 2, repeated_edges: 0 },
        TeaRow { new_edges: 1, repeated_edges: 1 },
    ]);
    let doc = render_tea_chart(&tea, &ChartConfig::tea()).unwrap();
    let bars = elems_in_group(&doc, "bars");
    assert_eq!(bars.len(), 3);
    let (first, rep, new) = (&bars[0], &bars[1], &bars[2]);
    assert_eq!(rep.attr("fill"), Some(REPEATED_EDGE_COLOR));
    assert_eq!(new.attr("fill"), Some(NEW_EDGE_COLOR));
    assert!((rep.num("height") - new.num("height")).abs() <= 0.011);
    // the repeated segment sits below the new one
    assert!(rep.num("y") > new.num("y"));
    assert!((first.num("height") - 2.0 * rep.num("height")).abs() <= 0.02);
}

fn filled_cells(doc: &str, cell_w: f64) -> f64 {
    elems_in_group(doc, "cells")
        .iter()
        .skip(1)
        .map(|e| e.num("width") / cell_w)
        .sum()
}

#[test]
fn tet_cells_map_directly() {
    let m = golden_cases::tet(&["110", "011"]);
    let doc = render_tet_chart(&m, &ChartConfig::tet()).unwrap();
    let cells = elems_in_group(&doc, "cells");
    let bg = &cells[0];
    let cell_w = bg.num("width") / 3.0;
    assert_eq!(cells.len() - 1, 4);
    assert!((filled_cells(&doc, cell_w) - 4.0).abs() < 0.01);
}

#[test]
fn saturated_tet_fills_the_plot() {
    let m = golden_cases::tet(&["1111", "1111", "1111"]);
    let doc = render_tet_chart(&m, &ChartConfig::tet()).unwrap();
    let cells = elems_in_group(&doc, "cells");
    let bg = &cells[0];
    let area: f64 = cells[1..].iter().map(|e| e.num("width") * e.num("height")).sum();
    let plot = bg.num("width") * bg.num("height");
    assert!((area - plot).abs() / plot < 1e-3);
}

#[test]
fn small_tet_cells_merge_into_runs() {
    // 400 rows on a ~500 px plot: cells are under 2 px tall
    let rows: Vec<String> = (0..400).map(|_| "0111".to_string()).collect();
    let rows: Vec<&str> = rows.iter().map(String::as_str).collect();
    let doc = render_tet_chart(&golden_cases::tet(&rows), &ChartConfig::tet()).unwrap();
    let cells = elems_in_group(&doc, "cells");
    assert_eq!(cells.len() - 1, 400);
    assert!(cells[1..].iter().all(|e| e.attr("stroke").is_none()));
    svg_check::validate(&doc).unwrap();
}
