//! Deterministic SVG charts for the four figure families, plus CSV/JSON
//! export of the underlying series.
//!
//! Documents only use the `svg`, `g`, `rect`, `line`, `polyline`, `text`
//! and `title` elements. Coordinates are printed with two decimals and no
//! document ever embeds a timestamp or random ID, so equal inputs give equal
//! bytes.

mod charts;
pub mod export;
mod svg;

pub use charts::{render_counts_chart, render_degree_chart, render_tea_chart, render_tet_chart};
pub use export::{export_series, ExportFormat, Series};

use crate::error::{Error, Result};
use crate::stats::TET_ROW_CAP;

/// Categorical palette (matplotlib "tab10").
pub const DEFAULT_PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];
pub const NEW_EDGE_COLOR: &str = "#d62728";
pub const REPEATED_EDGE_COLOR: &str = "#a6a6a6";
pub const MEAN_LINE_COLOR: &str = "#d62728";
pub const TET_BACKGROUND: &str = "#f0f0f0";

#[derive(Debug, Clone, PartialEq)]
pub struct ChartConfig {
    pub width_px: u32,
    pub height_px: u32,
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub palette: Vec<String>,
    pub tick_count: usize,
    pub tet_row_cap: usize,
}

impl Default for ChartConfig {
    fn default() -> Self {
        ChartConfig {
            width_px: 800,
            height_px: 600,
            title: String::new(),
            x_label: "snapshot".into(),
            y_label: String::new(),
            palette: DEFAULT_PALETTE.iter().map(|s| s.to_string()).collect(),
            tick_count: 6,
            tet_row_cap: TET_ROW_CAP,
        }
    }
}

impl ChartConfig {
    pub fn counts() -> Self {
        ChartConfig {
            title: "Nodes and edges per snapshot".into(),
            y_label: "count".into(),
            ..Self::default()
        }
    }

    pub fn degree() -> Self {
        ChartConfig {
            title: "Average node degree per snapshot".into(),
            y_label: "average degree".into(),
            ..Self::default()
        }
    }

    pub fn tea() -> Self {
        ChartConfig {
            title: "Temporal edge appearance".into(),
            y_label: "edges".into(),
            ..Self::default()
        }
    }

    pub fn tet() -> Self {
        ChartConfig {
            title: "Temporal edge traffic".into(),
            y_label: "edge".into(),
            ..Self::default()
        }
    }

    pub fn with_title(mut self, title: impl Into<String>) -> Self {
        self.title = title.into();
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.width_px < 100 || self.height_px < 100 {
            return Err(Error::InvalidChart(format!(
                "width and height must be at least 100 px, got {}x{}",
                self.width_px, self.height_px
            )));
        }
        if self.tick_count < 2 {
            return Err(Error::InvalidChart("tick_count must be at least 2".into()));
        }
        if self.palette.is_empty() {
            return Err(Error::InvalidChart("palette must not be empty".into()));
        }
        Ok(())
    }

    pub(crate) fn color(&self, i: usize) -> &str {
        &self.palette[i % self.palette.len()]
    }
}

/// Tick values covering `[lo, hi]` with a 1/2/5 × 10^n step.
pub fn nice_ticks(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (lo, hi) = if hi > lo { (lo, hi) } else { (lo, lo + 1.0) };
    let step = nice_step((hi - lo) / (count.max(2) - 1) as f64);
    let first = (lo / step).floor() as i64;
    let last = (hi / step).ceil() as i64;
    (first..=last).map(|i| i as f64 * step).collect()
}

pub(crate) fn nice_step(raw: f64) -> f64 {
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let m = if norm <= 1.0 {
        1.0
    } else if norm <= 2.0 {
        2.0
    } else if norm <= 5.0 {
        5.0
    } else {
        10.0
    };
    m * mag
}
