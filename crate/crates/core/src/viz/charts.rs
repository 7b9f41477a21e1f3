use crate::error::{Error, Result};
use crate::stats::{DegreeSeries, SnapshotCounts, TeaSeries, TetMatrix};
use crate::viz::svg::Svg;
use crate::viz::{
    nice_step, nice_ticks, ChartConfig, MEAN_LINE_COLOR, NEW_EDGE_COLOR, REPEATED_EDGE_COLOR,
    TET_BACKGROUND,
};

const AXIS_COLOR: &str = "#333333";
const GRID_COLOR: &str = "#e0e0e0";

/// Plot area inside the margins, plus the value range of the y axis.
struct Frame {
    width: f64,
    height: f64,
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    n: usize,
    lo: f64,
    hi: f64,
}

impl Frame {
    fn new(cfg: &ChartConfig, n: usize, lo: f64, hi: f64) -> Self {
        let width = cfg.width_px as f64;
        let height = cfg.height_px as f64;
        Frame {
            width,
            height,
            x0: (0.18 * width).min(72.0),
            x1: width - (0.05 * width).min(24.0),
            y0: (0.2 * height).min(60.0),
            y1: height - (0.18 * height).min(56.0),
            n,
            lo,
            hi,
        }
    }

    fn band(&self) -> f64 {
        (self.x1 - self.x0) / self.n as f64
    }

    /// Centre of snapshot `i`'s band.
    fn x(&self, i: usize) -> f64 {
        self.x0 + (i as f64 + 0.5) * self.band()
    }

    fn y(&self, v: f64) -> f64 {
        let v = v.clamp(self.lo, self.hi);
        self.y1 - (v - self.lo) / (self.hi - self.lo) * (self.y1 - self.y0)
    }
}

fn tick_label(v: f64, step: f64) -> String {
    let decimals = if step >= 1.0 {
        0
    } else {
        (-step.log10()).ceil() as usize
    };
    let s = format!("{v:.decimals$}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Title, axes, ticks, grid and axis labels. Returns the frame.
fn scaffold(svg: &mut Svg, cfg: &ChartConfig, n: usize, max: f64, y_ticks: bool) -> Frame {
    let ticks = nice_ticks(0.0, max, cfg.tick_count);
    let (lo, hi) = (ticks[0], *ticks.last().unwrap());
    let f = Frame::new(cfg, n, lo, hi);

    svg.text(f.width / 2.0, f.y0 * 0.45, "middle", &cfg.title, false);

    svg.open_group("grid");
    if y_ticks {
        let step = if ticks.len() > 1 { ticks[1] - ticks[0] } else { 1.0 };
        for &t in &ticks {
            let y = f.y(t);
            svg.line(f.x0, y, f.x1, y, GRID_COLOR, 1.0);
            svg.text(f.x0 - 6.0, y + 4.0, "end", &tick_label(t, step), false);
        }
    }
    svg.close_group();

    svg.open_group("axes");
    svg.line(f.x0, f.y1, f.x1, f.y1, AXIS_COLOR, 1.0);
    svg.line(f.x0, f.y0, f.x0, f.y1, AXIS_COLOR, 1.0);
    let step = (nice_step(n as f64 / cfg.tick_count as f64).ceil() as usize).max(1);
    for i in (0..n).step_by(step) {
        let x = f.x(i);
        svg.line(x, f.y1, x, f.y1 + 5.0, AXIS_COLOR, 1.0);
        svg.text(x, f.y1 + 18.0, "middle", &i.to_string(), false);
    }
    let bottom = f.height - f.y1;
    svg.text((f.x0 + f.x1) / 2.0, f.height - bottom * 0.2, "middle", &cfg.x_label, false);
    svg.text(f.x0 * 0.22, (f.y0 + f.y1) / 2.0, "middle", &cfg.y_label, true);
    svg.close_group();
    f
}

fn legend(svg: &mut Svg, f: &Frame, items: &[(&str, &str)]) {
    svg.open_group("legend");
    let y = f.y0 * 0.85;
    let mut x = f.x0;
    for (label, color) in items {
        svg.rect(x, y - 9.0, 10.0, 10.0, color, None);
        svg.text(x + 14.0, y, "start", label, false);
        x += 30.0 + 7.0 * label.chars().count() as f64;
    }
    svg.close_group();
}

fn begin(cfg: &ChartConfig, n: usize) -> Result<Svg> {
    cfg.validate()?;
    if n == 0 {
        return Err(Error::EmptySeries);
    }
    Ok(Svg::new(cfg.width_px, cfg.height_px, &cfg.title))
}

fn marker(svg: &mut Svg, x: f64, y: f64, color: &str) {
    svg.rect(x - 3.0, y - 3.0, 6.0, 6.0, color, None);
}

/// Nodes and edges per snapshot as two lines.
pub fn render_counts_chart(counts: &SnapshotCounts, cfg: &ChartConfig) -> Result<String> {
    let n = counts.len();
    let mut svg = begin(cfg, n)?;
    let max = counts
        .0
        .iter()
        .map(|c| c.num_nodes.max(c.num_edges))
        .max()
        .unwrap_or(0) as f64;
    let f = scaffold(&mut svg, cfg, n, max, true);
    let series: [(&str, &str, Vec<f64>); 2] = [
        ("nodes", cfg.color(0), counts.0.iter().map(|c| c.num_nodes as f64).collect()),
        ("edges", cfg.color(1), counts.0.iter().map(|c| c.num_edges as f64).collect()),
    ];
    svg.open_group("series");
    for (_, color, values) in &series {
        let pts: Vec<(f64, f64)> = values.iter().enumerate().map(|(i, &v)| (f.x(i), f.y(v))).collect();
        svg.polyline(&pts, color);
        if n == 1 {
            marker(&mut svg, pts[0].0, pts[0].1, color);
        }
    }
    svg.close_group();
    legend(&mut svg, &f, &[("nodes", series[0].1), ("edges", series[1].1)]);
    Ok(svg.finish())
}

/// Average degree per snapshot with a horizontal line at the overall mean.
pub fn render_degree_chart(series: &DegreeSeries, cfg: &ChartConfig) -> Result<String> {
    let n = series.len();
    let mut svg = begin(cfg, n)?;
    let max = series
        .avg_degree
        .iter()
        .copied()
        .fold(series.overall_mean, f64::max);
    let f = scaffold(&mut svg, cfg, n, max, true);
    let color = cfg.color(0);
    svg.open_group("series");
    let pts: Vec<(f64, f64)> = series
        .avg_degree
        .iter()
        .enumerate()
        .map(|(i, &v)| (f.x(i), f.y(v)))
        .collect();
    svg.polyline(&pts, color);
    if n == 1 {
        marker(&mut svg, pts[0].0, pts[0].1, color);
    }
    let ym = f.y(series.overall_mean);
    svg.line(f.x0, ym, f.x1, ym, MEAN_LINE_COLOR, 1.5);
    svg.close_group();
    let mean_label = format!("mean {:.2}", series.overall_mean);
    legend(&mut svg, &f, &[("average degree", color), (&mean_label, MEAN_LINE_COLOR)]);
    Ok(svg.finish())
}

/// Stacked bars: repeated edges at the bottom, new edges on top.
pub fn render_tea_chart(tea: &TeaSeries, cfg: &ChartConfig) -> Result<String> {
    let n = tea.len();
    let mut svg = begin(cfg, n)?;
    let max = tea.0.iter().map(|r| r.total()).max().unwrap_or(0) as f64;
    let f = scaffold(&mut svg, cfg, n, max, true);
    let w = f.band() * 0.8;
    svg.open_group("bars");
    for (i, row) in tea.0.iter().enumerate() {
        let x = f.x(i) - w / 2.0;
        let base = f.y(0.0);
        let mid = f.y(row.repeated_edges as f64);
        let top = f.y(row.total() as f64);
        if row.repeated_edges > 0 {
            svg.rect(x, mid, w, base - mid, REPEATED_EDGE_COLOR, None);
        }
        if row.new_edges > 0 {
            svg.rect(x, top, w, mid - top, NEW_EDGE_COLOR, None);
        }
    }
    svg.close_group();
    legend(
        &mut svg,
        &f,
        &[("repeated", REPEATED_EDGE_COLOR), ("new", NEW_EDGE_COLOR)],
    );
    Ok(svg.finish())
}

/// Edge × snapshot raster, one row per edge, coloured by the snapshot in
/// which the edge first appears.
///
/// Cells at least 2 px on both sides are drawn individually with a white
/// border. Smaller cells are merged into one borderless rect per run of
/// consecutive present snapshots, which renders identically.
pub fn render_tet_chart(tet: &TetMatrix, cfg: &ChartConfig) -> Result<String> {
    cfg.validate()?;
    let (rows, cols) = (tet.num_rows(), tet.num_snapshots());
    if rows > cfg.tet_row_cap {
        return Err(Error::TooManyRows {
            rows,
            cap: cfg.tet_row_cap,
        });
    }
    if rows == 0 {
        return Err(Error::EmptySeries);
    }
    let mut svg = begin(cfg, cols)?;
    let f = scaffold(&mut svg, cfg, cols, 1.0, false);
    let cw = f.band();
    let ch = (f.y1 - f.y0) / rows as f64;
    let bordered = cw >= 2.0 && ch >= 2.0;

    svg.open_group("cells");
    svg.rect(f.x0, f.y0, f.x1 - f.x0, f.y1 - f.y0, TET_BACKGROUND, None);
    for (r, row) in tet.rows().iter().enumerate() {
        let color = cfg.color(row.first_seen);
        let y = f.y0 + r as f64 * ch;
        let mut t = 0;
        while t < cols {
            if !tet.is_present(r, t) {
                t += 1;
                continue;
            }
            if bordered {
                svg.rect(f.x0 + t as f64 * cw, y, cw, ch, color, Some("#ffffff"));
                t += 1;
            } else {
                let start = t;
                while t < cols && tet.is_present(r, t) {
                    t += 1;
                }
                svg.rect(f.x0 + start as f64 * cw, y, (t - start) as f64 * cw, ch, color, None);
            }
        }
    }
    svg.close_group();
    Ok(svg.finish())
}
