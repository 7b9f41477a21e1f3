//! Minimal string builder for the SVG subset the charts use.

use std::fmt::Write;

pub(crate) fn num(x: f64) -> String {
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

pub(crate) fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

pub(crate) struct Svg {
    buf: String,
    depth: usize,
}

impl Svg {
    pub fn new(width: u32, height: u32, title: &str) -> Self {
        let mut buf = String::new();
        let _ = writeln!(
            buf,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(buf, "  <title>{}</title>", escape(title));
        let mut svg = Svg { buf, depth: 1 };
        svg.rect(0.0, 0.0, width as f64, height as f64, "#ffffff", None);
        svg
    }

    fn indent(&mut self) {
        for _ in 0..self.depth {
            self.buf.push_str("  ");
        }
    }

    pub fn open_group(&mut self, class: &str) {
        self.indent();
        let _ = writeln!(self.buf, r#"<g class="{}">"#, escape(class));
        self.depth += 1;
    }

    pub fn close_group(&mut self) {
        self.depth -= 1;
        self.indent();
        self.buf.push_str("</g>\n");
    }

    pub fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, fill: &str, stroke: Option<&str>) {
        self.indent();
        let _ = write!(
            self.buf,
            r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{fill}""#,
            num(x),
            num(y),
            num(w),
            num(h)
        );
        if let Some(s) = stroke {
            let _ = write!(self.buf, r#" stroke="{s}" stroke-width="0.50""#);
        }
        self.buf.push_str("/>\n");
    }

    pub fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, stroke: &str, width: f64) {
        self.indent();
        let _ = writeln!(
            self.buf,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{stroke}" stroke-width="{}"/>"#,
            num(x1),
            num(y1),
            num(x2),
            num(y2),
            num(width)
        );
    }

    pub fn polyline(&mut self, points: &[(f64, f64)], stroke: &str) {
        self.indent();
        self.buf.push_str(r#"<polyline points=""#);
        for (i, (x, y)) in points.iter().enumerate() {
            if i > 0 {
                self.buf.push(' ');
            }
            let _ = write!(self.buf, "{},{}", num(*x), num(*y));
        }
        let _ = writeln!(
            self.buf,
            r#"" fill="none" stroke="{stroke}" stroke-width="2.00"/>"#
        );
    }

    /// `anchor` is one of start, middle, end. `rotate` turns the label
    /// counter-clockwise around its anchor point.
    pub fn text(&mut self, x: f64, y: f64, anchor: &str, content: &str, rotate: bool) {
        self.indent();
        let _ = write!(
            self.buf,
            r#"<text x="{}" y="{}" text-anchor="{anchor}""#,
            num(x),
            num(y)
        );
        if rotate {
            let _ = write!(self.buf, r#" transform="rotate(-90 {} {})""#, num(x), num(y));
        }
        let _ = writeln!(self.buf, ">{}</text>", escape(content));
    }

    pub fn finish(mut self) -> String {
        self.buf.push_str("</svg>\n");
        self.buf
    }
}
