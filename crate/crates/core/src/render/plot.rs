use std::fmt::Write;

use crate::analysis::{median, Dendrogram, FeatureMatrix};
use crate::error::{Error, Result};

use super::svg::svg_open;
use super::{escape_xml, f4, Color};

#[derive(Debug, Clone, PartialEq)]
pub struct PlotConfig {
    pub width: f64,
    pub height: f64,
    pub margin: f64,
    pub title: Option<String>,
    pub x_label: Option<String>,
    pub y_label: Option<String>,
}

impl Default for PlotConfig {
    fn default() -> Self {
        PlotConfig {
            width: 800.0,
            height: 600.0,
            margin: 50.0,
            title: None,
            x_label: None,
            y_label: None,
        }
    }
}

struct Frame {
    left: f64,
    right: f64,
    top: f64,
    bottom: f64,
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn new(cfg: &PlotConfig, x: (f64, f64), y: (f64, f64)) -> Result<Self> {
        if !(cfg.width > 2.0 * cfg.margin && cfg.height > 2.0 * cfg.margin && cfg.margin >= 0.0) {
            return Err(Error::arg("plot canvas must be larger than twice the margin"));
        }
        for (lo, hi) in [x, y] {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::arg(format!("invalid axis range [{lo}, {hi}]")));
            }
        }
        Ok(Frame {
            left: cfg.margin,
            right: cfg.width - cfg.margin,
            top: cfg.margin,
            bottom: cfg.height - cfg.margin,
            x,
            y,
        })
    }

    fn px(&self, v: f64) -> f64 {
        self.left + (v - self.x.0) / (self.x.1 - self.x.0) * (self.right - self.left)
    }

    fn py(&self, v: f64) -> f64 {
        self.bottom - (v - self.y.0) / (self.y.1 - self.y.0) * (self.bottom - self.top)
    }

    fn axes(&self, out: &mut String, cfg: &PlotConfig) {
        let _ = writeln!(
            out,
            r##"<line class="axis" x1="{l}" y1="{b}" x2="{r}" y2="{b}" stroke="#000000"/>"##,
            l = f4(self.left),
            r = f4(self.right),
            b = f4(self.bottom)
        );
        let _ = writeln!(
            out,
            r##"<line class="axis" x1="{l}" y1="{t}" x2="{l}" y2="{b}" stroke="#000000"/>"##,
            l = f4(self.left),
            t = f4(self.top),
            b = f4(self.bottom)
        );
        for k in 0..=4 {
            let t = k as f64 / 4.0;
            let xv = self.x.0 + t * (self.x.1 - self.x.0);
            let yv = self.y.0 + t * (self.y.1 - self.y.0);
            let _ = writeln!(
                out,
                r#"<text class="tick" x="{}" y="{}" font-size="10" text-anchor="middle">{}</text>"#,
                f4(self.px(xv)),
                f4(self.bottom + 14.0),
                f4(xv)
            );
            let _ = writeln!(
                out,
                r#"<text class="tick" x="{}" y="{}" font-size="10" text-anchor="end">{}</text>"#,
                f4(self.left - 4.0),
                f4(self.py(yv) + 3.0),
                f4(yv)
            );
        }
        if let Some(title) = &cfg.title {
            let _ = writeln!(
                out,
                r#"<text class="title" x="{}" y="{}" font-size="14" text-anchor="middle">{}</text>"#,
                f4((self.left + self.right) / 2.0),
                f4(self.top / 2.0),
                escape_xml(title)
            );
        }
        if let Some(label) = &cfg.x_label {
            let _ = writeln!(
                out,
                r#"<text class="axis-label" x="{}" y="{}" font-size="12" text-anchor="middle">{}</text>"#,
                f4((self.left + self.right) / 2.0),
                f4(self.bottom + 32.0),
                escape_xml(label)
            );
        }
        if let Some(label) = &cfg.y_label {
            let _ = writeln!(
                out,
                r#"<text class="axis-label" x="{}" y="{}" font-size="12" text-anchor="start">{}</text>"#,
                f4(4.0),
                f4(self.top - 8.0),
                escape_xml(label)
            );
        }
    }
}

fn polyline(frame: &Frame, ys: &[f64]) -> String {
    let xs = |k: usize| if ys.len() == 1 { 0.5 } else { k as f64 / (ys.len() - 1) as f64 };
    ys.iter()
        .enumerate()
        .map(|(k, y)| format!("{},{}", f4(frame.px(xs(k))), f4(frame.py(*y))))
        .collect::<Vec<_>>()
        .join(" ")
}

/// One gray `polyline.series` per series and a red `polyline.median` through
/// the pointwise medians. The y axis covers `[0, 1]` and any data outside it.
pub fn plot_lines(series: &[Vec<f64>], cfg: &PlotConfig) -> Result<String> {
    let len = series.first().map_or(0, Vec::len);
    if series.is_empty() || len == 0 {
        return Err(Error::arg("line plot needs at least one non-empty series"));
    }
    if series.iter().any(|s| s.len() != len) {
        return Err(Error::arg("all series must have the same length"));
    }
    if series.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::arg("series contain non-finite values"));
    }
    let lo = series.iter().flatten().copied().fold(0.0, f64::min);
    let hi = series.iter().flatten().copied().fold(1.0, f64::max);
    let frame = Frame::new(cfg, (0.0, 1.0), (lo, hi))?;
    let medians = (0..len)
        .map(|k| median(&series.iter().map(|s| s[k]).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;

    let mut out = String::new();
    svg_open(&mut out, cfg.width, cfg.height);
    frame.axes(&mut out, cfg);
    for s in series {
        let _ = writeln!(
            out,
            r#"<polyline class="series" points="{}" fill="none" stroke="{}" stroke-opacity="0.5" stroke-width="1.0000"/>"#,
            polyline(&frame, s),
            Color::GRAY
        );
    }
    let _ = writeln!(
        out,
        r#"<polyline class="median" points="{}" fill="none" stroke="{}" stroke-width="2.0000"/>"#,
        polyline(&frame, &medians),
        Color::RED
    );
    out.push_str("</svg>\n");
    Ok(out)
}

/// One labelled `circle.point` per point inside the given axis ranges.
pub fn plot_scatter(
    points: &[(f64, f64)],
    labels: &[String],
    x_range: (f64, f64),
    y_range: (f64, f64),
    cfg: &PlotConfig,
) -> Result<String> {
    if points.is_empty() {
        return Err(Error::arg("scatter plot needs at least one point"));
    }
    if labels.len() != points.len() {
        return Err(Error::arg(format!("{} labels for {} points", labels.len(), points.len())));
    }
    let frame = Frame::new(cfg, x_range, y_range)?;
    let mut out = String::new();
    svg_open(&mut out, cfg.width, cfg.height);
    frame.axes(&mut out, cfg);
    for ((x, y), label) in points.iter().zip(labels) {
        let (px, py) = (frame.px(*x), frame.py(*y));
        let _ = writeln!(
            out,
            r#"<circle class="point" cx="{}" cy="{}" r="3.0000" fill="{}"/>"#,
            f4(px),
            f4(py),
            Color::BLUE
        );
        let _ = writeln!(
            out,
            r#"<text class="point-label" x="{}" y="{}" font-size="9">{}</text>"#,
            f4(px + 4.0),
            f4(py - 4.0),
            escape_xml(label)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Cells colored white to blue by per-column min-max scaling, rows in the
/// dendrogram's leaf order, and the merge tree drawn on the left.
pub fn plot_heatmap(fm: &FeatureMatrix, dendrogram: &Dendrogram, cfg: &PlotConfig) -> Result<String> {
    let m = fm.rows();
    if m == 0 || fm.cols() == 0 {
        return Err(Error::arg("heatmap needs a non-empty matrix"));
    }
    if dendrogram.leaves() != m || dendrogram.leaf_order.len() != m {
        return Err(Error::arg(format!(
            "dendrogram has {} leaves, matrix has {m} rows",
            dendrogram.leaves()
        )));
    }
    let frame = Frame::new(cfg, (0.0, 1.0), (0.0, 1.0))?;
    let inner = frame.right - frame.left;
    let tree_left = frame.left;
    let tree_right = frame.left + 0.25 * inner;
    let cells_right = frame.right - 0.15 * inner;
    let cell_w = (cells_right - tree_right) / fm.cols() as f64;
    let row_h = (frame.bottom - frame.top) / m as f64;

    let mut row_y = vec![0.0; m];
    for (pos, &r) in dendrogram.leaf_order.iter().enumerate() {
        row_y[r] = frame.top + (pos as f64 + 0.5) * row_h;
    }

    let ranges: Vec<(f64, f64)> = (0..fm.cols())
        .map(|j| {
            let col = fm.column(j);
            (col.iter().copied().fold(f64::INFINITY, f64::min), col.iter().copied().fold(f64::NEG_INFINITY, f64::max))
        })
        .collect();

    let mut out = String::new();
    svg_open(&mut out, cfg.width, cfg.height);
    if let Some(title) = &cfg.title {
        let _ = writeln!(
            out,
            r#"<text class="title" x="{}" y="{}" font-size="14" text-anchor="middle">{}</text>"#,
            f4(cfg.width / 2.0),
            f4(frame.top / 2.0),
            escape_xml(title)
        );
    }
    for (j, name) in fm.columns.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<text class="column-label" x="{}" y="{}" font-size="10" text-anchor="middle">{}</text>"#,
            f4(tree_right + (j as f64 + 0.5) * cell_w),
            f4(frame.top - 6.0),
            escape_xml(name)
        );
    }
    for &r in &dendrogram.leaf_order {
        let top = row_y[r] - row_h / 2.0;
        for (j, &v) in fm.data[r].iter().enumerate() {
            let (lo, hi) = ranges[j];
            let t = if hi > lo { (v - lo) / (hi - lo) } else { 0.0 };
            let _ = writeln!(
                out,
                r#"<rect class="cell" data-row="{}" x="{}" y="{}" width="{}" height="{}" fill="{}"/>"#,
                r,
                f4(tree_right + j as f64 * cell_w),
                f4(top),
                f4(cell_w),
                f4(row_h),
                Color::WHITE.lerp(Color::BLUE, t)
            );
        }
        let _ = writeln!(
            out,
            r#"<text class="row-label" x="{}" y="{}" font-size="9">{}</text>"#,
            f4(cells_right + 4.0),
            f4(row_y[r] + 3.0),
            escape_xml(&fm.row_ids[r])
        );
    }

    let top_height = dendrogram.merges.iter().map(|mg| mg.height).fold(0.0, f64::max);
    let hx = |h: f64| {
        if top_height > 0.0 {
            tree_right - h / top_height * (tree_right - tree_left)
        } else {
            tree_right
        }
    };
    let mut node: Vec<(f64, f64)> = (0..m).map(|r| (tree_right, row_y[r])).collect();
    for mg in &dendrogram.merges {
        let (xl, yl) = node[mg.left];
        let (xr, yr) = node[mg.right];
        let x = hx(mg.height);
        let _ = writeln!(
            out,
            r##"<path class="tree" d="M{} {} H{} V{} H{}" fill="none" stroke="#000000" stroke-width="1.0000"/>"##,
            f4(xl),
            f4(yl),
            f4(x),
            f4(yr),
            f4(xr)
        );
        node.push((x, (yl + yr) / 2.0));
    }
    out.push_str("</svg>\n");
    Ok(out)
}
