use crate::error::Result;
use crate::lattice::{binomial, FuzzyMeasure, SubsetMask};
use crate::transforms::IndexKind;

use super::{f4, Color, Style, StyleConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct OverlayMark {
    pub value: f64,
    pub radius: f64,
    pub color: Color,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayoutVertex {
    pub mask: SubsetMask,
    /// Horizontal offset from the canvas center, in pixels.
    pub x: f64,
    /// Height in `[0, 1]` data units.
    pub y: f64,
    pub label: String,
    pub overlay: Option<OverlayMark>,
    /// Text shown to the left of the vertex.
    pub value_text: String,
    pub value_color: Color,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayoutEdge {
    pub from: SubsetMask,
    pub to: SubsetMask,
    /// Zero-based criterion added along the edge.
    pub criterion: usize,
    /// Marginal contribution `μ(to) - μ(from)`.
    pub delta: f64,
    pub width: f64,
    pub color: Color,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayoutGraph {
    pub n: usize,
    pub style: Style,
    pub width: f64,
    pub height: f64,
    pub margin: f64,
    /// Indexed by mask.
    pub vertices: Vec<LayoutVertex>,
    pub edges: Vec<LayoutEdge>,
}

impl LayoutGraph {
    pub fn vertex(&self, a: SubsetMask) -> &LayoutVertex {
        &self.vertices[a.index()]
    }

    pub fn px(&self, x: f64) -> f64 {
        self.width / 2.0 + x
    }

    /// Height 0 sits on the bottom margin, height 1 on the top margin.
    pub fn py(&self, y: f64) -> f64 {
        self.height - self.margin - y * (self.height - 2.0 * self.margin)
    }
}

/// Horizontal offsets for every subset, indexed by mask.
///
/// Level `r` holds `C(n, r)` vertices spaced `l / C(n, ⌊n/2⌋)` apart and
/// centered. Lower levels go in ascending mask order, upper levels mirror the
/// complements, and at an even middle level each member containing criterion
/// 1 takes slot `k` with its complement in slot `c - 1 - k`.
fn horizontal_positions(n: usize, base_width: f64) -> Vec<f64> {
    let size = 1usize << n;
    let full = SubsetMask((size - 1) as u32);
    let spacing = base_width / binomial(n, n / 2);
    let mut x = vec![0.0; size];
    let slot = |k: usize, count: usize| (k as f64 - (count as f64 - 1.0) / 2.0) * spacing;
    for r in 0..=n {
        let level: Vec<SubsetMask> = (0..size as u32).map(SubsetMask).filter(|a| a.len() == r).collect();
        let count = level.len();
        if 2 * r < n {
            for (k, a) in level.iter().enumerate() {
                x[a.index()] = slot(k, count);
            }
        } else if 2 * r == n {
            let anchored: Vec<SubsetMask> = level.iter().copied().filter(|a| a.contains(0)).collect();
            for (k, a) in anchored.iter().enumerate() {
                let b = SubsetMask(full.0 & !a.0);
                x[a.index()] = slot(k, count);
                x[b.index()] = slot(count - 1 - k, count);
            }
        }
    }
    for a in (0..size as u32).map(SubsetMask).filter(|a| 2 * a.len() > n) {
        x[a.index()] = -x[full.0 as usize & !a.index()];
    }
    x
}

pub fn layout(mu: &FuzzyMeasure, cfg: &StyleConfig) -> Result<LayoutGraph> {
    cfg.check()?;
    let u = mu.universe();
    let n = u.n();
    let xs = horizontal_positions(n, cfg.base_width());
    let overlay = cfg.overlay.map(|kind| kind.compute(mu));

    let vertices = u
        .subsets()
        .map(|a| {
            let y = match cfg.style {
                Style::Topological => a.len() as f64 / n as f64,
                Style::HeightOn => mu.get(a),
            };
            let mark = overlay.as_ref().map(|iv| {
                let value = iv.get(a);
                let color = match iv.kind {
                    IndexKind::ShapleyComprehensive => Color::gray_black(value),
                    _ => Color::diverging(value),
                };
                OverlayMark {
                    value,
                    radius: cfg.overlay_radius * value.abs().min(1.0),
                    color,
                }
            });
            let (text_value, value_color) = match &mark {
                Some(m) => (m.value, m.color),
                None => (mu.get(a), Color::BLACK),
            };
            LayoutVertex {
                mask: a,
                x: xs[a.index()],
                y,
                label: a.label(cfg.labels),
                overlay: mark,
                value_text: f4(text_value),
                value_color,
            }
        })
        .collect();

    let edges = u
        .covering_edges()
        .map(|(a, i)| {
            let to = a.with(i);
            let delta = mu.get(to) - mu.get(a);
            let t = delta.clamp(0.0, 1.0);
            LayoutEdge {
                from: a,
                to,
                criterion: i,
                delta,
                width: cfg.stroke_min + t * (cfg.stroke_max - cfg.stroke_min),
                color: Color::gray_black(t),
            }
        })
        .collect();

    Ok(LayoutGraph {
        n,
        style: cfg.style,
        width: cfg.width,
        height: cfg.height,
        margin: cfg.margin,
        vertices,
        edges,
    })
}
