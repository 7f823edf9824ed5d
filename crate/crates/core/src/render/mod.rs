//! Lattice drawings and charts as SVG and Graphviz DOT text.
//!
//! All emitted coordinates and values use four decimal places, and output is a
//! pure function of its inputs.

mod dot;
mod layout;
mod plot;
mod svg;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::LabelMode;
use crate::transforms::IndexKind;

pub use dot::render_dot;
pub use layout::{layout, LayoutEdge, LayoutGraph, LayoutVertex, OverlayMark};
pub use plot::{plot_heatmap, plot_lines, plot_scatter, PlotConfig};
pub use svg::render_svg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Style {
    /// Height is `|A| / n`.
    #[default]
    Topological,
    /// Height is `μ(A)`.
    HeightOn,
}

impl FromStr for Style {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "topological" | "topo" => Ok(Style::Topological),
            "height" | "height_on" | "height-on" => Ok(Style::HeightOn),
            other => Err(Error::arg(format!("unknown style `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StyleConfig {
    pub style: Style,
    pub overlay: Option<IndexKind>,
    pub width: f64,
    pub height: f64,
    pub margin: f64,
    pub stroke_min: f64,
    pub stroke_max: f64,
    /// Radius drawn for an overlay value of magnitude 1.
    pub overlay_radius: f64,
    pub labels: LabelMode,
    /// Print each marginal contribution next to its edge.
    pub edge_values: bool,
}

impl Default for StyleConfig {
    fn default() -> Self {
        StyleConfig {
            style: Style::Topological,
            overlay: None,
            width: 800.0,
            height: 600.0,
            margin: 40.0,
            stroke_min: 0.5,
            stroke_max: 4.0,
            overlay_radius: 16.0,
            labels: LabelMode::Canonical,
            edge_values: false,
        }
    }
}

impl StyleConfig {
    /// Horizontal length `l` given to the widest level.
    pub fn base_width(&self) -> f64 {
        self.width - 2.0 * self.margin
    }

    pub fn check(&self) -> Result<()> {
        let finite = [self.width, self.height, self.margin, self.stroke_min, self.stroke_max, self.overlay_radius]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::arg("style values must be finite"));
        }
        if self.margin < 0.0 || self.width <= 2.0 * self.margin || self.height <= 2.0 * self.margin {
            return Err(Error::arg("canvas must be larger than twice the margin"));
        }
        if !(0.0 <= self.stroke_min && self.stroke_min < self.stroke_max) {
            return Err(Error::arg(format!(
                "stroke range [{}, {}] must satisfy 0 <= min < max",
                self.stroke_min, self.stroke_max
            )));
        }
        if self.overlay_radius < 0.0 {
            return Err(Error::arg("overlay radius must be non-negative"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Color(pub u8, pub u8, pub u8);

impl Color {
    pub const RED: Color = Color(0xFF, 0x00, 0x00);
    pub const GRAY: Color = Color(0x80, 0x80, 0x80);
    pub const GREEN: Color = Color(0x00, 0x80, 0x00);
    pub const BLACK: Color = Color(0x00, 0x00, 0x00);
    pub const WHITE: Color = Color(0xFF, 0xFF, 0xFF);
    pub const BLUE: Color = Color(0x08, 0x30, 0x6B);

    /// Linear RGB interpolation, `t` clamped to `[0, 1]`.
    pub fn lerp(self, other: Color, t: f64) -> Color {
        let t = if t.is_nan() { 0.0 } else { t.clamp(0.0, 1.0) };
        let mix = |a: u8, b: u8| (a as f64 + (b as f64 - a as f64) * t).round() as u8;
        Color(mix(self.0, other.0), mix(self.1, other.1), mix(self.2, other.2))
    }

    /// Gray at 0 to black at 1.
    pub fn gray_black(t: f64) -> Color {
        Color::GRAY.lerp(Color::BLACK, t)
    }

    /// Red at -1, gray at 0, green at +1.
    pub fn diverging(v: f64) -> Color {
        if v < 0.0 {
            Color::GRAY.lerp(Color::RED, -v)
        } else {
            Color::GRAY.lerp(Color::GREEN, v)
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{:02X}{:02X}{:02X}", self.0, self.1, self.2)
    }
}

/// Four decimals, without a negative zero.
pub(crate) fn f4(v: f64) -> String {
    let s = format!("{v:.4}");
    if s == "-0.0000" {
        "0.0000".to_string()
    } else {
        s
    }
}

pub(crate) fn escape_xml(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
