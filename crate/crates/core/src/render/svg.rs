use std::fmt::Write;

use super::{escape_xml, f4, LayoutGraph, StyleConfig};

pub(crate) fn svg_open(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = f4(width),
        h = f4(height)
    );
    let _ = writeln!(
        out,
        r##"<rect class="background" x="0.0000" y="0.0000" width="{}" height="{}" fill="#FFFFFF"/>"##,
        f4(width),
        f4(height)
    );
}

/// One `line.edge` per covering edge, then per vertex a `circle.vertex`, an
/// optional `circle.overlay`, the subset label and the value text on the left.
pub fn render_svg(g: &LayoutGraph, cfg: &StyleConfig) -> String {
    let mut out = String::new();
    svg_open(&mut out, g.width, g.height);
    out.push_str("<g class=\"edges\">\n");
    for e in &g.edges {
        let (a, b) = (g.vertex(e.from), g.vertex(e.to));
        let _ = writeln!(
            out,
            r#"<line class="edge" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="{}"/>"#,
            f4(g.px(a.x)),
            f4(g.py(a.y)),
            f4(g.px(b.x)),
            f4(g.py(b.y)),
            e.color,
            f4(e.width)
        );
        if cfg.edge_values {
            let _ = writeln!(
                out,
                r#"<text class="edge-value" x="{}" y="{}" font-size="8" text-anchor="middle">{}</text>"#,
                f4((g.px(a.x) + g.px(b.x)) / 2.0),
                f4((g.py(a.y) + g.py(b.y)) / 2.0),
                f4(e.delta)
            );
        }
    }
    out.push_str("</g>\n<g class=\"vertices\">\n");
    for v in &g.vertices {
        let (x, y) = (g.px(v.x), g.py(v.y));
        if let Some(mark) = &v.overlay {
            let _ = writeln!(
                out,
                r#"<circle class="overlay" cx="{}" cy="{}" r="{}" fill="{}" fill-opacity="0.6"/>"#,
                f4(x),
                f4(y),
                f4(mark.radius),
                mark.color
            );
        }
        let _ = writeln!(
            out,
            r##"<circle class="vertex" cx="{}" cy="{}" r="3.0000" fill="#000000"/>"##,
            f4(x),
            f4(y)
        );
        let _ = writeln!(
            out,
            r#"<text class="label" x="{}" y="{}" font-size="11" text-anchor="start">{}</text>"#,
            f4(x + 6.0),
            f4(y - 6.0),
            escape_xml(&v.label)
        );
        let _ = writeln!(
            out,
            r#"<text class="value" x="{}" y="{}" font-size="10" text-anchor="end" fill="{}">{}</text>"#,
            f4(x - 6.0),
            f4(y + 4.0),
            v.value_color,
            v.value_text
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}
