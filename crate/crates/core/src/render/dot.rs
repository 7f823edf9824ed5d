use std::fmt::Write;

use crate::lattice::FuzzyMeasure;

use super::{f4, StyleConfig};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Digraph from `∅` upward, one `rank=same` group per cardinality and edges
/// labelled with their marginal contribution.
pub fn render_dot(mu: &FuzzyMeasure, cfg: &StyleConfig) -> String {
    let u = mu.universe();
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for r in 0..=u.n() {
        let ids: Vec<String> = u.subsets().filter(|a| a.len() == r).map(|a| format!("s{}", a.0)).collect();
        let _ = writeln!(out, "  {{ rank=same; {}; }}", ids.join("; "));
    }
    for a in u.subsets() {
        let _ = writeln!(
            out,
            "  s{} [label={}, xlabel={}];",
            a.0,
            quote(&a.label(cfg.labels)),
            quote(&f4(mu.get(a)))
        );
    }
    for (a, i) in u.covering_edges() {
        let b = a.with(i);
        let _ = writeln!(out, "  s{} -> s{} [label={}];", a.0, b.0, quote(&f4(mu.get(b) - mu.get(a))));
    }
    out.push_str("}\n");
    out
}
