//! Graphviz export.

use std::fmt::Write as _;

use dualgraph_core::{Color, Graph};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Undirected DOT graph. White curves are hollow circles, black curves
/// filled ones; labels carry the self-intersection.
pub fn emit_dot(g: &Graph) -> String {
    let mut out = String::from("graph dual {\n  node [shape=circle];\n");
    for v in g.vertices() {
        let style = match v.color {
            Color::White => "style=solid, fillcolor=white",
            Color::Black => "style=filled, fillcolor=black, fontcolor=white",
        };
        let id = escape(&v.id);
        writeln!(out, "  \"{id}\" [label=\"{id}\\n{}\", {style}];", v.self_intersection).unwrap();
    }
    for (a, b) in g.edge_ids() {
        writeln!(out, "  \"{}\" -- \"{}\";", escape(a), escape(b)).unwrap();
    }
    out.push_str("}\n");
    out
}
