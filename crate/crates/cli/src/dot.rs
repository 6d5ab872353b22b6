//! Graphviz export. One DOT edge per parallel copy, colored by class.

use std::fmt::Write;

use arborize_core::DecompositionCertificate;

use crate::json::{classes_of, Graph};

const PALETTE: [&str; 12] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
    "#393b79", "#637939",
];

pub fn to_dot(graph: &Graph, cert: Option<&DecompositionCertificate>) -> String {
    let (keyword, arrow, n) = match graph {
        Graph::Undirected(g) => ("graph", "--", g.n()),
        Graph::Directed(d) => ("digraph", "->", d.n()),
    };
    let mults: Vec<usize> = match graph {
        Graph::Undirected(g) => g.edges().iter().map(|e| e.mult).collect(),
        Graph::Directed(d) => d.arcs().iter().map(|a| a.mult).collect(),
    };
    let mut out = format!("{keyword} G {{\n");
    for v in 0..n {
        let _ = writeln!(out, "  {v};");
    }
    for (i, (u, v)) in classes_of(graph).into_iter().enumerate() {
        for copy in 0..mults[i] {
            match cert.and_then(|c| c.assignment.get(i)).and_then(|cls| cls.get(copy)) {
                Some(&class) => {
                    let color = PALETTE[class % PALETTE.len()];
                    let _ = writeln!(out, "  {u} {arrow} {v} [color=\"{color}\", label=\"{class}\"];");
                }
                None => {
                    let _ = writeln!(out, "  {u} {arrow} {v};");
                }
            }
        }
    }
    out.push_str("}\n");
    out
}
