//! Graphviz DOT export.

use std::fmt::Write;

use crate::format::format_normal_form;
use crate::graph::SimpleGraph;
use crate::tree::{BassSerreTree, TreeBall};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT rendering of a simple graph.
pub fn graph_to_dot(graph: &SimpleGraph, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "graph {} {{", quote(name)).unwrap();
    for v in graph.names() {
        writeln!(out, "  {};", quote(v)).unwrap();
    }
    for (u, v) in graph.edges() {
        writeln!(out, "  {} -- {};", quote(graph.name(u)), quote(graph.name(v))).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Tree ball with vertices labelled `side:representative` and edges
/// labelled by their `G_C` coset representative.
pub fn tree_ball_to_dot(tree: &BassSerreTree, ball: &TreeBall) -> String {
    let graph = tree.presentation().graph();
    let mut out = String::new();
    out.push_str("graph \"bass_serre_ball\" {\n");
    if ball.truncated {
        out.push_str("  label=\"truncated: vertex groups have edges beyond the local search\";\n");
    }
    for (i, v) in ball.vertices.iter().enumerate() {
        let label = format!("{}:{}", v.side(), format_normal_form(graph, v.rep()));
        let shape = match v.side() {
            crate::tree::Side::A => "circle",
            crate::tree::Side::B => "box",
        };
        writeln!(out, "  n{i} [label={}, shape={shape}];", quote(&label)).unwrap();
    }
    for e in &ball.edges {
        let label = format_normal_form(graph, e.edge.rep());
        writeln!(out, "  n{} -- n{} [label={}];", e.from, e.to, quote(&label)).unwrap();
    }
    out.push_str("}\n");
    out
}
