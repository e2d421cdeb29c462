use std::fmt::Write;

use super::Hierarchy;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering. Every node appears once, filled with its family
/// colour; edges point from child to parent.
pub fn to_dot(h: &Hierarchy) -> String {
    let mut out = String::from("digraph hierarchy {\n  rankdir=BT;\n  node [style=filled, shape=box];\n");
    let order = h
        .node_order()
        .unwrap_or_else(|| h.node_ids().map(str::to_string).collect());
    for id in &order {
        let n = h.node(id).expect("ordered ids come from the node set");
        let _ = writeln!(
            out,
            "  {} [label={}, fillcolor={}];",
            quote(&n.id),
            quote(&n.display_name),
            n.family.color()
        );
    }
    for (c, p) in h.edges() {
        let _ = writeln!(out, "  {} -> {};", quote(c), quote(p));
    }
    out.push_str("}\n");
    out
}
