//! Plain-text edge lists and Graphviz DOT export.
//!
//! Edge-list format: an `n m` header, then `m` lines `u v`, all 0-based.
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use super::{Graph, VertexSubset};
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line_no, header) = lines
        .next()
        .ok_or_else(|| Error::EdgeList("missing `n m` header".into()))?;
    let [n, m] = parse_pair(line_no, header)?;

    let mut edges = Vec::with_capacity(m);
    for (line_no, line) in lines {
        let [u, v] = parse_pair(line_no, line)?;
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::EdgeList(format!(
            "header declares {m} edges, found {}",
            edges.len()
        )));
    }
    let g = Graph::from_edge_list(n, &edges)?;
    if g.edge_count() != m {
        return Err(Error::EdgeList(format!(
            "{} repeated edge line(s)",
            m - g.edge_count()
        )));
    }
    Ok(g)
}

fn parse_pair(line_no: usize, line: &str) -> Result<[usize; 2]> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let parse = |t: &str| {
        t.parse::<usize>()
            .map_err(|_| Error::EdgeList(format!("line {line_no}: bad integer `{t}`")))
    };
    match fields.as_slice() {
        [a, b] => Ok([parse(a)?, parse(b)?]),
        _ => Err(Error::EdgeList(format!(
            "line {line_no}: expected two integers, got `{line}`"
        ))),
    }
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Undirected DOT graph; design vertices are drawn as filled double circles.
pub fn to_dot(g: &Graph, design: Option<&VertexSubset>) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    if let Some(w) = design {
        for &v in w.members() {
            writeln!(out, "  {v} [shape=doublecircle, style=filled, fillcolor=lightgray];").unwrap();
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, generalized_petersen};

    #[test]
    fn round_trip() {
        let g = generalized_petersen(5, 2).unwrap();
        let text = to_edge_list(&g);
        assert!(text.starts_with("10 15\n"));
        assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_edge_list("# triangle\n\n3 3\n0 1\n# inner\n1 2\n2 0\n").unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_edge_list(""), Err(Error::EdgeList(_))));
        assert!(matches!(parse_edge_list("3 2\n0 1\n"), Err(Error::EdgeList(_))));
        assert!(matches!(parse_edge_list("3 2\n0 1\n1 x\n"), Err(Error::EdgeList(_))));
        assert!(matches!(parse_edge_list("3 3\n0 1\n1 2\n2 1\n"), Err(Error::EdgeList(_))));
        assert!(matches!(parse_edge_list("3 2\n0 1\n1 3\n"), Err(Error::VertexOutOfRange { .. })));
        assert!(matches!(parse_edge_list("4 2\n0 1\n2 3\n"), Err(Error::Disconnected { .. })));
    }

    #[test]
    fn dot_marks_design() {
        let g = cycle(4).unwrap();
        let w = VertexSubset::new(4, [0, 2]).unwrap();
        let dot = to_dot(&g, Some(&w));
        assert_eq!(dot.matches("doublecircle").count(), 2);
        assert_eq!(dot.matches(" -- ").count(), 4);
        assert!(!to_dot(&g, None).contains("doublecircle"));
    }
}
