//! Text formats: DIMACS-like graphs, PACE `.gr` graphs, PACE `.td` decompositions,
//! and reduction map files.
//!
//! All vertex and bag ids are 1-based on disk and 0-based in memory. Writers
//! produce a canonical form, so parsing and re-writing their output is
//! byte-identical.

use std::fmt::Write as _;

use thiserror::Error;
use twhom_core::decomp::{DecompositionKind, TreeDecomposition};
use twhom_core::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing problem line")]
    MissingHeader,
    #[error("header announces {expected} {what}, found {found}")]
    CountMismatch { what: &'static str, expected: usize, found: usize },
    #[error("unrecognized graph format (expected `p edge` or `p tw`)")]
    UnknownFormat,
    #[error(transparent)]
    Core(#[from] twhom_core::Error),
}

type Result<T> = std::result::Result<T, FormatError>;

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let toks: Vec<&str> = l.split_whitespace().collect();
        (!toks.is_empty() && toks[0] != "c").then_some((i + 1, toks))
    })
}

fn number(line: usize, tok: Option<&&str>) -> Result<usize> {
    let tok = tok.ok_or_else(|| syntax(line, "missing number"))?;
    tok.parse().map_err(|_| syntax(line, format!("`{tok}` is not a number")))
}

fn vertex(line: usize, tok: Option<&&str>, n: usize) -> Result<usize> {
    let v = number(line, tok)?;
    if v == 0 || v > n {
        return Err(syntax(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}


/// Parses `p edge n m` followed by `e u v` lines.
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut n = None;
    let mut declared = 0;
    let mut edges = Vec::new();
    for (line, toks) in content_lines(text) {
        match toks[0] {
            "p" => {
                if n.is_some() {
                    return Err(syntax(line, "second problem line"));
                }
                if toks.get(1) != Some(&"edge") {
                    return Err(syntax(line, "expected `p edge n m`"));
                }
                n = Some(number(line, toks.get(2))?);
                declared = number(line, toks.get(3))?;
            }
            "e" => {
                let n = n.ok_or(FormatError::MissingHeader)?;
                edges.push((vertex(line, toks.get(1), n)?, vertex(line, toks.get(2), n)?));
            }
            other => return Err(syntax(line, format!("unexpected `{other}`"))),
        }
    }
    let n = n.ok_or(FormatError::MissingHeader)?;
    if edges.len() != declared {
        return Err(FormatError::CountMismatch { what: "edges", expected: declared, found: edges.len() });
    }
    Ok(Graph::new(n, edges)?)
}

pub fn write_dimacs(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("p edge {} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

/// Parses a PACE `.gr` file: `p tw n m` followed by `u v` lines.
pub fn parse_pace_gr(text: &str) -> Result<Graph> {
    let mut n = None;
    let mut declared = 0;
    let mut edges = Vec::new();
    for (line, toks) in content_lines(text) {
        if toks[0] == "p" {
            if n.is_some() {
                return Err(syntax(line, "second problem line"));
            }
            if toks.get(1) != Some(&"tw") {
                return Err(syntax(line, "expected `p tw n m`"));
            }
            n = Some(number(line, toks.get(2))?);
            declared = number(line, toks.get(3))?;
            continue;
        }
        let n = n.ok_or(FormatError::MissingHeader)?;
        if toks.len() != 2 {
            return Err(syntax(line, "expected an edge `u v`"));
        }
        edges.push((vertex(line, toks.first(), n)?, vertex(line, toks.get(1), n)?));
    }
    let n = n.ok_or(FormatError::MissingHeader)?;
    if edges.len() != declared {
        return Err(FormatError::CountMismatch { what: "edges", expected: declared, found: edges.len() });
    }
    Ok(Graph::new(n, edges)?)
}

pub fn write_pace_gr(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("p tw {} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "{} {}", u + 1, v + 1);
    }
    out
}

/// Parses either graph format, chosen by the problem line.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let header = content_lines(text).next().ok_or(FormatError::MissingHeader)?;
    match (header.1.first(), header.1.get(1)) {
        (Some(&"p"), Some(&"edge")) => parse_dimacs(text),
        (Some(&"p"), Some(&"tw")) => parse_pace_gr(text),
        _ => Err(FormatError::UnknownFormat),
    }
}

/// Parses a PACE `.td` file: `s td bags max_bag n`, `b i v…` lines, then tree edges `i j`.
///
/// The result is a tree decomposition; use [`as_path`] to reinterpret a path.
pub fn parse_td(text: &str) -> Result<TreeDecomposition> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<u32>>> = Vec::new();
    let mut edges = Vec::new();
    for (line, toks) in content_lines(text) {
        match toks[0] {
            "s" => {
                if header.is_some() {
                    return Err(syntax(line, "second solution line"));
                }
                if toks.get(1) != Some(&"td") {
                    return Err(syntax(line, "expected `s td bags width n`"));
                }
                let nb = number(line, toks.get(2))?;
                header = Some((nb, number(line, toks.get(3))?, number(line, toks.get(4))?));
                bags = vec![None; nb];
            }
            "b" => {
                let (nb, _, n) = header.ok_or(FormatError::MissingHeader)?;
                let id = number(line, toks.get(1))?;
                if id == 0 || id > nb {
                    return Err(syntax(line, format!("bag {id} outside 1..={nb}")));
                }
                let verts = toks[2..]
                    .iter()
                    .map(|t| vertex(line, Some(t), n).map(|v| v as u32))
                    .collect::<Result<Vec<_>>>()?;
                if bags[id - 1].replace(verts).is_some() {
                    return Err(syntax(line, format!("bag {id} defined twice")));
                }
            }
            _ => {
                let (nb, _, _) = header.ok_or(FormatError::MissingHeader)?;
                if toks.len() != 2 {
                    return Err(syntax(line, "expected a tree edge `i j`"));
                }
                let a = vertex(line, toks.first(), nb)?;
                let b = vertex(line, toks.get(1), nb)?;
                edges.push((a, b));
            }
        }
    }
    let (nb, max_bag, _) = header.ok_or(FormatError::MissingHeader)?;
    let defined = bags.iter().filter(|b| b.is_some()).count();
    if defined != nb {
        return Err(FormatError::CountMismatch { what: "bags", expected: nb, found: defined });
    }
    let bags: Vec<Vec<u32>> = bags.into_iter().map(|b| b.unwrap_or_default()).collect();
    let largest = bags.iter().map(Vec::len).max().unwrap_or(0);
    if largest != max_bag {
        return Err(FormatError::CountMismatch { what: "as largest bag size", expected: max_bag, found: largest });
    }
    Ok(TreeDecomposition::new(bags, edges, DecompositionKind::Tree))
}

pub fn write_td(d: &TreeDecomposition, n: usize) -> String {
    let mut out = format!("s td {} {} {}\n", d.node_count(), d.max_bag_size(), n);
    for (i, bag) in d.bags().iter().enumerate() {
        let _ = write!(out, "b {}", i + 1);
        for v in bag {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    for &(a, b) in d.tree_edges() {
        let _ = writeln!(out, "{} {}", a + 1, b + 1);
    }
    out
}

/// The same bags and edges marked as a path decomposition, if the tree is a path.
pub fn as_path(d: &TreeDecomposition) -> Option<TreeDecomposition> {
    let p = TreeDecomposition::new(d.bags().to_vec(), d.tree_edges().to_vec(), DecompositionKind::Path);
    p.check_structure().is_ok().then_some(p)
}

/// One line `x y` per original vertex: `x` in the input graph maps to `y` in the reduced graph.
pub fn write_map(original: &[usize]) -> String {
    let mut out = String::new();
    for (x, &y) in original.iter().enumerate() {
        let _ = writeln!(out, "{} {}", x + 1, y + 1);
    }
    out
}

pub fn parse_map(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (line, toks) in content_lines(text) {
        let x = number(line, toks.first())?;
        let y = number(line, toks.get(1))?;
        if x != out.len() + 1 || y == 0 || toks.len() != 2 {
            return Err(syntax(line, "expected `x y` with consecutive 1-based x"));
        }
        out.push(y - 1);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use twhom_core::graph::NamedGraph;

    #[test]
    fn dimacs_round_trip_is_byte_stable() {
        let g = NamedGraph::Petersen.build().unwrap();
        let text = write_dimacs(&g);
        let back = parse_dimacs(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(write_dimacs(&back), text);
    }

    #[test]
    fn pace_and_loops() {
        let g = Graph::new(3, [(0, 1), (1, 2), (2, 2)]).unwrap();
        let text = write_pace_gr(&g);
        assert_eq!(text, "p tw 3 3\n1 2\n2 3\n3 3\n");
        assert_eq!(parse_graph(&text).unwrap(), g);
        assert_eq!(parse_graph("c hi\np edge 2 1\ne 1 2\n").unwrap().edge_count(), 1);
    }

    #[test]
    fn errors_name_the_line() {
        assert_eq!(
            parse_dimacs("p edge 2 1\ne 1 3\n"),
            Err(FormatError::Syntax { line: 2, message: "vertex 3 outside 1..=2".into() })
        );
        assert!(matches!(parse_dimacs("p edge 2 2\ne 1 2\n"), Err(FormatError::CountMismatch { .. })));
        assert_eq!(parse_graph("e 1 2\n"), Err(FormatError::UnknownFormat));
    }

    #[test]
    fn td_round_trip() {
        let text = "s td 3 3 5\nb 1 1 2 5\nb 2 2 3 5\nb 3 3 4 5\n1 2\n2 3\n";
        let d = parse_td(text).unwrap();
        assert_eq!(write_td(&d, 5), text);
        assert!(as_path(&d).is_some());
        assert!(matches!(parse_td("s td 2 1 2\nb 1 1\n"), Err(FormatError::CountMismatch { .. })));
    }

    #[test]
    fn map_round_trip() {
        let m = vec![0, 1, 2, 7];
        assert_eq!(parse_map(&write_map(&m)).unwrap(), m);
    }
}
