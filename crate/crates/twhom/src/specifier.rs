//! Graph specifiers used on the command line.
//!
//! * named graphs: `clique:k`, `cycle:n`, `path:n`, `kneser:n,k`, `grotzsch`,
//!   `brinkmann`, `chvatal`, `petersen`, `bowtie`, `k1star`;
//! * `product:A,B,…` (direct product) and `union:A,B,…` (disjoint union);
//! * `@path` reads a DIMACS-like or PACE `.gr` file.
//!
//! Arguments of `product:`/`union:` are split at commas; a purely numeric piece
//! belongs to the previous argument (so `product:kneser:5,2,clique:3` has two
//! factors). A nested `product:` or `union:` takes every remaining argument.

use std::fs;

use anyhow::{bail, Context, Result};
use twhom_core::graph::{direct_product, disjoint_union, NamedGraph};
use twhom_core::{Graph, Limits};

use crate::formats::parse_graph;

pub fn parse_specifier(spec: &str, limits: &Limits) -> Result<Graph> {
    let spec = spec.trim();
    if let Some(path) = spec.strip_prefix('@') {
        let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        return parse_graph(&text).with_context(|| format!("parsing {path}"));
    }
    for (prefix, is_product) in [("product:", true), ("union:", false)] {
        if let Some(rest) = spec.strip_prefix(prefix) {
            let args = split_args(rest);
            if args.len() < 2 {
                bail!("`{spec}` needs at least two arguments");
            }
            let parts = args
                .iter()
                .map(|a| parse_specifier(a, limits))
                .collect::<Result<Vec<_>>>()?;
            let refs: Vec<&Graph> = parts.iter().collect();
            return Ok(if is_product {
                direct_product(&refs, limits)?
            } else {
                disjoint_union(&refs).graph
            });
        }
    }
    let named: NamedGraph = spec.parse().with_context(|| format!("unknown graph `{spec}`"))?;
    Ok(named.build()?)
}

fn split_args(rest: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut pieces = rest.split(',');
    while let Some(p) = pieces.next() {
        if p.starts_with("product:") || p.starts_with("union:") {
            let tail: Vec<&str> = std::iter::once(p).chain(pieces.by_ref()).collect();
            out.push(tail.join(","));
            break;
        }
        match out.last_mut() {
            Some(last) if !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit()) => {
                last.push(',');
                last.push_str(p);
            }
            _ => out.push(p.to_string()),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn numeric_pieces_rejoin() {
        assert_eq!(split_args("kneser:5,2,clique:3"), ["kneser:5,2", "clique:3"]);
        assert_eq!(split_args("clique:3,product:cycle:5,path:2"), ["clique:3", "product:cycle:5,path:2"]);
    }

    #[test]
    fn builds_composites() {
        let l = Limits::default();
        let p = parse_specifier("product:clique:3,cycle:5", &l).unwrap();
        assert_eq!((p.n(), p.edge_count()), (15, 30));
        assert!(p.labels().is_some());
        let u = parse_specifier("union:clique:3,grotzsch", &l).unwrap();
        assert_eq!(u.n(), 14);
        assert_eq!(parse_specifier("kneser:5,2", &l).unwrap().n(), 10);
        assert!(parse_specifier("nonsense", &l).is_err());
        assert!(parse_specifier("product:clique:3", &l).is_err());
    }

    #[test]
    fn reads_files() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        write!(f, "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        let g = parse_specifier(&format!("@{}", f.path().display()), &Limits::default()).unwrap();
        assert_eq!(g.edge_count(), 3);
    }
}
