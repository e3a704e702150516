//! Finite undirected graphs with optional loops.
//!
//! Vertices are dense indices `0..n`. A loop at `v` is stored as `v` in its
//! own neighbor list, so `has_edge(v, v)` is the loop test everywhere.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::limits::Limits;

mod invariants;
mod iso;
mod named;

pub use invariants::{chromatic_number, clique_number, invariants, odd_girth, GraphInvariants};
pub use iso::{is_isomorphism, isomorphic};
pub use named::NamedGraph;

/// Coordinate labels of a materialized direct product.
///
/// `coords(v)[i]` is the vertex of factor `i` that `v` projects to. The
/// labels are a bijection between vertex indices and coordinate tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductLabels {
    radices: Vec<u32>,
    coords: Vec<u32>,
}

impl ProductLabels {
    /// Builds labels from per-vertex tuples, checking the bijection.
    pub fn new(radices: Vec<u32>, tuples: &[Vec<u32>]) -> Result<Self> {
        let k = radices.len();
        let total: u128 = radices.iter().map(|&r| r as u128).product();
        if total != tuples.len() as u128 {
            return Err(Error::SizeMismatch(format!(
                "{} labels for a product of size {total}",
                tuples.len()
            )));
        }
        let mut seen = vec![false; tuples.len()];
        let mut coords = Vec::with_capacity(tuples.len() * k);
        for t in tuples {
            if t.len() != k || t.iter().zip(&radices).any(|(&c, &r)| c >= r) {
                return Err(Error::InvalidParameters(format!("label {t:?} out of range")));
            }
            let idx = mixed_radix(&radices, t);
            if core::mem::replace(&mut seen[idx], true) {
                return Err(Error::InvalidParameters(format!("duplicate label {t:?}")));
            }
            coords.extend_from_slice(t);
        }
        Ok(ProductLabels { radices, coords })
    }

    pub fn factor_count(&self) -> usize {
        self.radices.len()
    }

    pub fn radices(&self) -> &[u32] {
        &self.radices
    }

    pub fn coords(&self, v: usize) -> &[u32] {
        let k = self.radices.len();
        &self.coords[v * k..(v + 1) * k]
    }
}

pub(crate) fn mixed_radix(radices: &[u32], digits: &[u32]) -> usize {
    digits
        .iter()
        .zip(radices)
        .fold(0usize, |acc, (&d, &r)| acc * r as usize + d as usize)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    edge_count: usize,
    labels: Option<ProductLabels>,
}

impl Graph {
    /// Builds a graph on `n` vertices; duplicate edges collapse, `(v, v)` is a loop.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            adj[u].push(v as u32);
            if u != v {
                adj[v].push(u as u32);
            }
        }
        Ok(Self::from_adjacency(adj))
    }

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
            labels: None,
        }
    }

    pub(crate) fn from_adjacency(mut adj: Vec<Vec<u32>>) -> Self {
        let mut twice = 0;
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            twice += list.len() + usize::from(list.binary_search(&(v as u32)).is_ok());
        }
        Graph {
            adj,
            edge_count: twice / 2,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: ProductLabels) -> Result<Self> {
        if labels.coords.len() != self.n() * labels.factor_count() {
            return Err(Error::SizeMismatch(format!(
                "labels cover {} vertices, graph has {}",
                labels.coords.len() / labels.factor_count().max(1),
                self.n()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn labels(&self) -> Option<&ProductLabels> {
        self.labels.as_ref()
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges, loops included.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbors of `v`; contains `v` itself iff `v` has a loop.
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    pub fn has_loops(&self) -> bool {
        (0..self.n()).any(|v| self.has_loop(v))
    }

    /// Edges as pairs `(u, v)` with `u <= v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u <= v as usize {
                    out.push((u, v as usize));
                }
            }
        }
        out
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![u32::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i as u32;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&w| {
                        let p = pos[w as usize];
                        (p != u32::MAX).then_some(p)
                    })
                    .collect()
            })
            .collect();
        Graph::from_adjacency(adj)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    let w = w as usize;
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Proper 2-coloring if one exists. Loops make a graph non-bipartite.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n()];
        for s in 0..self.n() {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    let w = w as usize;
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// Applies `perm` (old index to new index) to the vertex set.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n() {
            return Err(Error::SizeMismatch(format!(
                "permutation of length {} for {} vertices",
                perm.len(),
                self.n()
            )));
        }
        let mut seen = vec![false; self.n()];
        for &p in perm {
            if p >= self.n() || core::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParameters(format!("{perm:?} is not a permutation")));
            }
        }
        Graph::new(
            self.n(),
            self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])),
        )
    }
}

/// Direct (tensor) product of `factors`.
///
/// Vertex `v` of the result is the mixed-radix number of its coordinate tuple,
/// first factor most significant. Labelled factors are flattened, so a product
/// of products still carries a single layer of coordinates.
pub fn direct_product(factors: &[&Graph], limits: &Limits) -> Result<Graph> {
    if factors.is_empty() {
        return Err(Error::InvalidParameters("direct product needs a factor".into()));
    }
    if let Some(i) = factors.iter().position(|f| f.n() == 0) {
        return Err(Error::InvalidParameters(format!("factor {i} is empty")));
    }
    let total: u128 = factors.iter().map(|f| f.n() as u128).product();
    limits.check_vertices(total)?;
    let total = total as usize;
    let sizes: Vec<u32> = factors.iter().map(|f| f.n() as u32).collect();

    let mut adj = Vec::with_capacity(total);
    let mut digits = vec![0u32; factors.len()];
    for _ in 0..total {
        let lists: Vec<&[u32]> = factors
            .iter()
            .zip(&digits)
            .map(|(f, &d)| f.neighbors(d as usize))
            .collect();
        let mut nbrs = Vec::new();
        if lists.iter().all(|l| !l.is_empty()) {
            let mut pick = vec![0u32; lists.len()];
            loop {
                let idx = pick
                    .iter()
                    .zip(&lists)
                    .zip(&sizes)
                    .fold(0usize, |acc, ((&p, l), &r)| {
                        acc * r as usize + l[p as usize] as usize
                    });
                nbrs.push(idx as u32);
                if !advance(&mut pick, |i| lists[i].len()) {
                    break;
                }
            }
        }
        adj.push(nbrs);
        advance(&mut digits, |i| sizes[i] as usize);
    }
    let graph = Graph::from_adjacency(adj);

    let mut radices = Vec::new();
    for f in factors {
        match f.labels() {
            Some(l) => radices.extend_from_slice(l.radices()),
            None => radices.push(f.n() as u32),
        }
    }
    let width = radices.len();
    let mut coords = Vec::with_capacity(total * width);
    let mut digits = vec![0u32; factors.len()];
    for _ in 0..total {
        for (f, &d) in factors.iter().zip(&digits) {
            match f.labels() {
                Some(l) => coords.extend_from_slice(l.coords(d as usize)),
                None => coords.push(d),
            }
        }
        advance(&mut digits, |i| sizes[i] as usize);
    }
    Ok(Graph {
        labels: Some(ProductLabels { radices, coords }),
        ..graph
    })
}

/// Increments a mixed-radix counter (last digit fastest). Returns `false` on wrap.
pub(crate) fn advance(digits: &mut [u32], radix: impl Fn(usize) -> usize) -> bool {
    for i in (0..digits.len()).rev() {
        if ((digits[i] + 1) as usize) < radix(i) {
            digits[i] += 1;
            return true;
        }
        digits[i] = 0;
    }
    false
}

/// Result of [`disjoint_union`]: the union plus the part each vertex came from.
#[derive(Clone, Debug)]
pub struct DisjointUnion {
    pub graph: Graph,
    /// `part[v]` is the index of the input graph containing `v`.
    pub part: Vec<u32>,
    /// `offsets[i]` is the index of the first vertex of part `i`.
    pub offsets: Vec<usize>,
}

pub fn disjoint_union(parts: &[&Graph]) -> DisjointUnion {
    let mut adj = Vec::new();
    let mut part = Vec::new();
    let mut offsets = Vec::with_capacity(parts.len());
    for (i, g) in parts.iter().enumerate() {
        let off = adj.len() as u32;
        offsets.push(off as usize);
        for v in 0..g.n() {
            adj.push(g.neighbors(v).iter().map(|&w| w + off).collect());
            part.push(i as u32);
        }
    }
    DisjointUnion {
        graph: Graph::from_adjacency(adj),
        part,
        offsets,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        NamedGraph::Clique(n).build().unwrap()
    }

    #[test]
    fn build_collapses_duplicates_and_records_loops() {
        let g = Graph::new(3, [(0, 1), (1, 0), (1, 2), (2, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(2, 1));
        let star = Graph::new(1, [(0, 0)]).unwrap();
        assert!(star.has_loop(0));
        assert_eq!(star.edge_count(), 1);
        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(c4.is_bipartite());
    }

    #[test]
    fn build_rejects_out_of_range_endpoint() {
        assert_eq!(
            Graph::new(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn product_with_k1_is_edgeless() {
        let p = direct_product(&[&k(3), &k(1)], &Limits::default()).unwrap();
        assert_eq!(p.n(), 3);
        assert_eq!(p.edge_count(), 0);
    }

    #[test]
    fn k2_squared_is_two_disjoint_edges() {
        let p = direct_product(&[&k(2), &k(2)], &Limits::default()).unwrap();
        assert_eq!(p.edge_count(), 2);
        assert_eq!(p.components().len(), 2);
    }

    #[test]
    fn k3_times_c5_shape() {
        let c5 = NamedGraph::Cycle(5).build().unwrap();
        let p = direct_product(&[&k(3), &c5], &Limits::default()).unwrap();
        assert_eq!(p.n(), 15);
        assert!((0..15).all(|v| p.degree(v) == 4));
        assert!(p.is_connected());
        let l = p.labels().unwrap();
        assert_eq!(l.radices(), &[3, 5]);
        assert_eq!(l.coords(7), &[1, 2]);
    }

    #[test]
    fn nested_products_flatten_labels() {
        let c5 = NamedGraph::Cycle(5).build().unwrap();
        let inner = direct_product(&[&k(3), &c5], &Limits::default()).unwrap();
        let outer = direct_product(&[&inner, &k(2)], &Limits::default()).unwrap();
        let l = outer.labels().unwrap();
        assert_eq!(l.radices(), &[3, 5, 2]);
        assert_eq!(l.coords(15), &[1, 2, 1]);
    }

    #[test]
    fn product_respects_vertex_limit() {
        let limits = Limits::default().with_vertex_limit(100);
        let err = direct_product(&[&k(11), &k(11)], &limits).unwrap_err();
        assert!(matches!(err, Error::VertexLimit { requested: 121, .. }));
    }

    #[test]
    fn disjoint_union_shifts_indices() {
        let grotzsch = NamedGraph::Grotzsch.build().unwrap();
        let u = disjoint_union(&[&k(3), &grotzsch]);
        assert_eq!(u.graph.n(), 14);
        assert_eq!(u.graph.components().len(), 2);
        assert_eq!(u.offsets, vec![0, 3]);
        assert_eq!(u.part[3], 1);
        let two = disjoint_union(&[&k(1), &k(1)]);
        assert_eq!((two.graph.n(), two.graph.edge_count()), (2, 0));
    }

    #[test]
    fn induced_subgraph_keeps_order() {
        let g = NamedGraph::Cycle(5).build().unwrap();
        let s = g.induced_subgraph(&[4, 0, 1]);
        assert_eq!(s.edges(), vec![(0, 1), (1, 2)]);
    }
}
