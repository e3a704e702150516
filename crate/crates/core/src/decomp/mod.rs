//! Tree and path decompositions.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::graph::Graph;

mod heuristic;
mod nice;

pub use heuristic::heuristic_decomposition;
pub use nice::{to_nice, NiceDecomposition, NiceKind, NiceNode};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecompositionKind {
    Tree,
    Path,
}

/// A tree of bags; bag `i` belongs to node `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<u32>>,
    edges: Vec<(usize, usize)>,
    kind: DecompositionKind,
}

/// First violated decomposition condition, with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    BagVertexOutOfRange { bag: usize, vertex: usize },
    TreeEdgeOutOfRange { edge: (usize, usize) },
    NotATree,
    NotAPath,
    VertexUncovered { vertex: usize },
    EdgeUncovered { u: usize, v: usize },
    Disconnected { vertex: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BagVertexOutOfRange { bag, vertex } => {
                write!(f, "bag {bag} contains vertex {vertex} outside the graph")
            }
            Violation::TreeEdgeOutOfRange { edge } => {
                write!(f, "tree edge {edge:?} references a missing bag")
            }
            Violation::NotATree => f.write_str("decomposition nodes do not form a tree"),
            Violation::NotAPath => f.write_str("path decomposition is not a simple path"),
            Violation::VertexUncovered { vertex } => {
                write!(f, "vertex coverage: vertex {vertex} is in no bag")
            }
            Violation::EdgeUncovered { u, v } => {
                write!(f, "edge coverage: edge {u}-{v} is in no bag")
            }
            Violation::Disconnected { vertex } => {
                write!(f, "connectivity: bags containing vertex {vertex} are not connected")
            }
        }
    }
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::InvalidDecomposition(alloc::string::ToString::to_string(&v))
    }
}

impl TreeDecomposition {
    /// Bags are sorted and deduplicated; the tree is not checked here (see [`validate`]).
    pub fn new(bags: Vec<Vec<u32>>, edges: Vec<(usize, usize)>, kind: DecompositionKind) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TreeDecomposition { bags, edges, kind }
    }

    /// Path decomposition with consecutive bags joined.
    pub fn path(bags: Vec<Vec<u32>>) -> Self {
        let edges = (1..bags.len()).map(|i| (i - 1, i)).collect();
        Self::new(bags, edges, DecompositionKind::Path)
    }

    pub fn bags(&self) -> &[Vec<u32>] {
        &self.bags
    }

    pub fn bag(&self, node: usize) -> &[u32] {
        &self.bags[node]
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn kind(&self) -> DecompositionKind {
        self.kind
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Max bag size minus one; 0 for decompositions without vertices.
    pub fn width(&self) -> usize {
        self.max_bag_size().saturating_sub(1)
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
        }
        adj
    }

    /// Checks the tree shape and vertex connectivity, which need no graph.
    pub fn check_structure(&self) -> core::result::Result<(), Violation> {
        let m = self.bags.len();
        if let Some(&edge) = self.edges.iter().find(|&&(a, b)| a >= m || b >= m) {
            return Err(Violation::TreeEdgeOutOfRange { edge });
        }
        if m > 0 {
            if self.edges.len() != m - 1 {
                return Err(Violation::NotATree);
            }
            let adj = self.adjacency();
            let mut seen = vec![false; m];
            seen[0] = true;
            let mut queue = VecDeque::from([0]);
            let mut reached = 1;
            while let Some(a) = queue.pop_front() {
                for &b in &adj[a] {
                    if !seen[b] {
                        seen[b] = true;
                        reached += 1;
                        queue.push_back(b);
                    }
                }
            }
            if reached != m {
                return Err(Violation::NotATree);
            }
            if self.kind == DecompositionKind::Path && adj.iter().any(|l| l.len() > 2) {
                return Err(Violation::NotAPath);
            }
        }
        self.check_connectivity()
    }

    fn check_connectivity(&self) -> core::result::Result<(), Violation> {
        let adj = self.adjacency();
        let max_v = self
            .bags
            .iter()
            .flat_map(|b| b.iter())
            .map(|&v| v as usize + 1)
            .max()
            .unwrap_or(0);
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); max_v];
        for (i, b) in self.bags.iter().enumerate() {
            for &v in b {
                holders[v as usize].push(i);
            }
        }
        let mut mark = vec![usize::MAX; self.bags.len()];
        for (v, nodes) in holders.iter().enumerate() {
            let Some(&start) = nodes.first() else { continue };
            for &a in nodes {
                mark[a] = v;
            }
            // BFS inside the nodes holding v
            let mut reached = 1;
            let mut queue = VecDeque::from([start]);
            mark[start] = usize::MAX - 1 - v;
            while let Some(a) = queue.pop_front() {
                for &b in &adj[a] {
                    if mark[b] == v {
                        mark[b] = usize::MAX - 1 - v;
                        reached += 1;
                        queue.push_back(b);
                    }
                }
            }
            if reached != nodes.len() {
                return Err(Violation::Disconnected { vertex: v });
            }
        }
        Ok(())
    }

    /// Restricts every bag to `vertices` and renumbers them by position.
    pub fn restrict(&self, vertices: &[usize]) -> TreeDecomposition {
        let max = self
            .bags
            .iter()
            .flat_map(|b| b.iter())
            .map(|&v| v as usize + 1)
            .chain(vertices.iter().map(|&v| v + 1))
            .max()
            .unwrap_or(0);
        let mut pos = vec![u32::MAX; max];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i as u32;
        }
        let bags = self
            .bags
            .iter()
            .map(|b| b.iter().map(|&v| pos[v as usize]).filter(|&p| p != u32::MAX).collect())
            .collect();
        TreeDecomposition::new(bags, self.edges.clone(), self.kind)
    }

    /// Adds a new node holding `bag`, attached to `parent`.
    ///
    /// For path decompositions the node is spliced in right after `parent`
    /// (in [`path_order`](Self::path_order)), so the result stays a path.
    pub fn attach_after(&mut self, parent: usize, bag: Vec<u32>) -> usize {
        let next = if self.kind == DecompositionKind::Path {
            let order = self.path_order();
            order
                .iter()
                .position(|&x| x == parent)
                .and_then(|p| order.get(p + 1).copied())
        } else {
            None
        };
        let id = self.bags.len();
        let mut bag = bag;
        bag.sort_unstable();
        bag.dedup();
        self.bags.push(bag);
        match next {
            Some(next) => {
                let pos = self
                    .edges
                    .iter()
                    .position(|&e| e == (parent, next) || e == (next, parent))
                    .expect("consecutive path nodes share an edge");
                self.edges[pos] = (parent, id);
                self.edges.push((id, next));
            }
            None => self.edges.push((parent, id)),
        }
        id
    }

    /// Nodes of a path decomposition in order, starting from the lower-id end.
    pub fn path_order(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let Some(start) = (0..self.bags.len()).find(|&a| adj[a].len() <= 1) else {
            return Vec::new();
        };
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = adj[cur].iter().find(|&&b| b != prev) {
            order.push(next);
            prev = cur;
            cur = next;
        }
        order
    }
}

/// Checks the three decomposition conditions against `g`, reporting the first failure.
pub fn validate(g: &Graph, d: &TreeDecomposition) -> core::result::Result<(), Violation> {
    for (i, b) in d.bags.iter().enumerate() {
        if let Some(&v) = b.iter().find(|&&v| v as usize >= g.n()) {
            return Err(Violation::BagVertexOutOfRange { bag: i, vertex: v as usize });
        }
    }
    d.check_structure()?;
    let mut covered = vec![false; g.n()];
    for b in &d.bags {
        for &v in b {
            covered[v as usize] = true;
        }
    }
    if let Some(vertex) = covered.iter().position(|c| !c) {
        return Err(Violation::VertexUncovered { vertex });
    }
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, b) in d.bags.iter().enumerate() {
        for &v in b {
            holders[v as usize].push(i);
        }
    }
    for (u, v) in g.edges() {
        if u == v {
            continue;
        }
        let hu = &holders[u];
        let shared = hu.iter().any(|a| holders[v].binary_search(a).is_ok());
        if !shared {
            return Err(Violation::EdgeUncovered { u, v });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NamedGraph;

    fn c5_decomposition() -> TreeDecomposition {
        TreeDecomposition::path(vec![vec![0, 1, 4], vec![1, 2, 4], vec![2, 3, 4]])
    }

    #[test]
    fn path_graph_decomposition() {
        let p4 = NamedGraph::Path(4).build().unwrap();
        let d = TreeDecomposition::path(vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
        assert_eq!(validate(&p4, &d), Ok(()));
        assert_eq!(d.width(), 1);
        let missing = TreeDecomposition::path(vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(validate(&p4, &missing), Err(Violation::EdgeUncovered { u: 1, v: 2 }));
    }

    #[test]
    fn c5_decomposition_is_valid() {
        let c5 = NamedGraph::Cycle(5).build().unwrap();
        let d = c5_decomposition();
        assert_eq!(validate(&c5, &d), Ok(()));
        assert_eq!(d.width(), 2);
    }

    #[test]
    fn violations_are_named() {
        let c5 = NamedGraph::Cycle(5).build().unwrap();
        let uncovered = TreeDecomposition::path(vec![vec![0, 1, 4], vec![1, 2, 4]]);
        assert_eq!(validate(&c5, &uncovered), Err(Violation::VertexUncovered { vertex: 3 }));
        let split = TreeDecomposition::path(vec![vec![0, 1, 4], vec![1, 2, 3], vec![3, 4]]);
        assert_eq!(validate(&c5, &split), Err(Violation::Disconnected { vertex: 4 }));
        let cyclic = TreeDecomposition::new(
            vec![vec![0, 1, 4], vec![1, 2, 4], vec![2, 3, 4]],
            vec![(0, 1), (1, 2), (2, 0)],
            DecompositionKind::Tree,
        );
        assert_eq!(validate(&c5, &cyclic), Err(Violation::NotATree));
        let star = TreeDecomposition::new(
            vec![vec![0, 1, 4], vec![1, 2, 4], vec![2, 3, 4], vec![4]],
            vec![(1, 0), (1, 2), (1, 3)],
            DecompositionKind::Path,
        );
        assert_eq!(validate(&c5, &star), Err(Violation::NotAPath));
        let text = alloc::string::ToString::to_string(&Violation::EdgeUncovered { u: 1, v: 2 });
        assert!(text.contains("edge coverage"));
    }

    #[test]
    fn attach_after_keeps_path_shape() {
        let mut d = c5_decomposition();
        let id = d.attach_after(0, vec![0, 1, 4, 7]);
        assert_eq!(id, 3);
        assert_eq!(d.path_order(), vec![0, 3, 1, 2]);
        assert!(d.check_structure().is_ok());
    }

    #[test]
    fn restrict_to_component() {
        let d = c5_decomposition();
        let r = d.restrict(&[2, 3]);
        assert_eq!(r.bags(), &[vec![], vec![0], vec![0, 1]]);
    }
}
