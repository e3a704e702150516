use alloc::vec;
use alloc::vec::Vec;

use super::{DecompositionKind, TreeDecomposition, Violation};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NiceKind {
    /// Empty bag, no children.
    Leaf,
    /// Bag = child bag plus the vertex.
    Introduce(u32),
    /// Bag = child bag minus the vertex.
    Forget(u32),
    /// Two children with bags equal to this one.
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceKind,
    /// Sorted bag contents.
    pub bag: Vec<u32>,
    pub children: Vec<usize>,
}

/// Rooted nice decomposition. Nodes are stored children-first, so a forward
/// scan is a valid bottom-up evaluation order; the root is the last node and
/// has an empty bag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceDecomposition {
    nodes: Vec<NiceNode>,
}

impl NiceDecomposition {
    pub fn nodes(&self) -> &[NiceNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| n.bag.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// The same tree viewed as an ordinary decomposition (for validation).
    pub fn as_tree_decomposition(&self) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|n| n.bag.clone()).collect();
        let edges = self
            .nodes
            .iter()
            .enumerate()
            .flat_map(|(i, n)| n.children.iter().map(move |&c| (i, c)))
            .collect();
        TreeDecomposition::new(bags, edges, DecompositionKind::Tree)
    }

    /// Checks the node-role invariants.
    pub fn check_roles(&self) -> bool {
        self.nodes.iter().enumerate().all(|(i, n)| {
            let child = |k: usize| n.children.get(k).map(|&c| &self.nodes[c].bag);
            if n.children.iter().any(|&c| c >= i) {
                return false;
            }
            match n.kind {
                NiceKind::Leaf => n.children.is_empty() && n.bag.is_empty(),
                NiceKind::Introduce(v) => {
                    n.children.len() == 1 && {
                        let mut b = child(0).unwrap().clone();
                        b.push(v);
                        b.sort_unstable();
                        !child(0).unwrap().contains(&v) && b == n.bag
                    }
                }
                NiceKind::Forget(v) => {
                    n.children.len() == 1 && {
                        let mut b = n.bag.clone();
                        b.push(v);
                        b.sort_unstable();
                        !n.bag.contains(&v) && &b == child(0).unwrap()
                    }
                }
                NiceKind::Join => {
                    n.children.len() == 2
                        && child(0) == Some(&n.bag)
                        && child(1) == Some(&n.bag)
                }
            }
        }) && self.nodes.last().is_some_and(|r| r.bag.is_empty())
    }

    fn push(&mut self, kind: NiceKind, bag: Vec<u32>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }
}

fn with(bag: &[u32], v: u32) -> Vec<u32> {
    let mut b = bag.to_vec();
    let pos = b.binary_search(&v).unwrap_err();
    b.insert(pos, v);
    b
}

fn without(bag: &[u32], v: u32) -> Vec<u32> {
    bag.iter().copied().filter(|&x| x != v).collect()
}

/// Converts a decomposition to nice form rooted at node 0.
///
/// Along each tree edge, vertices leaving the bag are forgotten before new
/// ones are introduced, both in ascending order; siblings are combined by a
/// left-deep chain of binary joins. Width is preserved.
pub fn to_nice(d: &TreeDecomposition) -> Result<NiceDecomposition> {
    d.check_structure()?;
    let mut nice = NiceDecomposition { nodes: Vec::new() };
    if d.node_count() == 0 {
        nice.push(NiceKind::Leaf, Vec::new(), Vec::new());
        return Ok(nice);
    }
    let adj = d.adjacency();
    // iterative DFS from node 0 for a post-order and parent links
    let m = d.node_count();
    let mut parent = vec![usize::MAX; m];
    let mut post = Vec::with_capacity(m);
    let mut stack = vec![(0usize, 0usize)];
    let mut visited = vec![false; m];
    visited[0] = true;
    while let Some(&mut (a, ref mut next)) = stack.last_mut() {
        if let Some(&b) = adj[a].get(*next) {
            *next += 1;
            if !visited[b] {
                visited[b] = true;
                parent[b] = a;
                stack.push((b, 0));
            }
        } else {
            post.push(a);
            stack.pop();
        }
    }
    if post.len() != m {
        return Err(Violation::NotATree.into());
    }

    let mut top = vec![usize::MAX; m];
    for &a in &post {
        let target = d.bag(a);
        let mut tops = Vec::new();
        for &c in adj[a].iter().filter(|&&c| parent[c] == a) {
            let mut cur = top[c];
            let mut bag = d.bag(c).to_vec();
            for &v in d.bag(c) {
                if target.binary_search(&v).is_err() {
                    bag = without(&bag, v);
                    cur = nice.push(NiceKind::Forget(v), bag.clone(), vec![cur]);
                }
            }
            for &v in target {
                if bag.binary_search(&v).is_err() {
                    bag = with(&bag, v);
                    cur = nice.push(NiceKind::Introduce(v), bag.clone(), vec![cur]);
                }
            }
            tops.push(cur);
        }
        top[a] = if tops.is_empty() {
            let mut cur = nice.push(NiceKind::Leaf, Vec::new(), Vec::new());
            let mut bag = Vec::new();
            for &v in target {
                bag = with(&bag, v);
                cur = nice.push(NiceKind::Introduce(v), bag.clone(), vec![cur]);
            }
            cur
        } else {
            let mut acc = tops[0];
            for &t in &tops[1..] {
                acc = nice.push(NiceKind::Join, target.to_vec(), vec![acc, t]);
            }
            acc
        };
    }
    let mut cur = top[0];
    let mut bag = d.bag(0).to_vec();
    for &v in d.bag(0) {
        bag = without(&bag, v);
        cur = nice.push(NiceKind::Forget(v), bag.clone(), vec![cur]);
    }
    debug_assert_eq!(cur, nice.root());
    Ok(nice)
}
