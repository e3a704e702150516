use alloc::vec;
use alloc::vec::Vec;

use super::{DecompositionKind, TreeDecomposition};
use crate::bitset::BitSet;
use crate::graph::Graph;

/// Tree decomposition from a min-fill elimination ordering.
///
/// Ties are broken by lowest vertex index. Bags contained in their parent's
/// bag are merged away, and the roots of disconnected parts are chained.
pub fn heuristic_decomposition(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    let mut adj: Vec<BitSet> = (0..n)
        .map(|v| {
            BitSet::from_iter_with_len(
                n,
                g.neighbors(v).iter().map(|&w| w as usize).filter(|&w| w != v),
            )
        })
        .collect();
    let mut alive = BitSet::full(n);
    let mut position = vec![0usize; n];
    let mut bags: Vec<Vec<u32>> = Vec::with_capacity(n);
    let mut order = Vec::with_capacity(n);

    for step in 0..n {
        let v = alive
            .iter()
            .min_by_key(|&v| (fill_in(&adj, v), v))
            .expect("a vertex remains");
        let nbrs: Vec<usize> = adj[v].iter().collect();
        for &a in &nbrs {
            for &b in &nbrs {
                if a != b {
                    adj[a].insert(b);
                }
            }
            adj[a].remove(v);
        }
        alive.remove(v);
        position[v] = step;
        order.push(v);
        let mut bag: Vec<u32> = nbrs.iter().map(|&w| w as u32).collect();
        bag.push(v as u32);
        bag.sort_unstable();
        bags.push(bag);
    }

    // parent of step i: the earliest-eliminated later neighbor
    let mut parent = vec![usize::MAX; n];
    for (i, bag) in bags.iter().enumerate() {
        let v = order[i];
        parent[i] = bag
            .iter()
            .map(|&w| w as usize)
            .filter(|&w| w != v)
            .map(|w| position[w])
            .min()
            .unwrap_or(usize::MAX);
    }

    // merge bags that are subsets of their parent's bag
    let mut keep = vec![true; n];
    let mut target: Vec<usize> = (0..n).collect();
    for i in 0..n {
        let p = parent[i];
        if p != usize::MAX && bags[i].iter().all(|v| bags[p].binary_search(v).is_ok()) {
            keep[i] = false;
            target[i] = p;
        }
    }
    let resolve = |mut i: usize| {
        while !keep[i] {
            i = target[i];
        }
        i
    };
    // kept nodes numbered from the last eliminated one, so node 0 is a root
    let kept: Vec<usize> = (0..n).rev().filter(|&i| keep[i]).collect();
    let mut id = vec![usize::MAX; n];
    for (new, &old) in kept.iter().enumerate() {
        id[old] = new;
    }
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for &i in &kept {
        match parent[i] {
            usize::MAX => roots.push(id[i]),
            p => edges.push((id[resolve(p)], id[i])),
        }
    }
    roots.sort_unstable();
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    let out_bags = kept.iter().map(|&i| bags[i].clone()).collect();
    TreeDecomposition::new(out_bags, edges, DecompositionKind::Tree)
}

fn fill_in(adj: &[BitSet], v: usize) -> usize {
    let nbrs: Vec<usize> = adj[v].iter().collect();
    let mut missing = 0;
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if !adj[a].contains(b) {
                missing += 1;
            }
        }
    }
    missing
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::validate;
    use crate::graph::NamedGraph;

    fn width_of(g: &Graph) -> usize {
        let d = heuristic_decomposition(g);
        assert_eq!(validate(g, &d), Ok(()));
        d.width()
    }

    #[test]
    fn known_widths() {
        assert_eq!(width_of(&NamedGraph::Path(6).build().unwrap()), 1);
        assert_eq!(width_of(&NamedGraph::Clique(5).build().unwrap()), 4);
        assert_eq!(width_of(&NamedGraph::Cycle(5).build().unwrap()), 2);
        let star = Graph::new(5, (1..5).map(|i| (0, i))).unwrap();
        assert_eq!(width_of(&star), 1);
    }

    #[test]
    fn disconnected_and_edgeless() {
        assert_eq!(width_of(&Graph::empty(4)), 0);
        let two = Graph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5)]).unwrap();
        assert_eq!(width_of(&two), 2);
        let d = heuristic_decomposition(&Graph::empty(0));
        assert_eq!(d.node_count(), 0);
    }

    #[test]
    fn named_graphs_validate() {
        for g in [NamedGraph::Petersen, NamedGraph::Brinkmann, NamedGraph::Grotzsch, NamedGraph::K1Star] {
            let g = g.build().unwrap();
            let d = heuristic_decomposition(&g);
            assert_eq!(validate(&g, &d), Ok(()));
        }
    }
}
