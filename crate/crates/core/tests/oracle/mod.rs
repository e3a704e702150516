//! Brute-force reference implementations, independent of the library's search code.

#![allow(dead_code)]

use proptest::prelude::*;
use twhom_core::Graph;

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let mut m = vec![vec![false; g.n()]; g.n()];
    for (u, v) in g.edges() {
        m[u][v] = true;
        m[v][u] = true;
    }
    m
}

/// Counts homomorphisms by trying every map.
pub fn count_homs(g: &Graph, h: &Graph) -> u128 {
    let (n, k) = (g.n(), h.n());
    if n == 0 {
        return 1;
    }
    if k == 0 {
        return 0;
    }
    let hm = adjacency(h);
    let edges = g.edges();
    let mut f = vec![0usize; n];
    let mut count = 0;
    loop {
        if edges.iter().all(|&(u, v)| hm[f[u]][f[v]]) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            f[i] += 1;
            if f[i] < k {
                break;
            }
            f[i] = 0;
            i += 1;
        }
    }
}

/// Smallest k with a proper k-coloring, by trying every coloring; `None` with loops.
pub fn chromatic(g: &Graph) -> Option<usize> {
    if g.has_loops() {
        return None;
    }
    (0..=g.n()).find(|&k| {
        let clique = Graph::new(k, (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b)))).unwrap();
        count_homs(g, &clique) > 0
    })
}

/// Isomorphism by trying every permutation.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let (am, bm) = (adjacency(a), adjacency(b));
    let n = a.n();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        if (0..n).all(|u| (0..n).all(|v| am[u][v] == bm[p[u]][p[v]])) {
            return true;
        }
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return false;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

pub fn clique(k: usize) -> Graph {
    Graph::new(k, (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b)))).unwrap()
}

pub fn cycle(k: usize) -> Graph {
    Graph::new(k, (0..k).map(|i| (i, (i + 1) % k))).unwrap()
}

/// Random loopless graphs with `lo..=hi` vertices.
pub fn graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(proptest::bool::weighted(0.4), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::new(n, edges).unwrap()
        })
    })
}

/// Random graphs that may carry loops.
pub fn looped_graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (graph(lo, hi), proptest::collection::vec(proptest::bool::weighted(0.15), hi)).prop_map(|(g, loops)| {
        let mut edges = g.edges();
        edges.extend((0..g.n()).filter(|&v| loops[v]).map(|v| (v, v)));
        Graph::new(g.n(), edges).unwrap()
    })
}
