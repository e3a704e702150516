use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::Graph;
use crate::bitset::BitSet;

/// Checks that `map` is a bijection from `a` onto `b` preserving edges and non-edges.
pub fn is_isomorphism(a: &Graph, b: &Graph, map: &[usize]) -> bool {
    if a.n() != b.n() || map.len() != a.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut seen = vec![false; b.n()];
    for &m in map {
        if m >= b.n() || core::mem::replace(&mut seen[m], true) {
            return false;
        }
    }
    a.edges().into_iter().all(|(u, v)| b.has_edge(map[u], map[v]))
}

/// Joint color refinement of two graphs so that colors are comparable.
fn refine(a: &Graph, b: &Graph) -> (Vec<u32>, Vec<u32>) {
    let graphs = [a, b];
    let mut colors: [Vec<u32>; 2] = [
        (0..a.n()).map(|v| a.degree(v) as u32 * 2 + a.has_loop(v) as u32).collect(),
        (0..b.n()).map(|v| b.degree(v) as u32 * 2 + b.has_loop(v) as u32).collect(),
    ];
    let mut classes = 0;
    loop {
        let mut sigs: [Vec<(u32, Vec<u32>)>; 2] = [Vec::new(), Vec::new()];
        for (gi, g) in graphs.iter().enumerate() {
            for v in 0..g.n() {
                let mut nb: Vec<u32> = g.neighbors(v).iter().map(|&w| colors[gi][w as usize]).collect();
                nb.sort_unstable();
                sigs[gi].push((colors[gi][v], nb));
            }
        }
        let mut ids: BTreeMap<&(u32, Vec<u32>), u32> = BTreeMap::new();
        for s in sigs[0].iter().chain(sigs[1].iter()) {
            ids.entry(s).or_insert(0);
        }
        for (i, (_, id)) in ids.iter_mut().enumerate() {
            *id = i as u32;
        }
        let next: [Vec<u32>; 2] = [
            sigs[0].iter().map(|s| ids[s]).collect(),
            sigs[1].iter().map(|s| ids[s]).collect(),
        ];
        let count = ids.len();
        colors = next;
        if count == classes {
            return (colors[0].clone(), colors[1].clone());
        }
        classes = count;
    }
}

/// Finds an isomorphism `a -> b` (as `map[v_a] = v_b`), or `None`.
///
/// Color refinement prunes candidate images; the remaining search is a
/// backtracking over a connectivity-first vertex order. The result is
/// deterministic for a given input order.
pub fn isomorphic(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return None;
    }
    let n = a.n();
    if n == 0 {
        return Some(Vec::new());
    }
    let (ca, cb) = refine(a, b);
    let mut hist_a = ca.clone();
    let mut hist_b = cb.clone();
    hist_a.sort_unstable();
    hist_b.sort_unstable();
    if hist_a != hist_b {
        return None;
    }
    let mut class_size = BTreeMap::new();
    for &c in &ca {
        *class_size.entry(c).or_insert(0usize) += 1;
    }

    // static order: most already-ordered neighbors, then rarest color, then index
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (usize::MAX - links[v], class_size[&ca[v]], v))
            .expect("vertex left");
        placed[v] = true;
        order.push(v);
        for &w in a.neighbors(v) {
            links[w as usize] += 1;
        }
    }

    let adj_b: Vec<BitSet> = (0..n)
        .map(|v| BitSet::from_iter_with_len(n, b.neighbors(v).iter().map(|&w| w as usize)))
        .collect();
    let mut search = IsoSearch {
        a,
        adj_b: &adj_b,
        ca: &ca,
        cb: &cb,
        order: &order,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    search.extend(0).then_some(search.map)
}

struct IsoSearch<'a> {
    a: &'a Graph,
    adj_b: &'a [BitSet],
    ca: &'a [u32],
    cb: &'a [u32],
    order: &'a [usize],
    map: Vec<usize>,
    used: Vec<bool>,
}

impl IsoSearch<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        let Some(&v) = self.order.get(depth) else {
            return true;
        };
        let n = self.map.len();
        for t in 0..n {
            if self.used[t] || self.cb[t] != self.ca[v] {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&u| {
                self.a.has_edge(u, v) == self.adj_b[self.map[u]].contains(t)
            }) && self.a.has_loop(v) == self.adj_b[t].contains(t);
            if !consistent {
                continue;
            }
            self.map[v] = t;
            self.used[t] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[t] = false;
            self.map[v] = usize::MAX;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{direct_product, NamedGraph};
    use crate::limits::Limits;

    #[test]
    fn relabeled_cycle() {
        let c5 = NamedGraph::Cycle(5).build().unwrap();
        let shuffled = c5.permute(&[3, 0, 4, 1, 2]).unwrap();
        let map = isomorphic(&c5, &shuffled).unwrap();
        assert!(is_isomorphism(&c5, &shuffled, &map));
    }

    #[test]
    fn triangle_vs_path() {
        let k3 = NamedGraph::Clique(3).build().unwrap();
        let p3 = NamedGraph::Path(3).build().unwrap();
        assert!(isomorphic(&k3, &p3).is_none());
    }

    #[test]
    fn product_is_commutative() {
        let k3 = NamedGraph::Clique(3).build().unwrap();
        let c5 = NamedGraph::Cycle(5).build().unwrap();
        let l = Limits::default();
        let ab = direct_product(&[&k3, &c5], &l).unwrap();
        let ba = direct_product(&[&c5, &k3], &l).unwrap();
        let map = isomorphic(&ab, &ba).unwrap();
        assert!(is_isomorphism(&ab, &ba, &map));
    }

    #[test]
    fn petersen_is_kneser_5_2() {
        let p = NamedGraph::Petersen.build().unwrap();
        let k = NamedGraph::Kneser(5, 2).build().unwrap();
        assert!(isomorphic(&p, &k).is_some());
    }

    #[test]
    fn same_degrees_different_graphs() {
        // C6 versus two triangles: identical refinement, not isomorphic
        let c6 = NamedGraph::Cycle(6).build().unwrap();
        let tt = Graph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(isomorphic(&c6, &tt).is_none());
    }
}
