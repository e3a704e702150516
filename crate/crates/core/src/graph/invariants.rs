use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::Graph;
use crate::bitset::BitSet;
use crate::error::Result;
use crate::limits::{Limits, NodeMeter};

/// Structural invariants used as homomorphism filters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphInvariants {
    pub omega: usize,
    /// `None` when the graph has a loop (no proper coloring exists).
    pub chi: Option<usize>,
    /// `None` means infinite (bipartite graph).
    pub odd_girth: Option<usize>,
    pub bipartite: bool,
    pub connected: bool,
    pub ramified: bool,
}

pub fn invariants(g: &Graph, limits: &Limits) -> Result<GraphInvariants> {
    let odd_girth = odd_girth(g);
    Ok(GraphInvariants {
        omega: clique_number(g, limits)?,
        chi: chromatic_number(g, limits)?,
        bipartite: odd_girth.is_none(),
        odd_girth,
        connected: g.is_connected(),
        ramified: is_ramified(g),
    })
}

fn loopless_adjacency(g: &Graph) -> Vec<BitSet> {
    (0..g.n())
        .map(|v| {
            BitSet::from_iter_with_len(
                g.n(),
                g.neighbors(v).iter().map(|&w| w as usize).filter(|&w| w != v),
            )
        })
        .collect()
}

/// Length of a shortest odd cycle; `Some(1)` with a loop, `None` if bipartite.
///
/// From every start vertex, an edge joining two vertices of the same BFS
/// layer `d` closes an odd walk of length `2d + 1`; the minimum over all
/// starts is the odd girth.
pub fn odd_girth(g: &Graph) -> Option<usize> {
    if g.has_loops() {
        return Some(1);
    }
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; g.n()];
    for s in 0..g.n() {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if best.is_some_and(|b| 2 * dist[u] + 1 >= b) {
                break;
            }
            for &w in g.neighbors(u) {
                let w = w as usize;
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                } else if dist[w] == dist[u] {
                    let len = 2 * dist[u] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// No vertex's open neighborhood is contained in another's.
pub(crate) fn is_ramified(g: &Graph) -> bool {
    let adj: Vec<BitSet> = (0..g.n())
        .map(|v| BitSet::from_iter_with_len(g.n(), g.neighbors(v).iter().map(|&w| w as usize)))
        .collect();
    for u in 0..g.n() {
        for v in 0..g.n() {
            if u != v && adj[u].is_subset(&adj[v]) {
                return false;
            }
        }
    }
    true
}

/// Exact clique number by branch and bound with a greedy coloring bound.
/// Loops are ignored.
pub fn clique_number(g: &Graph, limits: &Limits) -> Result<usize> {
    let adj = loopless_adjacency(g);
    let mut best = 0;
    let mut meter = NodeMeter::default();
    let all = BitSet::full(g.n());
    expand_clique(&adj, 0, all, &mut best, &mut meter, limits)?;
    Ok(best)
}

fn expand_clique(
    adj: &[BitSet],
    size: usize,
    mut cand: BitSet,
    best: &mut usize,
    meter: &mut NodeMeter,
    limits: &Limits,
) -> Result<()> {
    meter.tick(limits, "clique number")?;
    if cand.is_empty() {
        *best = (*best).max(size);
        return Ok(());
    }
    let (order, bounds) = greedy_color_order(adj, &cand);
    for (v, bound) in order.into_iter().zip(bounds).rev() {
        if size + bound <= *best {
            return Ok(());
        }
        let mut next = cand.clone();
        next.intersect_with(&adj[v]);
        expand_clique(adj, size + 1, next, best, meter, limits)?;
        cand.remove(v);
    }
    Ok(())
}

/// Vertices of `cand` sorted by greedy color class, with the running color
/// count as an upper bound on any clique among a prefix.
fn greedy_color_order(adj: &[BitSet], cand: &BitSet) -> (Vec<usize>, Vec<usize>) {
    let mut left = cand.clone();
    let mut order = Vec::new();
    let mut bounds = Vec::new();
    let mut color = 0;
    while !left.is_empty() {
        color += 1;
        let mut avail = left.clone();
        while let Some(v) = avail.first() {
            avail.remove(v);
            avail.difference_with(&adj[v]);
            left.remove(v);
            order.push(v);
            bounds.push(color);
        }
    }
    (order, bounds)
}

/// Exact chromatic number by DSATUR branch and bound.
///
/// Branching picks the uncolored vertex of maximum saturation, then maximum
/// uncolored degree, then lowest index. Returns `None` for graphs with loops.
pub fn chromatic_number(g: &Graph, limits: &Limits) -> Result<Option<usize>> {
    if g.has_loops() {
        return Ok(None);
    }
    let n = g.n();
    if n == 0 {
        return Ok(Some(0));
    }
    let lower = clique_number(g, limits)?;
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().map(|&w| w as usize).collect())
        .collect();
    let mut state = Dsatur {
        adj: &adj,
        color: vec![usize::MAX; n],
        // counts[v][c] = number of neighbors of v colored c
        counts: vec![vec![0u32; n + 1]; n],
        sat: vec![0; n],
        best: n + 1,
        lower,
        meter: NodeMeter::default(),
        limits,
    };
    state.search(0)?;
    Ok(Some(state.best))
}

struct Dsatur<'a> {
    adj: &'a [Vec<usize>],
    color: Vec<usize>,
    counts: Vec<Vec<u32>>,
    sat: Vec<usize>,
    best: usize,
    lower: usize,
    meter: NodeMeter,
    limits: &'a Limits,
}

impl Dsatur<'_> {
    fn pick(&self) -> Option<usize> {
        let mut pick: Option<(usize, usize, usize)> = None;
        for v in 0..self.color.len() {
            if self.color[v] != usize::MAX {
                continue;
            }
            let deg = self.adj[v]
                .iter()
                .filter(|&&w| self.color[w] == usize::MAX)
                .count();
            let key = (self.sat[v], deg);
            if pick.is_none_or(|(s, d, _)| key > (s, d)) {
                pick = Some((key.0, key.1, v));
            }
        }
        pick.map(|p| p.2)
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        for &w in self.adj[v].iter() {
            self.counts[w][c] += 1;
            if self.counts[w][c] == 1 {
                self.sat[w] += 1;
            }
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.color[v] = usize::MAX;
        for &w in self.adj[v].iter() {
            self.counts[w][c] -= 1;
            if self.counts[w][c] == 0 {
                self.sat[w] -= 1;
            }
        }
    }

    fn search(&mut self, used: usize) -> Result<bool> {
        self.meter.tick(self.limits, "chromatic number")?;
        if used >= self.best {
            return Ok(false);
        }
        let Some(v) = self.pick() else {
            self.best = used;
            return Ok(self.best <= self.lower);
        };
        for c in 0..=used.min(self.best - 2) {
            if self.counts[v][c] != 0 {
                continue;
            }
            self.assign(v, c);
            let done = self.search(used.max(c + 1))?;
            self.unassign(v, c);
            if done {
                return Ok(true);
            }
            if used >= self.best {
                break;
            }
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NamedGraph;

    fn inv(g: NamedGraph) -> GraphInvariants {
        invariants(&g.build().unwrap(), &Limits::default()).unwrap()
    }

    #[test]
    fn brinkmann_invariants() {
        let i = inv(NamedGraph::Brinkmann);
        assert_eq!(i.chi, Some(4));
        assert_eq!(i.odd_girth, Some(5));
        assert_eq!(i.omega, 2);
        assert!(i.connected && i.ramified);
    }

    #[test]
    fn grotzsch_invariants() {
        let i = inv(NamedGraph::Grotzsch);
        assert_eq!((i.omega, i.chi, i.odd_girth), (2, Some(4), Some(5)));
    }

    #[test]
    fn chvatal_invariants() {
        let i = inv(NamedGraph::Chvatal);
        assert_eq!((i.omega, i.chi, i.odd_girth), (2, Some(4), Some(5)));
    }

    #[test]
    fn path_is_not_ramified() {
        assert!(!inv(NamedGraph::Path(3)).ramified);
        assert!(inv(NamedGraph::Cycle(5)).ramified);
    }

    #[test]
    fn bipartite_and_loops() {
        let c6 = inv(NamedGraph::Cycle(6));
        assert!(c6.bipartite);
        assert_eq!((c6.chi, c6.odd_girth), (Some(2), None));
        let star = inv(NamedGraph::K1Star);
        assert_eq!((star.chi, star.odd_girth, star.bipartite), (None, Some(1), false));
        assert_eq!(inv(NamedGraph::Clique(5)).chi, Some(5));
        assert_eq!(inv(NamedGraph::Petersen).chi, Some(3));
        assert_eq!(inv(NamedGraph::Kneser(7, 3)).chi, Some(3));
    }

    #[test]
    fn budget_exhaustion_is_inconclusive() {
        let g = NamedGraph::Brinkmann.build().unwrap();
        let err = chromatic_number(&g, &Limits::default().with_node_budget(3)).unwrap_err();
        assert!(err.is_inconclusive());
    }
}
