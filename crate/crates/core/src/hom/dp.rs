use alloc::boxed::Box;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{HomResult, HomStats, Homomorphism, Mode};
use crate::bitset::BitSet;
use crate::decomp::{validate, NiceDecomposition, NiceKind};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;

/// Table entry weight: presence for decisions, exact counts for counting.
trait Weight: Clone {
    fn one() -> Self;
    fn add(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
}

impl Weight for () {
    fn one() -> Self {}
    fn add(&mut self, _: &Self) {}
    fn mul(&self, _: &Self) -> Self {}
}

impl Weight for BigUint {
    fn one() -> Self {
        One::one()
    }
    fn add(&mut self, other: &Self) {
        *self += other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

type Table<W> = HashMap<Box<[u32]>, W>;
/// Root weight and, when kept, every node's table.
type RunOutput<W> = (Option<W>, Vec<Option<Table<W>>>);

/// Sum over nodes of `base^|bag|`: the size of the full per-bag state spaces.
pub fn state_space(d: &NiceDecomposition, base: usize) -> u128 {
    d.nodes()
        .iter()
        .map(|n| (base as u128).saturating_pow(n.bag.len() as u32))
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// Dynamic programming over a nice tree decomposition of the source.
///
/// The table of a node maps assignments of its bag into `h` to the number of
/// homomorphisms of the subgraph below it extending that assignment (or to
/// presence only, when deciding). Introduce nodes check edges between the new
/// vertex and the bag, forget nodes project, join nodes intersect and
/// multiply. No state outside `|h|^|bag|` is ever created.
pub fn hom_dp(
    g: &Graph,
    h: &Graph,
    d: &NiceDecomposition,
    mode: Mode,
    limits: &Limits,
) -> Result<HomResult> {
    if !d.check_roles() {
        return Err(Error::InvalidDecomposition("node roles are not nice".to_string()));
    }
    validate(g, &d.as_tree_decomposition())?;
    let mut stats = HomStats {
        dp_state_cells: state_space(d, h.n()),
        table_base: h.n(),
        ..HomStats::default()
    };
    let mut result = HomResult::empty(false);
    result.provenance.push("dp".to_string());
    match mode {
        Mode::Decide => {
            let (root, _) = run::<()>(g, h, d, limits, false, &mut stats)?;
            result.exists = root.is_some();
        }
        Mode::FindOne => {
            let (root, tables) = run::<()>(g, h, d, limits, true, &mut stats)?;
            result.exists = root.is_some();
            if result.exists {
                result.witness = Some(reconstruct(g, d, &tables));
            }
        }
        Mode::Count => {
            let (root, _) = run::<BigUint>(g, h, d, limits, false, &mut stats)?;
            let count = root.unwrap_or_else(BigUint::zero);
            result.exists = !count.is_zero();
            result.count = Some(count);
        }
        Mode::Enumerate => {
            return Err(Error::Precondition(
                "enumeration is served by the backtracking solver".to_string(),
            ))
        }
    }
    result.stats = stats;
    Ok(result)
}

fn run<W: Weight>(
    g: &Graph,
    h: &Graph,
    d: &NiceDecomposition,
    limits: &Limits,
    keep: bool,
    stats: &mut HomStats,
) -> Result<RunOutput<W>> {
    let k = h.n();
    let tadj: Vec<BitSet> = (0..k)
        .map(|a| BitSet::from_iter_with_len(k, h.neighbors(a).iter().map(|&b| b as usize)))
        .collect();
    let looped = BitSet::from_iter_with_len(k, (0..k).filter(|&a| h.has_loop(a)));
    let everything = BitSet::full(k);
    let nodes = d.nodes();
    let mut tables: Vec<Option<Table<W>>> = vec![None; nodes.len()];
    // how many parents still need each table (0 or 1 in a tree)
    for (i, node) in nodes.iter().enumerate() {
        if limits.interrupted() {
            return Err(Error::Inconclusive("dynamic programming interrupted".to_string()));
        }
        let take = |tables: &mut Vec<Option<Table<W>>>, c: usize| -> Table<W> {
            if keep {
                tables[c].clone().expect("child table")
            } else {
                tables[c].take().expect("child table")
            }
        };
        let table: Table<W> = match node.kind {
            NiceKind::Leaf => {
                let mut t = Table::new();
                t.insert(Vec::new().into_boxed_slice(), W::one());
                t
            }
            NiceKind::Introduce(v) => {
                let child = take(&mut tables, node.children[0]);
                let pos = node.bag.binary_search(&v).expect("introduced vertex in bag");
                let bag_nbrs: Vec<usize> = node
                    .bag
                    .iter()
                    .enumerate()
                    .filter(|&(p, &u)| p != pos && g.has_edge(v as usize, u as usize))
                    .map(|(p, _)| if p < pos { p } else { p - 1 })
                    .collect();
                let base = if g.has_loop(v as usize) { &looped } else { &everything };
                let mut out = Table::with_capacity(child.len());
                let mut cand = BitSet::new(k);
                for (key, w) in child.iter() {
                    cand.clone_from(base);
                    for &p in &bag_nbrs {
                        cand.intersect_with(&tadj[key[p] as usize]);
                    }
                    for t in cand.iter() {
                        let mut nk = Vec::with_capacity(key.len() + 1);
                        nk.extend_from_slice(&key[..pos]);
                        nk.push(t as u32);
                        nk.extend_from_slice(&key[pos..]);
                        out.insert(nk.into_boxed_slice(), w.clone());
                    }
                    if out.len() > limits.table_limit {
                        return Err(Error::TableLimit { limit: limits.table_limit });
                    }
                }
                out
            }
            NiceKind::Forget(v) => {
                let c = node.children[0];
                let pos = nodes[c].bag.binary_search(&v).expect("forgotten vertex in child bag");
                let child = take(&mut tables, c);
                let mut out: Table<W> = Table::with_capacity(child.len());
                for (key, w) in child.iter() {
                    let mut nk = Vec::with_capacity(key.len() - 1);
                    nk.extend_from_slice(&key[..pos]);
                    nk.extend_from_slice(&key[pos + 1..]);
                    out.entry(nk.into_boxed_slice())
                        .and_modify(|x| x.add(w))
                        .or_insert_with(|| w.clone());
                }
                out
            }
            NiceKind::Join => {
                let a = take(&mut tables, node.children[0]);
                let b = take(&mut tables, node.children[1]);
                let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
                small
                    .into_iter()
                    .filter_map(|(key, w)| large.get(&key).map(|x| (key, w.mul(x))))
                    .collect()
            }
        };
        stats.dp_stored_states += table.len() as u64;
        tables[i] = Some(table);
    }
    let root = tables[d.root()]
        .as_ref()
        .and_then(|t| t.get(&[][..]).cloned());
    Ok((root, tables))
}

fn reconstruct<W>(g: &Graph, d: &NiceDecomposition, tables: &[Option<Table<W>>]) -> Homomorphism {
    let nodes = d.nodes();
    let mut mapping = vec![u32::MAX; g.n()];
    let mut stack: Vec<(usize, Vec<u32>)> = vec![(d.root(), Vec::new())];
    while let Some((i, key)) = stack.pop() {
        let node = &nodes[i];
        match node.kind {
            NiceKind::Leaf => {}
            NiceKind::Introduce(v) => {
                let pos = node.bag.binary_search(&v).expect("in bag");
                let mut ck = key.clone();
                ck.remove(pos);
                stack.push((node.children[0], ck));
            }
            NiceKind::Forget(v) => {
                let c = node.children[0];
                let pos = nodes[c].bag.binary_search(&v).expect("in child bag");
                let table = tables[c].as_ref().expect("kept table");
                let mut ck = key.clone();
                ck.insert(pos, 0);
                let t = (0..u32::MAX)
                    .find(|&t| {
                        ck[pos] = t;
                        table.contains_key(&ck[..])
                    })
                    .expect("forgotten state has a witness");
                mapping[v as usize] = t;
                stack.push((c, ck));
            }
            NiceKind::Join => {
                stack.push((node.children[0], key.clone()));
                stack.push((node.children[1], key));
            }
        }
    }
    Homomorphism::new(mapping)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{heuristic_decomposition, to_nice, TreeDecomposition};
    use crate::graph::NamedGraph;

    fn g(id: &str) -> Graph {
        id.parse::<NamedGraph>().unwrap().build().unwrap()
    }

    fn nice_of(x: &Graph) -> NiceDecomposition {
        to_nice(&heuristic_decomposition(x)).unwrap()
    }

    #[test]
    fn c5_to_k3_with_path_decomposition() {
        let c5 = g("cycle:5");
        let d = TreeDecomposition::path(vec![vec![0, 1, 4], vec![1, 2, 4], vec![2, 3, 4]]);
        let nice = to_nice(&d).unwrap();
        let r = hom_dp(&c5, &g("clique:3"), &nice, Mode::FindOne, &Limits::default()).unwrap();
        assert!(r.exists);
        assert!(r.witness.unwrap().is_valid(&c5, &g("clique:3")));
        let count = hom_dp(&c5, &g("clique:3"), &nice, Mode::Count, &Limits::default()).unwrap();
        // chromatic polynomial of C5 at 3: (3-1)^5 - (3-1) = 30
        assert_eq!(count.count, Some(BigUint::from(30u32)));
    }

    #[test]
    fn k4_to_k3_is_no() {
        let k4 = g("clique:4");
        let r = hom_dp(&k4, &g("clique:3"), &nice_of(&k4), Mode::Decide, &Limits::default()).unwrap();
        assert!(!r.exists);
    }

    #[test]
    fn state_space_and_base_reported() {
        let c5 = g("cycle:5");
        let nice = nice_of(&c5);
        let r = hom_dp(&c5, &g("clique:3"), &nice, Mode::Decide, &Limits::default()).unwrap();
        assert_eq!(r.stats.table_base, 3);
        assert_eq!(r.stats.dp_state_cells, state_space(&nice, 3));
        assert!(r.stats.dp_stored_states > 0);
    }

    #[test]
    fn rejects_foreign_decomposition() {
        let c5 = g("cycle:5");
        let nice = nice_of(&g("path:5"));
        let err = hom_dp(&c5, &g("clique:3"), &nice, Mode::Decide, &Limits::default()).unwrap_err();
        assert!(matches!(err, Error::InvalidDecomposition(_)));
    }

    #[test]
    fn table_limit_is_enforced() {
        let e = Graph::empty(6);
        let limits = Limits { table_limit: 10, ..Limits::default() };
        // a single bag holding all six vertices
        let d = TreeDecomposition::path(vec![(0..6).collect()]);
        let err = hom_dp(&e, &g("clique:3"), &to_nice(&d).unwrap(), Mode::Count, &limits).unwrap_err();
        assert_eq!(err, Error::TableLimit { limit: 10 });
    }

    #[test]
    fn loops_in_source() {
        let star = g("k1star");
        let nice = nice_of(&star);
        assert!(!hom_dp(&star, &g("clique:3"), &nice, Mode::Decide, &Limits::default()).unwrap().exists);
        let looped = Graph::new(2, [(0, 1), (1, 1)]).unwrap();
        let r = hom_dp(&star, &looped, &nice, Mode::Count, &Limits::default()).unwrap();
        assert_eq!(r.count, Some(BigUint::from(1u32)));
    }
}
