//! Endomorphisms, cores, homomorphic equivalence and incomparability.

use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::error::Result;
use crate::graph::{chromatic_number, clique_number, odd_girth, Graph};
use crate::hom::{hom_backtrack, hom_solve, HomQuery, Homomorphism, Mode, SolveOptions};
use crate::limits::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoreVerdict {
    IsCore,
    NotCore,
}

/// Outcome of one "avoid vertex `v`" endomorphism search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvoidSearch {
    pub vertex: usize,
    /// Endomorphism whose image misses `vertex`, if one exists.
    pub witness: Option<Homomorphism>,
    pub search_nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreCertificate {
    pub verdict: CoreVerdict,
    /// Non-surjective endomorphism, present iff not a core.
    pub witness: Option<Homomorphism>,
    /// Vertex set of the core, when it was computed.
    pub core: Option<Vec<usize>>,
    /// Per-vertex searches in vertex order; all failed when the graph is a core.
    pub searches: Vec<AvoidSearch>,
}

impl CoreCertificate {
    pub fn is_core(&self) -> bool {
        self.verdict == CoreVerdict::IsCore
    }

    pub fn search_nodes(&self) -> u64 {
        self.searches.iter().map(|s| s.search_nodes).sum()
    }

    /// Combines per-vertex searches (in any order) into a certificate.
    ///
    /// The witness is taken from the lowest vertex that has one.
    pub fn from_searches(mut searches: Vec<AvoidSearch>) -> Self {
        searches.sort_by_key(|s| s.vertex);
        let witness = searches.iter().find_map(|s| s.witness.clone());
        CoreCertificate {
            verdict: if witness.is_some() { CoreVerdict::NotCore } else { CoreVerdict::IsCore },
            witness,
            core: None,
            searches,
        }
    }
}

/// Searches an endomorphism of `h` whose image avoids `v`.
///
/// "Avoid `v`" is the list `V(h) \ {v}` on every vertex.
pub fn avoid_vertex(h: &Graph, v: usize, limits: &Limits) -> Result<AvoidSearch> {
    let mut allowed = BitSet::full(h.n());
    allowed.remove(v);
    let q = HomQuery::new(h, h, Mode::FindOne)
        .with_lists(alloc::vec![allowed; h.n()])
        .with_limits(limits.clone());
    let r = hom_backtrack(&q)?;
    Ok(AvoidSearch { vertex: v, witness: r.witness, search_nodes: r.stats.search_nodes })
}

/// Tests whether every endomorphism of `h` is an automorphism.
///
/// Runs [`avoid_vertex`] for each vertex in order and stops at the first hit.
pub fn is_core(h: &Graph, limits: &Limits) -> Result<CoreCertificate> {
    let mut searches = Vec::with_capacity(h.n());
    for v in 0..h.n() {
        let s = avoid_vertex(h, v, limits)?;
        let found = s.witness.is_some();
        searches.push(s);
        if found {
            break;
        }
    }
    Ok(CoreCertificate::from_searches(searches))
}

/// A core of `g` with the retraction that maps `g` onto it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreResult {
    pub core: Graph,
    /// Vertices of `g` spanning the core, ascending.
    pub vertices: Vec<usize>,
    /// Homomorphism `g -> core` (indices into `core`).
    pub retraction: Homomorphism,
}

/// Computes the core by removing removable vertices one at a time, lowest first.
///
/// A vertex that cannot be avoided stays unavoidable in every smaller retract,
/// so a single ascending pass suffices.
pub fn core_of(g: &Graph, limits: &Limits) -> Result<CoreResult> {
    let mut vertices: Vec<usize> = (0..g.n()).collect();
    let mut current = g.clone().without_labels();
    let mut retraction: Vec<u32> = (0..g.n() as u32).collect();
    let mut i = 0;
    while i < vertices.len() {
        let s = avoid_vertex(&current, i, limits)?;
        let Some(f) = s.witness else {
            i += 1;
            continue;
        };
        // renumber into current minus i
        let shift = |t: u32| if t as usize > i { t - 1 } else { t };
        for r in retraction.iter_mut() {
            *r = shift(f.mapping[*r as usize]);
        }
        vertices.remove(i);
        let keep: Vec<usize> = (0..current.n()).filter(|&x| x != i).collect();
        current = current.induced_subgraph(&keep);
    }
    Ok(CoreResult { core: current, vertices, retraction: Homomorphism::new(retraction) })
}

/// Homomorphisms in both directions, when they exist.
pub fn hom_equivalent(a: &Graph, b: &Graph, limits: &Limits) -> Result<Option<(Homomorphism, Homomorphism)>> {
    let opts = SolveOptions::new(Mode::FindOne).with_limits(limits.clone());
    let Some(ab) = hom_solve(a, b, None, &opts)?.witness else {
        return Ok(None);
    };
    let Some(ba) = hom_solve(b, a, None, &opts)?.witness else {
        return Ok(None);
    };
    Ok(Some((ab, ba)))
}

/// Certifies `a ↛ b` from clique number, chromatic number or odd girth.
fn filtered_out(a: &Graph, b: &Graph, limits: &Limits) -> Result<bool> {
    if a.has_loops() || b.has_loops() {
        return Ok(false);
    }
    if clique_number(a, limits)? > clique_number(b, limits)? {
        return Ok(true);
    }
    match (odd_girth(a), odd_girth(b)) {
        (Some(x), Some(y)) if x < y => return Ok(true),
        (Some(_), None) => return Ok(true),
        _ => {}
    }
    Ok(match (chromatic_number(a, limits), chromatic_number(b, limits)) {
        (Ok(Some(x)), Ok(Some(y))) => x > y,
        _ => false,
    })
}

fn maps_to(a: &Graph, b: &Graph, limits: &Limits) -> Result<bool> {
    if filtered_out(a, b, limits)? {
        return Ok(false);
    }
    let opts = SolveOptions::new(Mode::Decide).with_limits(limits.clone());
    Ok(hom_solve(a, b, None, &opts)?.exists)
}

/// No homomorphism in either direction.
pub fn incomparable(a: &Graph, b: &Graph, limits: &Limits) -> Result<bool> {
    Ok(!maps_to(a, b, limits)? && !maps_to(b, a, limits)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{disjoint_union, isomorphic, NamedGraph};

    fn g(id: &str) -> Graph {
        id.parse::<NamedGraph>().unwrap().build().unwrap()
    }

    #[test]
    fn cliques_are_cores_bowtie_is_not() {
        let l = Limits::default();
        assert!(is_core(&g("clique:3"), &l).unwrap().is_core());
        let c = is_core(&g("bowtie"), &l).unwrap();
        assert_eq!(c.verdict, CoreVerdict::NotCore);
        let w = c.witness.unwrap();
        assert!(w.is_valid(&g("bowtie"), &g("bowtie")));
        assert!(!w.is_surjective(5));
    }

    #[test]
    fn grotzsch_plus_triangle_is_core() {
        let h = disjoint_union(&[&g("clique:3"), &g("grotzsch")]).graph;
        let c = is_core(&h, &Limits::default()).unwrap();
        assert!(c.is_core());
        assert_eq!(c.searches.len(), 14);
    }

    #[test]
    fn core_of_examples() {
        let l = Limits::default();
        let r = core_of(&g("bowtie"), &l).unwrap();
        assert!(isomorphic(&r.core, &g("clique:3")).is_some());
        assert!(r.retraction.is_valid(&g("bowtie"), &r.core));
        assert_eq!(core_of(&g("cycle:8"), &l).unwrap().core.n(), 2);
        assert_eq!(core_of(&Graph::empty(4), &l).unwrap().core.n(), 1);
        let looped = Graph::new(3, [(0, 1), (1, 2), (2, 2)]).unwrap();
        let r = core_of(&looped, &l).unwrap();
        assert_eq!(r.vertices, [2]);
        assert!(r.core.has_loop(0));
    }

    #[test]
    fn equivalence_and_incomparability() {
        let l = Limits::default();
        assert!(hom_equivalent(&g("cycle:6"), &g("clique:2"), &l).unwrap().is_some());
        assert!(hom_equivalent(&g("clique:3"), &g("cycle:3"), &l).unwrap().is_some());
        assert!(hom_equivalent(&g("clique:3"), &g("cycle:5"), &l).unwrap().is_none());
        assert!(incomparable(&g("grotzsch"), &g("clique:3"), &l).unwrap());
        assert!(!incomparable(&g("clique:3"), &g("clique:4"), &l).unwrap());
        assert!(!incomparable(&g("cycle:5"), &g("cycle:7"), &l).unwrap());
    }
}
