//! Homomorphism search: backtracking, treewidth DP, and dispatch.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::bitset::BitSet;
use crate::graph::Graph;
use crate::limits::Limits;

mod backtrack;
mod constructible;
mod dp;
mod solve;

pub use backtrack::hom_backtrack;
pub(crate) use backtrack::for_each_solution;
pub use constructible::constructible_set;
pub use dp::{hom_dp, state_space};
pub use solve::{hom_solve, SolveOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Decide,
    FindOne,
    Enumerate,
    Count,
}

/// A homomorphism question with optional pins and lists.
#[derive(Clone, Debug)]
pub struct HomQuery<'a> {
    pub source: &'a Graph,
    pub target: &'a Graph,
    pub mode: Mode,
    /// Forced images `(source vertex, target vertex)`.
    pub pins: Vec<(usize, usize)>,
    /// Allowed images per source vertex.
    pub lists: Option<Vec<BitSet>>,
    pub limits: Limits,
}

impl<'a> HomQuery<'a> {
    pub fn new(source: &'a Graph, target: &'a Graph, mode: Mode) -> Self {
        HomQuery {
            source,
            target,
            mode,
            pins: Vec::new(),
            lists: None,
            limits: Limits::default(),
        }
    }

    pub fn pin(mut self, v: usize, image: usize) -> Self {
        self.pins.push((v, image));
        self
    }

    pub fn with_pins(mut self, pins: impl IntoIterator<Item = (usize, usize)>) -> Self {
        self.pins.extend(pins);
        self
    }

    pub fn with_lists(mut self, lists: Vec<BitSet>) -> Self {
        self.lists = Some(lists);
        self
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }
}

/// Total vertex map from a source graph to a target graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Homomorphism {
    pub mapping: Vec<u32>,
}

impl Homomorphism {
    pub fn new(mapping: Vec<u32>) -> Self {
        Homomorphism { mapping }
    }

    pub fn image(&self, v: usize) -> usize {
        self.mapping[v] as usize
    }

    /// Edge preservation, checked from scratch.
    pub fn is_valid(&self, source: &Graph, target: &Graph) -> bool {
        self.mapping.len() == source.n()
            && self.mapping.iter().all(|&t| (t as usize) < target.n())
            && source
                .edges()
                .into_iter()
                .all(|(u, v)| target.has_edge(self.image(u), self.image(v)))
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Homomorphism) -> Homomorphism {
        Homomorphism::new(self.mapping.iter().map(|&t| next.mapping[t as usize]).collect())
    }

    pub fn is_surjective(&self, target_size: usize) -> bool {
        let mut hit = BitSet::new(target_size);
        for &t in &self.mapping {
            hit.insert(t as usize);
        }
        hit.count() == target_size
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomStats {
    pub search_nodes: u64,
    /// Sum over DP nodes of `|target|^|bag|`, the table capacity.
    pub dp_state_cells: u128,
    /// Table entries actually stored by the DP.
    pub dp_stored_states: u64,
    /// Largest target size used as a DP state base.
    pub table_base: usize,
}

impl HomStats {
    pub(crate) fn absorb(&mut self, other: &HomStats) {
        self.search_nodes += other.search_nodes;
        self.dp_state_cells += other.dp_state_cells;
        self.dp_stored_states += other.dp_stored_states;
        self.table_base = self.table_base.max(other.table_base);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomResult {
    pub exists: bool,
    pub witness: Option<Homomorphism>,
    /// Exact count in count mode.
    pub count: Option<BigUint>,
    /// Enumerate mode: solutions in lexicographic order of their mappings.
    pub solutions: Vec<Homomorphism>,
    /// Enumerate mode stopped at the enumeration cap.
    pub truncated: bool,
    pub stats: HomStats,
    /// Which dispatch steps produced the verdict.
    pub provenance: Vec<String>,
}

impl HomResult {
    pub(crate) fn empty(exists: bool) -> Self {
        HomResult {
            exists,
            witness: None,
            count: None,
            solutions: Vec::new(),
            truncated: false,
            stats: HomStats::default(),
            provenance: Vec::new(),
        }
    }
}
