//! Graph homomorphisms parameterized by treewidth.
//!
//! The crate is `no_std` and only needs `alloc`. It contains:
//!
//! * [`graph`]: simple undirected graphs with loops, named graphs, direct
//!   products, disjoint unions, structural invariants and isomorphism;
//! * [`decomp`]: tree and path decompositions, validation, nice form and a
//!   min-fill heuristic;
//! * [`hom`]: a backtracking solver with arc consistency, the bag-table
//!   dynamic program over nice decompositions, and the component / prime
//!   factor dispatch layer;
//! * [`cores`]: endomorphism search, core testing and core computation;
//! * [`algebra`]: direct-product prime factorization and projectivity tests;
//! * [`gadgets`]: edge gadgets for projective and non-projective targets and
//!   the k-coloring reduction.
//!
//! File formats, experiments and the command-line front end live in the
//! companion `twhom` crate.
#![no_std]
#![deny(rust_2018_idioms, unused_must_use)]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod algebra;
mod bitset;
pub mod cores;
pub mod decomp;
mod error;
pub mod gadgets;
pub mod graph;
pub mod hom;
mod limits;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use graph::{Graph, GraphInvariants, ProductLabels};
pub use limits::{Interrupt, Limits, NeverInterrupt};
