use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{hom_backtrack, hom_dp, HomQuery, HomResult, Homomorphism, Mode};
use crate::algebra::factorize_prime;
use crate::decomp::{heuristic_decomposition, to_nice, TreeDecomposition};
use crate::error::Result;
use crate::graph::Graph;
use crate::limits::Limits;

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub mode: Mode,
    pub limits: Limits,
    /// Split connected non-bipartite targets into prime factors.
    pub factor_dispatch: bool,
}

impl SolveOptions {
    pub fn new(mode: Mode) -> Self {
        SolveOptions { mode, limits: Limits::default(), factor_dispatch: true }
    }

    pub fn without_factor_dispatch(mut self) -> Self {
        self.factor_dispatch = false;
        self
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }
}

/// Decides, finds or counts homomorphisms `g -> h` through the dispatch pipeline.
///
/// Trivial targets (looped, edgeless, bipartite) are answered directly in the
/// decision modes. Otherwise the source is split into components, a
/// disconnected target is split into components, a connected non-bipartite
/// target is split into prime factors, and each remaining base query runs the
/// DP over `d` (restricted to the component) or a heuristic decomposition.
/// All factors are evaluated even after one fails. Enumeration goes to the
/// backtracking solver.
pub fn hom_solve(
    g: &Graph,
    h: &Graph,
    d: Option<&TreeDecomposition>,
    opts: &SolveOptions,
) -> Result<HomResult> {
    if opts.mode == Mode::Enumerate {
        let q = HomQuery::new(g, h, Mode::Enumerate).with_limits(opts.limits.clone());
        return hom_backtrack(&q);
    }
    if opts.mode != Mode::Count {
        if let Some(r) = trivial(g, h, opts.mode) {
            return Ok(r);
        }
    }
    let comps = g.components();
    if comps.len() == 1 {
        return connected_source(g, h, d, opts);
    }
    let mut out = HomResult::empty(true);
    out.count = (opts.mode == Mode::Count).then(BigUint::one);
    out.provenance.push(format!("source components: {}", comps.len()));
    let mut mapping = vec![0u32; g.n()];
    for (i, comp) in comps.iter().enumerate() {
        let sub = g.induced_subgraph(comp);
        let sd = d.map(|d| d.restrict(comp));
        let r = connected_source(&sub, h, sd.as_ref(), opts)?;
        out.stats.absorb(&r.stats);
        for p in r.provenance {
            out.provenance.push(format!("component {i}: {p}"));
        }
        if let (Some(c), Some(rc)) = (out.count.as_mut(), r.count.as_ref()) {
            *c *= rc;
        }
        if !r.exists {
            out.exists = false;
            if opts.mode != Mode::Count {
                return Ok(out);
            }
        }
        if let Some(w) = r.witness {
            for (j, &v) in comp.iter().enumerate() {
                mapping[v] = w.mapping[j];
            }
        }
    }
    if opts.mode == Mode::FindOne && out.exists {
        out.witness = Some(Homomorphism::new(mapping));
    }
    Ok(out)
}

fn trivial(g: &Graph, h: &Graph, mode: Mode) -> Option<HomResult> {
    let verdict = |exists: bool, mapping: Option<Vec<u32>>, why: &str| {
        let mut r = HomResult::empty(exists);
        if exists && mode == Mode::FindOne {
            r.witness = mapping.map(Homomorphism::new);
        }
        r.provenance.push(String::from(why));
        Some(r)
    };
    if h.n() == 0 {
        return verdict(g.n() == 0, Some(Vec::new()), "trivial: empty target");
    }
    if let Some(x) = (0..h.n()).find(|&x| h.has_loop(x)) {
        return verdict(true, Some(vec![x as u32; g.n()]), "trivial: looped target");
    }
    if h.edge_count() == 0 {
        return verdict(g.edge_count() == 0, Some(vec![0; g.n()]), "trivial: edgeless target");
    }
    if h.is_bipartite() {
        let (a, b) = h.edges()[0];
        let coloring = g.two_coloring();
        let exists = coloring.is_some();
        let mapping = coloring.map(|c| {
            c.iter().map(|&s| if s == 0 { a as u32 } else { b as u32 }).collect()
        });
        return verdict(exists, mapping, "trivial: bipartite target");
    }
    None
}

fn connected_source(
    g: &Graph,
    h: &Graph,
    d: Option<&TreeDecomposition>,
    opts: &SolveOptions,
) -> Result<HomResult> {
    let hc = h.components();
    if hc.len() > 1 {
        let mut out = HomResult::empty(false);
        out.count = (opts.mode == Mode::Count).then(BigUint::zero);
        for (i, comp) in hc.iter().enumerate() {
            let sub = h.induced_subgraph(comp);
            let r = connected_pair(g, &sub, d, opts)?;
            out.stats.absorb(&r.stats);
            for p in &r.provenance {
                out.provenance.push(format!("target component {i} ({} vertices): {p}", comp.len()));
            }
            if let (Some(c), Some(rc)) = (out.count.as_mut(), r.count.as_ref()) {
                *c += rc;
            }
            if r.exists {
                if !out.exists {
                    if let Some(w) = r.witness {
                        out.witness = Some(Homomorphism::new(
                            w.mapping.iter().map(|&t| comp[t as usize] as u32).collect(),
                        ));
                    }
                }
                out.exists = true;
                if opts.mode != Mode::Count {
                    break;
                }
            }
        }
        return Ok(out);
    }
    connected_pair(g, h, d, opts)
}

fn connected_pair(
    g: &Graph,
    h: &Graph,
    d: Option<&TreeDecomposition>,
    opts: &SolveOptions,
) -> Result<HomResult> {
    if !opts.factor_dispatch || h.n() < 2 || h.has_loops() || h.is_bipartite() || g.n() == 0 {
        return base(g, h, d, opts);
    }
    let f = match factorize_prime(h, &opts.limits) {
        Ok(f) => f,
        Err(e) if e.is_inconclusive() => {
            let mut r = base(g, h, d, opts)?;
            r.provenance.insert(0, String::from("factorization inconclusive, solved directly"));
            return Ok(r);
        }
        Err(e) => return Err(e),
    };
    if f.factors.len() == 1 {
        return base(g, h, d, opts);
    }
    let mut out = HomResult::empty(true);
    out.count = (opts.mode == Mode::Count).then(BigUint::one);
    let sizes: Vec<String> = f.factors.iter().map(|x| format!("{}", x.n())).collect();
    out.provenance.push(format!("factor dispatch: {} factors of sizes {}", f.factors.len(), sizes.join("x")));
    let mut parts = Vec::new();
    for (i, factor) in f.factors.iter().enumerate() {
        let r = base(g, factor, d, opts)?;
        out.stats.absorb(&r.stats);
        out.provenance.push(format!(
            "factor {i} ({} vertices): {} via {}",
            factor.n(),
            if r.exists { "yes" } else { "no" },
            r.provenance.join(", ")
        ));
        if let (Some(c), Some(rc)) = (out.count.as_mut(), r.count.as_ref()) {
            *c *= rc;
        }
        // every factor runs so that reports carry all per-factor verdicts
        out.exists &= r.exists;
        parts.push(r.witness);
    }
    if opts.mode == Mode::FindOne && out.exists {
        let mut tuple = vec![0u32; f.factors.len()];
        let mapping = (0..g.n())
            .map(|v| {
                for (slot, w) in tuple.iter_mut().zip(&parts) {
                    *slot = w.as_ref().expect("factor witness").mapping[v];
                }
                f.vertex_of(&tuple) as u32
            })
            .collect();
        out.witness = Some(Homomorphism::new(mapping));
    }
    Ok(out)
}

fn base(g: &Graph, h: &Graph, d: Option<&TreeDecomposition>, opts: &SolveOptions) -> Result<HomResult> {
    let own;
    let d = match d {
        Some(d) => d,
        None => {
            own = heuristic_decomposition(g);
            &own
        }
    };
    let nice = to_nice(d)?;
    hom_dp(g, h, &nice, opts.mode, &opts.limits)
}
