//! Edge gadgets and the k-coloring reduction.
//!
//! A projective gadget for `H` on `k` vertices is `F = H^{k(k-1)}` with
//! `u* = (z_1^{k-1}, …, z_k^{k-1})` and `v* = (z̄_1, …, z̄_k)`, where `z̄_i`
//! lists every vertex except `z_i` in ascending order. The non-projective
//! variant is `F = H_1^{2s} × R` over the `s` edges of `H_1`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{is_projective, truly_projective_check, Projectivity, WitnessClass};
use crate::cores::{is_core, CoreVerdict};
use crate::error::{Error, Result};
use crate::graph::{direct_product, mixed_radix, Graph};
use crate::hom::{hom_backtrack, HomQuery, Homomorphism, Mode};
use crate::limits::Limits;

mod reduce;

pub use reduce::{certificate_evaluate, reduce_kcoloring, Reduction};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GadgetKind {
    Projective,
    NonProjective,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeGadget {
    pub kind: GadgetKind,
    /// `H` for projective gadgets, `H_1` for non-projective ones.
    pub target: Graph,
    /// Number of power coordinates.
    pub coords: usize,
    /// Full tuples, including the trailing `w` for non-projective gadgets.
    pub u_star: Vec<u32>,
    pub v_star: Vec<u32>,
    /// `(R, w)` for the non-projective variant.
    pub extra: Option<(Graph, u32)>,
    /// `F`, when it fits under the vertex limit.
    pub graph: Option<Graph>,
}

impl EdgeGadget {
    fn radices(&self) -> Vec<u32> {
        let mut r = vec![self.target.n() as u32; self.coords];
        if let Some((g, _)) = &self.extra {
            r.push(g.n() as u32);
        }
        r
    }

    pub fn vertex_count(&self) -> u128 {
        self.radices()
            .iter()
            .try_fold(1u128, |acc, &r| acc.checked_mul(r as u128))
            .unwrap_or(u128::MAX)
    }

    pub fn is_materialized(&self) -> bool {
        self.graph.is_some()
    }

    /// Index in `F` of a tuple (meaningful when materialized).
    pub fn index_of(&self, tuple: &[u32]) -> usize {
        mixed_radix(&self.radices(), tuple)
    }

    pub fn u_index(&self) -> usize {
        self.index_of(&self.u_star)
    }

    pub fn v_index(&self) -> usize {
        self.index_of(&self.v_star)
    }

    /// Adjacency oracle: adjacent in every coordinate.
    pub fn adjacent(&self, a: &[u32], b: &[u32]) -> bool {
        let k = self.coords;
        (0..k).all(|j| self.target.has_edge(a[j] as usize, b[j] as usize))
            && self.extra.as_ref().is_none_or(|(r, _)| r.has_edge(a[k] as usize, b[k] as usize))
    }
}

/// Projective edge gadget `H^{k(k-1)}` for `k = |H|`.
pub fn build_projective_gadget(h: &Graph, limits: &Limits) -> Result<EdgeGadget> {
    let k = h.n();
    if k < 2 {
        return Err(Error::Precondition("gadget target needs at least two vertices".into()));
    }
    let coords = k * (k - 1);
    let mut u_star = Vec::with_capacity(coords);
    let mut v_star = Vec::with_capacity(coords);
    for i in 0..k as u32 {
        u_star.extend(core::iter::repeat_n(i, k - 1));
        v_star.extend((0..k as u32).filter(|&j| j != i));
    }
    let target = h.clone().without_labels();
    let mut gadget = EdgeGadget {
        kind: GadgetKind::Projective,
        target,
        coords,
        u_star,
        v_star,
        extra: None,
        graph: None,
    };
    materialize(&mut gadget, limits)?;
    Ok(gadget)
}

/// Non-projective edge gadget `H_1^{2s} × R` with `u* = (u, w)`, `v* = (v, w)`.
///
/// `u = (u_1, …, u_s, v_1, …, v_s)` and `v = (v_1, …, v_s, u_1, …, u_s)` over
/// the edges `u_i v_i` of `H_1` in lexicographic order.
pub fn build_nonprojective_gadget(h1: &Graph, r: &Graph, w: usize, limits: &Limits) -> Result<EdgeGadget> {
    if w >= r.n() {
        return Err(Error::VertexOutOfRange { vertex: w, n: r.n() });
    }
    if r.n() == 1 && r.has_loop(0) {
        return Err(Error::Precondition("R must not be the looped single vertex".into()));
    }
    let edges = h1.edges();
    if edges.is_empty() {
        return Err(Error::Precondition("H1 needs at least one edge".into()));
    }
    let (us, vs): (Vec<u32>, Vec<u32>) = edges.iter().map(|&(a, b)| (a as u32, b as u32)).unzip();
    let mut u_star = [us.as_slice(), vs.as_slice()].concat();
    let mut v_star = [vs.as_slice(), us.as_slice()].concat();
    u_star.push(w as u32);
    v_star.push(w as u32);
    let mut gadget = EdgeGadget {
        kind: GadgetKind::NonProjective,
        target: h1.clone().without_labels(),
        coords: 2 * edges.len(),
        u_star,
        v_star,
        extra: Some((r.clone().without_labels(), w as u32)),
        graph: None,
    };
    materialize(&mut gadget, limits)?;
    Ok(gadget)
}

fn materialize(g: &mut EdgeGadget, limits: &Limits) -> Result<()> {
    if g.vertex_count() > limits.vertex_limit as u128 {
        return Ok(());
    }
    let mut factors: Vec<&Graph> = vec![&g.target; g.coords];
    if let Some((r, _)) = &g.extra {
        factors.push(r);
    }
    g.graph = Some(direct_product(&factors, limits)?.without_labels());
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateStatus {
    /// Every checked property holds and every sub-verdict is definite.
    Unconditional,
    /// Nothing failed, but part of the evidence is sampled, bounded or inconclusive.
    Conditional,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetCertificate {
    pub status: CertificateStatus,
    /// Ordered pairs that need a witness: `x ≠ y` (projective) or edge orientations of `H_1`.
    pub pairs_required: usize,
    pub pairs_witnessed: usize,
    /// Coordinates `j` whose `(u*_j, v*_j)` is distinct (projective) or an edge of `H_1`.
    pub coords_total: usize,
    pub coords_ok: usize,
    /// For non-projective gadgets: both tuples end in `w`.
    pub tail_ok: Option<bool>,
    /// Witness edges validated (all of `F` when materialized, else a sample).
    pub edges_checked: u64,
    pub sampled: bool,
    pub projective: Option<Projectivity>,
    /// `None` when the search was inconclusive.
    pub core: Option<CoreVerdict>,
    /// Bounded truly-projective evidence (non-projective gadgets).
    pub truly_projective: Option<bool>,
    /// Direct exhaustive check that no homomorphism identifies `u*` and `v*` (projective)
    /// or breaks the edge on the first coordinates (non-projective); run only below the size gate.
    pub direct_check: Option<bool>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct GadgetCheckOptions {
    pub limits: Limits,
    /// Run the direct exhaustive check when `|V(F)|` is at most this.
    pub direct_check_limit: u128,
    /// Edges sampled per witness for symbolic gadgets.
    pub samples: usize,
    pub seed: u64,
}

impl Default for GadgetCheckOptions {
    fn default() -> Self {
        GadgetCheckOptions { limits: Limits::default(), direct_check_limit: 1000, samples: 2000, seed: 0 }
    }
}

/// The witness for coordinate `j`: `π_j` (into `H`) or `(π_j, r)` (into `H_1 × R`).
fn project(g: &EdgeGadget, tuple: &[u32], j: usize) -> usize {
    match &g.extra {
        None => tuple[j] as usize,
        Some((r, _)) => tuple[j] as usize * r.n() + tuple[g.coords] as usize,
    }
}

fn image_graph(g: &EdgeGadget, limits: &Limits) -> Result<Graph> {
    match &g.extra {
        None => Ok(g.target.clone()),
        Some((r, _)) => Ok(direct_product(&[&g.target, r], limits)?.without_labels()),
    }
}

/// Checks the gadget properties and collects the sub-verdicts they rest on.
///
/// Property (a) is shown by exhibiting a coordinate witness for every
/// required pair and validating it edge by edge. Property (b) rests on the
/// coordinate table plus projectivity and core verdicts for `H` (for the
/// non-projective variant: bounded truly-projective evidence and the core
/// verdict for `H_1 × R`), with an optional direct check on small gadgets.
pub fn verify_gadget(g: &EdgeGadget, opts: &GadgetCheckOptions) -> Result<GadgetCertificate> {
    let limits = &opts.limits;
    let h = &g.target;
    let k = h.n();
    let mut notes = Vec::new();
    let dest = image_graph(g, limits)?;

    let pairs: Vec<(u32, u32)> = match g.kind {
        GadgetKind::Projective => (0..k as u32)
            .flat_map(|x| (0..k as u32).filter(move |&y| y != x).map(move |y| (x, y)))
            .collect(),
        GadgetKind::NonProjective => h
            .edges()
            .into_iter()
            .flat_map(|(a, b)| [(a as u32, b as u32), (b as u32, a as u32)])
            .collect(),
    };
    let coord_ok = |j: usize| {
        let (a, b) = (g.u_star[j], g.v_star[j]);
        match g.kind {
            GadgetKind::Projective => a != b,
            GadgetKind::NonProjective => h.has_edge(a as usize, b as usize),
        }
    };
    let coords_ok = (0..g.coords).filter(|&j| coord_ok(j)).count();
    let tail_ok = g.extra.as_ref().map(|(_, w)| {
        g.u_star.get(g.coords) == Some(w) && g.v_star.get(g.coords) == Some(w)
    });

    let mut witnessed = 0;
    let mut edges_checked = 0u64;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let sample = sample_edges(g, opts.samples, &mut rng);
    for &(x, y) in &pairs {
        let Some(j) = (0..g.coords).find(|&j| (g.u_star[j], g.v_star[j]) == (x, y)) else {
            notes.push(format!("no coordinate realizes ({x}, {y})"));
            continue;
        };
        let ok = match &g.graph {
            Some(f) => {
                let imgs = coordinate_images(g, f, j);
                edges_checked += f.edge_count() as u64;
                f.edges().into_iter().all(|(a, b)| dest.has_edge(imgs[a], imgs[b]))
            }
            None => {
                edges_checked += sample.len() as u64;
                sample.iter().all(|(a, b)| dest.has_edge(project(g, a, j), project(g, b, j)))
            }
        };
        if ok {
            witnessed += 1;
        } else {
            notes.push(format!("coordinate witness for ({x}, {y}) is not a homomorphism"));
        }
    }

    let mut conditional = g.graph.is_none();
    if conditional {
        notes.push(String::from("witnesses validated on sampled edges"));
    }
    let (projective, core, truly) = match g.kind {
        GadgetKind::Projective => {
            let p = if k >= 3 && h.is_connected() {
                Some(is_projective(h, limits)?.verdict)
            } else {
                notes.push(String::from("projectivity undefined below three vertices"));
                None
            };
            (p, core_verdict(h, limits)?, None)
        }
        GadgetKind::NonProjective => {
            let (r, _) = g.extra.as_ref().expect("non-projective extra");
            let truly = match truly_projective_check(h, r, 2, WitnessClass::Connected, limits) {
                Ok(rep) => Some(rep.holds),
                Err(e) if e.is_inconclusive() || matches!(e, Error::Precondition(_)) => {
                    notes.push(format!("truly projective check: {e}"));
                    None
                }
                Err(e) => return Err(e),
            };
            conditional = true;
            notes.push(String::from("truly projective evidence is bounded (s = 2, W = R)"));
            (None, core_verdict(&dest, limits)?, truly)
        }
    };

    let direct_check = if g.vertex_count() <= opts.direct_check_limit {
        match &g.graph {
            Some(f) => direct_b(g, f, &dest, limits)?,
            None => None,
        }
    } else {
        None
    };

    let failed = witnessed < pairs.len()
        || coords_ok < g.coords
        || tail_ok == Some(false)
        || projective == Some(Projectivity::NotProjective)
        || core == Some(CoreVerdict::NotCore)
        || truly == Some(false)
        || direct_check == Some(false);
    let definite = (g.kind == GadgetKind::NonProjective || projective == Some(Projectivity::Projective))
        && core.is_some();
    let status = if failed {
        CertificateStatus::Failed
    } else if conditional || !definite {
        CertificateStatus::Conditional
    } else {
        CertificateStatus::Unconditional
    };
    Ok(GadgetCertificate {
        status,
        pairs_required: pairs.len(),
        pairs_witnessed: witnessed,
        coords_total: g.coords,
        coords_ok,
        tail_ok,
        edges_checked,
        sampled: g.graph.is_none(),
        projective,
        core,
        truly_projective: truly,
        direct_check,
        notes,
    })
}

fn core_verdict(h: &Graph, limits: &Limits) -> Result<Option<CoreVerdict>> {
    match is_core(h, limits) {
        Ok(c) => Ok(Some(c.verdict)),
        Err(e) if e.is_inconclusive() => Ok(None),
        Err(e) => Err(e),
    }
}

/// Exhaustive check that no homomorphism `F -> dest` violates property (b).
///
/// Projective: `u*` and `v*` never share an image. Non-projective: the first
/// coordinates of the images of `u*` and `v*` always form an edge of `H_1`.
/// `None` when the search ran out of budget.
fn direct_b(g: &EdgeGadget, f: &Graph, dest: &Graph, limits: &Limits) -> Result<Option<bool>> {
    let (u, v) = (g.u_index(), g.v_index());
    let stride = g.extra.as_ref().map_or(1, |(r, _)| r.n());
    for x in 0..dest.n() {
        for y in 0..dest.n() {
            let bad = match g.kind {
                GadgetKind::Projective => x == y,
                GadgetKind::NonProjective => !g.target.has_edge(x / stride, y / stride),
            };
            if !bad {
                continue;
            }
            let q = HomQuery::new(f, dest, Mode::Decide).pin(u, x).pin(v, y).with_limits(limits.clone());
            match hom_backtrack(&q) {
                Ok(r) if r.exists => return Ok(Some(false)),
                Ok(_) => {}
                Err(e) if e.is_inconclusive() => return Ok(None),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(Some(true))
}

/// Random edges of `F` as tuple pairs, drawn through the adjacency oracle's definition.
fn sample_edges(g: &EdgeGadget, count: usize, rng: &mut ChaCha8Rng) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut graphs: Vec<&Graph> = vec![&g.target; g.coords];
    if let Some((r, _)) = &g.extra {
        graphs.push(r);
    }
    if graphs.iter().any(|x| (0..x.n()).all(|v| x.degree(v) == 0)) {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut a = Vec::with_capacity(graphs.len());
        let mut b = Vec::with_capacity(graphs.len());
        for x in &graphs {
            let v = loop {
                let v = rng.gen_range(0..x.n());
                if x.degree(v) > 0 {
                    break v;
                }
            };
            let nb = x.neighbors(v);
            a.push(v as u32);
            b.push(nb[rng.gen_range(0..nb.len())]);
        }
        debug_assert!(g.adjacent(&a, &b));
        out.push((a, b));
    }
    out
}

fn coordinate_images(g: &EdgeGadget, f: &Graph, j: usize) -> Vec<usize> {
    let radices = g.radices();
    let mut t = vec![0u32; radices.len()];
    let mut out = Vec::with_capacity(f.n());
    for _ in 0..f.n() {
        out.push(project(g, &t, j));
        crate::graph::advance(&mut t, |i| radices[i] as usize);
    }
    out
}

/// The coordinate witness for `(x, y)`, materialized as a map `F -> H` (or `H_1 × R`).
pub fn pair_witness(g: &EdgeGadget, x: u32, y: u32) -> Option<Homomorphism> {
    let f = g.graph.as_ref()?;
    let j = (0..g.coords).find(|&j| (g.u_star[j], g.v_star[j]) == (x, y))?;
    let mapping = coordinate_images(g, f, j).into_iter().map(|x| x as u32).collect();
    Some(Homomorphism::new(mapping))
}
