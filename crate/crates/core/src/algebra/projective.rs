use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use super::Factorization;
use crate::cores::{incomparable, is_core};
use crate::error::{Error, Result};
use crate::graph::{direct_product, Graph};
use crate::hom::{HomQuery, Homomorphism, Mode};
use crate::limits::Limits;

/// Largest `|H|` tested for projectivity without an explicit node budget.
pub const PROJECTIVITY_SIZE_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projectivity {
    Projective,
    NotProjective,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivityReport {
    pub verdict: Projectivity,
    /// Idempotent map `H² -> H` that is not a projection.
    pub witness: Option<Homomorphism>,
    /// Idempotent homomorphisms examined.
    pub extensions: u64,
    pub search_nodes: u64,
    pub note: Option<String>,
}

/// Which graphs `W` the bounded truly-projective check accepts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessClass {
    /// Connected cores incomparable with `H` (truly projective).
    IncomparableCore,
    /// Any connected graph on at least two vertices (strongly projective).
    Connected,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrulyProjectiveReport {
    pub holds: bool,
    /// Extension of the pinning that is not a projection onto an `H` coordinate.
    pub witness: Option<Homomorphism>,
    pub extensions: u64,
    pub search_nodes: u64,
}

fn power(h: &Graph, s: usize, extra: Option<&Graph>, limits: &Limits) -> Result<Graph> {
    let base = h.clone().without_labels();
    let extra = extra.map(|w| w.clone().without_labels());
    let mut factors: Vec<&Graph> = vec![&base; s];
    if let Some(w) = &extra {
        factors.push(w);
    }
    direct_product(&factors, limits)
}

/// Projection of the product vertex `v` onto coordinate `i`.
fn coord(p: &Graph, v: usize, i: usize) -> u32 {
    p.labels().expect("product labels").coords(v)[i]
}

fn is_projection_onto(p: &Graph, f: &[u32], i: usize) -> bool {
    f.iter().enumerate().all(|(v, &t)| t == coord(p, v, i))
}

/// Tests whether every idempotent homomorphism `H² -> H` is a projection.
///
/// The diagonal `(x, x)` is pinned to `x` and all extensions are enumerated;
/// the first one that is neither projection is returned as the witness. A
/// budget or interrupt yields an inconclusive verdict, never a guess. Graphs
/// above [`PROJECTIVITY_SIZE_CAP`] require an explicit node budget.
pub fn is_projective(h: &Graph, limits: &Limits) -> Result<ProjectivityReport> {
    let n = h.n();
    if n < 3 || !h.is_connected() {
        return Err(Error::Precondition("projectivity needs a connected graph on at least three vertices".into()));
    }
    if n > PROJECTIVITY_SIZE_CAP && limits.node_budget.is_none() {
        return Err(Error::Precondition(alloc::format!(
            "graphs above {PROJECTIVITY_SIZE_CAP} vertices need an explicit node budget"
        )));
    }
    let sq = power(h, 2, None, limits)?;
    let q = HomQuery::new(&sq, h, Mode::Enumerate)
        .with_pins((0..n).map(|x| (x * n + x, x)))
        .with_limits(limits.clone());
    let mut extensions = 0u64;
    let mut witness = None;
    let run = crate::hom::for_each_solution(&q, &mut |f| {
        extensions += 1;
        if is_projection_onto(&sq, f, 0) || is_projection_onto(&sq, f, 1) {
            ControlFlow::Continue(())
        } else {
            witness = Some(Homomorphism::new(f.to_vec()));
            ControlFlow::Break(())
        }
    });
    let mut report = ProjectivityReport {
        verdict: Projectivity::Inconclusive,
        witness: None,
        extensions,
        search_nodes: 0,
        note: None,
    };
    match run {
        Ok(nodes) => {
            report.search_nodes = nodes;
            report.verdict = if witness.is_some() { Projectivity::NotProjective } else { Projectivity::Projective };
            report.witness = witness;
        }
        Err(e) if e.is_inconclusive() => report.note = Some(e.to_string()),
        Err(e) => return Err(e),
    }
    Ok(report)
}

/// Re-checks a witness on `H^arity` from scratch: homomorphism, idempotent, not a projection.
pub fn validate_nonprojection(h: &Graph, arity: usize, f: &Homomorphism, limits: &Limits) -> Result<bool> {
    let p = power(h, arity, None, limits)?;
    if !f.is_valid(&p, h) {
        return Ok(false);
    }
    let idempotent = (0..h.n()).all(|x| {
        let diag = (0..arity).fold(0usize, |acc, _| acc * h.n() + x);
        f.image(diag) == x
    });
    let projection = (0..arity).any(|i| is_projection_onto(&p, &f.mapping, i));
    Ok(idempotent && !projection)
}

/// The mixed-coordinate map `((x, y), (x', y')) ↦ (x, y')` on `H²` for a decomposable `H`.
///
/// `x` is the first factor coordinate and `y` the remaining ones. The map is
/// re-validated before it is returned.
pub fn decomposable_nonprojective_witness(h: &Graph, f: &Factorization, limits: &Limits) -> Result<Homomorphism> {
    if f.factors.len() < 2 {
        return Err(Error::Precondition("witness needs at least two factors".into()));
    }
    if f.iso.radices().iter().map(|&r| r as usize).product::<usize>() != h.n() {
        return Err(Error::SizeMismatch("factorization does not match the graph".into()));
    }
    let n = h.n();
    let mut tuple = vec![0u32; f.factors.len()];
    let mapping = (0..n * n)
        .map(|v| {
            let (left, right) = (v / n, v % n);
            tuple.copy_from_slice(f.iso.coords(right));
            tuple[0] = f.iso.coords(left)[0];
            f.vertex_of(&tuple) as u32
        })
        .collect();
    let w = Homomorphism::new(mapping);
    if !validate_nonprojection(h, 2, &w, limits)? {
        return Err(Error::Precondition("factorization does not describe the graph".into()));
    }
    Ok(w)
}

/// Bounded check of `f(x, …, x, y) = x` forcing a projection on `H^s × W`.
///
/// Pins every `(x, …, x, y)` to `x`, enumerates all extensions, and reports
/// whether each one is a projection onto one of the `s` copies of `H`. This
/// covers one fixed `(W, s)`, not the quantified definition.
pub fn truly_projective_check(
    h: &Graph,
    w: &Graph,
    s: usize,
    class: WitnessClass,
    limits: &Limits,
) -> Result<TrulyProjectiveReport> {
    if s < 2 {
        return Err(Error::Precondition("arity must be at least 2".into()));
    }
    if h.n() < 3 || !h.is_connected() {
        return Err(Error::Precondition("H must be connected with at least three vertices".into()));
    }
    if !h.is_connected() || !is_core(h, limits)?.is_core() {
        return Err(Error::Precondition("H must be a connected core".into()));
    }
    if w.n() < 2 || !w.is_connected() {
        return Err(Error::Precondition("W must be connected with at least two vertices".into()));
    }
    if class == WitnessClass::IncomparableCore {
        if !is_core(w, limits)?.is_core() {
            return Err(Error::Precondition("W must be a core".into()));
        }
        if !incomparable(h, w, limits)? {
            return Err(Error::Precondition("H and W must be incomparable".into()));
        }
    }
    let p = power(h, s, Some(w), limits)?;
    let (n, m) = (h.n(), w.n());
    let pins = (0..n).flat_map(|x| {
        let diag = (0..s).fold(0usize, |acc, _| acc * n + x);
        (0..m).map(move |y| (diag * m + y, x))
    });
    let q = HomQuery::new(&p, h, Mode::Enumerate).with_pins(pins).with_limits(limits.clone());
    let mut extensions = 0u64;
    let mut witness = None;
    let nodes = crate::hom::for_each_solution(&q, &mut |f| {
        extensions += 1;
        if (0..s).any(|i| is_projection_onto(&p, f, i)) {
            ControlFlow::Continue(())
        } else {
            witness = Some(Homomorphism::new(f.to_vec()));
            ControlFlow::Break(())
        }
    })?;
    Ok(TrulyProjectiveReport { holds: witness.is_none(), witness, extensions, search_nodes: nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::factorize_prime;
    use crate::graph::NamedGraph;

    fn g(id: &str) -> Graph {
        id.parse::<NamedGraph>().unwrap().build().unwrap()
    }

    #[test]
    fn cliques_and_odd_cycles_are_projective() {
        for id in ["clique:3", "clique:4", "cycle:5"] {
            let r = is_projective(&g(id), &Limits::default()).unwrap();
            assert_eq!(r.verdict, Projectivity::Projective, "{id}");
            assert!(r.extensions >= 2);
        }
    }

    #[test]
    fn product_is_not_projective() {
        let l = Limits::default().with_node_budget(10_000_000);
        let h = direct_product(&[&g("clique:3"), &g("cycle:5")], &l).unwrap();
        let r = is_projective(&h, &l).unwrap();
        assert_eq!(r.verdict, Projectivity::NotProjective);
        assert!(validate_nonprojection(&h, 2, r.witness.as_ref().unwrap(), &l).unwrap());
        let f = factorize_prime(&h, &l).unwrap();
        let w = decomposable_nonprojective_witness(&h, &f, &l).unwrap();
        assert!(validate_nonprojection(&h, 2, &w, &l).unwrap());
    }

    #[test]
    fn size_cap_needs_budget() {
        let h = g("cycle:13");
        assert!(matches!(is_projective(&h, &Limits::default()), Err(Error::Precondition(_))));
    }

    #[test]
    fn budget_gives_inconclusive() {
        let r = is_projective(&g("cycle:7"), &Limits::default().with_node_budget(1)).unwrap();
        assert_eq!(r.verdict, Projectivity::Inconclusive);
        assert!(r.note.is_some());
    }

    #[test]
    fn single_factor_has_no_witness() {
        let l = Limits::default();
        let f = factorize_prime(&g("clique:3"), &l).unwrap();
        assert!(decomposable_nonprojective_witness(&g("clique:3"), &f, &l).is_err());
    }

    #[test]
    fn truly_projective_preconditions() {
        let l = Limits::default();
        let prod = direct_product(&[&g("clique:3"), &g("cycle:5")], &l).unwrap();
        let err = truly_projective_check(&prod, &g("clique:3"), 2, WitnessClass::IncomparableCore, &l);
        assert!(matches!(err, Err(Error::Precondition(_))));
        let err = truly_projective_check(&g("clique:3"), &g("cycle:5"), 2, WitnessClass::IncomparableCore, &l);
        assert!(matches!(err, Err(Error::Precondition(_))));
        let err = truly_projective_check(&g("clique:3"), &g("cycle:5"), 1, WitnessClass::Connected, &l);
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn truly_projective_small() {
        let l = Limits::default();
        let r = truly_projective_check(&g("clique:3"), &g("clique:2"), 2, WitnessClass::Connected, &l).unwrap();
        assert!(r.holds);
        let r = truly_projective_check(&g("clique:3"), &g("grotzsch"), 2, WitnessClass::IncomparableCore, &l);
        assert!(r.unwrap().holds);
    }
}
