use alloc::vec::Vec;

use super::{build_projective_gadget, CertificateStatus, EdgeGadget, GadgetCertificate, GadgetKind};
use crate::decomp::{validate, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, NamedGraph};
use crate::hom::{hom_solve, Mode, SolveOptions};
use crate::limits::Limits;

/// Output of [`reduce_kcoloring`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub graph: Graph,
    /// `original[x]` is the vertex of `graph` standing for `x`.
    pub original: Vec<usize>,
    /// Extension of the input decomposition, when one was supplied.
    pub decomposition: Option<TreeDecomposition>,
    pub gadget_size: usize,
}

/// Replaces every edge `xy` of `g` by a fresh copy of the projective gadget of
/// `h`, with `u*` identified with `x` and `v*` with `y`.
///
/// `G*` has `|V(G)| + |E(G)|·(|F| − 2)` vertices; original vertices keep their
/// indices and copies follow in edge order. With a decomposition of `g`, each
/// copy gets a new bag `X_b ∪ V(F_xy)` attached after the first bag `b` holding
/// both endpoints.
pub fn reduce_kcoloring(
    g: &Graph,
    h: &Graph,
    d: Option<&TreeDecomposition>,
    limits: &Limits,
) -> Result<Reduction> {
    let gadget = build_projective_gadget(h, limits)?;
    let Some(f) = gadget.graph.as_ref() else {
        return Err(Error::Precondition(alloc::format!(
            "gadget has {} vertices, above the vertex limit",
            gadget.vertex_count()
        )));
    };
    if let Some(d) = d {
        validate(g, d)?;
    }
    let edges = g.edges();
    let fsize = f.n();
    let total = g.n() as u128 + edges.len() as u128 * (fsize as u128 - 2);
    limits.check_vertices(total)?;
    let (u, v) = (gadget.u_index(), gadget.v_index());
    let fedges = f.edges();
    let mut out_edges = Vec::with_capacity(edges.len() * fedges.len());
    let mut next = g.n();
    let mut copies = Vec::with_capacity(edges.len());
    let mut ids = alloc::vec![0usize; fsize];
    for &(x, y) in &edges {
        for (i, id) in ids.iter_mut().enumerate() {
            *id = if i == u {
                x
            } else if i == v {
                y
            } else {
                next += 1;
                next - 1
            };
        }
        out_edges.extend(fedges.iter().map(|&(a, b)| (ids[a], ids[b])));
        copies.push(ids.clone());
    }
    let graph = Graph::new(next, out_edges)?;
    let decomposition = match d {
        None => None,
        Some(d) => {
            let mut ext = d.clone();
            for (&(x, y), copy) in edges.iter().zip(&copies) {
                let b = (0..d.node_count())
                    .find(|&b| {
                        let bag = d.bag(b);
                        bag.binary_search(&(x as u32)).is_ok() && bag.binary_search(&(y as u32)).is_ok()
                    })
                    .ok_or_else(|| Error::InvalidDecomposition(alloc::format!("no bag holds edge {x}-{y}")))?;
                let mut bag: Vec<u32> = d.bag(b).to_vec();
                bag.extend(copy.iter().map(|&c| c as u32));
                ext.attach_after(b, bag);
            }
            Some(ext)
        }
    };
    Ok(Reduction { graph, original: (0..g.n()).collect(), decomposition, gadget_size: fsize })
}

/// Decides `G* -> H` from an unconditional gadget certificate alone.
///
/// Property (a) lets every pair of distinct colors extend through a copy and
/// property (b) forbids equal colors, so `G* -> H` holds exactly when `g`
/// maps to the "distinct" relation on `V(H)`, i.e. to `K_|H|`.
pub fn certificate_evaluate(
    g: &Graph,
    gadget: &EdgeGadget,
    cert: &GadgetCertificate,
    limits: &Limits,
) -> Result<bool> {
    if gadget.kind != GadgetKind::Projective || cert.status != CertificateStatus::Unconditional {
        return Err(Error::Precondition("needs an unconditional projective gadget certificate".into()));
    }
    let k = NamedGraph::Clique(gadget.target.n()).build()?;
    let opts = SolveOptions::new(Mode::Decide).with_limits(limits.clone());
    Ok(hom_solve(g, &k, None, &opts)?.exists)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NamedGraph;

    fn g(id: &str) -> Graph {
        id.parse::<NamedGraph>().unwrap().build().unwrap()
    }

    #[test]
    fn sizes() {
        let l = Limits::default();
        let r = reduce_kcoloring(&g("clique:2"), &g("clique:3"), None, &l).unwrap();
        assert_eq!(r.graph.n(), 729);
        let r = reduce_kcoloring(&g("clique:3"), &g("clique:3"), None, &l).unwrap();
        assert_eq!(r.graph.n(), 2184);
        assert!(reduce_kcoloring(&g("clique:2"), &g("cycle:5"), None, &l).is_err());
    }

    #[test]
    fn extended_path_decomposition_validates() {
        let l = Limits::default();
        let c5 = g("cycle:5");
        let d = TreeDecomposition::path(alloc::vec![alloc::vec![0, 1, 4], alloc::vec![1, 2, 4], alloc::vec![2, 3, 4]]);
        let r = reduce_kcoloring(&c5, &g("clique:3"), Some(&d), &l).unwrap();
        let dx = r.decomposition.unwrap();
        assert_eq!(validate(&r.graph, &dx), Ok(()));
        assert!(dx.width() <= d.width() + 729);
        assert_eq!(dx.kind(), crate::decomp::DecompositionKind::Path);
        assert!(dx.check_structure().is_ok());
    }
}
