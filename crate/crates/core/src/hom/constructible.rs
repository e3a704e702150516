use alloc::vec::Vec;

use super::{HomQuery, Mode};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;

/// Images of `x0` over all homomorphisms `k -> h` that send each pinned `x_i` to `y_i`.
///
/// Returned ascending.
pub fn constructible_set(
    k: &Graph,
    x0: usize,
    pins: &[(usize, usize)],
    h: &Graph,
    limits: &Limits,
) -> Result<Vec<usize>> {
    for &(x, y) in pins {
        if x >= k.n() {
            return Err(Error::VertexOutOfRange { vertex: x, n: k.n() });
        }
        if y >= h.n() {
            return Err(Error::VertexOutOfRange { vertex: y, n: h.n() });
        }
    }
    let q = HomQuery::new(k, h, Mode::Decide)
        .with_pins(pins.iter().copied())
        .with_limits(limits.clone());
    Ok(super::backtrack::feasible_images(&q, x0)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NamedGraph;

    #[test]
    fn neighbor_set_and_full_set() {
        let k3 = NamedGraph::Clique(3).build().unwrap();
        let k2 = NamedGraph::Clique(2).build().unwrap();
        let l = Limits::default();
        assert_eq!(constructible_set(&k2, 0, &[(1, 0)], &k3, &l).unwrap(), [1, 2]);
        let c5 = NamedGraph::Cycle(5).build().unwrap();
        assert_eq!(constructible_set(&Graph::empty(1), 0, &[], &c5, &l).unwrap(), [0, 1, 2, 3, 4]);
        assert!(constructible_set(&k2, 0, &[(1, 7)], &k3, &l).is_err());
    }
}
