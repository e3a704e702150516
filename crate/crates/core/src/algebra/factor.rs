use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::{direct_product, isomorphic, mixed_radix, Graph, ProductLabels};
use crate::limits::{Limits, NodeMeter};

/// Prime factors of a graph together with the coordinate isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<Graph>,
    /// `iso.coords(v)[i]` is the vertex of `factors[i]` that `v` corresponds to.
    pub iso: ProductLabels,
    inverse: Vec<u32>,
}

impl Factorization {
    fn new(factors: Vec<Graph>, tuples: &[Vec<u32>]) -> Result<Self> {
        let radices: Vec<u32> = factors.iter().map(|f| f.n() as u32).collect();
        let iso = ProductLabels::new(radices, tuples)?;
        let mut inverse = vec![0u32; tuples.len()];
        for (v, t) in tuples.iter().enumerate() {
            inverse[mixed_radix(iso.radices(), t)] = v as u32;
        }
        Ok(Factorization { factors, iso, inverse })
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1
    }

    /// The vertex of the factorized graph with the given coordinates.
    pub fn vertex_of(&self, coords: &[u32]) -> usize {
        self.inverse[mixed_radix(self.iso.radices(), coords)] as usize
    }
}

/// Splits a connected non-bipartite graph into directly indecomposable factors.
///
/// Factors are ordered by size, then edge count, then degree sequence, then
/// edge list. Coordinate labels left by [`direct_product`] are used as a hint
/// when they verify; every factor is then split further by search.
pub fn factorize_prime(h: &Graph, limits: &Limits) -> Result<Factorization> {
    if h.n() < 2 || !h.is_connected() || h.is_bipartite() {
        return Err(Error::Precondition(
            "factorization needs a connected non-bipartite graph on at least two vertices".into(),
        ));
    }
    let mut meter = NodeMeter::default();
    let parts = match label_hint(h) {
        Some(hinted) => {
            let mut parts = Vec::new();
            for (f, coord) in hinted {
                for (sub, sc) in factor_rec(&f, limits, &mut meter)? {
                    parts.push((sub, coord.iter().map(|&c| sc[c as usize]).collect()));
                }
            }
            parts
        }
        None => factor_rec(h, limits, &mut meter)?,
    };
    let mut order: Vec<usize> = (0..parts.len()).collect();
    order.sort_by(|&x, &y| canonical_cmp(&parts[x].0, &parts[y].0));
    let tuples: Vec<Vec<u32>> = (0..h.n())
        .map(|v| order.iter().map(|&i| parts[i].1[v]).collect())
        .collect();
    let mut factors: Vec<Option<Graph>> = parts.into_iter().map(|p| Some(p.0)).collect();
    let factors = order.iter().map(|&i| factors[i].take().expect("each factor once")).collect();
    Factorization::new(factors, &tuples)
}

/// Looks for one nontrivial split `h ≅ A × B`; `None` when `h` is indecomposable.
pub fn is_indecomposable(h: &Graph, limits: &Limits) -> Result<bool> {
    let mut meter = NodeMeter::default();
    Ok(find_split(h, limits, &mut meter)?.is_none())
}

/// Materializes the product of `factors` and searches an isomorphism from `h`.
///
/// The returned map sends each vertex of `h` to its product vertex (mixed
/// radix, first factor most significant).
pub fn verify_factorization(h: &Graph, factors: &[Graph], limits: &Limits) -> Result<Option<Vec<usize>>> {
    let size: u128 = factors.iter().map(|f| f.n() as u128).product();
    if factors.is_empty() || size != h.n() as u128 {
        return Err(Error::SizeMismatch(format!(
            "factor sizes multiply to {size}, graph has {} vertices",
            h.n()
        )));
    }
    let refs: Vec<&Graph> = factors.iter().collect();
    let product = direct_product(&refs, limits)?;
    Ok(isomorphic(h, &product))
}

type Part = (Graph, Vec<u32>);

fn factor_rec(h: &Graph, limits: &Limits, meter: &mut NodeMeter) -> Result<Vec<Part>> {
    match find_split(h, limits, meter)? {
        None => Ok(vec![(h.clone().without_labels(), (0..h.n() as u32).collect())]),
        Some(split) => {
            let mut out = Vec::new();
            for (g, coord) in [(&split.a, &split.alpha), (&split.b, &split.beta)] {
                for (sub, sc) in factor_rec(g, limits, meter)? {
                    out.push((sub, coord.iter().map(|&c| sc[c as usize]).collect()));
                }
            }
            Ok(out)
        }
    }
}

fn label_hint(h: &Graph) -> Option<Vec<Part>> {
    let labels = h.labels()?;
    if labels.factor_count() < 2 {
        return None;
    }
    let k = labels.factor_count();
    let mut factor_edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k];
    for (u, v) in h.edges() {
        for (i, fe) in factor_edges.iter_mut().enumerate() {
            fe.push((labels.coords(u)[i] as usize, labels.coords(v)[i] as usize));
        }
    }
    let factors: Vec<Graph> = factor_edges
        .into_iter()
        .zip(labels.radices())
        .map(|(e, &r)| Graph::new(r as usize, e))
        .collect::<Result<_>>()
        .ok()?;
    for u in 0..h.n() {
        for v in u..h.n() {
            let (cu, cv) = (labels.coords(u), labels.coords(v));
            let law = factors
                .iter()
                .enumerate()
                .all(|(i, f)| f.has_edge(cu[i] as usize, cv[i] as usize));
            if law != h.has_edge(u, v) {
                return None;
            }
        }
    }
    // radix-1 coordinates are looped units
    Some(
        factors
            .into_iter()
            .enumerate()
            .filter(|(_, f)| f.n() > 1)
            .map(|(i, f)| (f, (0..h.n()).map(|v| labels.coords(v)[i]).collect()))
            .collect(),
    )
}

fn canonical_cmp(x: &Graph, y: &Graph) -> Ordering {
    let degrees = |g: &Graph| {
        let mut d: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
        d.sort_unstable();
        d
    };
    x.n()
        .cmp(&y.n())
        .then(x.edge_count().cmp(&y.edge_count()))
        .then_with(|| degrees(x).cmp(&degrees(y)))
        .then_with(|| x.edges().cmp(&y.edges()))
}

struct Split {
    a: Graph,
    b: Graph,
    alpha: Vec<u32>,
    beta: Vec<u32>,
}

const UNKNOWN: i8 = -1;

/// Product-labeling search for `h ≅ A × B` with `|A| = a ≤ b = |B|`.
///
/// Vertices are labeled `(α, β)` in BFS order; new coordinate values appear in
/// first-use order. Adjacency of `A` and `B` is a tri-state matrix driven by
/// the product law `uv ∈ E(h) ⇔ α(u)α(v) ∈ E(A) ∧ β(u)β(v) ∈ E(B)`.
struct LabelSearch<'g> {
    h: &'g Graph,
    hmat: Vec<bool>,
    order: Vec<usize>,
    a: usize,
    b: usize,
    alpha: Vec<u32>,
    beta: Vec<u32>,
    used: Vec<bool>,
    amat: Vec<i8>,
    bmat: Vec<i8>,
    by_alpha: Vec<Vec<u32>>,
    by_beta: Vec<Vec<u32>>,
    trail: Vec<(bool, usize)>,
    queue: VecDeque<(bool, usize, usize)>,
}

fn find_split(h: &Graph, limits: &Limits, meter: &mut NodeMeter) -> Result<Option<Split>> {
    let n = h.n();
    for a in 2..n {
        if a * a > n {
            break;
        }
        if !n.is_multiple_of(a) {
            continue;
        }
        if let Some(s) = LabelSearch::new(h, a, n / a).run(limits, meter)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

impl<'g> LabelSearch<'g> {
    fn new(h: &'g Graph, a: usize, b: usize) -> Self {
        let n = h.n();
        let mut hmat = vec![false; n * n];
        for u in 0..n {
            for &v in h.neighbors(u) {
                hmat[u * n + v as usize] = true;
            }
        }
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                order.push(u);
                for &v in h.neighbors(u) {
                    if !core::mem::replace(&mut seen[v as usize], true) {
                        q.push_back(v as usize);
                    }
                }
            }
        }
        LabelSearch {
            h,
            hmat,
            order,
            a,
            b,
            alpha: vec![u32::MAX; n],
            beta: vec![u32::MAX; n],
            used: vec![false; a * b],
            amat: vec![UNKNOWN; a * a],
            bmat: vec![UNKNOWN; b * b],
            by_alpha: vec![Vec::new(); a],
            by_beta: vec![Vec::new(); b],
            trail: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    fn run(mut self, limits: &Limits, meter: &mut NodeMeter) -> Result<Option<Split>> {
        if self.search(0, 0, 0, limits, meter)? {
            Ok(Some(self.finish()))
        } else {
            Ok(None)
        }
    }

    fn search(&mut self, depth: usize, na: usize, nb: usize, limits: &Limits, meter: &mut NodeMeter) -> Result<bool> {
        meter.tick(limits, "factorization search")?;
        if depth == self.order.len() {
            return Ok(true);
        }
        let v = self.order[depth];
        let pa = (na + 1).min(self.a);
        let pb = (nb + 1).min(self.b);
        for p in 0..pa {
            for q in 0..pb {
                if self.used[p * self.b + q] {
                    continue;
                }
                let mark = self.trail.len();
                self.place(v, p, q);
                if self.propagate_vertex(v) && self.degrees_ok() {
                    let (na2, nb2) = (na.max(p + 1), nb.max(q + 1));
                    if self.search(depth + 1, na2, nb2, limits, meter)? {
                        return Ok(true);
                    }
                }
                self.unplace(v, p, q, mark);
            }
        }
        Ok(false)
    }

    fn place(&mut self, v: usize, p: usize, q: usize) {
        self.alpha[v] = p as u32;
        self.beta[v] = q as u32;
        self.used[p * self.b + q] = true;
        self.by_alpha[p].push(v as u32);
        self.by_beta[q].push(v as u32);
    }

    fn unplace(&mut self, v: usize, p: usize, q: usize, mark: usize) {
        while self.trail.len() > mark {
            let (is_a, idx) = self.trail.pop().expect("trail entry");
            if is_a {
                self.amat[idx] = UNKNOWN;
            } else {
                self.bmat[idx] = UNKNOWN;
            }
        }
        self.queue.clear();
        self.alpha[v] = u32::MAX;
        self.beta[v] = u32::MAX;
        self.used[p * self.b + q] = false;
        self.by_alpha[p].pop();
        self.by_beta[q].pop();
    }

    fn set(&mut self, is_a: bool, i: usize, j: usize, val: i8) -> bool {
        let (mat, dim) = if is_a { (&mut self.amat, self.a) } else { (&mut self.bmat, self.b) };
        let cur = mat[i * dim + j];
        if cur != UNKNOWN {
            return cur == val;
        }
        mat[i * dim + j] = val;
        self.trail.push((is_a, i * dim + j));
        if i != j {
            mat[j * dim + i] = val;
            self.trail.push((is_a, j * dim + i));
        }
        self.queue.push_back((is_a, i, j));
        true
    }

    fn enforce(&mut self, x: usize, y: usize) -> bool {
        let n = self.h.n();
        let (i, j) = (self.alpha[x] as usize, self.alpha[y] as usize);
        let (k, l) = (self.beta[x] as usize, self.beta[y] as usize);
        let av = self.amat[i * self.a + j];
        let bv = self.bmat[k * self.b + l];
        if self.hmat[x * n + y] {
            av != 0 && bv != 0 && self.set(true, i, j, 1) && self.set(false, k, l, 1)
        } else {
            match (av, bv) {
                (1, 1) => false,
                (1, _) => self.set(false, k, l, 0),
                (_, 1) => self.set(true, i, j, 0),
                _ => true,
            }
        }
    }

    fn propagate_vertex(&mut self, v: usize) -> bool {
        for idx in 0..self.order.len() {
            let u = self.order[idx];
            if self.alpha[u] == u32::MAX {
                break;
            }
            if !self.enforce(u, v) {
                return false;
            }
        }
        while let Some((is_a, i, j)) = self.queue.pop_front() {
            let (xs, ys) = if is_a {
                (self.by_alpha[i].clone(), self.by_alpha[j].clone())
            } else {
                (self.by_beta[i].clone(), self.by_beta[j].clone())
            };
            for &x in &xs {
                for &y in &ys {
                    if !self.enforce(x as usize, y as usize) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `deg(v)` must lie between the products of known and possible coordinate degrees.
    fn degrees_ok(&self) -> bool {
        let bounds = |mat: &[i8], dim: usize, r: usize| {
            let row = &mat[r * dim..(r + 1) * dim];
            let ones = row.iter().filter(|&&x| x == 1).count();
            let open = row.iter().filter(|&&x| x != 0).count();
            (ones, open)
        };
        self.order.iter().take_while(|&&v| self.alpha[v] != u32::MAX).all(|&v| {
            let (la, ha) = bounds(&self.amat, self.a, self.alpha[v] as usize);
            let (lb, hb) = bounds(&self.bmat, self.b, self.beta[v] as usize);
            let d = self.h.degree(v);
            la * lb <= d && d <= ha * hb
        })
    }

    fn finish(self) -> Split {
        let build = |mat: &[i8], dim: usize| {
            let edges = (0..dim)
                .flat_map(|i| (i..dim).map(move |j| (i, j)))
                .filter(|&(i, j)| mat[i * dim + j] == 1);
            Graph::new(dim, edges).expect("indices in range")
        };
        Split {
            a: build(&self.amat, self.a),
            b: build(&self.bmat, self.b),
            alpha: self.alpha,
            beta: self.beta,
        }
    }
}
