use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{HomQuery, HomResult, HomStats, Homomorphism, Mode};
use crate::error::{Error, Result};
use crate::limits::{Limits, NodeMeter};

/// Per-vertex candidate sets stored in one flat word buffer.
#[derive(Clone, Debug)]
pub(crate) struct Domains {
    words: Vec<u64>,
    sizes: Vec<u32>,
}

/// Constraint network for `source -> target` with arc-consistency propagation.
#[derive(Debug)]
pub(crate) struct Csp<'a> {
    n: usize,
    w: usize,
    nbrs: Vec<Vec<u32>>,
    tadj: Vec<u64>,
    limits: &'a Limits,
    pub(crate) meter: NodeMeter,
    queued: Vec<bool>,
    queue: Vec<usize>,
}

impl<'a> Csp<'a> {
    pub(crate) fn new(q: &'a HomQuery<'_>) -> Result<(Csp<'a>, Option<Domains>)> {
        let (g, h) = (q.source, q.target);
        let (n, k) = (g.n(), h.n());
        let w = k.div_ceil(64).max(1);
        let mut tadj = vec![0u64; k * w];
        for a in 0..k {
            for &b in h.neighbors(a) {
                tadj[a * w + (b as usize >> 6)] |= 1 << (b & 63);
            }
        }
        let nbrs = (0..n)
            .map(|v| g.neighbors(v).iter().copied().filter(|&x| x as usize != v).collect())
            .collect();
        let csp = Csp {
            n,
            w,
            nbrs,
            tadj,
            limits: &q.limits,
            meter: NodeMeter::default(),
            queued: vec![false; n],
            queue: Vec::new(),
        };

        let mut words = vec![0u64; n * w];
        for v in 0..n {
            for a in 0..k {
                words[v * w + (a >> 6)] |= 1 << (a & 63);
            }
        }
        if let Some(lists) = &q.lists {
            if lists.len() != n {
                return Err(Error::Precondition(format!(
                    "{} lists for {n} source vertices",
                    lists.len()
                )));
            }
            for (v, list) in lists.iter().enumerate() {
                for a in 0..k {
                    if !list.contains(a) {
                        words[v * w + (a >> 6)] &= !(1 << (a & 63));
                    }
                }
            }
        }
        for &(v, t) in &q.pins {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if t >= k {
                return Err(Error::VertexOutOfRange { vertex: t, n: k });
            }
            if let Some(lists) = &q.lists {
                if !lists[v].contains(t) {
                    return Err(Error::Precondition(format!(
                        "pin {v}->{t} is outside the list of {v}"
                    )));
                }
            }
            let keep = words[v * w + (t >> 6)] & (1 << (t & 63));
            words[v * w..(v + 1) * w].iter_mut().for_each(|x| *x = 0);
            words[v * w + (t >> 6)] = keep;
        }
        for v in 0..n {
            if g.has_loop(v) {
                for a in 0..k {
                    if !h.has_loop(a) {
                        words[v * w + (a >> 6)] &= !(1 << (a & 63));
                    }
                }
            }
        }
        let sizes = (0..n)
            .map(|v| words[v * w..(v + 1) * w].iter().map(|x| x.count_ones()).sum())
            .collect();
        let mut d = Domains { words, sizes };
        let mut csp = csp;
        let all: Vec<usize> = (0..n).collect();
        let ok = d.sizes.iter().all(|&s| s > 0) && csp.propagate(&mut d, &all);
        Ok((csp, ok.then_some(d)))
    }

    fn dom<'d>(&self, d: &'d Domains, v: usize) -> &'d [u64] {
        &d.words[v * self.w..(v + 1) * self.w]
    }

    pub(crate) fn values(&self, d: &Domains, v: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(d.sizes[v] as usize);
        for (i, &word) in self.dom(d, v).iter().enumerate() {
            let mut x = word;
            while x != 0 {
                out.push((i << 6) + x.trailing_zeros() as usize);
                x &= x - 1;
            }
        }
        out
    }

    fn assign(&self, d: &mut Domains, v: usize, a: usize) {
        let w = self.w;
        d.words[v * w..(v + 1) * w].iter_mut().for_each(|x| *x = 0);
        d.words[v * w + (a >> 6)] = 1 << (a & 63);
        d.sizes[v] = 1;
    }

    /// Arc consistency from the changed vertices in `seeds`. False on a wipeout.
    fn propagate(&mut self, d: &mut Domains, seeds: &[usize]) -> bool {
        let w = self.w;
        self.queue.clear();
        for &s in seeds {
            if !self.queued[s] {
                self.queued[s] = true;
                self.queue.push(s);
            }
        }
        let mut support = vec![0u64; w];
        let mut ok = true;
        while let Some(y) = self.queue.pop() {
            self.queued[y] = false;
            if !ok {
                continue;
            }
            support.iter_mut().for_each(|x| *x = 0);
            for (i, &word) in d.words[y * w..(y + 1) * w].iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let b = (i << 6) + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    for (s, t) in support.iter_mut().zip(&self.tadj[b * w..(b + 1) * w]) {
                        *s |= t;
                    }
                }
            }
            for &x in &self.nbrs[y] {
                let x = x as usize;
                let dom = &mut d.words[x * w..(x + 1) * w];
                let mut changed = false;
                let mut size = 0;
                for (dx, s) in dom.iter_mut().zip(&support) {
                    let nx = *dx & s;
                    changed |= nx != *dx;
                    *dx = nx;
                    size += nx.count_ones();
                }
                if changed {
                    d.sizes[x] = size;
                    if size == 0 {
                        ok = false;
                        break;
                    }
                    if !self.queued[x] {
                        self.queued[x] = true;
                        self.queue.push(x);
                    }
                }
            }
        }
        ok
    }

    fn pick(&self, d: &Domains, vars: Option<&[usize]>) -> Option<usize> {
        let better = |best: Option<usize>, v: usize| match best {
            None => true,
            Some(b) => d.sizes[v] < d.sizes[b],
        };
        let mut best = None;
        match vars {
            Some(vs) => {
                for &v in vs {
                    if d.sizes[v] > 1 && better(best, v) {
                        best = Some(v);
                    }
                }
            }
            None => {
                for v in 0..self.n {
                    if d.sizes[v] > 1 && better(best, v) {
                        best = Some(v);
                    }
                }
            }
        }
        best
    }

    fn solution(&self, d: &Domains) -> Vec<u32> {
        (0..self.n)
            .map(|v| {
                let dom = self.dom(d, v);
                let i = dom.iter().position(|&x| x != 0).expect("fixed");
                ((i << 6) + dom[i].trailing_zeros() as usize) as u32
            })
            .collect()
    }

    /// Visits solutions depth first; `visit` returns `Break` to stop.
    pub(crate) fn each_solution(
        &mut self,
        d: Domains,
        visit: &mut dyn FnMut(&[u32]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        self.meter.tick(self.limits, "homomorphism search")?;
        let Some(x) = self.pick(&d, None) else {
            return Ok(visit(&self.solution(&d)));
        };
        for a in self.values(&d, x) {
            let mut child = d.clone();
            self.assign(&mut child, x, a);
            if self.propagate(&mut child, &[x]) && self.each_solution(child, visit)?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    /// Exact number of solutions restricted to `vars`, all other vertices
    /// being fixed. Independent components of the unfixed part are counted
    /// separately and multiplied.
    fn count(&mut self, d: &Domains, vars: &[usize]) -> Result<BigUint> {
        self.meter.tick(self.limits, "homomorphism count")?;
        let unfixed: Vec<usize> = vars.iter().copied().filter(|&v| d.sizes[v] > 1).collect();
        if unfixed.is_empty() {
            return Ok(BigUint::one());
        }
        let comps = self.components(d, &unfixed);
        if comps.len() > 1 {
            let mut total = BigUint::one();
            for comp in comps {
                let c = if comp.len() == 1 {
                    BigUint::from(d.sizes[comp[0]])
                } else {
                    self.count(d, &comp)?
                };
                if c.is_zero() {
                    return Ok(c);
                }
                total *= c;
            }
            return Ok(total);
        }
        if unfixed.len() == 1 {
            return Ok(BigUint::from(d.sizes[unfixed[0]]));
        }
        let x = self.pick(d, Some(&unfixed)).expect("unfixed vertex");
        let mut total = BigUint::zero();
        for a in self.values(d, x) {
            let mut child = d.clone();
            self.assign(&mut child, x, a);
            if self.propagate(&mut child, &[x]) {
                total += self.count(&child, &unfixed)?;
            }
        }
        Ok(total)
    }

    fn components(&self, d: &Domains, unfixed: &[usize]) -> Vec<Vec<usize>> {
        let mut comp_of = vec![usize::MAX; self.n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for &s in unfixed {
            if comp_of[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp_of[s] = id;
            let mut members = vec![s];
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                i += 1;
                for &w in &self.nbrs[u] {
                    let w = w as usize;
                    if d.sizes[w] > 1 && comp_of[w] == usize::MAX {
                        comp_of[w] = id;
                        members.push(w);
                    }
                }
            }
            out.push(members);
        }
        out
    }
}

/// Exhaustive homomorphism search with arc consistency.
///
/// Branches on the smallest domain (ties by lowest index), values ascending.
/// Budget exhaustion returns [`Error::Inconclusive`], never a negative answer.
pub fn hom_backtrack(q: &HomQuery<'_>) -> Result<HomResult> {
    let (mut csp, start) = Csp::new(q)?;
    let mut result = HomResult::empty(false);
    result.provenance.push("backtrack".to_string());
    let Some(start) = start else {
        if q.mode == Mode::Count {
            result.count = Some(BigUint::zero());
        }
        return Ok(result);
    };
    match q.mode {
        Mode::Decide | Mode::FindOne => {
            let mut found = None;
            let _ = csp.each_solution(start, &mut |s| {
                found = Some(s.to_vec());
                ControlFlow::Break(())
            })?;
            result.exists = found.is_some();
            if q.mode == Mode::FindOne {
                result.witness = found.map(Homomorphism::new);
            }
        }
        Mode::Enumerate => {
            let cap = q.limits.enumeration_cap.unwrap_or(usize::MAX);
            let mut sols = Vec::new();
            let mut truncated = false;
            let _ = csp.each_solution(start, &mut |s| {
                if sols.len() == cap {
                    truncated = true;
                    return ControlFlow::Break(());
                }
                sols.push(Homomorphism::new(s.to_vec()));
                ControlFlow::Continue(())
            })?;
            sols.sort();
            result.exists = !sols.is_empty();
            result.witness = sols.first().cloned();
            result.solutions = sols;
            result.truncated = truncated;
        }
        Mode::Count => {
            let all: Vec<usize> = (0..q.source.n()).collect();
            let c = csp.count(&start, &all)?;
            result.exists = !c.is_zero();
            result.count = Some(c);
        }
    }
    result.stats = HomStats {
        search_nodes: csp.meter.get(),
        ..HomStats::default()
    };
    Ok(result)
}

/// Runs `visit` on every solution of `q` until it breaks; returns search nodes.
pub(crate) fn for_each_solution(
    q: &HomQuery<'_>,
    visit: &mut dyn FnMut(&[u32]) -> ControlFlow<()>,
) -> Result<u64> {
    let (mut csp, start) = Csp::new(q)?;
    if let Some(start) = start {
        let _ = csp.each_solution(start, visit)?;
    }
    Ok(csp.meter.get())
}

/// Images of `x0` that extend to a solution of `q`, ascending.
pub(crate) fn feasible_images(q: &HomQuery<'_>, x0: usize) -> Result<(Vec<usize>, u64)> {
    if x0 >= q.source.n() {
        return Err(Error::VertexOutOfRange { vertex: x0, n: q.source.n() });
    }
    let (mut csp, start) = Csp::new(q)?;
    let Some(start) = start else {
        return Ok((Vec::new(), csp.meter.get()));
    };
    let mut out = Vec::new();
    for a in csp.values(&start, x0) {
        let mut child = start.clone();
        csp.assign(&mut child, x0, a);
        if !csp.propagate(&mut child, &[x0]) {
            continue;
        }
        let found = csp
            .each_solution(child, &mut |_| ControlFlow::Break(()))?
            .is_break();
        if found {
            out.push(a);
        }
    }
    Ok((out, csp.meter.get()))
}
