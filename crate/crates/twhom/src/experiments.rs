//! Experiment runners: named core checks, product-core checks, and the
//! dynamic-programming-versus-backtracking oracle sweep.

use std::collections::BTreeSet;

use anyhow::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twhom_core::algebra::is_indecomposable;
use twhom_core::cores::incomparable;
use twhom_core::decomp::{heuristic_decomposition, to_nice};
use twhom_core::graph::{direct_product, NamedGraph};
use twhom_core::hom::{hom_backtrack, hom_dp, HomQuery, Mode};
use twhom_core::{Error, Graph, Limits};

use crate::parallel::core_check;
use crate::report::{InputDigest, RunReport};
use crate::specifier::parse_specifier;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Tier {
    Quick,
    Full,
}

fn core_item(label: &str, h: &Graph, limits: &Limits, threads: usize) -> RunReport {
    let mut item = RunReport::new(format!("core {label}"));
    item.inputs.push(InputDigest::new("graph", label, h));
    match core_check(h, limits, threads) {
        Ok(c) => {
            item.verdict = if c.is_core() { "is-core" } else { "not-core" }.into();
            item.stats.search_nodes = c.search_nodes();
            item.fact("vertex_searches", c.searches.len());
            if let Some(w) = &c.witness {
                item.witness("endomorphism", &w.mapping);
            }
        }
        Err(e) if e.is_inconclusive() => {
            item.inconclusive(e);
        }
        Err(e) => {
            item.verdict = "error".into();
            item.definite = false;
            item.fact("error", e);
        }
    }
    item
}

/// Core checks of `K3 × X` for Grötzsch (quick) plus Chvátal and Brinkmann (full).
pub fn paper_cores(tier: Tier, limits: &Limits, threads: usize) -> Result<RunReport> {
    let mut report = RunReport::new(format!("experiment paper-5-cores --tier {}", tier_name(tier)));
    let mut names = vec![NamedGraph::Grotzsch];
    if tier == Tier::Full {
        names.extend([NamedGraph::Chvatal, NamedGraph::Brinkmann]);
    }
    let k3 = NamedGraph::Clique(3).build()?;
    for name in names {
        let h = direct_product(&[&k3, &name.build()?], limits)?;
        report.items.push(core_item(&format!("product:clique:3,{}", name.id()), &h, limits, threads));
    }
    summarize(&mut report, |v| v == "is-core");
    Ok(report)
}

/// Core checks of `H1 × H2` for pairs of incomparable indecomposable cores.
///
/// Each pair is first verified (both cores, both indecomposable, incomparable);
/// a pair that fails verification is reported as skipped.
pub fn conjecture_18(pairs: &[(String, String)], limits: &Limits, threads: usize) -> Result<RunReport> {
    let mut report = RunReport::new("experiment conjecture-18");
    let defaults = [("clique:3", "grotzsch"), ("clique:3", "chvatal")];
    let pairs: Vec<(String, String)> = if pairs.is_empty() {
        defaults.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    } else {
        pairs.to_vec()
    };
    for (a, b) in &pairs {
        let (ga, gb) = (parse_specifier(a, limits)?, parse_specifier(b, limits)?);
        let label = format!("product:{a},{b}");
        match precheck(&ga, &gb, limits, threads) {
            Ok(None) => {
                let h = direct_product(&[&ga, &gb], limits)?;
                report.items.push(core_item(&label, &h, limits, threads));
            }
            Ok(Some(why)) => {
                let mut item = RunReport::new(format!("core {label}"));
                item.verdict = "skipped".into();
                item.fact("reason", why);
                report.items.push(item);
            }
            Err(e) if e.is_inconclusive() => {
                let mut item = RunReport::new(format!("core {label}"));
                item.inconclusive(e);
                report.items.push(item);
            }
            Err(e) => return Err(e.into()),
        }
    }
    summarize(&mut report, |v| v == "is-core" || v == "skipped");
    Ok(report)
}

fn precheck(a: &Graph, b: &Graph, limits: &Limits, threads: usize) -> Result<Option<String>, Error> {
    for (name, g) in [("first", a), ("second", b)] {
        if !core_check(g, limits, threads)?.is_core() {
            return Ok(Some(format!("{name} graph is not a core")));
        }
        if g.n() >= 2 && !is_indecomposable(g, limits)? {
            return Ok(Some(format!("{name} graph is decomposable")));
        }
    }
    if !incomparable(a, b, limits)? {
        return Ok(Some("graphs are comparable".into()));
    }
    Ok(None)
}

fn summarize(report: &mut RunReport, ok: impl Fn(&str) -> bool) {
    let definite = report.items.iter().all(RunReport::all_definite);
    let passed = report.items.iter().filter(|i| ok(&i.verdict)).count();
    report.definite = definite;
    report.verdict = if !definite {
        "inconclusive".into()
    } else if passed == report.items.len() {
        "pass".into()
    } else {
        "fail".into()
    };
    report.budget.exhausted = !definite;
    report.stats.search_nodes = report.items.iter().map(|i| i.stats.search_nodes).sum();
    report.fact("items", report.items.len()).fact("items_as_expected", passed);
}

fn tier_name(t: Tier) -> &'static str {
    match t {
        Tier::Quick => "quick",
        Tier::Full => "full",
    }
}

/// Connected graphs with at most `max_n` vertices, one per isomorphism class.
pub fn connected_graphs(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            let g = Graph::new(n, edges.iter().copied()).expect("valid edges");
            if !g.is_connected() {
                continue;
            }
            let canon = perms
                .iter()
                .map(|p| {
                    let mut m = 0u32;
                    for &(u, v) in &edges {
                        let (a, b) = (p[u].min(p[v]), p[u].max(p[v]));
                        let idx = pairs.iter().position(|&e| e == (a, b)).expect("pair");
                        m |= 1 << idx;
                    }
                    m
                })
                .min()
                .expect("a permutation");
            if seen.insert(canon) {
                out.push(g);
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    heap(n, &mut p, &mut out);
    out
}

fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k - 1 {
        heap(k - 1, p, out);
        if k.is_multiple_of(2) {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
    heap(k - 1, p, out);
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64, loop_p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        if rng.gen_bool(loop_p) {
            edges.push((u, u));
        }
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("valid edges")
}

/// Compares DP and backtracking (decision and count) on one pair; `None` if they agree.
pub fn compare(g: &Graph, h: &Graph, limits: &Limits) -> Result<Option<String>> {
    let nice = to_nice(&heuristic_decomposition(g))?;
    let dp_count = hom_dp(g, h, &nice, Mode::Count, limits)?;
    let dp_decide = hom_dp(g, h, &nice, Mode::Decide, limits)?;
    let bt_count = hom_backtrack(&HomQuery::new(g, h, Mode::Count).with_limits(limits.clone()))?;
    let bt_decide = hom_backtrack(&HomQuery::new(g, h, Mode::Decide).with_limits(limits.clone()))?;
    let agree = dp_count.count == bt_count.count
        && dp_decide.exists == bt_decide.exists
        && dp_count.exists == dp_decide.exists;
    Ok((!agree).then(|| {
        format!(
            "n={} m={} -> n={} m={}: dp {:?}/{} backtrack {:?}/{}",
            g.n(),
            g.edge_count(),
            h.n(),
            h.edge_count(),
            dp_count.count,
            dp_decide.exists,
            bt_count.count,
            bt_decide.exists
        )
    }))
}

/// Exhaustive sweep over connected graphs on at most six vertices against
/// `K3, K4, C5, C7`, then `random_pairs` random pairs (source ≤ 9, target ≤ 7 vertices).
pub fn oracle_suite(seed: u64, random_pairs: usize, limits: &Limits) -> Result<RunReport> {
    let mut report = RunReport::new(format!("experiment oracle-suite --seed {seed}"));
    let targets: Vec<Graph> = [NamedGraph::Clique(3), NamedGraph::Clique(4), NamedGraph::Cycle(5), NamedGraph::Cycle(7)]
        .into_iter()
        .map(NamedGraph::build)
        .collect::<Result<_, _>>()?;
    let mut mismatches = Vec::new();
    let sources = connected_graphs(6);
    for g in &sources {
        for h in &targets {
            mismatches.extend(compare(g, h, limits)?);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random_pairs {
        let gn = rng.gen_range(1..=9);
        let hn = rng.gen_range(1..=7);
        let gp = rng.gen_range(0.1..0.6);
        let hp = rng.gen_range(0.2..0.9);
        let g = random_graph(&mut rng, gn, gp, 0.0);
        let h = random_graph(&mut rng, hn, hp, 0.05);
        mismatches.extend(compare(&g, &h, limits)?);
    }
    report.fact("exhaustive_sources", sources.len());
    report.fact("exhaustive_cases", sources.len() * targets.len());
    report.fact("random_cases", random_pairs);
    report.fact("mismatches", mismatches.len());
    for (i, m) in mismatches.iter().take(10).enumerate() {
        report.fact(format!("mismatch.{i}"), m);
    }
    report.verdict = if mismatches.is_empty() { "pass" } else { "fail" }.into();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_graph_census() {
        // connected graphs up to isomorphism on 1..=5 vertices: 1, 1, 2, 6, 21
        assert_eq!(connected_graphs(5).len(), 31);
    }

    #[test]
    fn small_oracle_run() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let g = random_graph(&mut rng, 6, 0.4, 0.0);
            let h = random_graph(&mut rng, 4, 0.6, 0.1);
            assert_eq!(compare(&g, &h, &Limits::default()).unwrap(), None);
        }
    }
}
