//! Subcommand implementations. Each returns a report; IO errors and parse
//! errors are returned as `Err`, budget exhaustion as an inconclusive report.

use std::fs;
use std::time::Instant;

use anyhow::{Context, Result};
use twhom_core::algebra::{
    decomposable_nonprojective_witness, factorize_prime, is_projective, verify_factorization, Projectivity,
    PROJECTIVITY_SIZE_CAP,
};
use twhom_core::cores::core_of;
use twhom_core::decomp::{validate, TreeDecomposition};
use twhom_core::gadgets::{
    build_nonprojective_gadget, build_projective_gadget, reduce_kcoloring, verify_gadget, CertificateStatus,
    GadgetCheckOptions,
};
use twhom_core::hom::{hom_solve, Mode, SolveOptions};
use twhom_core::{Error, Graph, Limits};

use crate::budget::build_limits;
use crate::cli::{Cli, Command, ExperimentName, GlobalArgs, ModeArg};
use crate::experiments::{conjecture_18, oracle_suite, paper_cores};
use crate::formats::{as_path, parse_td, write_dimacs, write_map, write_td};
use crate::parallel::core_check;
use crate::report::{InputDigest, RunReport, Stats};
use crate::specifier::parse_specifier;

/// Node budget applied to projectivity tests above the size cap when none is given.
pub const DEFAULT_PROJECTIVITY_BUDGET: u64 = 10_000_000;

pub fn run(cli: &Cli, echo: &str) -> Result<RunReport> {
    let g = &cli.global;
    let limits = build_limits(g.budget, g.time_limit)?;
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Solve { source, target, td, mode, no_factor_dispatch } => {
            solve(source, target, td.as_deref(), *mode, *no_factor_dispatch, &limits)?
        }
        Command::Core { graph } => core(graph, &limits, g.threads)?,
        Command::Projective { graph } => projective(graph, &limits)?,
        Command::Factor { graph } => factor(graph, &limits)?,
        Command::Gadget { target, extra, w, out } => gadget(target, extra.as_deref(), *w, out.as_deref(), g, &limits)?,
        Command::Reduce { graph, target, td_in, td_out, out, map } => {
            reduce(graph, target, td_in.as_deref(), td_out.as_deref(), out.as_deref(), map.as_deref(), &limits)?
        }
        Command::Experiment { name, tier, pair, random_pairs } => match name {
            ExperimentName::PaperCores => paper_cores(*tier, &limits, g.threads)?,
            ExperimentName::Conjecture18 => {
                let pairs: Vec<(String, String)> =
                    pair.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect();
                conjecture_18(&pairs, &limits, g.threads)?
            }
            ExperimentName::OracleSuite => oracle_suite(g.seed, *random_pairs, &limits)?,
        },
    };
    report.command = echo.to_string();
    report.budget.node_budget = limits.node_budget;
    report.budget.time_limit_s = g.time_limit;
    if g.timing {
        report.stats.wall_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

fn load(role: &str, spec: &str, limits: &Limits, report: &mut RunReport) -> Result<Graph> {
    let g = parse_specifier(spec, limits)?;
    report.inputs.push(InputDigest::new(role, spec, &g));
    Ok(g)
}

fn load_td(path: &std::path::Path, g: &Graph) -> Result<TreeDecomposition> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let d = parse_td(&text).with_context(|| format!("parsing {}", path.display()))?;
    validate(g, &d).map_err(|v| anyhow::anyhow!("invalid decomposition {}: {v}", path.display()))?;
    Ok(as_path(&d).unwrap_or(d))
}

/// Turns budget exhaustion into an inconclusive report and passes other errors on.
fn settle<T>(r: twhom_core::Result<T>, report: &mut RunReport) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_inconclusive() => {
            report.inconclusive(e);
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn solve(
    source: &str,
    target: &str,
    td: Option<&std::path::Path>,
    mode: ModeArg,
    no_factor_dispatch: bool,
    limits: &Limits,
) -> Result<RunReport> {
    let mut report = RunReport::new("solve");
    let g = load("source", source, limits, &mut report)?;
    let h = load("target", target, limits, &mut report)?;
    let d = td.map(|p| load_td(p, &g)).transpose()?;
    let mode = match mode {
        ModeArg::Decide => Mode::Decide,
        ModeArg::Find => Mode::FindOne,
        ModeArg::Count => Mode::Count,
        ModeArg::Enumerate => Mode::Enumerate,
    };
    let mut opts = SolveOptions::new(mode).with_limits(limits.clone());
    if no_factor_dispatch {
        opts = opts.without_factor_dispatch();
    }
    let Some(r) = settle(hom_solve(&g, &h, d.as_ref(), &opts), &mut report)? else {
        return Ok(report);
    };
    report.verdict = yes_no(r.exists).into();
    report.provenance = r.provenance.clone();
    report.stats = Stats::from_hom(&r.stats);
    if let Some(c) = &r.count {
        report.fact("count", c);
    }
    if let Some(w) = &r.witness {
        report.witness("homomorphism", &w.mapping);
    }
    if mode == Mode::Enumerate {
        report.fact("solutions", r.solutions.len()).fact("truncated", r.truncated);
        for (i, s) in r.solutions.iter().enumerate() {
            report.witness(format!("solution.{i}"), &s.mapping);
        }
    }
    Ok(report)
}

fn describe(g: &Graph) -> String {
    let n = g.n();
    if n == 1 {
        return if g.has_loop(0) { "looped vertex".into() } else { "single vertex".into() };
    }
    if !g.has_loops() && g.edge_count() == n * (n - 1) / 2 {
        return format!("clique:{n}");
    }
    format!("{n} vertices, {} edges", g.edge_count())
}

pub fn core(spec: &str, limits: &Limits, threads: usize) -> Result<RunReport> {
    let mut report = RunReport::new("core");
    let g = load("graph", spec, limits, &mut report)?;
    let Some(cert) = settle(core_check(&g, limits, threads), &mut report)? else {
        return Ok(report);
    };
    report.stats.search_nodes = cert.search_nodes();
    report.provenance.push(format!("avoid-vertex searches: {}", cert.searches.len()));
    report.verdict = if cert.is_core() { "is-core" } else { "not-core" }.into();
    if let Some(w) = &cert.witness {
        report.witness("endomorphism", &w.mapping);
        let Some(c) = settle(core_of(&g, limits), &mut report)? else {
            return Ok(report);
        };
        let verts: Vec<String> = c.vertices.iter().map(usize::to_string).collect();
        report.fact("core.vertices", verts.join(" "));
        report.fact("core.size", c.core.n());
        report.fact("core.graph", describe(&c.core));
        report.witness("retraction", &c.retraction.mapping);
    }
    Ok(report)
}

pub fn projective(spec: &str, limits: &Limits) -> Result<RunReport> {
    let mut report = RunReport::new("projective");
    let h = load("graph", spec, limits, &mut report)?;
    let mut limits = limits.clone();
    if h.n() > PROJECTIVITY_SIZE_CAP && limits.node_budget.is_none() {
        limits.node_budget = Some(DEFAULT_PROJECTIVITY_BUDGET);
        report.fact("budget_note", format!("above {PROJECTIVITY_SIZE_CAP} vertices, default node budget applied"));
    }
    let r = is_projective(&h, &limits)?;
    report.stats.search_nodes = r.search_nodes;
    report.fact("idempotent_extensions", r.extensions);
    report.provenance.push("square with pinned diagonal, exhaustive enumeration".into());
    match r.verdict {
        Projectivity::Projective => report.verdict = "projective".into(),
        Projectivity::NotProjective => {
            report.verdict = "not-projective".into();
            if let Some(w) = &r.witness {
                report.witness("idempotent_nonprojection", &w.mapping);
            }
            if h.is_connected() && !h.is_bipartite() {
                if let Some(f) = settle(factorize_prime(&h, &limits), &mut report)? {
                    if f.factors.len() >= 2 {
                        let w = decomposable_nonprojective_witness(&h, &f, &limits)?;
                        report.witness("mixed_coordinates", &w.mapping);
                    }
                }
            }
        }
        Projectivity::Inconclusive => {
            report.inconclusive(r.note.unwrap_or_default());
        }
    }
    Ok(report)
}

pub fn factor(spec: &str, limits: &Limits) -> Result<RunReport> {
    let mut report = RunReport::new("factor");
    let h = load("graph", spec, limits, &mut report)?;
    let f = match factorize_prime(&h, limits) {
        Err(Error::Precondition(why)) => {
            report.verdict = "rejected".into();
            report.fact("reason", why);
            return Ok(report);
        }
        other => other,
    };
    let Some(f) = settle(f, &mut report)? else {
        return Ok(report);
    };
    report.verdict = if f.is_prime() { "prime" } else { "composite" }.into();
    let sizes: Vec<String> = f.factors.iter().map(|x| x.n().to_string()).collect();
    report.fact("factor_sizes", sizes.join(" "));
    for (i, x) in f.factors.iter().enumerate() {
        report.fact(format!("factor.{i}"), describe(x));
        report.fact(format!("factor.{i}.dimacs"), write_dimacs(x).trim_end().replace('\n', "; "));
    }
    let verified = verify_factorization(&h, &f.factors, limits)?.is_some();
    report.fact("verified", verified);
    Ok(report)
}

pub fn gadget(
    spec: &str,
    extra: Option<&str>,
    w: usize,
    out: Option<&std::path::Path>,
    global: &GlobalArgs,
    limits: &Limits,
) -> Result<RunReport> {
    let mut report = RunReport::new("gadget");
    let h = load("target", spec, limits, &mut report)?;
    let gd = match extra {
        None => build_projective_gadget(&h, limits)?,
        Some(r) => {
            let r = load("extra", r, limits, &mut report)?;
            build_nonprojective_gadget(&h, &r, w, limits)?
        }
    };
    report.fact("kind", format!("{:?}", gd.kind).to_lowercase());
    report.fact("coords", gd.coords);
    report.fact("vertices", gd.vertex_count());
    report.fact("materialized", gd.is_materialized());
    report.witness("u_star", &gd.u_star).witness("v_star", &gd.v_star);
    let opts = GadgetCheckOptions { limits: limits.clone(), seed: global.seed, ..Default::default() };
    let cert = verify_gadget(&gd, &opts)?;
    report.verdict = match cert.status {
        CertificateStatus::Unconditional => "unconditional",
        CertificateStatus::Conditional => "conditional",
        CertificateStatus::Failed => "failed",
    }
    .into();
    report.fact("pairs", format!("{}/{}", cert.pairs_witnessed, cert.pairs_required));
    report.fact("coordinates", format!("{}/{}", cert.coords_ok, cert.coords_total));
    report.fact("edges_checked", cert.edges_checked);
    report.fact("sampled", cert.sampled);
    let opt = |x: Option<String>| x.unwrap_or_else(|| "n/a".into());
    report.fact("projective", opt(cert.projective.map(|p| format!("{p:?}").to_lowercase())));
    report.fact("core", opt(cert.core.map(|c| format!("{c:?}").to_lowercase())));
    report.fact("truly_projective", opt(cert.truly_projective.map(|b| b.to_string())));
    report.fact("direct_check", opt(cert.direct_check.map(|b| b.to_string())));
    for n in &cert.notes {
        report.fact("note", n);
    }
    if let (Some(path), Some(f)) = (out, gd.graph.as_ref()) {
        fs::write(path, write_dimacs(f)).with_context(|| format!("writing {}", path.display()))?;
        report.fact("written", path.display());
    }
    Ok(report)
}

pub fn reduce(
    spec: &str,
    target: &str,
    td_in: Option<&std::path::Path>,
    td_out: Option<&std::path::Path>,
    out: Option<&std::path::Path>,
    map: Option<&std::path::Path>,
    limits: &Limits,
) -> Result<RunReport> {
    let mut report = RunReport::new("reduce");
    let g = load("graph", spec, limits, &mut report)?;
    let h = load("target", target, limits, &mut report)?;
    let d = td_in.map(|p| load_td(p, &g)).transpose()?;
    let r = reduce_kcoloring(&g, &h, d.as_ref(), limits)?;
    report.verdict = "reduced".into();
    report.fact("vertices", r.graph.n());
    report.fact("edges", r.graph.edge_count());
    report.fact("gadget_vertices", r.gadget_size);
    if let Some(dx) = &r.decomposition {
        let valid = validate(&r.graph, dx);
        report.fact("decomposition.width", dx.width());
        report.fact("decomposition.valid", valid.is_ok());
        if let Some(p) = td_out {
            fs::write(p, write_td(dx, r.graph.n())).with_context(|| format!("writing {}", p.display()))?;
        }
    }
    if let Some(p) = out {
        fs::write(p, write_dimacs(&r.graph)).with_context(|| format!("writing {}", p.display()))?;
    }
    if let Some(p) = map {
        fs::write(p, write_map(&r.original)).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(report)
}
