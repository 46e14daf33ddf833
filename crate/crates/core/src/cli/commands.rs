//! The subcommands, returning their rendered output.

use std::fmt::Write;

use serde::Serialize;

use crate::distinguishing::{
    dist_number, is_distinguishing, is_distinguishing_by_search, paper_labeling_q2_with,
    q3_constructive_labeling, DistBudget, DistResult, Labeling, Method, NearTopRule,
};
use crate::error::{Error, Result};
use crate::graph::NzcGraph;
use crate::symmetry::{
    aut_group_oracle, aut_group_structural, group_order, orbits_by_search, AutGroup,
    AutomorphismSet, StructuralGroup,
};
use crate::vectorspace::SpaceParams;

use super::config::{Engine, Format, RunConfig};
use super::export;

/// Process exit status for an error.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidParams(_)
        | Error::Precondition(_)
        | Error::Malformed(_)
        | Error::IndexOutOfRange { .. } => 2,
        Error::CapExceeded { .. } => 3,
        Error::UnsupportedQ { .. } => 4,
        Error::NotAutomorphism(_) => 1,
    }
}

pub fn build_graph(n: usize, q: u32, cfg: &RunConfig) -> Result<NzcGraph> {
    NzcGraph::build(SpaceParams::new(n, q)?, cfg.vertex_cap)
}

fn no_dot(cmd: &str) -> Error {
    Error::InvalidParams(format!("`{cmd}` has no dot output; use json or table"))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report is serializable");
    s.push('\n');
    s
}

fn fmt_set(g: &NzcGraph, set: &[usize]) -> String {
    let labels: Vec<String> = set.iter().map(|&v| g.vertex(v).label()).collect();
    format!("{{{}}}", labels.join(", "))
}

pub fn cmd_build(g: &NzcGraph, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = export::to_json(g);
            s.push('\n');
            s
        }
        Format::Dot => export::to_dot(g),
        Format::Table => export::to_table(g),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EngineResult {
    pub engine: Engine,
    pub order: String,
    /// `enumerated`, `generated` or `stabilizer chain`.
    pub method: &'static str,
    pub orbits: Vec<Vec<usize>>,
    #[serde(skip)]
    group: Option<AutGroup>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AutReport {
    pub n: usize,
    pub q: u32,
    pub results: Vec<EngineResult>,
    /// Present when two engines ran.
    pub agree: Option<bool>,
    pub comparison: Option<&'static str>,
}

fn structural_result(g: &NzcGraph, cfg: &RunConfig) -> Result<EngineResult> {
    let lazy = StructuralGroup::new(g)?;
    match aut_group_structural(g, cfg.element_cap) {
        Ok(grp) => Ok(EngineResult {
            engine: Engine::Structural,
            order: grp.len().to_string(),
            method: "enumerated",
            orbits: grp.orbits(),
            group: Some(grp),
        }),
        Err(Error::CapExceeded { .. }) => Ok(EngineResult {
            engine: Engine::Structural,
            order: lazy.order().to_string(),
            method: "generated",
            orbits: lazy.orbits(),
            group: None,
        }),
        Err(e) => Err(e),
    }
}

fn oracle_result(g: &NzcGraph, cfg: &RunConfig) -> Result<EngineResult> {
    match aut_group_oracle(g, cfg.oracle_cap, cfg.element_cap) {
        Ok(grp) => Ok(EngineResult {
            engine: Engine::Oracle,
            order: grp.len().to_string(),
            method: "enumerated",
            orbits: grp.orbits(),
            group: Some(grp),
        }),
        Err(Error::CapExceeded { what: "group order", .. }) => Ok(EngineResult {
            engine: Engine::Oracle,
            order: group_order(g, None)?.map_or_else(|| "overflow".into(), |o| o.to_string()),
            method: "stabilizer chain",
            orbits: orbits_by_search(g, None)?,
            group: None,
        }),
        Err(e) => Err(e),
    }
}

pub fn aut_report(g: &NzcGraph, engine: Option<Engine>, cfg: &RunConfig) -> Result<AutReport> {
    let engine = engine.unwrap_or(if g.q() == 2 { Engine::Both } else { Engine::Oracle });
    let results = match engine {
        Engine::Structural => vec![structural_result(g, cfg)?],
        Engine::Oracle => vec![oracle_result(g, cfg)?],
        Engine::Both => vec![structural_result(g, cfg)?, oracle_result(g, cfg)?],
    };
    let (agree, comparison) = match results.as_slice() {
        [a, b] => match (&a.group, &b.group) {
            (Some(x), Some(y)) => (Some(x.set_eq(y)), Some("set equality")),
            _ => (
                Some(a.order == b.order && a.orbits == b.orbits),
                Some("order and orbits"),
            ),
        },
        _ => (None, None),
    };
    Ok(AutReport {
        n: g.n(),
        q: g.q(),
        results,
        agree,
        comparison,
    })
}

pub fn cmd_aut(g: &NzcGraph, engine: Option<Engine>, cfg: &RunConfig) -> Result<String> {
    let report = aut_report(g, engine, cfg)?;
    match cfg.format {
        Format::Json => Ok(json(&report)),
        Format::Dot => Err(no_dot("aut")),
        Format::Table => {
            let mut out = String::new();
            let _ = writeln!(out, "|Aut(G(V))| for n = {}, q = {}", report.n, report.q);
            for r in &report.results {
                let _ = writeln!(out, "  {:<10} {:>24}  ({})", r.engine.to_string(), r.order, r.method);
            }
            if let (Some(agree), Some(how)) = (report.agree, report.comparison) {
                let verdict = if agree { "engines agree" } else { "ENGINES DISAGREE" };
                let _ = writeln!(out, "{verdict} ({how})");
            }
            let orbits = &report.results[0].orbits;
            let _ = writeln!(out, "orbits ({}):", orbits.len());
            for o in orbits {
                let _ = writeln!(out, "  size {:>6}: {}", o.len(), abbreviate(g, o));
            }
            Ok(out)
        }
    }
}

/// Orbit members, shortened past a dozen.
fn abbreviate(g: &NzcGraph, set: &[usize]) -> String {
    const SHOWN: usize = 12;
    if set.len() <= SHOWN {
        return fmt_set(g, set);
    }
    let head = fmt_set(g, &set[..SHOWN]);
    format!("{}, ... ({} more)}}", &head[..head.len() - 1], set.len() - SHOWN)
}

#[derive(Debug, Clone, Serialize)]
struct OrbitReport {
    n: usize,
    q: u32,
    orbits: Vec<OrbitRow>,
}

#[derive(Debug, Clone, Serialize)]
struct OrbitRow {
    class: usize,
    size: usize,
    members: Vec<usize>,
}

pub fn cmd_orbits(g: &NzcGraph, cfg: &RunConfig) -> Result<String> {
    let orbits = if g.q() == 2 {
        StructuralGroup::new(g)?.orbits()
    } else {
        orbits_by_search(g, None)?
    };
    let rows: Vec<OrbitRow> = orbits
        .into_iter()
        .map(|o| OrbitRow {
            class: g.class_of(o[0]),
            size: o.len(),
            members: o,
        })
        .collect();
    match cfg.format {
        Format::Json => Ok(json(&OrbitReport {
            n: g.n(),
            q: g.q(),
            orbits: rows,
        })),
        Format::Dot => Err(no_dot("orbits")),
        Format::Table => {
            let mut out = format!("{} orbits for n = {}, q = {}\n", rows.len(), g.n(), g.q());
            for r in &rows {
                let _ = writeln!(out, "  T_{:<3} size {:>6}: {}", r.class, r.size, abbreviate(g, &r.members));
            }
            Ok(out)
        }
    }
}

pub fn cmd_twins(g: &NzcGraph, cfg: &RunConfig) -> Result<String> {
    #[derive(Serialize)]
    struct TwinRow {
        skeleton: Vec<usize>,
        members: Vec<usize>,
    }
    let rows: Vec<TwinRow> = g
        .twin_sets()
        .iter()
        .map(|set| TwinRow {
            skeleton: g.skeleton(set[0]).indices().collect(),
            members: set.clone(),
        })
        .collect();
    match cfg.format {
        Format::Json => Ok(json(&rows)),
        Format::Dot => Err(no_dot("twins")),
        Format::Table => {
            let mut out = format!("{} twin sets for n = {}, q = {}\n", rows.len(), g.n(), g.q());
            for set in g.twin_sets() {
                let _ = writeln!(
                    out,
                    "  {:<24} size {:>4}: {}",
                    g.skeleton(set[0]).to_string(),
                    set.len(),
                    abbreviate(g, set)
                );
            }
            Ok(out)
        }
    }
}

/// The group used for distinguishing computations: listed when it fits.
pub fn explicit_group(g: &NzcGraph, cfg: &RunConfig) -> Result<Option<AutGroup>> {
    let attempt = if g.q() == 2 {
        aut_group_structural(g, cfg.element_cap)
    } else if g.vertex_count() <= cfg.oracle_cap {
        aut_group_oracle(g, cfg.oracle_cap, cfg.element_cap)
    } else {
        return Ok(None);
    };
    match attempt {
        Ok(grp) => Ok(Some(grp)),
        Err(Error::CapExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn dist_result(g: &NzcGraph, cfg: &RunConfig) -> Result<DistResult> {
    let grp = explicit_group(g, cfg)?;
    let budget = DistBudget {
        exact_cap: cfg.exact_cap,
        node_limit: cfg.node_limit,
    };
    dist_number(g, grp.as_ref(), &budget)
}

fn short_reason(reason: &str) -> &'static str {
    if reason.starts_with("largest twin") {
        "twin"
    } else if reason.starts_with("exhaustive") {
        "search"
    } else if reason.contains("rigid") {
        "nonrigid"
    } else if reason.starts_with("all vertices") {
        "all-distinct"
    } else {
        "constructive"
    }
}

fn colors_list(f: &Labeling) -> String {
    let c: Vec<String> = f.colors().iter().map(u32::to_string).collect();
    format!("[{}]", c.join(","))
}

/// One line: `exact 2, witness: [...]` or `8 (lower=twin 8, upper=constructive 8)`.
pub fn dist_summary(d: &DistResult) -> String {
    match d.method {
        Method::Exact => format!("exact {}, witness: {}", d.upper, colors_list(&d.witness)),
        Method::Bounded => {
            let value = d.value().map_or_else(|| format!("{}..{}", d.lower, d.upper), |v| v.to_string());
            format!(
                "{} (lower={} {}, upper={} {})",
                value,
                short_reason(&d.lower_reason),
                d.lower,
                short_reason(&d.upper_reason),
                d.upper
            )
        }
    }
}

pub fn cmd_dist(g: &NzcGraph, cfg: &RunConfig) -> Result<String> {
    let d = dist_result(g, cfg)?;
    match cfg.format {
        Format::Json => Ok(json(&d)),
        Format::Dot => Err(no_dot("dist")),
        Format::Table => Ok(format!(
            "Dist(G(V)) for n = {}, q = {}: {}\n  lower: {}\n  upper: {}\n",
            g.n(),
            g.q(),
            dist_summary(&d),
            d.lower_reason,
            d.upper_reason
        )),
    }
}

/// The constructive labeling for `g`: two colors when `q = 2`, one color per
/// twin slot when `q >= 3`.
pub fn constructive_labeling(g: &NzcGraph, rule: NearTopRule) -> Result<Labeling> {
    if g.q() == 2 {
        paper_labeling_q2_with(g, rule)
    } else {
        q3_constructive_labeling(g)
    }
}

pub fn cmd_labeling(g: &NzcGraph, rule: NearTopRule, cfg: &RunConfig) -> Result<String> {
    let f = constructive_labeling(g, rule)?;
    let distinguishing = if g.q() == 2 {
        is_distinguishing(&StructuralGroup::new(g)?, &f)
    } else {
        is_distinguishing_by_search(g, &f)?
    };
    match cfg.format {
        Format::Json => {
            #[derive(Serialize)]
            struct LabelingReport<'a> {
                n: usize,
                q: u32,
                colors_used: usize,
                distinguishing: bool,
                labeling: &'a Labeling,
            }
            Ok(json(&LabelingReport {
                n: g.n(),
                q: g.q(),
                colors_used: f.colors_used(),
                distinguishing,
                labeling: &f,
            }))
        }
        Format::Dot => {
            let mut out = format!("graph nzc_n{}_q{}_labeling {{\n", g.n(), g.q());
            for (id, v) in g.vertices().iter().enumerate() {
                let _ = writeln!(out, "  {id} [label=\"{}\", color_index={}];", v.label(), f.color(id));
            }
            for (a, b) in g.edges() {
                let _ = writeln!(out, "  {a} -- {b};");
            }
            out.push_str("}\n");
            Ok(out)
        }
        Format::Table => {
            let mut out = format!(
                "labeling for n = {}, q = {}: {} colors, distinguishing: {}\n",
                g.n(),
                g.q(),
                f.colors_used(),
                if distinguishing { "yes" } else { "no" }
            );
            for (id, v) in g.vertices().iter().enumerate() {
                let _ = writeln!(out, "  {:>6}  {:<24} {}", id, v.label(), f.color(id));
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, q: u32) -> NzcGraph {
        build_graph(n, q, &RunConfig::default()).unwrap()
    }

    #[test]
    fn aut_both_agree() {
        let r = aut_report(&graph(3, 2), Some(Engine::Both), &RunConfig::default()).unwrap();
        assert_eq!(r.results[0].order, "6");
        assert_eq!(r.results[1].order, "6");
        assert_eq!(r.agree, Some(true));
        assert_eq!(r.comparison, Some("set equality"));
    }

    #[test]
    fn aut_oracle_field() {
        let r = aut_report(&graph(2, 3), Some(Engine::Oracle), &RunConfig::default()).unwrap();
        assert_eq!(r.results[0].order, "192");
    }

    #[test]
    fn structural_rejects_field() {
        let err = aut_report(&graph(3, 3), Some(Engine::Structural), &RunConfig::default()).unwrap_err();
        assert_eq!(exit_code(&err), 4);
    }

    #[test]
    fn dist_lines() {
        let cfg = RunConfig::default();
        let d = dist_result(&graph(3, 2), &cfg).unwrap();
        assert!(dist_summary(&d).starts_with("exact 2, witness: ["));
        let d = dist_result(&graph(3, 3), &cfg).unwrap();
        assert_eq!(dist_summary(&d), "8 (lower=twin 8, upper=constructive 8)");
    }

    #[test]
    fn dot_only_where_meaningful() {
        let cfg = RunConfig {
            format: Format::Dot,
            ..RunConfig::default()
        };
        let g = graph(3, 2);
        assert_eq!(exit_code(&cmd_dist(&g, &cfg).unwrap_err()), 2);
        assert!(cmd_labeling(&g, NearTopRule::Literal, &cfg).unwrap().contains(" -- "));
    }
}
