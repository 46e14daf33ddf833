//! Distinguishing number: exact backtracking search over an explicit group,
//! or lower/upper bounds when the group is too large to list.

use serde::Serialize;

use crate::error::Result;
use crate::graph::NzcGraph;
use crate::symmetry::{find_nontrivial_automorphism, AutGroup, StructuralGroup, VertexMap};

use super::constructive::{paper_labeling_q2, q3_constructive_labeling};
use super::labeling::{is_distinguishing, is_distinguishing_by_search, Labeling};

pub const DEFAULT_EXACT_CAP: usize = 30;
pub const DEFAULT_NODE_LIMIT: u64 = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DistBudget {
    /// Exact search only runs on graphs with at most this many vertices.
    pub exact_cap: usize,
    /// Search nodes allowed per color count before giving up.
    pub node_limit: u64,
}

impl Default for DistBudget {
    fn default() -> Self {
        DistBudget {
            exact_cap: DEFAULT_EXACT_CAP,
            node_limit: DEFAULT_NODE_LIMIT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    Bounded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistResult {
    pub lower: u32,
    pub upper: u32,
    pub witness: Labeling,
    pub method: Method,
    pub lower_reason: String,
    pub upper_reason: String,
}

impl DistResult {
    /// The distinguishing number, when the bounds meet.
    pub fn value(&self) -> Option<u32> {
        (self.lower == self.upper).then_some(self.upper)
    }
}

/// Largest twin set: twins can be swapped on their own, so each twin set
/// needs pairwise distinct colors.
pub fn twin_lower_bound(g: &NzcGraph) -> u32 {
    g.twin_sets().iter().map(Vec::len).max().unwrap_or(1) as u32
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Labeling),
    Impossible,
    BudgetExhausted,
}

struct ExactSearch<'a> {
    images: Vec<&'a [u32]>,
    inverses: Vec<Vec<u32>>,
    /// Largest vertex each element moves.
    last_moved: Vec<usize>,
    colors: Vec<u32>,
    t: u32,
    nodes: u64,
    node_limit: u64,
}

impl ExactSearch<'_> {
    // Vertices are colored in id order, colors tried in increasing order.
    // Pruning:
    //  - colors are interchangeable, so a vertex may open at most one new color;
    //  - an element fixing every uncolored vertex and preserving the colored
    //    ones preserves every completion, so the branch is dead;
    //  - once no non-identity element preserves the partial coloring, any
    //    completion is distinguishing.
    fn descend(&mut self, pos: usize, max_used: u32, alive: &[usize]) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return None;
        }
        if alive.is_empty() {
            for c in &mut self.colors[pos..] {
                *c = 1;
            }
            return Some(true);
        }
        if pos == self.colors.len() || alive.iter().any(|&k| self.last_moved[k] < pos) {
            return Some(false);
        }
        for c in 1..=(max_used + 1).min(self.t) {
            self.colors[pos] = c;
            let next: Vec<usize> = alive.iter().copied().filter(|&k| {
                let forward = self.images[k][pos] as usize;
                let backward = self.inverses[k][pos] as usize;
                (forward > pos || self.colors[forward] == c)
                    && (backward > pos || self.colors[backward] == c)
            }).collect();
            match self.descend(pos + 1, max_used.max(c), &next) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => return None,
            }
        }
        self.colors[pos] = 0;
        Some(false)
    }
}

/// Decides whether a `t`-color distinguishing labeling exists, given the full
/// group explicitly.
pub fn exact_search(grp: &AutGroup, vertex_count: usize, t: u32, node_limit: u64) -> SearchOutcome {
    let nontrivial: Vec<usize> = (0..grp.len())
        .filter(|&k| !grp.elements()[k].is_identity())
        .collect();
    let images: Vec<&[u32]> = grp.elements().iter().map(|a| a.image()).collect();
    let inverses: Vec<Vec<u32>> = grp
        .elements()
        .iter()
        .map(|a| a.inverse().image().to_vec())
        .collect();
    let last_moved = grp
        .elements()
        .iter()
        .map(|a| a.support().last().unwrap_or(0))
        .collect();
    let mut search = ExactSearch {
        images,
        inverses,
        last_moved,
        colors: vec![0; vertex_count],
        t,
        nodes: 0,
        node_limit,
    };
    match search.descend(0, 0, &nontrivial) {
        Some(true) => {
            let used = search.colors.iter().copied().max().unwrap_or(1);
            match Labeling::new(search.colors, used.max(1)) {
                Ok(l) => SearchOutcome::Found(l),
                Err(_) => SearchOutcome::Impossible,
            }
        }
        Some(false) => SearchOutcome::Impossible,
        None => SearchOutcome::BudgetExhausted,
    }
}

/// A distinguishing labeling built without search, validated before use.
fn constructive_upper(g: &NzcGraph, grp: Option<&AutGroup>) -> Result<(Labeling, String)> {
    let candidate = if g.q() == 2 && g.n() >= 3 {
        Some((paper_labeling_q2(g)?, "two-color labeling"))
    } else if g.q() >= 3 {
        Some((q3_constructive_labeling(g)?, "twin-injective labeling"))
    } else {
        None
    };
    if let Some((f, name)) = candidate {
        let valid = match grp {
            Some(grp) => is_distinguishing(grp, &f),
            None if g.q() == 2 => is_distinguishing(&StructuralGroup::new(g)?, &f),
            None => is_distinguishing_by_search(g, &f)?,
        };
        if valid {
            let reason = format!("{name} with {} colors, validated", f.t());
            return Ok((f, reason));
        }
    }
    let f = Labeling::all_distinct(g.vertex_count());
    Ok((f, "all vertices distinct".into()))
}

/// Distinguishing number of `g`.
///
/// With the full group `grp` listed and at most `budget.exact_cap` vertices,
/// tries `t = 1, 2, ...` by exact search. Otherwise returns bounds: below by
/// the largest twin set (and 2 for a non-rigid graph), above by a validated
/// constructive labeling.
pub fn dist_number(g: &NzcGraph, grp: Option<&AutGroup>, budget: &DistBudget) -> Result<DistResult> {
    let twin = twin_lower_bound(g);
    let nontrivial = match grp {
        Some(grp) => grp.len() > 1,
        None => find_nontrivial_automorphism(g, None)?.is_some(),
    };
    let (mut lower, mut lower_reason) = if nontrivial && twin < 2 {
        (2, "graph is not rigid".to_string())
    } else {
        (twin, format!("largest twin set has {twin} vertices"))
    };
    if !nontrivial {
        let witness = Labeling::constant(g.vertex_count());
        return Ok(DistResult {
            lower: 1,
            upper: 1,
            witness,
            method: Method::Exact,
            lower_reason: "graph is rigid".into(),
            upper_reason: "constant labeling".into(),
        });
    }
    let (witness, upper_reason) = constructive_upper(g, grp)?;
    let upper = witness.t();

    if let Some(grp) = grp {
        if g.vertex_count() <= budget.exact_cap {
            for t in 1..=upper {
                match exact_search(grp, g.vertex_count(), t, budget.node_limit) {
                    SearchOutcome::Found(f) => {
                        return Ok(DistResult {
                            lower: t,
                            upper: t,
                            witness: f,
                            method: Method::Exact,
                            lower_reason: format!("exhaustive search: no {}-color labeling", t - 1),
                            upper_reason: "exhaustive search witness".into(),
                        })
                    }
                    SearchOutcome::Impossible => {
                        if t + 1 > lower {
                            lower = t + 1;
                            lower_reason = format!("exhaustive search: no {t}-color labeling");
                        }
                    }
                    SearchOutcome::BudgetExhausted => break,
                }
            }
        }
    }
    Ok(DistResult {
        lower: lower.min(upper),
        upper,
        witness,
        method: Method::Bounded,
        lower_reason,
        upper_reason,
    })
}

/// Number of elements of `grp`, identity included, that fix every color of `f`.
pub fn preserving_elements(grp: &AutGroup, f: &Labeling) -> usize {
    grp.elements()
        .iter()
        .filter(|a| (0..f.len()).all(|v| f.color(a.apply(v)) == f.color(v)))
        .count()
}
