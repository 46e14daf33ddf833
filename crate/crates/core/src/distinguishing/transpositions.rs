//! Per-class bookkeeping of which basis transpositions a labeling breaks.
//!
//! A transposition `(l m)` is broken by a class `T_x` when its extension
//! moves some vertex of `T_x` onto a vertex of another color. Classes are
//! examined in the order `T_1`, `T_{n-1}`, `T_2` and each transposition is
//! credited to the first class that breaks it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::NzcGraph;
use crate::symmetry::{AutGroup, VertexMap};
use crate::vectorspace::binomial;

use super::labeling::Labeling;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassTally {
    /// `T_1`, `T_{n-1}` or `T_2`.
    pub label: String,
    pub class: usize,
    pub tally: u64,
    /// Closed-form count for the two-color labeling.
    pub expected: u64,
    pub credited: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TranspositionReport {
    pub n: usize,
    pub total: u64,
    pub tallies: Vec<ClassTally>,
    pub uncovered: Vec<(usize, usize)>,
}

impl TranspositionReport {
    pub fn matches_closed_forms(&self) -> bool {
        self.tallies.iter().all(|t| t.tally == t.expected)
    }

    pub fn covers_all(&self) -> bool {
        self.uncovered.is_empty()
    }

    pub fn tally(&self, label: &str) -> Option<u64> {
        self.tallies.iter().find(|t| t.label == label).map(|t| t.tally)
    }
}

/// Closed forms `(T_1, T_{n-1}, T_2)`: `n^2/4`, `n - 2`, `(n^2 - 6n + 8)/4` for
/// even `n`; `(n^2 - 1)/4`, `n - 2`, `(n^2 - 6n + 9)/4` for odd `n`.
pub fn closed_form_tallies(n: usize) -> (u64, u64, u64) {
    let n = n as i64;
    let (first, last) = if n % 2 == 0 {
        (n * n / 4, (n * n - 6 * n + 8) / 4)
    } else {
        ((n * n - 1) / 4, (n * n - 6 * n + 9) / 4)
    };
    (first as u64, (n - 2) as u64, last as u64)
}

struct SwapMap {
    l: u32,
    m: u32,
}

impl VertexMap for SwapMap {
    // q = 2: vertex id = mask - 1
    fn apply(&self, v: usize) -> usize {
        let mask = v as u32 + 1;
        let (bl, bm) = ((mask >> self.l) & 1, (mask >> self.m) & 1);
        let swapped = if bl == bm {
            mask
        } else {
            mask ^ (1 << self.l) ^ (1 << self.m)
        };
        swapped as usize - 1
    }
}

pub fn destroyed_transpositions(g: &NzcGraph, f: &Labeling) -> Result<TranspositionReport> {
    if g.q() != 2 {
        return Err(Error::UnsupportedQ { q: g.q() });
    }
    let n = g.n();
    if n < 3 {
        return Err(Error::precondition(format!("transposition bookkeeping needs n >= 3, got {n}")));
    }
    let (e1, e_near, e2) = closed_form_tallies(n);
    let mut tallies = vec![
        ClassTally {
            label: "T_1".into(),
            class: 1,
            tally: 0,
            expected: e1,
            credited: Vec::new(),
        },
        ClassTally {
            label: "T_{n-1}".into(),
            class: n - 1,
            tally: 0,
            expected: e_near,
            credited: Vec::new(),
        },
        ClassTally {
            label: "T_2".into(),
            class: 2,
            tally: 0,
            expected: e2,
            credited: Vec::new(),
        },
    ];
    let mut uncovered = Vec::new();
    for l in 1..=n {
        for m in l + 1..=n {
            let swap = SwapMap {
                l: (l - 1) as u32,
                m: (m - 1) as u32,
            };
            let breaker = tallies.iter().position(|t| {
                g.t_class(t.class)
                    .iter()
                    .any(|&v| f.color(swap.apply(v)) != f.color(v))
            });
            match breaker {
                Some(k) => {
                    tallies[k].tally += 1;
                    tallies[k].credited.push((l, m));
                }
                None => uncovered.push((l, m)),
            }
        }
    }
    Ok(TranspositionReport {
        n,
        total: binomial(n as u64, 2),
        tallies,
        uncovered,
    })
}

/// Given `u, v` in one class `T_i` (`2 <= i <= n-1`), `b_l` in `S_u - S_v`,
/// `b_m` in `S_v - S_u` and `f(u) != f(v)`: true iff every element of `grp`
/// exchanging `b_l` and `b_m` changes some color.
pub fn check_lem_diff_labels(
    g: &NzcGraph,
    grp: &AutGroup,
    f: &Labeling,
    u: usize,
    v: usize,
    l: usize,
    m: usize,
) -> Result<bool> {
    if g.q() != 2 {
        return Err(Error::UnsupportedQ { q: g.q() });
    }
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    let n = g.n();
    let i = g.class_of(u);
    if g.class_of(v) != i || i < 2 || i > n - 1 {
        return Err(Error::precondition("u and v must share a class T_i with 2 <= i <= n-1"));
    }
    if l == 0 || m == 0 || l > n || m > n || l == m {
        return Err(Error::precondition("need distinct basis indices l, m"));
    }
    let (su, sv) = (g.skeleton(u), g.skeleton(v));
    if !(su.contains(l) && !sv.contains(l) && sv.contains(m) && !su.contains(m)) {
        return Err(Error::precondition("need b_l in S_u - S_v and b_m in S_v - S_u"));
    }
    if f.color(u) == f.color(v) {
        return Err(Error::precondition("need f(u) != f(v)"));
    }
    let (bl, bm) = (g.basis_id(l), g.basis_id(m));
    Ok(grp
        .elements()
        .iter()
        .filter(|a| a.apply(bl) == bm && a.apply(bm) == bl)
        .all(|a| (0..g.vertex_count()).any(|x| f.color(a.apply(x)) != f.color(x))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distinguishing::constructive::{paper_labeling_q2, paper_labeling_q2_with, NearTopRule};
    use crate::symmetry::{aut_group_structural, extend_basis_permutation, BasisPermutation};
    use crate::vectorspace::{SpaceParams, Skeleton, DEFAULT_VERTEX_CAP};

    fn build(n: usize, q: u32) -> NzcGraph {
        NzcGraph::build(SpaceParams::new(n, q).unwrap(), DEFAULT_VERTEX_CAP).unwrap()
    }

    fn id(g: &NzcGraph, idx: &[usize]) -> usize {
        g.id_of_skeleton_q2(Skeleton::from_indices(idx.iter().copied()).unwrap())
    }

    #[test]
    fn swap_map_matches_extension() {
        let g = build(5, 2);
        for (l, m) in [(1, 2), (2, 5), (3, 4)] {
            let a = extend_basis_permutation(&g, &BasisPermutation::transposition(5, l, m).unwrap()).unwrap();
            let s = SwapMap {
                l: l as u32 - 1,
                m: m as u32 - 1,
            };
            for v in 0..g.vertex_count() {
                assert_eq!(s.apply(v), a.apply(v));
            }
        }
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_tallies(4), (4, 2, 0));
        assert_eq!(closed_form_tallies(5), (6, 3, 1));
        assert_eq!(closed_form_tallies(3), (2, 1, 0));
        for n in 3..=10 {
            let (a, b, c) = closed_form_tallies(n);
            assert_eq!(a + b + c, binomial(n as u64, 2));
        }
    }

    #[test]
    fn n4_first_class_tally() {
        let g = build(4, 2);
        let r = destroyed_transpositions(&g, &paper_labeling_q2(&g).unwrap()).unwrap();
        assert_eq!(r.tally("T_1"), Some(4));
        assert!(r.covers_all());
    }

    #[test]
    fn n5_complement_reading_tallies() {
        let g = build(5, 2);
        let f = paper_labeling_q2_with(&g, NearTopRule::Complement).unwrap();
        let r = destroyed_transpositions(&g, &f).unwrap();
        assert_eq!(r.tally("T_1"), Some(6));
        assert_eq!(r.tally("T_{n-1}"), Some(3));
        assert_eq!(r.tally("T_2"), Some(1));
        assert!(r.matches_closed_forms() && r.covers_all());
    }

    #[test]
    fn n5_literal_reading_moves_credit_to_pairs() {
        let g = build(5, 2);
        let r = destroyed_transpositions(&g, &paper_labeling_q2(&g).unwrap()).unwrap();
        assert_eq!(r.tally("T_1"), Some(6));
        assert_eq!(r.tally("T_{n-1}"), Some(0));
        assert_eq!(r.tally("T_2"), Some(4));
        assert!(!r.matches_closed_forms());
        assert!(r.covers_all());
    }

    #[test]
    fn constant_labeling_breaks_nothing() {
        let g = build(3, 2);
        let r = destroyed_transpositions(&g, &Labeling::constant(7)).unwrap();
        assert!(r.tallies.iter().all(|t| t.tally == 0));
        assert_eq!(r.uncovered.len(), 3);
    }

    #[test]
    fn lem_diff_labels_n3() {
        let g = build(3, 2);
        let grp = aut_group_structural(&g, 100).unwrap();
        let (u, v) = (id(&g, &[1, 3]), id(&g, &[2, 3]));
        let mut colors = vec![1u32; 7];
        colors[v] = 2;
        let f = Labeling::new(colors, 2).unwrap();
        assert!(check_lem_diff_labels(&g, &grp, &f, u, v, 1, 2).unwrap());
    }

    #[test]
    fn lem_diff_labels_n4_disjoint_pair() {
        let g = build(4, 2);
        let grp = aut_group_structural(&g, 100).unwrap();
        let (u, v) = (id(&g, &[1, 2]), id(&g, &[3, 4]));
        let mut colors = vec![1u32; 15];
        colors[v] = 2;
        let f = Labeling::new(colors, 2).unwrap();
        // exchanging b1, b3: (1 3) and (1 3)(2 4); both move {3,4} off color 2
        assert!(check_lem_diff_labels(&g, &grp, &f, u, v, 1, 3).unwrap());
    }

    #[test]
    fn lem_diff_labels_counterexample_n4() {
        // f is invariant under (1 2) yet f(b1+b3) != f(b2+b4)
        let g = build(4, 2);
        let grp = aut_group_structural(&g, 100).unwrap();
        let mut colors = vec![1u32; 15];
        colors[id(&g, &[1, 4])] = 2;
        colors[id(&g, &[2, 4])] = 2;
        let f = Labeling::new(colors, 2).unwrap();
        let (u, v) = (id(&g, &[1, 3]), id(&g, &[2, 4]));
        assert!(!check_lem_diff_labels(&g, &grp, &f, u, v, 1, 2).unwrap());
    }

    #[test]
    fn lem_diff_labels_preconditions() {
        let g = build(3, 2);
        let grp = aut_group_structural(&g, 100).unwrap();
        let (u, v) = (id(&g, &[1, 3]), id(&g, &[2, 3]));
        let f = Labeling::constant(7);
        assert!(matches!(
            check_lem_diff_labels(&g, &grp, &f, u, v, 1, 2),
            Err(Error::Precondition(_))
        ));
        let mut colors = vec![1u32; 7];
        colors[v] = 2;
        let f = Labeling::new(colors, 2).unwrap();
        assert!(check_lem_diff_labels(&g, &grp, &f, u, v, 2, 1).is_err());
        assert!(check_lem_diff_labels(&g, &grp, &f, 0, 1, 1, 2).is_err());
    }
}
