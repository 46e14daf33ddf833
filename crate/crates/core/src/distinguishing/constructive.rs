//! Explicit labelings: the two-color labeling for `q = 2` and the
//! twin-injective labeling for `q >= 3`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::NzcGraph;
use crate::vectorspace::Skeleton;

use super::labeling::Labeling;

/// How the class `T_{n-1}` is colored in the two-color labeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum NearTopRule {
    /// Color 1 iff `S_u = {b_2, ..., b_h}` or `S_u = {b_{h+2}, ..., b_n}`
    /// (with `h = floor(n/2)`). Neither set has `n - 1` elements, so for
    /// `n >= 4` no vertex of `T_{n-1}` gets color 1.
    #[default]
    Literal,
    /// Color 1 iff `S_u` is the full basis minus `b_1` or minus `b_{h+1}`.
    Complement,
}

fn range_mask(from: usize, to: usize) -> u32 {
    (from..=to).fold(0u32, |m, i| m | 1 << (i - 1))
}

/// The two-color labeling of `G(V)` for `q = 2`, `n >= 3`, with `h = floor(n/2)`:
///
/// * `T_1`: `b_i` gets 1 for `i <= h`, else 2;
/// * `T_{n-1}`: per `rule`;
/// * `T_2`: 1 iff `S_u = {b_i, b_{i+1}}`, else 2;
/// * every other class: 2.
///
/// For `n = 3`, `T_2` and `T_{n-1}` coincide and the `T_2` rule is used.
pub fn paper_labeling_q2_with(g: &NzcGraph, rule: NearTopRule) -> Result<Labeling> {
    if g.q() != 2 {
        return Err(Error::UnsupportedQ { q: g.q() });
    }
    let n = g.n();
    if n < 3 {
        return Err(Error::precondition(format!("two-color labeling needs n >= 3, got {n}")));
    }
    let h = n / 2;
    let full = range_mask(1, n);
    let near_top: [u32; 2] = match rule {
        NearTopRule::Literal => [range_mask(2, h), range_mask(h + 2, n)],
        NearTopRule::Complement => [full & !1, full & !(1 << h)],
    };
    let colors = (0..g.vertex_count())
        .map(|v| {
            let s: Skeleton = g.skeleton(v);
            let mask = s.mask();
            let class = s.len();
            let first = if class == 1 {
                s.indices().next().is_some_and(|i| i <= h)
            } else if class == 2 {
                let low = mask.trailing_zeros();
                mask == 0b11 << low
            } else if class == n - 1 {
                near_top.contains(&mask)
            } else {
                false
            };
            if first {
                1
            } else {
                2
            }
        })
        .collect();
    Labeling::new(colors, 2)
}

/// [`paper_labeling_q2_with`] using the rule exactly as written.
pub fn paper_labeling_q2(g: &NzcGraph) -> Result<Labeling> {
    paper_labeling_q2_with(g, NearTopRule::Literal)
}

/// A `(q-1)^n`-color labeling that is injective on every twin set.
///
/// The `k`-th twin set of `T_i` (by smallest member) uses the colors
/// `k (q-1)^i + j (mod (q-1)^n)`, `j = 0 .. (q-1)^i`, shifted to start at 1.
/// The offsets give the twin sets of `T_1` pairwise disjoint color sets,
/// which is what stops a basis permutation from preserving the labeling;
/// reusing `1..=(q-1)^i` in every twin set would not.
pub fn q3_constructive_labeling(g: &NzcGraph) -> Result<Labeling> {
    if g.q() == 2 {
        return Err(Error::precondition("twin-injective labeling needs q >= 3"));
    }
    let units = g.q() as u64 - 1;
    let pool = units.pow(g.n() as u32);
    let mut colors = vec![0u32; g.vertex_count()];
    let mut rank_in_class = vec![0u64; g.n() + 1];
    for twins in g.twin_sets() {
        let class = g.class_of(twins[0]);
        let size = units.pow(class as u32);
        let offset = rank_in_class[class] * size;
        rank_in_class[class] += 1;
        for (j, &v) in twins.iter().enumerate() {
            colors[v] = ((offset + j as u64) % pool) as u32 + 1;
        }
    }
    Labeling::new(colors, pool as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distinguishing::labeling::{is_distinguishing, is_distinguishing_by_search};
    use crate::symmetry::{aut_group_oracle, StructuralGroup, DEFAULT_ELEMENT_CAP, DEFAULT_ORACLE_CAP};
    use crate::vectorspace::{SpaceParams, Vector, DEFAULT_VERTEX_CAP};

    fn build(n: usize, q: u32) -> NzcGraph {
        NzcGraph::build(SpaceParams::new(n, q).unwrap(), DEFAULT_VERTEX_CAP).unwrap()
    }

    fn color_of(g: &NzcGraph, f: &Labeling, indices: &[usize]) -> u32 {
        let s = Skeleton::from_indices(indices.iter().copied()).unwrap();
        f.color(g.id_of_skeleton_q2(s))
    }

    #[test]
    fn n4_basis_colors() {
        let g = build(4, 2);
        let f = paper_labeling_q2(&g).unwrap();
        let basis: Vec<u32> = (1..=4).map(|i| f.color(g.basis_id(i))).collect();
        assert_eq!(basis, [1, 1, 2, 2]);
    }

    #[test]
    fn n4_literal_near_top_rule_selects_nothing() {
        let g = build(4, 2);
        let f = paper_labeling_q2(&g).unwrap();
        assert!(g.t_class(3).iter().all(|&v| f.color(v) == 2));
        let c = paper_labeling_q2_with(&g, NearTopRule::Complement).unwrap();
        assert_eq!(color_of(&g, &c, &[2, 3, 4]), 1);
        assert_eq!(color_of(&g, &c, &[1, 2, 4]), 1);
        assert_eq!(color_of(&g, &c, &[1, 3, 4]), 2);
        assert_eq!(color_of(&g, &c, &[1, 2, 3]), 2);
    }

    #[test]
    fn n6_consecutive_pairs() {
        let g = build(6, 2);
        let f = paper_labeling_q2(&g).unwrap();
        for &v in g.t_class(2) {
            let idx: Vec<usize> = g.skeleton(v).indices().collect();
            let expected = if idx[1] == idx[0] + 1 { 1 } else { 2 };
            assert_eq!(f.color(v), expected, "{}", g.vertex(v));
        }
        let ones = g.t_class(2).iter().filter(|&&v| f.color(v) == 1).count();
        assert_eq!(ones, 5);
    }

    #[test]
    fn n3_uses_the_pair_rule_on_the_shared_class() {
        let g = build(3, 2);
        let f = paper_labeling_q2(&g).unwrap();
        assert_eq!(color_of(&g, &f, &[1, 2]), 1);
        assert_eq!(color_of(&g, &f, &[2, 3]), 1);
        assert_eq!(color_of(&g, &f, &[1, 3]), 2);
        assert_eq!(color_of(&g, &f, &[1, 2, 3]), 2);
    }

    #[test]
    fn labeling_distinguishes_small_n() {
        for n in 3..=7 {
            let g = build(n, 2);
            let grp = StructuralGroup::new(&g).unwrap();
            for rule in [NearTopRule::Literal, NearTopRule::Complement] {
                let f = paper_labeling_q2_with(&g, rule).unwrap();
                assert!(is_distinguishing(&grp, &f), "n={n} {rule:?}");
            }
        }
    }

    #[test]
    fn preconditions() {
        assert!(paper_labeling_q2(&build(2, 2)).is_err());
        assert!(paper_labeling_q2(&build(3, 3)).is_err());
        assert!(q3_constructive_labeling(&build(3, 2)).is_err());
    }

    #[test]
    fn twin_injective_n2_q3() {
        let g = build(2, 3);
        let f = q3_constructive_labeling(&g).unwrap();
        assert_eq!(f.t(), 4);
        for twins in g.twin_sets() {
            let mut c: Vec<u32> = twins.iter().map(|&v| f.color(v)).collect();
            c.sort();
            c.dedup();
            assert_eq!(c.len(), twins.len());
        }
        let grp = aut_group_oracle(&g, DEFAULT_ORACLE_CAP, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(grp.len(), 192);
        assert!(is_distinguishing(&grp, &f));
    }

    #[test]
    fn unshifted_twin_coloring_is_broken_by_a_basis_swap() {
        // colors 1..(q-1)^i inside every twin set, in id order
        let g = build(2, 3);
        let mut colors = vec![0u32; g.vertex_count()];
        for twins in g.twin_sets() {
            for (j, &v) in twins.iter().enumerate() {
                colors[v] = j as u32 + 1;
            }
        }
        let f = Labeling::new(colors, 4).unwrap();
        let grp = aut_group_oracle(&g, DEFAULT_ORACLE_CAP, DEFAULT_ELEMENT_CAP).unwrap();
        assert!(!is_distinguishing(&grp, &f));
        // the witness swaps b1 <-> b2 and 2b1 <-> 2b2, fixing T_2
        let id = |c: &[u32]| g.id_of(&Vector::new(g.params(), c.to_vec()).unwrap()).unwrap();
        let witness = grp
            .elements()
            .iter()
            .find(|a| {
                !a.is_identity() && (0..8).all(|v| f.color(a.image()[v] as usize) == f.color(v))
            })
            .unwrap();
        assert_eq!(witness.image()[id(&[1, 0])] as usize, id(&[0, 1]));
        assert_eq!(witness.image()[id(&[2, 0])] as usize, id(&[0, 2]));
        for &v in g.t_class(2) {
            assert_eq!(witness.image()[v] as usize, v);
        }
    }

    #[test]
    fn twin_injective_n3_q3_uses_eight_colors() {
        let g = build(3, 3);
        let f = q3_constructive_labeling(&g).unwrap();
        assert_eq!(f.t(), 8);
        assert_eq!(f.colors_used(), 8);
        assert!(is_distinguishing_by_search(&g, &f).unwrap());
    }
}
