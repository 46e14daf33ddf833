//! Machine checks of the automorphism claims: the `Sym(n) -> Aut` map is an
//! isomorphism, and the skeleton lemmas hold for every group element.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::NzcGraph;
use crate::report::{ClaimCheck, Status};

use super::group::AutGroup;
use super::perm::{Automorphism, BasisPermutation, VertexMap};
use super::structural::{extend_unchecked, restrict_to_basis};

/// Homomorphism pairs are checked exhaustively up to this dimension.
pub const EXHAUSTIVE_PSI_DIMENSION: usize = 4;
/// Injectivity is checked over all of `Sym(n)` up to this dimension.
pub const INJECTIVITY_DIMENSION: usize = 8;

#[derive(Debug, Clone, Serialize)]
pub struct PsiReport {
    pub n: usize,
    pub exhaustive: bool,
    pub homomorphism: ClaimCheck,
    pub injective: ClaimCheck,
    pub surjective: ClaimCheck,
    pub round_trip: ClaimCheck,
}

impl PsiReport {
    pub fn passed(&self) -> bool {
        [&self.homomorphism, &self.injective, &self.surjective, &self.round_trip]
            .iter()
            .all(|c| c.passed())
    }

    pub fn checks(&self) -> [&ClaimCheck; 4] {
        [&self.homomorphism, &self.injective, &self.surjective, &self.round_trip]
    }
}

/// Checks that `h -> extend(h)` is a group isomorphism onto `Aut(G)`.
///
/// The homomorphism identity `extend(h1 h2) = extend(h1) extend(h2)` is
/// checked on all pairs when `n <= 4`, otherwise on `samples` seeded random
/// pairs. Surjectivity needs the oracle group and is marked not applicable
/// without it.
pub fn check_psi_isomorphism(
    g: &NzcGraph,
    samples: usize,
    seed: u64,
    oracle: Option<&AutGroup>,
) -> Result<PsiReport> {
    if g.q() != 2 {
        return Err(Error::UnsupportedQ { q: g.q() });
    }
    let n = g.n();
    let exhaustive = n <= EXHAUSTIVE_PSI_DIMENSION;

    let mut homomorphism = ClaimCheck::new(
        "psi-homomorphism",
        "extend(h1 h2) = extend(h1) extend(h2) for basis permutations h1, h2",
    );
    let mut check_pair = |h1: &BasisPermutation, h2: &BasisPermutation| {
        let lhs = extend_unchecked(g, &h1.compose(h2));
        let rhs = extend_unchecked(g, h1).compose(&extend_unchecked(g, h2));
        homomorphism.case(lhs == rhs, || format!("h1 = {h1}, h2 = {h2}"));
    };
    if exhaustive {
        let all: Vec<BasisPermutation> = BasisPermutation::all(n).collect();
        for h1 in &all {
            for h2 in &all {
                check_pair(h1, h2);
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let random = |rng: &mut ChaCha8Rng| {
            let mut sigma: Vec<u8> = (0..n as u8).collect();
            sigma.shuffle(rng);
            BasisPermutation::from_zero_based(sigma)
        };
        for _ in 0..samples {
            let h1 = random(&mut rng);
            let h2 = random(&mut rng);
            check_pair(&h1, &h2);
        }
    }

    let mut injective = ClaimCheck::new(
        "psi-injective",
        "distinct basis permutations extend to distinct automorphisms",
    );
    let mut round_trip = ClaimCheck::new(
        "psi-round-trip",
        "restricting extend(h) to the basis vertices gives back h",
    );
    if n <= INJECTIVITY_DIMENSION {
        let mut seen: HashSet<Automorphism> = HashSet::new();
        for h in BasisPermutation::all(n) {
            let a = extend_unchecked(g, &h);
            let back = restrict_to_basis(&a, g);
            round_trip.case(back.as_ref() == Ok(&h), || format!("h = {h}"));
            injective.case(seen.insert(a), || format!("h = {h} collides"));
        }
    } else {
        injective = injective
            .with_status(Status::NotApplicable)
            .with_note(format!("exhaustive check limited to n <= {INJECTIVITY_DIMENSION}"));
        round_trip = round_trip
            .with_status(Status::NotApplicable)
            .with_note(format!("exhaustive check limited to n <= {INJECTIVITY_DIMENSION}"));
    }

    let mut surjective = ClaimCheck::new(
        "psi-surjective",
        "every automorphism found by exhaustive search is an extension of a basis permutation",
    );
    match oracle {
        Some(grp) => {
            for a in grp.elements() {
                let ok = match restrict_to_basis(a, g) {
                    Ok(h) => extend_unchecked(g, &h) == *a,
                    Err(_) => false,
                };
                surjective.case(ok, || format!("automorphism {:?}", a.image()));
            }
            let expected: u128 = (1..=n as u128).product();
            surjective.case(grp.len() as u128 == expected, || {
                format!("search found {} automorphisms, expected {expected}", grp.len())
            });
        }
        None => {
            surjective = surjective
                .with_status(Status::NotApplicable)
                .with_note("no oracle group supplied");
        }
    }

    Ok(PsiReport {
        n,
        exhaustive,
        homomorphism,
        injective,
        surjective,
        round_trip,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub n: usize,
    pub q: u32,
    pub group_order: usize,
    pub checks: Vec<ClaimCheck>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(ClaimCheck::passed)
    }

    pub fn get(&self, claim: &str) -> Option<&ClaimCheck> {
        self.checks.iter().find(|c| c.claim == claim)
    }
}

/// Index of the single basis position of a class-1 vertex.
fn basis_index(g: &NzcGraph, v: usize) -> usize {
    g.skeleton(v).indices().next().unwrap_or(0)
}

/// Checks the skeleton lemmas over every element of `grp` and every
/// applicable tuple of vertices.
///
/// "`u` and `v` are mapped on each other by `g`" is read as `g(u) = v` and
/// `g(v) = u`. Basis vectors are the class-1 vertices, so for `q >= 3` any
/// non-zero multiple of `b_i` plays the role of `b_i`.
pub fn check_structure_lemmas(g: &NzcGraph, grp: &AutGroup) -> LemmaReport {
    let n = g.n();
    let count = g.vertex_count();
    let t1 = g.t_class(1).to_vec();
    let mut checks = Vec::new();

    let mut class_preserved = ClaimCheck::new(
        "class-preserved",
        "no automorphism maps a vertex of T_r to a vertex of T_s with r != s",
    );
    let mut top_fixed = ClaimCheck::new(
        "top-class-fixed",
        "every automorphism fixes each vertex of T_n when q = 2 (for q >= 3, maps T_n onto itself)",
    );
    let mut stabilizer_keeps_basis = ClaimCheck::new(
        "basis-stabilizer",
        "if g fixes b_l then b_l in S_u iff b_l in S_g(u)",
    );
    let mut mutual_images = ClaimCheck::new(
        "exchanged-skeletons",
        "if g exchanges u, v in T_i (i < n): basis b in S_u & S_v gives g(b) in S_u & S_v, b in S_u - S_v gives g(b) in S_v - S_u",
    );
    let mut exchanged_basis = ClaimCheck::new(
        "exchanged-basis",
        "if g exchanges b_l and b_m: (b_l in S_u, b_m not) gives (b_l not in S_g(u), b_m in S_g(u)), and b_l, b_m in S_u iff both in S_g(u)",
    );
    let mut moves_two = ClaimCheck::new(
        "moves-two-basis",
        "every non-identity automorphism maps some basis vector b_l to a different basis vector b_m",
    );
    let mut scaled_permutation = ClaimCheck::new(
        "basis-to-scaled-permutation",
        "every automorphism maps each b_i to a non-zero multiple of b_sigma(i) for a permutation sigma",
    );

    for a in grp.elements() {
        for v in 0..count {
            let w = a.apply(v);
            class_preserved.case(g.class_of(v) == g.class_of(w), || {
                format!("{} -> {}", g.vertex(v), g.vertex(w))
            });
        }
        for &v in g.t_class(n) {
            let w = a.apply(v);
            let ok = if g.q() == 2 { w == v } else { g.class_of(w) == n };
            top_fixed.case(ok, || format!("{} -> {}", g.vertex(v), g.vertex(w)));
        }
        for &b in &t1 {
            if a.apply(b) != b {
                continue;
            }
            let l = basis_index(g, b);
            for u in 0..count {
                let gu = a.apply(u);
                stabilizer_keeps_basis.case(
                    g.skeleton(u).contains(l) == g.skeleton(gu).contains(l),
                    || format!("fixes {}, u = {}", g.vertex(b), g.vertex(u)),
                );
            }
        }
        for i in 1..n {
            let class = g.t_class(i);
            for &u in class {
                let v = a.apply(u);
                if v == u || a.apply(v) != u {
                    continue;
                }
                let (su, sv) = (g.skeleton(u), g.skeleton(v));
                for &b in &t1 {
                    let idx = basis_index(g, b);
                    let image = basis_index(g, a.apply(b));
                    if su.contains(idx) && sv.contains(idx) {
                        mutual_images.case(su.contains(image) && sv.contains(image), || {
                            format!("u = {}, v = {}, b = {}", g.vertex(u), g.vertex(v), g.vertex(b))
                        });
                    } else if su.contains(idx) && !sv.contains(idx) {
                        mutual_images.case(sv.contains(image) && !su.contains(image), || {
                            format!("u = {}, v = {}, b = {}", g.vertex(u), g.vertex(v), g.vertex(b))
                        });
                    }
                }
            }
        }
        for &bl in &t1 {
            let bm = a.apply(bl);
            if g.class_of(bm) != 1 || a.apply(bm) != bl {
                continue;
            }
            let (l, m) = (basis_index(g, bl), basis_index(g, bm));
            if l == m {
                continue;
            }
            for u in 0..count {
                let (su, sg) = (g.skeleton(u), g.skeleton(a.apply(u)));
                if su.contains(l) && !su.contains(m) {
                    exchanged_basis.case(!sg.contains(l) && sg.contains(m), || {
                        format!("b{l} <-> b{m}, u = {}", g.vertex(u))
                    });
                }
                let both = su.contains(l) && su.contains(m);
                let both_image = sg.contains(l) && sg.contains(m);
                exchanged_basis.case(both == both_image, || {
                    format!("b{l} <-> b{m}, u = {} (both)", g.vertex(u))
                });
            }
        }
        if g.q() == 2 && !a.is_identity() {
            let moved = t1
                .iter()
                .filter(|&&b| basis_index(g, a.apply(b)) != basis_index(g, b))
                .count();
            moves_two.case(moved >= 2, || format!("{:?} moves {moved} basis vectors", a.image()));
        }
        let mut sigma = vec![0usize; n + 1];
        let mut ok = true;
        for &b in &t1 {
            let w = a.apply(b);
            if g.class_of(w) != 1 {
                ok = false;
                break;
            }
            let (i, j) = (basis_index(g, b), basis_index(g, w));
            if sigma[i] != 0 && sigma[i] != j {
                ok = false;
            }
            sigma[i] = j;
        }
        let distinct: HashSet<usize> = sigma[1..].iter().copied().collect();
        ok &= distinct.len() == n && !distinct.contains(&0);
        scaled_permutation.case(ok, || format!("{:?}", a.image()));
    }

    if g.q() != 2 {
        moves_two = moves_two
            .with_status(Status::NotApplicable)
            .with_note("stated for q = 2; for q >= 3 swapping two twins fixes every basis skeleton");
    }

    checks.extend([
        class_preserved,
        top_fixed,
        stabilizer_keeps_basis,
        mutual_images,
        exchanged_basis,
        moves_two,
        scaled_permutation,
    ]);
    LemmaReport {
        n,
        q: g.q(),
        group_order: grp.len(),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::oracle::{aut_group_oracle, DEFAULT_ELEMENT_CAP, DEFAULT_ORACLE_CAP};
    use crate::symmetry::structural::{aut_group_structural, extend_basis_permutation};
    use crate::vectorspace::{SpaceParams, DEFAULT_VERTEX_CAP};

    fn build(n: usize, q: u32) -> NzcGraph {
        NzcGraph::build(SpaceParams::new(n, q).unwrap(), DEFAULT_VERTEX_CAP).unwrap()
    }

    #[test]
    fn psi_exhaustive_n3() {
        let g = build(3, 2);
        let oracle = aut_group_oracle(&g, DEFAULT_ORACLE_CAP, DEFAULT_ELEMENT_CAP).unwrap();
        let r = check_psi_isomorphism(&g, 0, 0, Some(&oracle)).unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.homomorphism.cases, 36);
        assert!(r.passed());
    }

    #[test]
    fn psi_identity_pair() {
        let g = build(3, 2);
        let id = BasisPermutation::identity(3);
        let a = extend_basis_permutation(&g, &id.compose(&id)).unwrap();
        assert!(a.is_identity());
    }

    #[test]
    fn psi_sampled_n5() {
        let g = build(5, 2);
        let r = check_psi_isomorphism(&g, 1000, 7, None).unwrap();
        assert!(!r.exhaustive);
        assert_eq!(r.homomorphism.cases, 1000);
        assert!(r.passed());
        assert_eq!(r.surjective.status, Status::NotApplicable);
    }

    #[test]
    fn lemmas_hold_for_n3_full_group() {
        let g = build(3, 2);
        let grp = aut_group_structural(&g, 1000).unwrap();
        let r = check_structure_lemmas(&g, &grp);
        assert!(r.passed(), "{r:#?}");
        assert!(r.checks.iter().all(|c| c.status == Status::Pass));
        assert!(r.get("exchanged-skeletons").unwrap().cases > 0);
        assert!(r.get("exchanged-basis").unwrap().cases > 0);
    }

    #[test]
    fn identity_makes_moves_two_vacuous() {
        let g = build(3, 2);
        let r = check_structure_lemmas(&g, &AutGroup::trivial(7));
        assert_eq!(r.get("moves-two-basis").unwrap().cases, 0);
        assert!(r.passed());
    }

    #[test]
    fn every_nonidentity_element_moves_two_basis_vertices_n4() {
        let g = build(4, 2);
        let grp = aut_group_structural(&g, 1000).unwrap();
        for a in grp.elements().iter().filter(|a| !a.is_identity()) {
            let moved = (1..=4).filter(|&i| a.apply(g.basis_id(i)) != g.basis_id(i)).count();
            assert!(moved >= 2);
        }
        let r = check_structure_lemmas(&g, &grp);
        assert_eq!(r.get("moves-two-basis").unwrap().cases, 23);
        assert!(r.passed());
    }

    #[test]
    fn one_directional_reading_of_exchange_fails() {
        // With only g(u) = v required, the 3-cycle on the basis breaks the
        // first part: u = b1+b2 -> v = b2+b3, b2 is common but g(b2) = b3 is not.
        let g = build(3, 2);
        let cycle = BasisPermutation::long_cycle(3);
        let a = extend_basis_permutation(&g, &cycle).unwrap();
        let u = 2; // b1+b2
        let v = a.apply(u);
        assert_eq!(g.vertex(v).label(), "b2+b3");
        let common = g.skeleton(u).mask() & g.skeleton(v).mask();
        assert_eq!(common, 0b010);
        let b2 = g.basis_id(2);
        assert_eq!(g.skeleton(a.apply(b2)).mask() & common, 0);
    }

    #[test]
    fn lemmas_for_q3_oracle_group() {
        let g = build(2, 3);
        let grp = aut_group_oracle(&g, DEFAULT_ORACLE_CAP, DEFAULT_ELEMENT_CAP).unwrap();
        let r = check_structure_lemmas(&g, &grp);
        assert!(r.passed(), "{r:#?}");
        assert_eq!(r.get("moves-two-basis").unwrap().status, Status::NotApplicable);
    }

    #[test]
    fn psi_rejects_q3() {
        assert!(check_psi_isomorphism(&build(2, 3), 10, 0, None).is_err());
    }
}
