//! Explicit automorphism groups and the set-level operations on them:
//! orbits, stabilizers, the moved set `S(G)` and same-orbit pairs `V_s(G)`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::ops::ControlFlow;

use serde::Serialize;

use super::perm::{Automorphism, VertexMap};

/// A finite set of vertex permutations that can be scanned element by element.
///
/// Implemented by explicit groups and by lazily generated ones, so that a
/// scan over `10!` elements never has to materialize them.
pub trait AutomorphismSet {
    fn point_count(&self) -> usize;

    fn order(&self) -> u128;

    /// Visits every element until `visit` breaks.
    fn try_for_each_element(
        &self,
        visit: &mut dyn FnMut(&dyn VertexMap) -> ControlFlow<()>,
    ) -> ControlFlow<()>;
}

#[derive(Debug, Clone)]
pub struct AutGroup {
    points: usize,
    elements: Vec<Automorphism>,
    generators: Vec<Automorphism>,
    index: HashMap<Automorphism, usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GroupAxioms {
    pub has_identity: bool,
    pub has_inverses: bool,
    pub closed: bool,
    pub distinct: bool,
}

impl GroupAxioms {
    pub fn holds(&self) -> bool {
        self.has_identity && self.has_inverses && self.closed && self.distinct
    }
}

/// Products checked exhaustively below this many pairs; above it, closure is
/// checked through the generators.
const PAIRWISE_CLOSURE_LIMIT: usize = 4_000_000;

impl AutGroup {
    /// Wraps an element list. `generators` may be empty; when present they
    /// are used for orbit computation and the closure check.
    pub fn from_elements(
        points: usize,
        elements: Vec<Automorphism>,
        generators: Vec<Automorphism>,
    ) -> Self {
        let index = elements
            .iter()
            .enumerate()
            .map(|(k, a)| (a.clone(), k))
            .collect();
        AutGroup {
            points,
            elements,
            generators,
            index,
        }
    }

    pub fn trivial(points: usize) -> Self {
        Self::from_elements(points, vec![Automorphism::identity(points)], Vec::new())
    }

    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    pub fn generators(&self) -> &[Automorphism] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, a: &Automorphism) -> bool {
        self.index.contains_key(a)
    }

    /// Same elements, ignoring order.
    pub fn set_eq(&self, other: &AutGroup) -> bool {
        self.len() == other.len()
            && self.index.len() == other.index.len()
            && other.elements.iter().all(|a| self.contains(a))
    }

    pub fn verify_group_axioms(&self) -> GroupAxioms {
        let distinct = self.index.len() == self.elements.len();
        let has_identity = self.contains(&Automorphism::identity(self.points));
        let has_inverses = self.elements.iter().all(|a| self.contains(&a.inverse()));
        let closed = if self.elements.len().saturating_mul(self.elements.len())
            <= PAIRWISE_CLOSURE_LIMIT
            || self.generators.is_empty()
        {
            self.elements
                .iter()
                .all(|a| self.elements.iter().all(|b| self.contains(&a.compose(b))))
        } else {
            self.closed_via_generators()
        };
        GroupAxioms {
            has_identity,
            has_inverses,
            closed,
            distinct,
        }
    }

    /// The set is a group iff it is exactly what the generators reach from
    /// the identity by right multiplication, and it is stable under it.
    fn closed_via_generators(&self) -> bool {
        if !self.generators.iter().all(|s| self.contains(s)) {
            return false;
        }
        let start = Automorphism::identity(self.points);
        let Some(&start_idx) = self.index.get(&start) else {
            return false;
        };
        let mut seen = vec![false; self.elements.len()];
        seen[start_idx] = true;
        let mut queue = VecDeque::from([start_idx]);
        let mut reached = 1usize;
        while let Some(k) = queue.pop_front() {
            for s in &self.generators {
                let next = self.elements[k].compose(s);
                match self.index.get(&next) {
                    Some(&j) => {
                        if !seen[j] {
                            seen[j] = true;
                            reached += 1;
                            queue.push_back(j);
                        }
                    }
                    None => return false,
                }
            }
        }
        reached == self.elements.len()
    }

    /// Orbit partition, each orbit sorted, orbits ordered by smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let maps: Vec<&Automorphism> = if self.generators.is_empty() {
            self.elements.iter().collect()
        } else {
            self.generators.iter().collect()
        };
        orbits_of(self.points, maps.iter().map(|a| *a as &dyn VertexMap))
    }

    pub fn orbit(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .elements
            .iter()
            .map(|a| a.apply(v))
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        out.sort_unstable();
        out
    }

    /// Subgroup fixing `v`.
    pub fn stabilizer(&self, v: usize) -> AutGroup {
        self.stabilizer_of_set(&[v])
    }

    /// Subgroup fixing every vertex of `set`.
    pub fn stabilizer_of_set(&self, set: &[usize]) -> AutGroup {
        let elements = self
            .elements
            .iter()
            .filter(|a| set.iter().all(|&v| a.apply(v) == v))
            .cloned()
            .collect();
        AutGroup::from_elements(self.points, elements, Vec::new())
    }

    /// Orbit of `u` under the stabilizer of `v`.
    pub fn stabilizer_orbit(&self, v: usize, u: usize) -> Vec<usize> {
        self.stabilizer(v).orbit(u)
    }

    /// `S(G)`: vertices whose orbit has at least two elements.
    pub fn moved_set(&self) -> Vec<usize> {
        self.orbits()
            .into_iter()
            .filter(|o| o.len() >= 2)
            .flatten()
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// `V_s(G)`: ordered pairs of distinct vertices in a common orbit.
    pub fn same_orbit_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for orbit in self.orbits() {
            for &u in &orbit {
                for &v in &orbit {
                    if u != v {
                        out.push((u, v));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

impl AutomorphismSet for AutGroup {
    fn point_count(&self) -> usize {
        self.points
    }

    fn order(&self) -> u128 {
        self.elements.len() as u128
    }

    fn try_for_each_element(
        &self,
        visit: &mut dyn FnMut(&dyn VertexMap) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        for a in &self.elements {
            visit(a)?;
        }
        ControlFlow::Continue(())
    }
}

/// Orbits of the group generated by `maps`, via union-find.
pub fn orbits_of<'a>(
    points: usize,
    maps: impl IntoIterator<Item = &'a dyn VertexMap>,
) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(points);
    for m in maps {
        for v in 0..points {
            uf.union(v, m.apply(v));
        }
    }
    uf.classes()
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    pub(crate) fn classes(&mut self) -> Vec<Vec<usize>> {
        let mut by_root: HashMap<usize, usize> = HashMap::new();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for v in 0..self.parent.len() {
            let r = self.find(v);
            let slot = *by_root.entry(r).or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[slot].push(v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aut(image: &[u32]) -> Automorphism {
        Automorphism::from_image_unchecked(image.to_vec())
    }

    fn cyclic3() -> AutGroup {
        AutGroup::from_elements(
            4,
            vec![aut(&[0, 1, 2, 3]), aut(&[1, 2, 0, 3]), aut(&[2, 0, 1, 3])],
            Vec::new(),
        )
    }

    #[test]
    fn rigid_group_has_no_moved_points() {
        let g = AutGroup::trivial(5);
        assert!(g.orbits().iter().all(|o| o.len() == 1));
        assert!(g.moved_set().is_empty());
        assert!(g.same_orbit_pairs().is_empty());
        assert!(g.verify_group_axioms().holds());
    }

    #[test]
    fn orbits_and_pairs() {
        let g = cyclic3();
        assert_eq!(g.orbits(), [vec![0, 1, 2], vec![3]]);
        assert_eq!(g.moved_set(), [0, 1, 2]);
        assert_eq!(g.same_orbit_pairs().len(), 6);
        assert_eq!(g.stabilizer(0).len(), 1);
        assert_eq!(g.stabilizer(3).len(), 3);
        assert!(g.verify_group_axioms().holds());
    }

    #[test]
    fn detects_non_group() {
        let g = AutGroup::from_elements(3, vec![aut(&[0, 1, 2]), aut(&[1, 2, 0])], Vec::new());
        let ax = g.verify_group_axioms();
        assert!(ax.has_identity);
        assert!(!ax.has_inverses);
        assert!(!ax.closed);
    }

    #[test]
    fn generator_closure_matches_pairwise() {
        let g = cyclic3();
        let with_gens = AutGroup::from_elements(4, g.elements().to_vec(), vec![aut(&[1, 2, 0, 3])]);
        assert!(with_gens.closed_via_generators());
        let missing = AutGroup::from_elements(
            4,
            vec![aut(&[0, 1, 2, 3]), aut(&[1, 2, 0, 3])],
            vec![aut(&[1, 2, 0, 3])],
        );
        assert!(!missing.closed_via_generators());
    }
}
