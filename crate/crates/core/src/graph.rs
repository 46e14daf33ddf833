//! The non-zero component graph `G(V)`.
//!
//! Two vertices are adjacent iff their skeletons intersect. Adjacency rows
//! are bitsets over canonical vertex ids. Twin sets are the maximal groups
//! of vertices sharing a skeleton; [`closed_neighborhood_twins`] recomputes
//! them from adjacency alone so the two notions can be compared.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::vectorspace::{binomial, enumerate_vectors, SpaceParams, Skeleton, Vector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NzcGraph {
    params: SpaceParams,
    vertices: Vec<Vector>,
    skeletons: Vec<Skeleton>,
    adjacency: Vec<FixedBitSet>,
    /// `t_classes[i - 1]` holds the ids of `T_i`.
    t_classes: Vec<Vec<usize>>,
    twin_sets: Vec<Vec<usize>>,
}

impl NzcGraph {
    pub fn build(params: SpaceParams, vertex_cap: usize) -> Result<Self> {
        let vertices = enumerate_vectors(params, vertex_cap)?;
        let skeletons: Vec<Skeleton> = vertices.iter().map(Vector::skeleton).collect();
        let count = vertices.len();

        // containing[i]: vertices whose skeleton holds b_{i+1}
        let mut containing = vec![FixedBitSet::with_capacity(count); params.n()];
        for (id, s) in skeletons.iter().enumerate() {
            for i in s.indices() {
                containing[i - 1].insert(id);
            }
        }

        // twins share a row, so build one row per distinct skeleton
        let mut row_cache: HashMap<u32, FixedBitSet> = HashMap::new();
        let mut adjacency = Vec::with_capacity(count);
        for (id, s) in skeletons.iter().enumerate() {
            let row = row_cache.entry(s.mask()).or_insert_with(|| {
                let mut row = FixedBitSet::with_capacity(count);
                for i in s.indices() {
                    row.union_with(&containing[i - 1]);
                }
                row
            });
            let mut row = row.clone();
            row.set(id, false);
            adjacency.push(row);
        }

        let (t_classes, twin_sets) = partitions(params.n(), &skeletons);
        Ok(NzcGraph {
            params,
            vertices,
            skeletons,
            adjacency,
            t_classes,
            twin_sets,
        })
    }

    /// Reassembles a graph from serialized parts, checking every invariant
    /// against the parts themselves.
    pub fn from_parts(
        params: SpaceParams,
        vertices: Vec<Vector>,
        edges: &[(usize, usize)],
        twin_sets: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let count = vertices.len();
        if params.vertex_count() != Some(count as u128) {
            return Err(Error::Malformed(format!(
                "expected {:?} vertices, found {count}",
                params.vertex_count()
            )));
        }
        for (id, v) in vertices.iter().enumerate() {
            let checked = Vector::new(params, v.coeffs().to_vec())?;
            if checked.radix_value(params.q()) != id as u128 + 1 {
                return Err(Error::Malformed(format!("vertex {id} is out of canonical order")));
            }
        }
        let skeletons: Vec<Skeleton> = vertices.iter().map(Vector::skeleton).collect();
        let mut adjacency = vec![FixedBitSet::with_capacity(count); count];
        for &(a, b) in edges {
            if a >= count || b >= count || a == b {
                return Err(Error::Malformed(format!("bad edge ({a}, {b})")));
            }
            adjacency[a].insert(b);
            adjacency[b].insert(a);
        }
        for a in 0..count {
            for b in 0..count {
                let expected = a != b && skeletons[a].intersects(skeletons[b]);
                if adjacency[a].contains(b) != expected {
                    return Err(Error::Malformed(format!(
                        "edge set disagrees with skeletons at ({a}, {b})"
                    )));
                }
            }
        }
        let (t_classes, expected_twins) = partitions(params.n(), &skeletons);
        if twin_sets != expected_twins {
            return Err(Error::Malformed("twin sets disagree with skeletons".into()));
        }
        Ok(NzcGraph {
            params,
            vertices,
            skeletons,
            adjacency,
            t_classes,
            twin_sets,
        })
    }

    pub fn params(&self) -> SpaceParams {
        self.params
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    pub fn q(&self) -> u32 {
        self.params.q()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &Vector {
        &self.vertices[v]
    }

    pub fn skeleton(&self, v: usize) -> Skeleton {
        self.skeletons[v]
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.skeletons[v].len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn row(&self, v: usize) -> &FixedBitSet {
        &self.adjacency[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].ones()
    }

    /// Ids of `T_i` (1-based class index).
    pub fn t_class(&self, i: usize) -> &[usize] {
        &self.t_classes[i - 1]
    }

    pub fn t_classes(&self) -> &[Vec<usize>] {
        &self.t_classes
    }

    pub fn twin_sets(&self) -> &[Vec<usize>] {
        &self.twin_sets
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.vertex_count())
            .flat_map(|a| self.adjacency[a].ones().filter(move |&b| b > a).map(move |b| (a, b)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adjacency[v].count_ones(..))
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            return Err(Error::IndexOutOfRange {
                index: v,
                len: self.vertex_count(),
            });
        }
        Ok(())
    }

    /// Id of the vertex with the given coefficient tuple.
    pub fn id_of(&self, v: &Vector) -> Option<usize> {
        let value = v.radix_value(self.q());
        if v.coeffs().len() != self.n() || value == 0 || value > self.vertex_count() as u128 {
            return None;
        }
        Some(value as usize - 1)
    }

    /// For `q = 2` a skeleton names exactly one vertex, whose id is `mask - 1`.
    pub fn id_of_skeleton_q2(&self, s: Skeleton) -> usize {
        debug_assert_eq!(self.q(), 2);
        s.mask() as usize - 1
    }

    /// Id of the basis vector `b_i` (coefficient 1 at position `i`, 1-based).
    pub fn basis_id(&self, i: usize) -> usize {
        (self.q() as usize).pow(i as u32 - 1) - 1
    }

    pub fn is_symmetric_irreflexive(&self) -> bool {
        (0..self.vertex_count()).all(|a| {
            !self.adjacent(a, a) && self.adjacency[a].ones().all(|b| self.adjacent(b, a))
        })
    }

    pub fn twin_partition(&self) -> &[Vec<usize>] {
        &self.twin_sets
    }
}

fn partitions(n: usize, skeletons: &[Skeleton]) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut t_classes = vec![Vec::new(); n];
    let mut twin_index: HashMap<u32, usize> = HashMap::new();
    let mut twin_sets: Vec<Vec<usize>> = Vec::new();
    for (id, s) in skeletons.iter().enumerate() {
        t_classes[s.len() - 1].push(id);
        let slot = *twin_index.entry(s.mask()).or_insert_with(|| {
            twin_sets.push(Vec::new());
            twin_sets.len() - 1
        });
        twin_sets[slot].push(id);
    }
    (t_classes, twin_sets)
}

/// Twin sets recomputed from adjacency only: vertices are grouped when their
/// closed neighborhoods coincide. Ordered by smallest member.
pub fn closed_neighborhood_twins(g: &NzcGraph) -> Vec<Vec<usize>> {
    let mut groups: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for v in 0..g.vertex_count() {
        let mut closed = g.row(v).clone();
        closed.insert(v);
        let slot = *groups.entry(closed).or_insert_with(|| {
            out.push(Vec::new());
            out.len() - 1
        });
        out[slot].push(v);
    }
    out
}

/// `q^n - q^(n-s) - 1`: degree of a vertex of class `s` for any `q`.
/// Derived here by counting vectors that miss the skeleton; not a stated
/// result for `q > 2`.
pub fn general_degree(n: usize, q: u32, s: usize) -> u128 {
    let q = q as u128;
    q.pow(n as u32) - q.pow((n - s) as u32) - 1
}

/// `(2^s - 1) 2^(n-s) - 1`: degree of a class-`s` vertex when `q = 2`.
pub fn binary_degree(n: usize, s: usize) -> u128 {
    ((1u128 << s) - 1) * (1u128 << (n - s)) - 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeRow {
    pub vertex: usize,
    pub class: usize,
    pub computed: usize,
    pub expected: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub n: usize,
    pub q: u32,
    /// Set for the generalized-`q` formula, which is derived rather than stated.
    pub derived: bool,
    pub rows: Vec<DegreeRow>,
}

impl DegreeReport {
    pub fn matching(&self) -> usize {
        self.rows.iter().filter(|r| r.computed as u128 == r.expected).count()
    }

    pub fn passed(&self) -> bool {
        self.matching() == self.rows.len()
    }
}

/// Compares every degree against `(2^s - 1) 2^(n-s) - 1`. Requires `q = 2`.
pub fn check_degree_formula(g: &NzcGraph) -> Result<DegreeReport> {
    if g.q() != 2 {
        return Err(Error::UnsupportedQ { q: g.q() });
    }
    Ok(degree_report(g, false, |s| binary_degree(g.n(), s)))
}

/// Compares every degree against `q^n - q^(n-s) - 1`, for any `q`.
pub fn check_general_degree_formula(g: &NzcGraph) -> DegreeReport {
    degree_report(g, true, |s| general_degree(g.n(), g.q(), s))
}

fn degree_report(g: &NzcGraph, derived: bool, formula: impl Fn(usize) -> u128) -> DegreeReport {
    let rows = (0..g.vertex_count())
        .map(|v| {
            let class = g.class_of(v);
            DegreeRow {
                vertex: v,
                class,
                computed: g.row(v).count_ones(..),
                expected: formula(class),
            }
        })
        .collect();
    DegreeReport {
        n: g.n(),
        q: g.q(),
        derived,
        rows,
    }
}

/// Number of vertices `u` in `T_i` with `b_l` in `S_u` and `b_m` not in `S_u`.
/// Each such `u` pairs with the vertex whose skeleton swaps `l` and `m`.
pub fn count_distinguishing_pairs(g: &NzcGraph, l: usize, m: usize, i: usize) -> Result<usize> {
    if g.q() != 2 {
        return Err(Error::UnsupportedQ { q: g.q() });
    }
    let n = g.n();
    if l == m || l == 0 || m == 0 || l > n || m > n {
        return Err(Error::precondition(format!(
            "need distinct basis indices in 1..={n}, got l={l}, m={m}"
        )));
    }
    if i == 0 || i >= n {
        return Err(Error::precondition(format!("class index must be in 1..={}, got {i}", n - 1)));
    }
    Ok(g
        .t_class(i)
        .iter()
        .filter(|&&u| {
            let s = g.skeleton(u);
            s.contains(l) && !s.contains(m)
        })
        .count())
}

/// `C(n-1, i-1) - C(n-2, i-2)`, with `C(., -1) = 0`.
pub fn distinguishing_pairs_formula(n: usize, i: usize) -> u64 {
    let first = binomial(n as u64 - 1, i as u64 - 1);
    let second = if i >= 2 { binomial(n as u64 - 2, i as u64 - 2) } else { 0 };
    first - second
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vectorspace::DEFAULT_VERTEX_CAP;

    fn build(n: usize, q: u32) -> NzcGraph {
        NzcGraph::build(SpaceParams::new(n, q).unwrap(), DEFAULT_VERTEX_CAP).unwrap()
    }

    #[test]
    fn n2_q2_is_a_path() {
        let g = build(2, 2);
        // ids: 0 = b1, 1 = b2, 2 = b1+b2
        assert!(g.adjacent(0, 2));
        assert!(g.adjacent(1, 2));
        assert!(!g.adjacent(0, 1));
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.degree(2).unwrap(), 2);
    }

    #[test]
    fn full_skeleton_vertex_is_universal() {
        let g = build(3, 2);
        assert_eq!(g.vertex_count(), 7);
        let top = g.t_class(3)[0];
        assert_eq!(g.degree(top).unwrap(), 6);
    }

    #[test]
    fn n3_q3_twin_structure() {
        let g = build(3, 3);
        assert_eq!(g.vertex_count(), 26);
        let top = &g.twin_sets().iter().find(|t| g.class_of(t[0]) == 3).unwrap();
        assert_eq!(top.len(), 8);
        let mut sizes: Vec<usize> = g.twin_sets().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, [2, 2, 2, 4, 4, 4, 8]);
    }

    #[test]
    fn twin_partition_small_cases() {
        let g = build(2, 2);
        assert_eq!(g.twin_partition(), [vec![0], vec![1], vec![2]]);
        let g = build(2, 3);
        let mut sizes: Vec<(usize, usize)> = g
            .twin_partition()
            .iter()
            .map(|t| (g.class_of(t[0]), t.len()))
            .collect();
        sizes.sort();
        assert_eq!(sizes, [(1, 2), (1, 2), (2, 4)]);
    }

    #[test]
    fn degree_examples() {
        let g = build(4, 2);
        for &v in g.t_class(3) {
            assert_eq!(g.degree(v).unwrap(), 13);
        }
        // brute force over all 8 vertices of (n=2, q=3)
        let g = build(2, 3);
        for &v in g.t_class(1) {
            let brute = (0..g.vertex_count())
                .filter(|&u| u != v && g.skeleton(u).intersects(g.skeleton(v)))
                .count();
            assert_eq!(brute, 5);
            assert_eq!(g.degree(v).unwrap(), 5);
            assert_eq!(general_degree(2, 3, 1), 5);
        }
        assert!(matches!(g.degree(8), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn degree_formula_reports() {
        let r = check_degree_formula(&build(3, 2)).unwrap();
        assert!(r.passed());
        assert_eq!(r.rows.len(), 7);
        let r = check_degree_formula(&build(8, 2)).unwrap();
        assert!(r.passed());
        assert_eq!(r.matching(), 255);
        assert_eq!(
            check_degree_formula(&build(3, 3)).unwrap_err(),
            Error::UnsupportedQ { q: 3 }
        );
        let r = check_general_degree_formula(&build(3, 3));
        assert!(r.derived && r.passed());
    }

    #[test]
    fn closed_neighborhood_twins_agree() {
        for (n, q) in [(1, 2), (2, 2), (4, 2), (2, 3), (3, 3), (2, 4), (2, 5)] {
            let g = build(n, q);
            assert_eq!(closed_neighborhood_twins(&g), g.twin_partition(), "n={n} q={q}");
        }
    }

    #[test]
    fn twin_sets_refine_classes() {
        for (n, q) in [(3, 2), (3, 3), (2, 4)] {
            let g = build(n, q);
            for i in 1..=n {
                let inside: Vec<&Vec<usize>> =
                    g.twin_sets().iter().filter(|t| g.class_of(t[0]) == i).collect();
                assert_eq!(inside.len() as u64, binomial(n as u64, i as u64));
                for t in inside {
                    assert!(t.iter().all(|&v| g.class_of(v) == i));
                    assert_eq!(t.len() as u64, ((q - 1) as u64).pow(i as u32));
                }
            }
        }
    }

    #[test]
    fn distinguishing_pair_examples() {
        assert_eq!(count_distinguishing_pairs(&build(4, 2), 1, 2, 2).unwrap(), 2);
        assert_eq!(count_distinguishing_pairs(&build(3, 2), 1, 2, 1).unwrap(), 1);
        // the ten 3-subsets of {1..5} holding 2 but not 4: {2,x,y}, x,y in {1,3,5}
        let brute = crate::vectorspace::binomial(3, 2);
        assert_eq!(count_distinguishing_pairs(&build(5, 2), 2, 4, 3).unwrap() as u64, brute);
        assert_eq!(distinguishing_pairs_formula(5, 3), 3);
    }

    #[test]
    fn distinguishing_pair_preconditions() {
        let g = build(4, 2);
        assert!(count_distinguishing_pairs(&g, 1, 1, 2).is_err());
        assert!(count_distinguishing_pairs(&g, 1, 2, 4).is_err());
        assert!(count_distinguishing_pairs(&g, 0, 2, 1).is_err());
        assert!(count_distinguishing_pairs(&build(2, 3), 1, 2, 1).is_err());
    }

    #[test]
    fn from_parts_round_trips() {
        let g = build(3, 3);
        let h = NzcGraph::from_parts(
            g.params(),
            g.vertices().to_vec(),
            &g.edges(),
            g.twin_sets().to_vec(),
        )
        .unwrap();
        assert_eq!(g, h);
        let mut edges = g.edges();
        edges.pop();
        assert!(NzcGraph::from_parts(g.params(), g.vertices().to_vec(), &edges, g.twin_sets().to_vec()).is_err());
    }

    #[test]
    fn basis_ids() {
        let g = build(3, 3);
        for i in 1..=3 {
            assert_eq!(g.vertex(g.basis_id(i)), &Vector::basis(g.params(), i).unwrap());
        }
    }
}
