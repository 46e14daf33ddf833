//! Independent automorphism engine: backtracking over vertex images with
//! partition refinement. It reads nothing but the adjacency rows (and an
//! optional vertex coloring), so it can be used to check the structural
//! engine and to handle `q >= 3`, where no structural engine exists.
//!
//! The search keeps a pair of ordered partitions: the left one individualizes
//! a vertex, the right one its candidate image. Both are refined with the
//! same deterministic procedure; any automorphism compatible with the choices
//! so far maps left cells onto right cells position by position, so a
//! mismatch in the refinement trace prunes the branch without losing
//! automorphisms. Every leaf is verified before it is reported.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::graph::NzcGraph;

use super::group::{AutGroup, UnionFind};
use super::perm::{Automorphism, VertexMap};

pub const DEFAULT_ORACLE_CAP: usize = 40;
pub const DEFAULT_ELEMENT_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
struct Partition {
    cells: Vec<Vec<u32>>,
    cell_of: Vec<u32>,
}

impl Partition {
    fn from_keys<K: Ord + Clone>(keys: &[K]) -> Self {
        let mut order: Vec<u32> = (0..keys.len() as u32).collect();
        order.sort_by(|&a, &b| keys[a as usize].cmp(&keys[b as usize]).then(a.cmp(&b)));
        let mut cells: Vec<Vec<u32>> = Vec::new();
        for (k, &v) in order.iter().enumerate() {
            if k == 0 || keys[order[k - 1] as usize] != keys[v as usize] {
                cells.push(Vec::new());
            }
            cells.last_mut().expect("pushed above").push(v);
        }
        let mut p = Partition {
            cells,
            cell_of: vec![0; keys.len()],
        };
        p.reindex();
        p
    }

    fn reindex(&mut self) {
        for (c, cell) in self.cells.iter().enumerate() {
            for &v in cell {
                self.cell_of[v as usize] = c as u32;
            }
        }
    }

    fn first_nonsingleton(&self) -> Option<usize> {
        self.cells.iter().position(|c| c.len() > 1)
    }

    /// Moves `v` into its own cell, placed directly before the rest of its
    /// former cell.
    fn individualize(&self, v: u32) -> Partition {
        let c = self.cell_of[v as usize] as usize;
        let mut cells = Vec::with_capacity(self.cells.len() + 1);
        cells.extend_from_slice(&self.cells[..c]);
        cells.push(vec![v]);
        cells.push(self.cells[c].iter().copied().filter(|&x| x != v).collect());
        cells.extend_from_slice(&self.cells[c + 1..]);
        let mut p = Partition {
            cells,
            cell_of: self.cell_of.clone(),
        };
        p.reindex();
        p
    }

    fn shape(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }
}

/// Splits cells by the multiset of neighbor cells until nothing splits.
/// Returns a hash of everything observed, which is invariant under
/// relabeling the graph.
fn refine(g: &NzcGraph, p: &mut Partition) -> u64 {
    let mut trace = DefaultHasher::new();
    let count = p.cell_of.len();
    let mut counts: Vec<u32> = Vec::new();
    loop {
        let ncells = p.cells.len();
        let mut signatures: Vec<Vec<(u32, u32)>> = Vec::with_capacity(count);
        for v in 0..count {
            counts.clear();
            counts.resize(ncells, 0);
            for w in g.neighbors(v) {
                counts[p.cell_of[w] as usize] += 1;
            }
            signatures.push(
                counts
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(c, &k)| (c as u32, k))
                    .collect(),
            );
        }
        let mut cells = Vec::with_capacity(ncells);
        for cell in &p.cells {
            let mut members = cell.clone();
            members.sort_by(|&a, &b| {
                signatures[a as usize]
                    .cmp(&signatures[b as usize])
                    .then(a.cmp(&b))
            });
            let mut start = 0;
            for k in 1..=members.len() {
                if k == members.len()
                    || signatures[members[k] as usize] != signatures[members[start] as usize]
                {
                    signatures[members[start] as usize].hash(&mut trace);
                    (k - start).hash(&mut trace);
                    cells.push(members[start..k].to_vec());
                    start = k;
                }
            }
        }
        let split = cells.len() != ncells;
        p.cells = cells;
        p.reindex();
        if !split {
            return trace.finish();
        }
    }
}

#[derive(Clone, Copy)]
struct Search<'a> {
    g: &'a NzcGraph,
    colors: Option<&'a [u32]>,
}

impl<'a> Search<'a> {
    fn root(&self) -> Partition {
        let count = self.g.vertex_count();
        let keys: Vec<(u32, usize)> = (0..count)
            .map(|v| {
                let color = self.colors.map_or(0, |c| c[v]);
                (color, self.g.row(v).count_ones(..))
            })
            .collect();
        let mut p = Partition::from_keys(&keys);
        refine(self.g, &mut p);
        p
    }

    fn leaf(&self, left: &Partition, right: &Partition) -> Option<Automorphism> {
        let mut image = vec![0u32; left.cell_of.len()];
        for (l, r) in left.cells.iter().zip(&right.cells) {
            image[l[0] as usize] = r[0];
        }
        let a = Automorphism::new(self.g, image).ok()?;
        if let Some(colors) = self.colors {
            if (0..a.len()).any(|v| colors[v] != colors[a.apply(v)]) {
                return None;
            }
        }
        Some(a)
    }

    fn consistent(&self, pairs: &[(u32, u32)], v: u32, w: u32) -> bool {
        pairs.iter().all(|&(x, y)| {
            self.g.adjacent(v as usize, x as usize) == self.g.adjacent(w as usize, y as usize)
        })
    }

    /// Depth-first search below `(left, right)`. `on_leaf` returns `true` to stop.
    fn descend(
        &self,
        left: &Partition,
        right: &Partition,
        pairs: &mut Vec<(u32, u32)>,
        on_leaf: &mut dyn FnMut(Automorphism) -> Result<bool>,
    ) -> Result<bool> {
        let Some(target) = left.first_nonsingleton() else {
            return match self.leaf(left, right) {
                Some(a) => on_leaf(a),
                None => Ok(false),
            };
        };
        let v = left.cells[target][0];
        let mut next_left = left.individualize(v);
        let left_trace = refine(self.g, &mut next_left);
        let left_shape = next_left.shape();
        for &w in &right.cells[target] {
            if !self.consistent(pairs, v, w) {
                continue;
            }
            let mut next_right = right.individualize(w);
            if refine(self.g, &mut next_right) != left_trace || next_right.shape() != left_shape {
                continue;
            }
            pairs.push((v, w));
            let stop = self.descend(&next_left, &next_right, pairs, on_leaf)?;
            pairs.pop();
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Some automorphism extending the current choices plus `v -> w`.
    fn extension(&self, left: &Partition, right: &Partition, v: u32, w: u32) -> Option<Automorphism> {
        let mut l = left.individualize(v);
        let mut r = right.individualize(w);
        if refine(self.g, &mut l) != refine(self.g, &mut r) || l.shape() != r.shape() {
            return None;
        }
        let mut found = None;
        let _ = self.descend(&l, &r, &mut vec![(v, w)], &mut |a| {
            found = Some(a);
            Ok(true)
        });
        found
    }
}

fn check_colors(g: &NzcGraph, colors: Option<&[u32]>) -> Result<()> {
    if let Some(c) = colors {
        if c.len() != g.vertex_count() {
            return Err(Error::InvalidParams(format!(
                "coloring has {} entries, graph has {} vertices",
                c.len(),
                g.vertex_count()
            )));
        }
    }
    Ok(())
}

/// Every automorphism of `g` preserving `colors`, in search order.
pub fn enumerate_automorphisms(
    g: &NzcGraph,
    colors: Option<&[u32]>,
    element_cap: usize,
) -> Result<Vec<Automorphism>> {
    check_colors(g, colors)?;
    let search = Search { g, colors };
    let root = search.root();
    let mut out = Vec::new();
    search.descend(&root, &root, &mut Vec::new(), &mut |a| {
        if out.len() >= element_cap {
            return Err(Error::CapExceeded {
                what: "group order",
                size: element_cap as u128 + 1,
                cap: element_cap as u128,
            });
        }
        out.push(a);
        Ok(false)
    })?;
    Ok(out)
}

/// The full automorphism group by exhaustive search. Limited to graphs with
/// at most `oracle_cap` vertices and groups of at most `element_cap` elements.
pub fn aut_group_oracle(g: &NzcGraph, oracle_cap: usize, element_cap: usize) -> Result<AutGroup> {
    if g.vertex_count() > oracle_cap {
        return Err(Error::CapExceeded {
            what: "oracle vertex count",
            size: g.vertex_count() as u128,
            cap: oracle_cap as u128,
        });
    }
    if let Some(order) = group_order(g, None)? {
        if order > element_cap as u128 {
            return Err(Error::CapExceeded {
                what: "group order",
                size: order,
                cap: element_cap as u128,
            });
        }
    }
    let elements = enumerate_automorphisms(g, None, element_cap)?;
    Ok(AutGroup::from_elements(g.vertex_count(), elements, Vec::new()))
}

/// Walks the first branch of the search tree (the one every vertex maps to
/// itself) and at each level asks which other images of the individualized
/// vertex extend to an automorphism. `visit` sees the level's vertex, the
/// candidates and the extension found for each candidate.
fn walk_stabilizer_chain(
    g: &NzcGraph,
    colors: Option<&[u32]>,
    mut visit: impl FnMut(u32, u32, Option<Automorphism>) -> bool,
) {
    let search = Search { g, colors };
    let mut p = search.root();
    while let Some(target) = p.first_nonsingleton() {
        let v = p.cells[target][0];
        for &w in &p.cells[target][1..] {
            if visit(v, w, search.extension(&p, &p, v, w)) {
                return;
            }
        }
        p = p.individualize(v);
        refine(g, &mut p);
    }
}

/// A non-identity automorphism preserving `colors`, if one exists.
pub fn find_nontrivial_automorphism(g: &NzcGraph, colors: Option<&[u32]>) -> Result<Option<Automorphism>> {
    check_colors(g, colors)?;
    let mut found = None;
    walk_stabilizer_chain(g, colors, |_, _, ext| {
        found = ext;
        found.is_some()
    });
    Ok(found)
}

/// Order of the color-preserving automorphism group, as the product of the
/// basic orbit lengths along a stabilizer chain. `None` on overflow.
pub fn group_order(g: &NzcGraph, colors: Option<&[u32]>) -> Result<Option<u128>> {
    check_colors(g, colors)?;
    let mut levels: Vec<(u32, u128)> = Vec::new();
    walk_stabilizer_chain(g, colors, |v, _, ext| {
        if levels.last().map(|&(x, _)| x) != Some(v) {
            levels.push((v, 1));
        }
        if ext.is_some() {
            levels.last_mut().expect("pushed above").1 += 1;
        }
        false
    });
    Ok(levels
        .iter()
        .try_fold(1u128, |acc, &(_, len)| acc.checked_mul(len)))
}

/// Orbit partition of the full color-preserving group, found by search
/// rather than enumeration. Orbits ordered by smallest member.
pub fn orbits_by_search(g: &NzcGraph, colors: Option<&[u32]>) -> Result<Vec<Vec<usize>>> {
    check_colors(g, colors)?;
    let search = Search { g, colors };
    let root = search.root();
    let mut uf = UnionFind::new(g.vertex_count());
    for cell in &root.cells {
        let v = cell[0];
        for &w in &cell[1..] {
            if uf.find(v as usize) == uf.find(w as usize) {
                continue;
            }
            if let Some(a) = search.extension(&root, &root, v, w) {
                for x in 0..g.vertex_count() {
                    uf.union(x, a.apply(x));
                }
            }
        }
    }
    Ok(uf.classes())
}

/// Cell sizes of the refined root partition; exposed for diagnostics.
pub fn equitable_cells(g: &NzcGraph, colors: Option<&[u32]>) -> Result<Vec<Vec<usize>>> {
    check_colors(g, colors)?;
    let root = Search { g, colors }.root();
    Ok(root
        .cells
        .iter()
        .map(|c| c.iter().map(|&v| v as usize).collect())
        .collect())
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::structural::aut_group_structural;
    use crate::vectorspace::{SpaceParams, DEFAULT_VERTEX_CAP};
    use itertools::Itertools;

    fn build(n: usize, q: u32) -> NzcGraph {
        NzcGraph::build(SpaceParams::new(n, q).unwrap(), DEFAULT_VERTEX_CAP).unwrap()
    }

    /// Every vertex permutation, checked one by one. Only for tiny graphs.
    fn brute_force_group(g: &NzcGraph) -> Vec<Automorphism> {
        let count = g.vertex_count();
        (0..count as u32)
            .permutations(count)
            .filter_map(|image| Automorphism::new(g, image).ok())
            .collect()
    }

    #[test]
    fn path_p3_has_two_automorphisms() {
        let g = build(2, 2);
        let grp = aut_group_oracle(&g, DEFAULT_ORACLE_CAP, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(grp.len(), 2);
    }

    #[test]
    fn oracle_matches_brute_force_on_tiny_graphs() {
        for (n, q) in [(1, 2), (2, 2), (3, 2), (1, 3), (1, 4)] {
            let g = build(n, q);
            let oracle = aut_group_oracle(&g, DEFAULT_ORACLE_CAP, DEFAULT_ELEMENT_CAP).unwrap();
            let brute = AutGroup::from_elements(g.vertex_count(), brute_force_group(&g), Vec::new());
            assert!(oracle.set_eq(&brute), "n={n} q={q}");
        }
    }

    #[test]
    fn oracle_matches_brute_force_on_n2_q3() {
        // 8! = 40320 candidate permutations
        let g = build(2, 3);
        let brute = brute_force_group(&g);
        assert_eq!(brute.len(), 192);
        let oracle = aut_group_oracle(&g, DEFAULT_ORACLE_CAP, DEFAULT_ELEMENT_CAP).unwrap();
        let brute = AutGroup::from_elements(8, brute, Vec::new());
        assert!(oracle.set_eq(&brute));
        assert!(oracle.verify_group_axioms().holds());
    }

    #[test]
    fn oracle_equals_structural_for_q2() {
        for n in 2..=4 {
            let g = build(n, 2);
            let oracle = aut_group_oracle(&g, DEFAULT_ORACLE_CAP, DEFAULT_ELEMENT_CAP).unwrap();
            let structural = aut_group_structural(&g, DEFAULT_ELEMENT_CAP).unwrap();
            assert!(oracle.set_eq(&structural), "n={n}");
        }
    }

    #[test]
    fn caps() {
        let g = build(3, 3);
        assert!(matches!(
            aut_group_oracle(&g, 20, DEFAULT_ELEMENT_CAP),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            aut_group_oracle(&g, DEFAULT_ORACLE_CAP, 1000),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn group_order_by_chain() {
        assert_eq!(group_order(&build(2, 2), None).unwrap(), Some(2));
        assert_eq!(group_order(&build(4, 2), None).unwrap(), Some(24));
        assert_eq!(group_order(&build(2, 3), None).unwrap(), Some(192));
        assert_eq!(group_order(&build(1, 2), None).unwrap(), Some(1));
    }

    #[test]
    fn nontrivial_search() {
        assert!(find_nontrivial_automorphism(&build(1, 2), None).unwrap().is_none());
        let a = find_nontrivial_automorphism(&build(3, 3), None).unwrap().unwrap();
        assert!(!a.is_identity());
        // all-distinct colors make any graph rigid
        let g = build(2, 3);
        let colors: Vec<u32> = (0..8).collect();
        assert!(find_nontrivial_automorphism(&g, Some(&colors)).unwrap().is_none());
    }

    #[test]
    fn orbits_by_search_match_enumeration() {
        for (n, q) in [(3, 2), (4, 2), (2, 3)] {
            let g = build(n, q);
            let grp = aut_group_oracle(&g, DEFAULT_ORACLE_CAP, DEFAULT_ELEMENT_CAP).unwrap();
            assert_eq!(orbits_by_search(&g, None).unwrap(), grp.orbits());
        }
    }

    #[test]
    fn colors_restrict_the_group() {
        let g = build(3, 2);
        let mut colors = vec![0u32; 7];
        colors[0] = 1; // mark b1
        let found = enumerate_automorphisms(&g, Some(&colors), 100).unwrap();
        assert_eq!(found.len(), 2);
        assert!(found.iter().all(|a| a.apply(0) == 0));
    }
}
