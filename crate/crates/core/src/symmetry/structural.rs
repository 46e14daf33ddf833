//! The structural engine for `q = 2`: every basis permutation `h` extends to
//! the automorphism sending a vertex with skeleton `S` to the vertex with
//! skeleton `h(S)`, and these extensions are the whole group.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::NzcGraph;

use super::group::{orbits_of, AutGroup, AutomorphismSet};
use super::perm::{Automorphism, BasisPermutation, VertexMap};

fn require_binary(g: &NzcGraph) -> Result<()> {
    if g.q() != 2 {
        return Err(Error::UnsupportedQ { q: g.q() });
    }
    Ok(())
}

fn check_dimension(g: &NzcGraph, h: &BasisPermutation) -> Result<()> {
    if h.n() != g.n() {
        return Err(Error::InvalidParams(format!(
            "permutation acts on {} basis vectors, graph has n = {}",
            h.n(),
            g.n()
        )));
    }
    Ok(())
}

// q = 2: vertex id = mask - 1
fn extension_image(h: &BasisPermutation, count: usize) -> Vec<u32> {
    (0..count)
        .map(|v| h.apply_mask(v as u32 + 1) - 1)
        .collect()
}

/// Extends a basis permutation to a graph automorphism, validated against `g`.
pub fn extend_basis_permutation(g: &NzcGraph, h: &BasisPermutation) -> Result<Automorphism> {
    require_binary(g)?;
    check_dimension(g, h)?;
    Automorphism::new(g, extension_image(h, g.vertex_count()))
}

pub(crate) fn extend_unchecked(g: &NzcGraph, h: &BasisPermutation) -> Automorphism {
    Automorphism::from_image_unchecked(extension_image(h, g.vertex_count()))
}

/// The permutation an automorphism induces on the basis vertices.
pub fn restrict_to_basis(a: &Automorphism, g: &NzcGraph) -> Result<BasisPermutation> {
    require_binary(g)?;
    if a.len() != g.vertex_count() {
        return Err(Error::NotAutomorphism("length mismatch".into()));
    }
    let n = g.n();
    let mut one_line = Vec::with_capacity(n);
    for i in 1..=n {
        let image = a.apply(g.basis_id(i));
        let s = g.skeleton(image);
        if s.len() != 1 {
            return Err(Error::NotAutomorphism(format!(
                "basis vector b{i} maps outside T_1 (to {})",
                g.vertex(image)
            )));
        }
        one_line.push(s.indices().next().unwrap_or(0));
    }
    BasisPermutation::from_one_line(&one_line)
        .map_err(|_| Error::NotAutomorphism("basis images are not a permutation".into()))
}

/// All `n!` extensions, listed explicitly. Fails with `CapExceeded` when
/// `n!` is above `element_cap`.
pub fn aut_group_structural(g: &NzcGraph, element_cap: usize) -> Result<AutGroup> {
    let lazy = StructuralGroup::new(g)?;
    let order = lazy.order();
    if order > element_cap as u128 {
        return Err(Error::CapExceeded {
            what: "group order",
            size: order,
            cap: element_cap as u128,
        });
    }
    let elements = BasisPermutation::all(g.n())
        .map(|h| extend_unchecked(g, &h))
        .collect();
    Ok(AutGroup::from_elements(
        g.vertex_count(),
        elements,
        lazy.generators(),
    ))
}

/// The structural group without materializing it: elements are produced on
/// demand from the basis permutations.
#[derive(Debug, Clone, Copy)]
pub struct StructuralGroup<'g> {
    graph: &'g NzcGraph,
}

struct Extension<'a> {
    h: &'a BasisPermutation,
}

impl VertexMap for Extension<'_> {
    fn apply(&self, v: usize) -> usize {
        self.h.apply_mask(v as u32 + 1) as usize - 1
    }
}

impl<'g> StructuralGroup<'g> {
    pub fn new(graph: &'g NzcGraph) -> Result<Self> {
        require_binary(graph)?;
        Ok(StructuralGroup { graph })
    }

    pub fn graph(&self) -> &'g NzcGraph {
        self.graph
    }

    /// Extensions of the transposition `(1 2)` and the cycle `(1 2 ... n)`.
    pub fn generators(&self) -> Vec<Automorphism> {
        let n = self.graph.n();
        let mut gens = Vec::new();
        if n >= 2 {
            let swap = BasisPermutation::transposition(n, 1, 2).expect("n >= 2");
            gens.push(extend_unchecked(self.graph, &swap));
        }
        if n >= 3 {
            gens.push(extend_unchecked(self.graph, &BasisPermutation::long_cycle(n)));
        }
        gens
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let gens = self.generators();
        orbits_of(
            self.graph.vertex_count(),
            gens.iter().map(|a| a as &dyn VertexMap),
        )
    }
}

impl AutomorphismSet for StructuralGroup<'_> {
    fn point_count(&self) -> usize {
        self.graph.vertex_count()
    }

    fn order(&self) -> u128 {
        (1..=self.graph.n() as u128).product()
    }

    fn try_for_each_element(
        &self,
        visit: &mut dyn FnMut(&dyn VertexMap) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        for h in BasisPermutation::all(self.graph.n()) {
            visit(&Extension { h: &h })?;
        }
        ControlFlow::Continue(())
    }
}
