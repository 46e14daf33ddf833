use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::NzcGraph;
use crate::symmetry::{find_nontrivial_automorphism, AutomorphismSet};

/// A vertex coloring with colors `1..=t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Labeling {
    colors: Vec<u32>,
    t: u32,
}

impl Labeling {
    pub fn new(colors: Vec<u32>, t: u32) -> Result<Self> {
        if colors.is_empty() {
            return Err(Error::InvalidParams("labeling of an empty vertex set".into()));
        }
        if t == 0 || t as usize > colors.len() {
            return Err(Error::InvalidParams(format!(
                "color count t = {t} must be in 1..={}",
                colors.len()
            )));
        }
        if let Some(&c) = colors.iter().find(|&&c| c == 0 || c > t) {
            return Err(Error::InvalidParams(format!("color {c} not in 1..={t}")));
        }
        Ok(Labeling { colors, t })
    }

    pub fn constant(len: usize) -> Self {
        Labeling {
            colors: vec![1; len],
            t: 1,
        }
    }

    pub fn all_distinct(len: usize) -> Self {
        Labeling {
            colors: (1..=len as u32).collect(),
            t: len as u32,
        }
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        let mut seen: Vec<u32> = self.colors.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }
}

/// True iff no non-identity element of `grp` preserves every color.
///
/// `grp` is taken to be the full automorphism group of the graph `f` colors.
pub fn is_distinguishing(grp: &dyn AutomorphismSet, f: &Labeling) -> bool {
    debug_assert_eq!(grp.point_count(), f.len());
    let flow = grp.try_for_each_element(&mut |a| {
        let mut moved = false;
        for v in 0..f.len() {
            let w = a.apply(v);
            if f.colors[w] != f.colors[v] {
                return ControlFlow::Continue(());
            }
            moved |= w != v;
        }
        if moved {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    flow.is_continue()
}

/// Same question as [`is_distinguishing`], answered by searching for a
/// color-preserving automorphism instead of scanning a group.
pub fn is_distinguishing_by_search(g: &NzcGraph, f: &Labeling) -> Result<bool> {
    Ok(find_nontrivial_automorphism(g, Some(f.colors()))?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::{aut_group_structural, StructuralGroup};
    use crate::vectorspace::{SpaceParams, DEFAULT_VERTEX_CAP};

    fn build(n: usize, q: u32) -> NzcGraph {
        NzcGraph::build(SpaceParams::new(n, q).unwrap(), DEFAULT_VERTEX_CAP).unwrap()
    }

    #[test]
    fn validation() {
        assert!(Labeling::new(vec![1, 2, 3], 3).is_ok());
        assert!(Labeling::new(vec![1, 2, 0], 3).is_err());
        assert!(Labeling::new(vec![1, 4], 2).is_err());
        assert!(Labeling::new(vec![1, 1], 3).is_err());
        assert_eq!(Labeling::new(vec![1, 1, 3], 3).unwrap().colors_used(), 2);
    }

    #[test]
    fn all_distinct_always_distinguishes() {
        let g = build(3, 2);
        let grp = aut_group_structural(&g, 100).unwrap();
        assert!(is_distinguishing(&grp, &Labeling::all_distinct(7)));
        assert!(is_distinguishing_by_search(&g, &Labeling::all_distinct(7)).unwrap());
    }

    #[test]
    fn constant_never_distinguishes_nontrivial_group() {
        let g = build(3, 2);
        let grp = aut_group_structural(&g, 100).unwrap();
        assert!(!is_distinguishing(&grp, &Labeling::constant(7)));
        assert!(!is_distinguishing(&StructuralGroup::new(&g).unwrap(), &Labeling::constant(7)));
        assert!(!is_distinguishing_by_search(&g, &Labeling::constant(7)).unwrap());
    }

    #[test]
    fn trivial_group_is_distinguished_by_anything() {
        let g = build(1, 2);
        let grp = aut_group_structural(&g, 10).unwrap();
        assert!(is_distinguishing(&grp, &Labeling::constant(1)));
    }
}
