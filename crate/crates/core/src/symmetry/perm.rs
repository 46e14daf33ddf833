use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::NzcGraph;

/// Anything that moves vertex ids around.
pub trait VertexMap {
    fn apply(&self, v: usize) -> usize;
}

/// Adjacency-preserving permutation of vertex ids, in one-line notation.
///
/// Composition follows `(a.compose(b))(v) = a(b(v))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Automorphism {
    image: Vec<u32>,
}

impl Automorphism {
    /// Validates bijectivity and adjacency preservation against `g`.
    pub fn new(g: &NzcGraph, image: Vec<u32>) -> Result<Self> {
        let a = Automorphism { image };
        a.validate(g)?;
        Ok(a)
    }

    pub(crate) fn from_image_unchecked(image: Vec<u32>) -> Self {
        Automorphism { image }
    }

    pub fn identity(len: usize) -> Self {
        Automorphism {
            image: (0..len as u32).collect(),
        }
    }

    pub fn image(&self) -> &[u32] {
        &self.image
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(v, &w)| v == w as usize)
    }

    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            image: other.image.iter().map(|&v| self.image[v as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut image = vec![0; self.image.len()];
        for (v, &w) in self.image.iter().enumerate() {
            image[w as usize] = v as u32;
        }
        Automorphism { image }
    }

    pub fn validate(&self, g: &NzcGraph) -> Result<()> {
        let count = g.vertex_count();
        if self.image.len() != count {
            return Err(Error::NotAutomorphism(format!(
                "image has length {}, graph has {count} vertices",
                self.image.len()
            )));
        }
        let mut seen = vec![false; count];
        for &w in &self.image {
            let w = w as usize;
            if w >= count || seen[w] {
                return Err(Error::NotAutomorphism("not a bijection".into()));
            }
            seen[w] = true;
        }
        // edges map into edges; with a bijection and equal edge counts this
        // also forces non-edges onto non-edges
        for u in 0..count {
            let gu = self.apply(u);
            if g.row(u).count_ones(..) != g.row(gu).count_ones(..) {
                return Err(Error::NotAutomorphism(format!("degree of {u} not preserved")));
            }
            for v in g.neighbors(u) {
                if !g.adjacent(gu, self.apply(v)) {
                    return Err(Error::NotAutomorphism(format!(
                        "edge ({u}, {v}) maps to a non-edge"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Vertices moved by this map.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.image
            .iter()
            .enumerate()
            .filter(|(v, &w)| *v != w as usize)
            .map(|(v, _)| v)
    }
}

impl VertexMap for Automorphism {
    fn apply(&self, v: usize) -> usize {
        self.image[v] as usize
    }
}

/// Permutation of basis indices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BasisPermutation {
    /// 0-based images.
    sigma: Vec<u8>,
}

impl BasisPermutation {
    /// From 1-based one-line notation, e.g. `[2, 1, 3]` for the swap of `b1` and `b2`.
    pub fn from_one_line(one_line: &[usize]) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n];
        let mut sigma = Vec::with_capacity(n);
        for &i in one_line {
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::InvalidParams(format!(
                    "{one_line:?} is not a permutation of 1..={n}"
                )));
            }
            seen[i - 1] = true;
            sigma.push((i - 1) as u8);
        }
        Ok(BasisPermutation { sigma })
    }

    pub(crate) fn from_zero_based(sigma: Vec<u8>) -> Self {
        BasisPermutation { sigma }
    }

    pub fn identity(n: usize) -> Self {
        BasisPermutation {
            sigma: (0..n as u8).collect(),
        }
    }

    /// The swap of `b_l` and `b_m` (1-based).
    pub fn transposition(n: usize, l: usize, m: usize) -> Result<Self> {
        if l == 0 || m == 0 || l > n || m > n || l == m {
            return Err(Error::InvalidParams(format!(
                "transposition ({l} {m}) invalid for n = {n}"
            )));
        }
        let mut p = Self::identity(n);
        p.sigma.swap(l - 1, m - 1);
        Ok(p)
    }

    /// The cycle `b1 -> b2 -> ... -> bn -> b1`.
    pub fn long_cycle(n: usize) -> Self {
        BasisPermutation {
            sigma: (0..n).map(|i| ((i + 1) % n) as u8).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    /// Image of the 1-based index `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.sigma[i - 1] as usize + 1
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.sigma.iter().map(|&s| s as usize + 1).collect()
    }

    pub fn apply_mask(&self, mask: u32) -> u32 {
        let mut out = 0u32;
        let mut rest = mask;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            out |= 1 << self.sigma[b];
            rest &= rest - 1;
        }
        out
    }

    pub fn compose(&self, other: &BasisPermutation) -> BasisPermutation {
        BasisPermutation {
            sigma: other.sigma.iter().map(|&i| self.sigma[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> BasisPermutation {
        let mut sigma = vec![0; self.sigma.len()];
        for (i, &s) in self.sigma.iter().enumerate() {
            sigma[s as usize] = i as u8;
        }
        BasisPermutation { sigma }
    }

    pub fn is_identity(&self) -> bool {
        self.sigma.iter().enumerate().all(|(i, &s)| i == s as usize)
    }

    /// All `n!` permutations in lexicographic order of one-line notation.
    pub fn all(n: usize) -> impl Iterator<Item = BasisPermutation> {
        use itertools::Itertools;
        (0..n as u8)
            .permutations(n)
            .map(|sigma| BasisPermutation { sigma })
    }
}

impl fmt::Display for BasisPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, i) in self.one_line().iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_applies_right_first() {
        let a = BasisPermutation::from_one_line(&[2, 3, 1]).unwrap();
        let b = BasisPermutation::transposition(3, 1, 2).unwrap();
        let ab = a.compose(&b);
        for i in 1..=3 {
            assert_eq!(ab.apply(i), a.apply(b.apply(i)));
        }
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn mask_action() {
        let p = BasisPermutation::transposition(3, 1, 2).unwrap();
        assert_eq!(p.apply_mask(0b101), 0b110);
        assert_eq!(p.apply_mask(0b111), 0b111);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(BasisPermutation::from_one_line(&[1, 1, 2]).is_err());
        assert!(BasisPermutation::from_one_line(&[0, 1]).is_err());
        assert!(BasisPermutation::transposition(3, 2, 2).is_err());
    }

    #[test]
    fn enumerates_all() {
        assert_eq!(BasisPermutation::all(4).count(), 24);
        assert_eq!(BasisPermutation::all(1).count(), 1);
    }

    #[test]
    fn automorphism_algebra() {
        let a = Automorphism::from_image_unchecked(vec![1, 2, 0]);
        let b = Automorphism::from_image_unchecked(vec![0, 2, 1]);
        let ab = a.compose(&b);
        for v in 0..3 {
            assert_eq!(ab.apply(v), a.apply(b.apply(v)));
        }
        assert!(a.compose(&a.inverse()).is_identity());
        assert_eq!(b.support().collect::<Vec<_>>(), [1, 2]);
    }
}
