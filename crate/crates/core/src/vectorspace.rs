//! Non-zero vectors of an `n`-dimensional space over a `q`-element field.
//!
//! Coefficients are opaque symbols `0..q`; only the zero/non-zero pattern of
//! a vector matters for the graph, so no field arithmetic is implemented and
//! any `q >= 2` is accepted. Vectors are enumerated in radix-`q` order with
//! the coefficient of `b1` as the least-significant digit, which gives every
//! vertex a stable integer id (`value - 1`).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_VERTEX_CAP: usize = 65_535;

/// Largest supported dimension; skeletons are stored as `u32` masks.
pub const MAX_DIMENSION: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpaceParams {
    n: usize,
    q: u32,
}

impl SpaceParams {
    pub fn new(n: usize, q: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("dimension n must be at least 1".into()));
        }
        if n > MAX_DIMENSION {
            return Err(Error::InvalidParams(format!(
                "dimension n = {n} exceeds the supported maximum {MAX_DIMENSION}"
            )));
        }
        if q < 2 {
            return Err(Error::InvalidParams(format!(
                "field size q must be at least 2 (got {q})"
            )));
        }
        Ok(SpaceParams { n, q })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `q^n - 1`, or `None` on overflow.
    pub fn vertex_count(&self) -> Option<u128> {
        (self.q as u128)
            .checked_pow(self.n as u32)
            .map(|total| total - 1)
    }

    pub fn check_cap(&self, cap: usize) -> Result<usize> {
        match self.vertex_count() {
            Some(count) if count <= cap as u128 => Ok(count as usize),
            Some(count) => Err(Error::CapExceeded {
                what: "vertex count",
                size: count,
                cap: cap as u128,
            }),
            None => Err(Error::CapExceeded {
                what: "vertex count",
                size: u128::MAX,
                cap: cap as u128,
            }),
        }
    }

    /// Number of non-zero scalars.
    pub fn units(&self) -> u32 {
        self.q - 1
    }
}

/// Set of basis positions with non-zero coefficient, as a bit mask
/// (bit `i - 1` set means `b_i` is present).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Skeleton(u32);

impl Skeleton {
    pub fn from_mask(mask: u32) -> Result<Self> {
        if mask == 0 {
            return Err(Error::InvalidParams("skeleton must be non-empty".into()));
        }
        Ok(Skeleton(mask))
    }

    /// Builds a skeleton from 1-based basis indices.
    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut mask = 0u32;
        for i in indices {
            if i == 0 || i > MAX_DIMENSION {
                return Err(Error::InvalidParams(format!("basis index {i} out of range")));
            }
            mask |= 1 << (i - 1);
        }
        Skeleton::from_mask(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// 1-based basis indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..32).filter(move |b| mask & (1 << b) != 0).map(|b| b + 1)
    }

    pub fn contains(self, index: usize) -> bool {
        (1..=32).contains(&index) && self.0 & (1 << (index - 1)) != 0
    }

    pub fn intersects(self, other: Skeleton) -> bool {
        self.0 & other.0 != 0
    }
}

impl fmt::Display for Skeleton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "b{i}")?;
        }
        write!(f, "}}")
    }
}

/// A non-zero vector, stored as its coefficient tuple `(c_1, ..., c_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vector {
    coeffs: Vec<u32>,
}

impl Vector {
    pub fn new(params: SpaceParams, coeffs: Vec<u32>) -> Result<Self> {
        if coeffs.len() != params.n() {
            return Err(Error::InvalidParams(format!(
                "vector has {} coefficients, expected {}",
                coeffs.len(),
                params.n()
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= params.q()) {
            return Err(Error::InvalidParams(format!(
                "coefficient {c} not in 0..{}",
                params.q()
            )));
        }
        if coeffs.iter().all(|&c| c == 0) {
            return Err(Error::InvalidParams("the zero vector is not a vertex".into()));
        }
        Ok(Vector { coeffs })
    }

    /// The basis vector `b_i` (1-based).
    pub fn basis(params: SpaceParams, i: usize) -> Result<Self> {
        if i == 0 || i > params.n() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: params.n(),
            });
        }
        let mut coeffs = vec![0; params.n()];
        coeffs[i - 1] = 1;
        Ok(Vector { coeffs })
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn skeleton(&self) -> Skeleton {
        let mask = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .fold(0u32, |m, (i, _)| m | (1 << i));
        Skeleton(mask)
    }

    /// Size of the skeleton: the `k` with `v` in `T_k`.
    pub fn skeleton_class(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    /// Radix-`q` value with `c_1` least significant.
    pub fn radix_value(&self, q: u32) -> u128 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * q as u128 + c as u128)
    }

    /// Human-readable form such as `b1+2b3`.
    pub fn label(&self) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                if c == 1 {
                    format!("b{}", i + 1)
                } else {
                    format!("{c}b{}", i + 1)
                }
            })
            .collect();
        terms.join("+")
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// All `q^n - 1` non-zero vectors in canonical (radix-`q`) order.
pub fn enumerate_vectors(params: SpaceParams, vertex_cap: usize) -> Result<Vec<Vector>> {
    let count = params.check_cap(vertex_cap)?;
    let n = params.n();
    let q = params.q();
    let mut out = Vec::with_capacity(count);
    let mut digits = vec![0u32; n];
    for _ in 0..count {
        // increment the radix-q counter, least-significant digit first
        for d in digits.iter_mut() {
            *d += 1;
            if *d < q {
                break;
            }
            *d = 0;
        }
        out.push(Vector {
            coeffs: digits.clone(),
        });
    }
    Ok(out)
}

pub fn skeleton(v: &Vector) -> Skeleton {
    v.skeleton()
}

pub fn skeleton_class(v: &Vector) -> usize {
    v.skeleton_class()
}

/// Binomial coefficient, `0` when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, q: u32) -> SpaceParams {
        SpaceParams::new(n, q).unwrap()
    }

    #[test]
    fn enumerates_n2_q2_in_radix_order() {
        let vs = enumerate_vectors(params(2, 2), DEFAULT_VERTEX_CAP).unwrap();
        let labels: Vec<String> = vs.iter().map(Vector::label).collect();
        assert_eq!(labels, ["b1", "b2", "b1+b2"]);
    }

    #[test]
    fn enumerates_n1_q3() {
        let vs = enumerate_vectors(params(1, 3), DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(vs.len(), 2);
    }

    #[test]
    fn n4_q2_has_four_vectors_of_weight_three() {
        let vs = enumerate_vectors(params(4, 2), DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(vs.len(), 15);
        let mut t3: Vec<String> = vs
            .iter()
            .filter(|v| v.skeleton_class() == 3)
            .map(Vector::label)
            .collect();
        t3.sort();
        assert_eq!(t3, ["b1+b2+b3", "b1+b2+b4", "b1+b3+b4", "b2+b3+b4"]);
    }

    #[test]
    fn ids_follow_radix_value() {
        let p = params(3, 3);
        let vs = enumerate_vectors(p, DEFAULT_VERTEX_CAP).unwrap();
        for (id, v) in vs.iter().enumerate() {
            assert_eq!(v.radix_value(3), id as u128 + 1);
        }
    }

    #[test]
    fn skeleton_examples() {
        let p = params(4, 2);
        let v = Vector::new(p, vec![1, 0, 1, 0]).unwrap();
        assert_eq!(v.skeleton().indices().collect::<Vec<_>>(), [1, 3]);
        let b2 = Vector::basis(p, 2).unwrap();
        assert_eq!(b2.skeleton().indices().collect::<Vec<_>>(), [2]);
        let w = Vector::new(params(3, 3), vec![1, 2, 0]).unwrap();
        assert_eq!(w.skeleton().indices().collect::<Vec<_>>(), [1, 2]);
    }

    #[test]
    fn skeleton_class_examples() {
        let p = params(4, 2);
        assert_eq!(Vector::new(p, vec![1, 1, 1, 0]).unwrap().skeleton_class(), 3);
        assert_eq!(Vector::basis(p, 1).unwrap().skeleton_class(), 1);
        for n in 1..=6 {
            let ones = Vector::new(params(n, 2), vec![1; n]).unwrap();
            assert_eq!(ones.skeleton_class(), n);
        }
    }

    #[test]
    fn class_sizes_match_binomial_counts() {
        for (n, q) in [(1, 2), (3, 2), (5, 2), (2, 3), (3, 3), (2, 4), (3, 5)] {
            let vs = enumerate_vectors(params(n, q), DEFAULT_VERTEX_CAP).unwrap();
            assert_eq!(vs.len() as u64, (q as u64).pow(n as u32) - 1);
            for i in 1..=n {
                let count = vs.iter().filter(|v| v.skeleton_class() == i).count() as u64;
                let expected = binomial(n as u64, i as u64) * ((q - 1) as u64).pow(i as u32);
                assert_eq!(count, expected, "n={n} q={q} i={i}");
            }
        }
    }

    #[test]
    fn rejects_bad_params_and_vectors() {
        assert!(SpaceParams::new(0, 2).is_err());
        assert!(SpaceParams::new(3, 1).is_err());
        let p = params(3, 3);
        assert!(Vector::new(p, vec![0, 0, 0]).is_err());
        assert!(Vector::new(p, vec![0, 3, 0]).is_err());
        assert!(Vector::new(p, vec![1, 0]).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let err = enumerate_vectors(params(17, 2), DEFAULT_VERTEX_CAP).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { size: 131071, .. }));
        assert!(enumerate_vectors(params(16, 2), DEFAULT_VERTEX_CAP).is_ok());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(10, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(20, 10), 184_756);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn skeleton_ignores_nonzero_scalars(
                q in 3u32..7,
                raw in proptest::collection::vec(0u32..100, 1..6),
                scale in proptest::collection::vec(1u32..100, 6),
            ) {
                let n = raw.len();
                let p = SpaceParams::new(n, q).unwrap();
                let mut coeffs: Vec<u32> = raw.iter().map(|c| c % q).collect();
                if coeffs.iter().all(|&c| c == 0) {
                    coeffs[0] = 1;
                }
                let v = Vector::new(p, coeffs.clone()).unwrap();
                let rescaled: Vec<u32> = coeffs
                    .iter()
                    .zip(&scale)
                    .map(|(&c, &s)| if c == 0 { 0 } else { 1 + s % (q - 1) })
                    .collect();
                let w = Vector::new(p, rescaled).unwrap();
                prop_assert_eq!(v.skeleton(), w.skeleton());
            }
        }
    }
}
