use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, …, n-1}`; `images[i]` is the image of `i`.
/// Text and JSON forms are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::NotPermutation(images.iter().map(|i| i + 1).collect()));
            }
        }
        Ok(Permutation { images })
    }

    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::NotPermutation(images.to_vec()));
        }
        Self::from_images(images.iter().map(|i| i - 1).collect())
            .map_err(|_| Error::NotPermutation(images.to_vec()))
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut out = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            out[j] = i;
        }
        Permutation { images: out }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.len(), other.len());
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    /// Block sum: `other` acts on the positions after `self`.
    pub fn direct_sum(&self, other: &Permutation) -> Self {
        let n = self.len();
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|i| i + n));
        Permutation { images }
    }

    /// `(σ)ς_k^n`: the permutation of `n + 1` points obtained when domain
    /// point `k` and its image `σ(k)` are both doubled.
    ///
    /// Built from the half-integer picture: every point `j` of the range
    /// other than `σ(k)` keeps its relative order, and `σ(k)` becomes the
    /// two consecutive points `σ(k)`, `σ(k) + ½`.
    pub fn expand(&self, k: usize) -> Self {
        let target = self.images[k];
        // Doubled coordinates: `j ↦ 2j`, the new point is `2σ(k) + 1`.
        let domain: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|i| {
                let doubled = 2 * i;
                let image = 2 * self.images[i];
                if i == k {
                    vec![(doubled, image), (doubled + 1, image + 1)]
                } else {
                    vec![(doubled, image)]
                }
            })
            .collect();
        // Order-preserving identification of the half-integer ranges with 0..=n.
        let mut range: Vec<usize> = domain.iter().map(|&(_, r)| r).collect();
        range.sort_unstable();
        let rank = |r: usize| range.binary_search(&r).expect("range point present");
        debug_assert!(range.contains(&(2 * target + 1)));
        Permutation { images: domain.iter().map(|&(_, r)| rank(r)).collect() }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(|i| i.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}
