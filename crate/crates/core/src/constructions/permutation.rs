//! Permutations, parallel `t`-merges and merge-sort decompositions.
//!
//! Permutations are 0-based; `from_one_based` reads the usual one-line
//! notation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Entry, TriMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection on 0..{}",
                    images.len()
                )));
            }
        }
        Ok(Permutation { images })
    }

    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation(
                "one-based images start at 1".into(),
            ));
        }
        Permutation::new(images.iter().map(|&x| x - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`, i.e. `other` applied first.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::InvalidPermutation(format!(
                "cannot compose permutations of sizes {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        })
    }

    /// Sparse matrix with a 1 at `(i, σ(i))`.
    pub fn matrix(&self) -> TriMatrix {
        let mut m = TriMatrix::zeros(self.len(), self.len());
        for (i, &x) in self.images.iter().enumerate() {
            m.set(i, x, Entry::One);
        }
        m
    }

    /// Smallest intervals `[a, b)` mapped onto themselves.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut start = 0;
        let mut reach = 0;
        for (i, &x) in self.images.iter().enumerate() {
            reach = reach.max(x);
            if reach == i {
                out.push((start, i + 1));
                start = i + 1;
            }
        }
        out
    }
}

/// Fewest increasing runs of consecutive positions covering `images`.
fn runs(images: &[usize]) -> usize {
    1 + images.windows(2).filter(|w| w[0] > w[1]).count()
}

/// Whether `σ` fixes a partition of its domain into intervals setwise and
/// splits each interval into at most `t` increasing runs.
pub fn is_parallel_t_merge(sigma: &Permutation, t: usize) -> bool {
    sigma
        .blocks()
        .iter()
        .all(|&(a, b)| runs(&sigma.images[a..b]) <= t)
}

/// Factors `f_1, ..., f_l` with `σ = f_1 ∘ f_2 ∘ ... ∘ f_l`, each a parallel
/// `t`-merge, following a balanced `t`-way merge sort: `f_1` merges the top
/// level, `f_l` the leaves. Identity levels are dropped, so
/// `l <= ⌈log_t n⌉`.
pub fn merge_decompose(sigma: &Permutation, t: usize) -> Result<Vec<Permutation>> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("t = {t}, need t >= 2")));
    }
    let n = sigma.len();
    let mut rest = sigma.images.clone();
    let mut chunks = vec![(0, n)];
    let mut factors = Vec::new();
    while chunks.iter().any(|&(a, b)| b - a > 1) {
        let mut level: Vec<usize> = (0..n).collect();
        let mut next_chunks = Vec::new();
        for &(a, b) in &chunks {
            if b - a <= 1 {
                continue;
            }
            let size = (b - a).div_ceil(t);
            let parts: Vec<(usize, usize)> = (a..b)
                .step_by(size)
                .map(|s| (s, (s + size).min(b)))
                .collect();
            // the merge sends each part increasingly onto the values it holds
            for &(s, e) in &parts {
                let mut vals = rest[s..e].to_vec();
                vals.sort_unstable();
                for (i, v) in (s..e).zip(vals) {
                    level[i] = v;
                }
            }
            next_chunks.extend(parts);
        }
        // rest := level^{-1} ∘ rest keeps every part inside itself
        let mut inv = vec![0; n];
        for (i, &x) in level.iter().enumerate() {
            inv[x] = i;
        }
        for x in rest.iter_mut() {
            *x = inv[*x];
        }
        let f = Permutation { images: level };
        if !f.is_identity() {
            factors.push(f);
        }
        chunks = next_chunks;
    }
    debug_assert!(rest.iter().enumerate().all(|(i, &x)| i == x));
    Ok(factors)
}

/// Composition `f_1 ∘ ... ∘ f_l` of a factor list (identity when empty).
pub fn compose_all(n: usize, factors: &[Permutation]) -> Result<Permutation> {
    factors
        .iter()
        .try_fold(Permutation::identity(n), |acc, f| acc.compose(f))
}

/// `⌈log_t n⌉` for `n >= 1`.
pub fn ceil_log(t: usize, n: usize) -> usize {
    let mut k = 0;
    let mut p = 1usize;
    while p < n {
        p = p.saturating_mul(t);
        k += 1;
    }
    k
}
