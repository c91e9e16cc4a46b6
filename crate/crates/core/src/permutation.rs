use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{check_size, Error, Result};

/// A bijection on `0..n`, stored as its image: `i -> image[i]`.
///
/// Used both for the latent correspondence (vertex `i` of the first graph is
/// vertex `pi(i)` of the second) and for every estimate of it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for (i, &v) in image.iter().enumerate() {
            if v >= n {
                return Err(Error::NotAPermutation(format!("image of {i} is {v} >= {n}")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotAPermutation(format!("{v} appears twice")));
            }
        }
        Ok(Self { image })
    }

    pub fn identity(n: usize) -> Self {
        Self { image: (0..n).collect() }
    }

    /// Uniformly random permutation (Fisher–Yates).
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut image: Vec<usize> = (0..n).collect();
        image.shuffle(rng);
        Self { image }
    }

    /// Swaps the images of `a` and `b`.
    pub fn transposed(mut self, a: usize, b: usize) -> Self {
        self.image.swap(a, b);
        self
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.image
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.image
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v] = i;
        }
        Self { image: inv }
    }

    /// `self ∘ other`, i.e. `i -> self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        check_size(self.len(), other.len())?;
        Ok(Self {
            image: other.image.iter().map(|&j| self.image[j]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Permutation").field(&self.image).finish()
    }
}

/// Fraction of vertices on which the estimate agrees with the ground truth.
pub fn accuracy(pi_hat: &Permutation, pi_star: &Permutation) -> Result<f64> {
    check_size(pi_star.len(), pi_hat.len())?;
    if pi_hat.is_empty() {
        return Ok(1.0);
    }
    let hits = pi_hat
        .image
        .iter()
        .zip(&pi_star.image)
        .filter(|(a, b)| a == b)
        .count();
    Ok(hits as f64 / pi_hat.len() as f64)
}
