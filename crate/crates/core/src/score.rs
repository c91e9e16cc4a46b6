//! Dense score grids and the top-`n` selection rule.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::outcome::{FailureReason, MatchResult};
use crate::permutation::Permutation;
use crate::refine;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    SmallerIsBetter,
    LargerIsBetter,
}

/// How the top-`n` rule treats ties and non-matchings.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Selection {
    /// Fail on a tie across the cut or when the selection is not a permutation.
    #[default]
    Strict,
    /// Break ties by `(i, k)`; fail when the selection is not a permutation.
    Lexicographic,
    /// Break ties by `(i, k)` and complete a non-matching selection greedily.
    Permissive,
}

/// Row-major `n x n` grid of finite scores.
#[derive(Clone, Debug, PartialEq)]
pub struct ScoreMatrix {
    n: usize,
    values: Vec<f64>,
    orientation: Orientation,
}

impl ScoreMatrix {
    pub fn new(n: usize, values: Vec<f64>, orientation: Orientation) -> Result<Self> {
        if values.len() != n * n {
            return Err(Error::SizeMismatch { expected: n * n, found: values.len() });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "score ({}, {}) is not finite",
                pos / n.max(1),
                pos % n.max(1)
            )));
        }
        Ok(Self { n, values, orientation })
    }

    /// Fills the grid row by row in parallel.
    pub fn from_fn<F>(n: usize, orientation: Orientation, f: F) -> Self
    where
        F: Fn(usize, usize) -> f64 + Sync,
    {
        let mut values = vec![0.0; n * n];
        if n > 0 {
            values.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
                for (k, v) in row.iter_mut().enumerate() {
                    *v = f(i, k);
                }
            });
        }
        debug_assert!(values.iter().all(|v| v.is_finite()));
        Self { n, values, orientation }
    }

    /// Fills each row with a closure writing the whole row at once.
    pub fn from_rows<F>(n: usize, orientation: Orientation, f: F) -> Self
    where
        F: Fn(usize, &mut [f64]) + Sync,
    {
        let mut values = vec![0.0; n * n];
        if n > 0 {
            values.par_chunks_mut(n).enumerate().for_each(|(i, row)| f(i, row));
        }
        Self { n, values, orientation }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    #[inline]
    pub fn get(&self, i: usize, k: usize) -> f64 {
        self.values[i * self.n + k]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n..(i + 1) * self.n]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Sum of `score(i, p(i))`.
    pub fn objective(&self, p: &Permutation) -> f64 {
        (0..self.n).map(|i| self.get(i, p.apply(i))).sum()
    }

    /// Same grid with the columns relabeled: entry `(i, sigma(k))` of the
    /// result is entry `(i, k)` of `self`.
    pub fn permute_columns(&self, sigma: &Permutation) -> Self {
        let mut values = vec![0.0; self.values.len()];
        for i in 0..self.n {
            for k in 0..self.n {
                values[i * self.n + sigma.apply(k)] = self.get(i, k);
            }
        }
        Self { n: self.n, values, orientation: self.orientation }
    }

    /// Compares flat indices by preference, best first; ties go to the
    /// lexicographically smaller `(i, k)`.
    #[inline]
    pub(crate) fn cmp_entries(&self, a: usize, b: usize) -> Ordering {
        let (x, y) = (self.values[a], self.values[b]);
        let by_value = match self.orientation {
            Orientation::SmallerIsBetter => x.partial_cmp(&y),
            Orientation::LargerIsBetter => y.partial_cmp(&x),
        };
        by_value.unwrap_or(Ordering::Equal).then(a.cmp(&b))
    }
}

/// Keeps the `n` best of the `n^2` entries and reads them as a matching.
///
/// Works for either orientation. In strict mode a tie between the `n`-th and
/// `(n+1)`-th best values fails with `TiedScores`, and a selection that is
/// not a permutation fails with `NotAPerfectMatching`. Lexicographic mode
/// breaks ties by `(i, k)` but still fails on a non-permutation; permissive
/// mode completes one by greedy matching on the same grid.
pub fn match_by_smallest_n(scores: &ScoreMatrix, selection: Selection) -> MatchResult {
    let n = scores.n;
    if n == 0 {
        return MatchResult::Exact(Permutation::identity(0));
    }
    let mut idx: Vec<usize> = (0..n * n).collect();
    if n * n > n {
        idx.select_nth_unstable_by(n, |&a, &b| scores.cmp_entries(a, b));
        let cut = idx[..n]
            .iter()
            .copied()
            .max_by(|&a, &b| scores.cmp_entries(a, b))
            .expect("n > 0");
        if selection == Selection::Strict && scores.values[cut] == scores.values[idx[n]] {
            return MatchResult::Failed(FailureReason::TiedScores);
        }
    }
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut ok = true;
    for &e in &idx[..n] {
        let (i, k) = (e / n, e % n);
        if image[i] != usize::MAX || used[k] {
            ok = false;
            break;
        }
        image[i] = k;
        used[k] = true;
    }
    if ok {
        return MatchResult::Exact(Permutation::new(image).expect("rows and columns distinct"));
    }
    match selection {
        Selection::Strict | Selection::Lexicographic => MatchResult::Failed(FailureReason::NotAPerfectMatching),
        Selection::Permissive => MatchResult::Fallback {
            permutation: refine::greedy_match(scores),
            reason: FailureReason::NotAPerfectMatching,
        },
    }
}
