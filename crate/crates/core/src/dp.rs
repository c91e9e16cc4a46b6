//! Matching by sorting pairwise distances between degree profiles.

use rayon::prelude::*;

use crate::error::{check_size, Result};
use crate::graph::Graph;
use crate::models::SymMatrix;
use crate::outcome::{FailureReason, MatchResult};
use crate::permutation::Permutation;
use crate::profiles::{
    centered_with_reference, degree_profile, l1, lp_cdf_distance, reference_trials, w1_distance, w1_sorted,
    BinnedProfile, CdfNorm, Distance, EmpiricalDistribution, ProfileConfig, ReferenceCache,
};
use crate::score::{match_by_smallest_n, Orientation, ScoreMatrix, Selection};

/// Distance assigned to a pair where either profile is empty.
pub const EMPTY_PROFILE_DISTANCE: f64 = f64::MAX;

pub fn graph_profiles(g: &Graph, cfg: &ProfileConfig) -> Vec<EmpiricalDistribution> {
    (0..g.n()).into_par_iter().map(|i| degree_profile(g, i, cfg)).collect()
}

/// Centered binned profiles of every vertex, sharing reference masses across
/// vertices with the same binomial trial count.
pub fn binned_profiles(g: &Graph, dists: &[EmpiricalDistribution], cfg: &ProfileConfig) -> Vec<BinnedProfile> {
    let mut cache = ReferenceCache::new(cfg.q, cfg.bins, cfg.window);
    (0..g.n())
        .map(|i| {
            let reference = cache.get(reference_trials(g, i, cfg.mode));
            centered_with_reference(&dists[i], reference, cfg.window)
        })
        .collect()
}

/// Grid of profile distances between every vertex of `a` and every vertex of
/// `b`, smaller is better.
pub fn score_grid(a: &Graph, b: &Graph, cfg: &ProfileConfig) -> Result<ScoreMatrix> {
    check_size(a.n(), b.n())?;
    cfg.validate()?;
    let (da, db) = (graph_profiles(a, cfg), graph_profiles(b, cfg));
    Ok(grid_from_profiles(a, b, &da, &db, cfg))
}

pub(crate) fn grid_from_profiles(
    a: &Graph,
    b: &Graph,
    da: &[EmpiricalDistribution],
    db: &[EmpiricalDistribution],
    cfg: &ProfileConfig,
) -> ScoreMatrix {
    let n = a.n();
    match cfg.distance {
        Distance::BinnedL1 => {
            let (pa, pb) = (binned_profiles(a, da, cfg), binned_profiles(b, db, cfg));
            ScoreMatrix::from_rows(n, Orientation::SmallerIsBetter, |i, row| {
                for (k, v) in row.iter_mut().enumerate() {
                    *v = if da[i].is_empty() || db[k].is_empty() {
                        EMPTY_PROFILE_DISTANCE
                    } else {
                        l1(pa[i].mass(), pb[k].mass())
                    };
                }
            })
        }
        Distance::Wasserstein1 => ScoreMatrix::from_rows(n, Orientation::SmallerIsBetter, |i, row| {
            for (k, v) in row.iter_mut().enumerate() {
                *v = w1_distance(&da[i], &db[k]).unwrap_or(EMPTY_PROFILE_DISTANCE);
            }
        }),
    }
}

/// Top-`n` selection on the profile-distance grid.
///
/// When every profile on both sides is empty the grid carries no information:
/// strict selection fails with `DegenerateInput`, permissive selection returns
/// the identity flagged as a fallback.
pub fn match_degree_profile(a: &Graph, b: &Graph, cfg: &ProfileConfig, selection: Selection) -> Result<MatchResult> {
    let scores = score_grid(a, b, cfg)?;
    let degenerate = (0..a.n()).all(|i| a.degree(i) == 0) && (0..b.n()).all(|k| b.degree(k) == 0);
    Ok(select(&scores, selection, degenerate && a.n() > 0))
}

fn select(scores: &ScoreMatrix, selection: Selection, degenerate: bool) -> MatchResult {
    if degenerate {
        return match selection {
            Selection::Strict | Selection::Lexicographic => MatchResult::Failed(FailureReason::DegenerateInput),
            Selection::Permissive => MatchResult::Fallback {
                permutation: Permutation::identity(scores.n()),
                reason: FailureReason::DegenerateInput,
            },
        };
    }
    match_by_smallest_n(scores, selection)
}

/// Empirical distribution of each row of a symmetric matrix.
pub fn row_distributions(m: &SymMatrix) -> Vec<EmpiricalDistribution> {
    (0..m.n()).into_par_iter().map(|i| EmpiricalDistribution::new(m.row(i).to_vec())).collect()
}

/// Grid of CDF distances between the rows of `a` and the rows of `b`.
pub fn row_score_grid(a: &SymMatrix, b: &SymMatrix, norm: CdfNorm) -> Result<ScoreMatrix> {
    let n = a.n();
    check_size(n, b.n())?;
    let (ra, rb) = (row_distributions(a), row_distributions(b));
    Ok(ScoreMatrix::from_rows(n, Orientation::SmallerIsBetter, |i, row| {
        for (k, v) in row.iter_mut().enumerate() {
            *v = match norm {
                // Rows have equal length, so W1 reduces to sorted differences.
                CdfNorm::L1 => w1_sorted(ra[i].sorted(), rb[k].sorted()),
                _ => lp_cdf_distance(&ra[i], &rb[k], norm).unwrap_or(EMPTY_PROFILE_DISTANCE),
            };
        }
    }))
}

/// Matching of symmetric matrices by their row distributions.
pub fn match_row_profile(a: &SymMatrix, b: &SymMatrix, norm: CdfNorm, selection: Selection) -> Result<MatchResult> {
    let scores = row_score_grid(a, b, norm)?;
    Ok(match_by_smallest_n(&scores, selection))
}
