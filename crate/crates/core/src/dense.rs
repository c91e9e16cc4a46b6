//! Dense regime: seeds from high-degree vertices with close degree profiles,
//! extended by seeded matching.

use statrs::distribution::{ContinuousCDF, Normal};

use crate::binomial::tau_threshold;
use crate::dp::{graph_profiles, grid_from_profiles, row_score_grid};
use crate::error::{check_size, Error, Result};
use crate::graph::Graph;
use crate::models::SymMatrix;
use crate::outcome::{FailureReason, MatchResult};
use crate::permutation::Permutation;
use crate::profiles::{CdfNorm, DegreeMode, Distance, ProfileConfig};
use crate::refine::{complete_ascending, linear_assignment};
use crate::score::{match_by_smallest_n, Orientation, ScoreMatrix, Selection};
use crate::seeded::{seeded_match_with, SeedMap, SeededOutcome, SeededParams};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DenseParams {
    /// Marginal edge probability.
    pub q: f64,
    /// Edge retention probability.
    pub s: f64,
    pub alpha0: f64,
    /// Multiplier in the bin count `L = ceil(L0 max(ln^{1/3} n, ln(ln n / q)))`.
    pub l0: f64,
    /// Multiplier in the profile threshold `xi = C sqrt(L / (n q))`.
    pub c_xi: f64,
    pub distance: Distance,
    pub mode: DegreeMode,
    /// Tie policy of the final top-`n` pass.
    pub selection: Selection,
}

impl DenseParams {
    pub const DEFAULT_ALPHA0: f64 = 4.0;
    pub const DEFAULT_L0: f64 = 1.0;
    pub const DEFAULT_C_XI: f64 = 0.2;

    pub fn new(q: f64, s: f64) -> Self {
        Self {
            q,
            s,
            alpha0: Self::DEFAULT_ALPHA0,
            l0: Self::DEFAULT_L0,
            c_xi: Self::DEFAULT_C_XI,
            distance: Distance::Wasserstein1,
            mode: DegreeMode::Outdegree,
            selection: Selection::Strict,
        }
    }

    pub fn with_selection(mut self, selection: Selection) -> Self {
        self.selection = selection;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.q > 0.0 && self.q < 1.0) {
            return Err(Error::InvalidParameter(format!("q = {} must lie in (0, 1)", self.q)));
        }
        if !(self.s > 0.0 && self.s <= 1.0) {
            return Err(Error::InvalidParameter(format!("s = {} must lie in (0, 1]", self.s)));
        }
        if self.q / self.s >= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "parent edge probability q/s = {} must be below 1",
                self.q / self.s
            )));
        }
        for (name, v) in [("alpha0", self.alpha0), ("l0", self.l0), ("c_xi", self.c_xi)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("{name} = {v} must be positive")));
            }
        }
        Ok(())
    }

    /// Target tail probability for the degree threshold.
    pub fn alpha(&self, n: usize) -> f64 {
        let p = self.q / self.s;
        let base = self.alpha0 * ln(n) / (n as f64 * self.q);
        base.powf((1.0 - p) * self.s / (1.0 - self.q)).min(1.0)
    }

    pub fn tau(&self, n: usize) -> usize {
        tau_threshold(n, self.q, self.alpha(n))
    }

    pub fn bins(&self, n: usize) -> usize {
        let l = ln(n);
        let scale = l.cbrt().max((l / self.q).ln());
        ((self.l0 * scale).ceil() as usize).max(1)
    }

    pub fn xi(&self, n: usize) -> f64 {
        self.c_xi * (self.bins(n) as f64 / (n as f64 * self.q)).sqrt()
    }

    pub fn profile_config(&self, n: usize) -> ProfileConfig {
        ProfileConfig {
            bins: self.bins(n),
            q: self.q,
            mode: self.mode,
            distance: self.distance,
            window: 1.0,
        }
    }
}

fn ln(n: usize) -> f64 {
    (n.max(2) as f64).ln()
}

/// Pairs `(i, k)` with `a_i >= tau`, `b_k >= tau + 1` and `score <= xi`.
///
/// Fails with `NoSeeds` when the set is empty and `SeedConflict` when it
/// uses a vertex twice.
pub fn build_degree_seed_set(
    a: &Graph,
    b: &Graph,
    scores: &ScoreMatrix,
    tau: usize,
    xi: f64,
) -> std::result::Result<SeedMap, FailureReason> {
    let high_a: Vec<usize> = (0..a.n()).filter(|&i| a.degree(i) >= tau).collect();
    let high_b: Vec<usize> = (0..b.n()).filter(|&k| b.degree(k) > tau).collect();
    seed_pairs(&high_a, &high_b, scores, xi)
}

fn seed_pairs(
    left: &[usize],
    right: &[usize],
    scores: &ScoreMatrix,
    xi: f64,
) -> std::result::Result<SeedMap, FailureReason> {
    let mut pairs = Vec::new();
    for &i in left {
        for &k in right {
            if scores.get(i, k) <= xi {
                pairs.push((i, k));
            }
        }
    }
    if pairs.is_empty() {
        return Err(FailureReason::NoSeeds);
    }
    SeedMap::new(scores.n(), pairs).map_err(|_| FailureReason::SeedConflict)
}

/// Thresholds used by a dense run and what they produced.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOutcome {
    pub result: MatchResult,
    pub alpha: f64,
    pub tau: usize,
    pub xi: f64,
    pub bins: usize,
    pub seeds: Option<SeedMap>,
    pub seeded: Option<SeededOutcome>,
}

pub fn match_dense(a: &Graph, b: &Graph, params: &DenseParams) -> Result<MatchResult> {
    Ok(match_dense_with(a, b, params)?.result)
}

pub fn match_dense_with(a: &Graph, b: &Graph, params: &DenseParams) -> Result<DenseOutcome> {
    let n = a.n();
    check_size(n, b.n())?;
    params.validate()?;
    let cfg = params.profile_config(n);
    let (da, db) = (graph_profiles(a, &cfg), graph_profiles(b, &cfg));
    let scores = grid_from_profiles(a, b, &da, &db, &cfg);
    let (alpha, tau, xi) = (params.alpha(n), params.tau(n), params.xi(n));
    let mut outcome =
        DenseOutcome { result: MatchResult::Failed(FailureReason::NoSeeds), alpha, tau, xi, bins: cfg.bins, seeds: None, seeded: None };
    match build_degree_seed_set(a, b, &scores, tau, xi) {
        Err(reason) => outcome.result = MatchResult::Failed(reason),
        Ok(seeds) => {
            let sp = SeededParams::new(params.q, params.s).with_selection(params.selection);
            let seeded = seeded_match_with(a, b, &seeds, &sp)?;
            outcome.result = seeded.result.clone();
            outcome.seeds = Some(seeds);
            outcome.seeded = Some(seeded);
        }
    }
    Ok(outcome)
}

/// Dense-regime matching for weighted symmetric matrices.
///
/// Degrees are standardized row sums `sum_j A_ij / sqrt(n)`, thresholded at
/// the standard normal upper quantile of `alpha0 ln n / n`; profiles are row
/// distributions compared by `norm`, thresholded at `c_xi / sqrt(n)`. Seeds
/// are extended by a maximum-weight assignment of the unseeded vertices on
/// `sum_{j in S} A_ij B_{k, seed(j)}`, followed by the top-`n` pass on
/// `A Π1 B`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WignerDenseParams {
    pub alpha0: f64,
    pub c_xi: f64,
    pub norm: CdfNorm,
    pub selection: Selection,
}

impl Default for WignerDenseParams {
    fn default() -> Self {
        Self { alpha0: 4.0, c_xi: 0.2, norm: CdfNorm::L1, selection: Selection::Strict }
    }
}

impl WignerDenseParams {
    pub fn threshold(&self, n: usize) -> f64 {
        let tail = (self.alpha0 * ln(n) / n as f64).clamp(f64::MIN_POSITIVE, 1.0);
        Normal::standard().inverse_cdf(1.0 - tail)
    }

    pub fn xi(&self, n: usize) -> f64 {
        self.c_xi / (n as f64).sqrt()
    }
}

pub fn standardized_row_sums(m: &SymMatrix) -> Vec<f64> {
    let scale = (m.n() as f64).sqrt();
    (0..m.n()).map(|i| m.row(i).iter().sum::<f64>() / scale).collect()
}

pub fn match_dense_wigner(a: &SymMatrix, b: &SymMatrix, params: &WignerDenseParams) -> Result<MatchResult> {
    let n = a.n();
    check_size(n, b.n())?;
    let scores = row_score_grid(a, b, params.norm)?;
    let t = params.threshold(n);
    let (ra, rb) = (standardized_row_sums(a), standardized_row_sums(b));
    let left: Vec<usize> = (0..n).filter(|&i| ra[i] >= t).collect();
    let right: Vec<usize> = (0..n).filter(|&k| rb[k] >= t).collect();
    let seeds = match seed_pairs(&left, &right, &scores, params.xi(n)) {
        Ok(seeds) => seeds,
        Err(reason) => return Ok(MatchResult::Failed(reason)),
    };
    let initial = extend_weighted_seeds(a, b, &seeds);
    let w = weighted_common_neighbors(a, b, &initial);
    Ok(match_by_smallest_n(&w, params.selection))
}

fn extend_weighted_seeds(a: &SymMatrix, b: &SymMatrix, seeds: &SeedMap) -> Permutation {
    let n = a.n();
    let mut image = vec![usize::MAX; n];
    let mut right_seeded = vec![false; n];
    for &(i, k) in seeds.pairs() {
        image[i] = k;
        right_seeded[k] = true;
    }
    let free_left: Vec<usize> = (0..n).filter(|&i| image[i] == usize::MAX).collect();
    let free_right: Vec<usize> = (0..n).filter(|&k| !right_seeded[k]).collect();
    let m = free_left.len();
    if m > 0 {
        let grid = ScoreMatrix::from_fn(m, Orientation::LargerIsBetter, |r, c| {
            let (i, k) = (free_left[r], free_right[c]);
            seeds.pairs().iter().map(|&(j, t)| a.get(i, j) * b.get(k, t)).sum()
        });
        let p = linear_assignment(&grid);
        for r in 0..m {
            image[free_left[r]] = free_right[p.apply(r)];
        }
    }
    complete_ascending(&mut image);
    Permutation::new(image).expect("seeds plus an assignment of the rest form a bijection")
}

/// `w(i, k) = sum_j A_ij B_{k, p(j)}`.
pub fn weighted_common_neighbors(a: &SymMatrix, b: &SymMatrix, p: &Permutation) -> ScoreMatrix {
    let n = a.n();
    ScoreMatrix::from_rows(n, Orientation::LargerIsBetter, |i, row| {
        let ai = a.row(i);
        for (k, v) in row.iter_mut().enumerate() {
            let bk = b.row(k);
            *v = (0..n).map(|j| ai[j] * bk[p.apply(j)]).sum();
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{sample_correlated_er, sample_correlated_wigner, CorrelatedErParams, WignerParams};

    #[test]
    fn parameter_formulas() {
        let p = DenseParams::new(0.2, 0.99);
        let n = 500;
        let expo = (1.0 - 0.2 / 0.99) * 0.99 / 0.8;
        let alpha = (4.0 * 500f64.ln() / 100.0).powf(expo);
        assert!((p.alpha(n) - alpha).abs() < 1e-12);
        let l = 500f64.ln();
        assert_eq!(p.bins(n), (l.cbrt().max((l / 0.2).ln())).ceil() as usize);
        assert!((p.xi(n) - 0.2 * (p.bins(n) as f64 / 100.0).sqrt()).abs() < 1e-12);
        assert!(DenseParams::new(0.5, 0.5).validate().is_err());
        assert!(DenseParams::new(0.2, 0.99).validate().is_ok());
    }

    #[test]
    fn seed_set_edge_cases() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let scores = ScoreMatrix::from_fn(4, Orientation::SmallerIsBetter, |i, k| if i == k { 0.0 } else { 1.0 + (i + k) as f64 });
        assert_eq!(build_degree_seed_set(&g, &g, &scores, 0, -1.0), Err(FailureReason::NoSeeds));
        let all = build_degree_seed_set(&g, &g, &scores, 0, f64::MAX).err();
        assert_eq!(all, Some(FailureReason::SeedConflict));
        let diag = build_degree_seed_set(&g, &g, &scores, 0, 0.5).unwrap();
        assert_eq!(diag.pairs(), &[(0, 0), (1, 1), (2, 2), (3, 3)]);
        // b_k must reach tau + 1.
        assert_eq!(build_degree_seed_set(&g, &g, &scores, 2, 0.5), Err(FailureReason::NoSeeds));
    }

    #[test]
    fn empty_seeds_fail_explicitly() {
        let pair = sample_correlated_er(&CorrelatedErParams::new(100, 0.2, 0.9, 1)).unwrap();
        let mut params = DenseParams::new(0.2, 0.9);
        // tau above every degree.
        params.alpha0 = 1e-12;
        let r = match_dense(&pair.a, &pair.b, &params).unwrap();
        assert_eq!(r, MatchResult::Failed(FailureReason::NoSeeds));
    }

    #[test]
    fn noiseless_wigner() {
        let pair = sample_correlated_wigner(&WignerParams::new(150, 0.0, 2)).unwrap();
        let r = match_dense_wigner(&pair.a, &pair.b, &WignerDenseParams::default()).unwrap();
        assert_eq!(r, MatchResult::Exact(pair.pi_star));
    }
}
