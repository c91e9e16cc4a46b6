//! Sparse regime: compare vertices through the degree profiles of their
//! neighbors, aggregated by a maximum bipartite matching.

use rayon::prelude::*;

use crate::bipartite::{hopcroft_karp, BipartiteGraph};
use crate::error::{check_size, Error, Result};
use crate::graph::Graph;
use crate::outcome::MatchResult;
use crate::profiles::{bin_index, standardize, ReferenceCache};
use crate::score::{match_by_smallest_n, Orientation, ScoreMatrix, Selection};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SparseParams {
    pub bins: usize,
    pub eta0: f64,
    pub q: f64,
    pub window: f64,
    pub selection: Selection,
}

impl SparseParams {
    pub const DEFAULT_ETA0: f64 = 0.1;
    pub const DEFAULT_L0: f64 = 3.0;

    /// Bins `⌈L0 ln(nq)⌉` (at least 1).
    pub fn new(n: usize, q: f64) -> Self {
        let bins = (Self::DEFAULT_L0 * (n as f64 * q).ln()).ceil().max(1.0) as usize;
        Self { bins, eta0: Self::DEFAULT_ETA0, q, window: 1.0, selection: Selection::Strict }
    }

    pub fn with_bins(mut self, bins: usize) -> Self {
        self.bins = bins;
        self
    }

    pub fn with_selection(mut self, selection: Selection) -> Self {
        self.selection = selection;
        self
    }

    /// Threshold `eta0 sqrt(L / (n q))` on neighbor-profile distances.
    pub fn eta(&self, n: usize) -> f64 {
        self.eta0 * (self.bins as f64 / (n as f64 * self.q)).sqrt()
    }

    pub fn validate(&self) -> Result<()> {
        if self.bins == 0 {
            return Err(Error::InvalidParameter("bin count must be positive".into()));
        }
        if !(self.q > 0.0 && self.q < 1.0) {
            return Err(Error::InvalidParameter(format!("q = {} must lie in (0, 1)", self.q)));
        }
        if !(self.eta0 >= 0.0 && self.window > 0.0) {
            return Err(Error::InvalidParameter("eta0 must be nonnegative and window positive".into()));
        }
        Ok(())
    }
}

/// `{i} ∪ N(i) ∪ N(N(i))`, sorted.
pub fn two_hop_neighborhood(g: &Graph, i: usize) -> Vec<usize> {
    let mut mask = vec![false; g.n()];
    mark_two_hop(g, i, &mut mask);
    (0..g.n()).filter(|&v| mask[v]).collect()
}

fn mark_two_hop(g: &Graph, i: usize, mask: &mut [bool]) -> usize {
    let mut size = 0;
    let mut mark = |v: usize, mask: &mut [bool]| {
        if !mask[v] {
            mask[v] = true;
            size += 1;
        }
    };
    mark(i, mask);
    for &j in g.neighbors(i) {
        mark(j, mask);
        for &l in g.neighbors(j) {
            mark(l, mask);
        }
    }
    size
}

/// Standardized count of neighbors of `ell` outside the two-hop
/// neighborhood of `i`; zero when that complement is empty.
pub fn two_hop_outdegree(g: &Graph, i: usize, ell: usize, q: f64) -> f64 {
    let mut mask = vec![false; g.n()];
    let size = mark_two_hop(g, i, &mut mask);
    outdegree_outside(g, ell, &mask, g.n() - size, q)
}

#[inline]
fn outdegree_outside(g: &Graph, ell: usize, mask: &[bool], trials: usize, q: f64) -> f64 {
    let count = g.neighbors(ell).iter().filter(|&&v| !mask[v]).count();
    standardize(count as f64, trials, q).unwrap_or(0.0)
}

/// Centered binned profiles of every neighbor of every vertex.
///
/// Block `i` holds `degree(i)` rows of `bins` entries, in neighbor order:
/// row `j` bins the two-hop outdegrees of `N(j) \ N[i]` and subtracts the
/// reference law `Binomc(n - |two-hop(i)|, q)`. A neighbor with no sample
/// contributes only the (negated) reference.
#[derive(Clone, Debug)]
pub struct NeighborProfiles {
    bins: usize,
    offsets: Vec<usize>,
    data: Vec<f64>,
}

impl NeighborProfiles {
    pub fn new(g: &Graph, params: &SparseParams) -> Self {
        let n = g.n();
        let bins = params.bins;
        let blocks: Vec<(usize, Vec<f64>)> = (0..n)
            .into_par_iter()
            .map_init(
                || (vec![false; n], vec![false; n], ReferenceCache::new(params.q, bins, params.window)),
                |(two_hop, closed, cache), i| {
                    let size = mark_two_hop(g, i, two_hop);
                    let trials = n - size;
                    closed[i] = true;
                    for &j in g.neighbors(i) {
                        closed[j] = true;
                    }
                    let reference = cache.get(trials).to_vec();
                    let mut block = Vec::with_capacity(g.degree(i) * bins);
                    for &j in g.neighbors(i) {
                        let mut row = vec![0.0; bins];
                        let samples: Vec<usize> = g.neighbors(j).iter().copied().filter(|&l| !closed[l]).collect();
                        if !samples.is_empty() {
                            let w = 1.0 / samples.len() as f64;
                            for &l in &samples {
                                let x = outdegree_outside(g, l, two_hop, trials, params.q);
                                if let Some(b) = bin_index(x, bins, params.window) {
                                    row[b] += w;
                                }
                            }
                        }
                        for (r, m) in row.iter_mut().zip(&reference) {
                            *r -= m;
                        }
                        block.extend(row);
                    }
                    // Reset the scratch masks touched for this vertex.
                    two_hop[i] = false;
                    closed[i] = false;
                    for &j in g.neighbors(i) {
                        two_hop[j] = false;
                        closed[j] = false;
                        for &l in g.neighbors(j) {
                            two_hop[l] = false;
                        }
                    }
                    (g.degree(i), block)
                },
            )
            .collect();
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut data = Vec::new();
        for (_, block) in blocks {
            data.extend(block);
            offsets.push(data.len());
        }
        Self { bins, offsets, data }
    }

    pub fn bins(&self) -> usize {
        self.bins
    }

    /// Number of neighbor profiles attached to `i`.
    pub fn count(&self, i: usize) -> usize {
        (self.offsets[i + 1] - self.offsets[i]) / self.bins
    }

    /// Profile of the `r`-th neighbor of `i`.
    pub fn profile(&self, i: usize, r: usize) -> &[f64] {
        let start = self.offsets[i] + r * self.bins;
        &self.data[start..start + self.bins]
    }
}

/// `‖x − y‖₁ ≤ eta`, stopping as soon as the partial sum exceeds `eta`.
#[inline]
fn within_l1(x: &[f64], y: &[f64], eta: f64) -> bool {
    let mut acc = 0.0;
    for (chunk_x, chunk_y) in x.chunks(4).zip(y.chunks(4)) {
        acc += chunk_x.iter().zip(chunk_y).map(|(a, b)| (a - b).abs()).sum::<f64>();
        if acc > eta {
            return false;
        }
    }
    true
}

/// Size of a maximum matching between the neighbors of `i` and of `k` whose
/// profiles lie within `eta`.
pub fn w_from_profiles(pa: &NeighborProfiles, pb: &NeighborProfiles, i: usize, k: usize, eta: f64) -> usize {
    let (da, db) = (pa.count(i), pb.count(k));
    if da == 0 || db == 0 {
        return 0;
    }
    let y = BipartiteGraph::from_fn(da, db, |r, c| within_l1(pa.profile(i, r), pb.profile(k, c), eta));
    hopcroft_karp(&y).size()
}

pub fn w_similarity(a: &Graph, b: &Graph, i: usize, k: usize, params: &SparseParams) -> Result<usize> {
    check_size(a.n(), b.n())?;
    params.validate()?;
    let (pa, pb) = (NeighborProfiles::new(a, params), NeighborProfiles::new(b, params));
    Ok(w_from_profiles(&pa, &pb, i, k, params.eta(a.n())))
}

/// Grid of `W(i, k)`, larger is better.
pub fn w_grid(a: &Graph, b: &Graph, params: &SparseParams) -> Result<ScoreMatrix> {
    let n = a.n();
    check_size(n, b.n())?;
    params.validate()?;
    let (pa, pb) = (NeighborProfiles::new(a, params), NeighborProfiles::new(b, params));
    let eta = params.eta(n);
    Ok(ScoreMatrix::from_fn(n, Orientation::LargerIsBetter, |i, k| w_from_profiles(&pa, &pb, i, k, eta) as f64))
}

pub fn match_sparse(a: &Graph, b: &Graph, params: &SparseParams) -> Result<MatchResult> {
    let w = w_grid(a, b, params)?;
    Ok(match_by_smallest_n(&w, params.selection))
}
