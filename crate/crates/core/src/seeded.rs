//! Growing a correct partial matching (the seeds) into a full permutation.

use rayon::prelude::*;

use crate::bipartite::{hopcroft_karp, BipartiteGraph};
use crate::error::{check_size, Error, Result};
use crate::graph::Graph;
use crate::outcome::MatchResult;
use crate::permutation::Permutation;
use crate::refine::{complete_ascending, count_common_neighbors_under};
use crate::score::{match_by_smallest_n, Selection};

/// Injective partial map from vertices of `A` to vertices of `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedMap {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl SeedMap {
    pub fn new(n: usize, mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        let mut left = vec![false; n];
        let mut right = vec![false; n];
        for &(i, k) in &pairs {
            for v in [i, k] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if std::mem::replace(&mut left[i], true) || std::mem::replace(&mut right[k], true) {
                return Err(Error::InvalidParameter(format!("seed ({i}, {k}) reuses a vertex")));
            }
        }
        pairs.sort_unstable();
        Ok(Self { n, pairs })
    }

    /// Seeds `(i, p(i))` for each `i` in `vertices`.
    pub fn from_permutation(p: &Permutation, vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::new(p.len(), vertices.into_iter().map(|i| (i, p.apply(i))).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs sorted by left vertex.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeededParams {
    pub q: f64,
    pub s: f64,
    /// Overrides the threshold `|S| q s / 2` on seed-witnessed common
    /// neighbors.
    pub kappa: Option<f64>,
    pub selection: Selection,
}

impl SeededParams {
    pub fn new(q: f64, s: f64) -> Self {
        Self { q, s, kappa: None, selection: Selection::Strict }
    }

    pub fn with_kappa(mut self, kappa: f64) -> Self {
        self.kappa = Some(kappa);
        self
    }

    pub fn with_selection(mut self, selection: Selection) -> Self {
        self.selection = selection;
        self
    }

    pub fn kappa_for(&self, seeds: usize) -> f64 {
        self.kappa.unwrap_or(0.5 * seeds as f64 * self.q * self.s)
    }
}

/// Result of [`seeded_match_with`] together with what happened on the way.
#[derive(Clone, Debug, PartialEq)]
pub struct SeededOutcome {
    pub result: MatchResult,
    pub kappa: f64,
    /// Edges of the thresholded candidate graph between unseeded vertices.
    pub candidate_edges: usize,
    /// Size of its maximum matching.
    pub candidate_matching: usize,
    /// Unseeded vertices, i.e. the size a perfect candidate matching needs.
    pub unseeded: usize,
    /// Full permutation fed to the second pass.
    pub initial: Permutation,
}

impl SeededOutcome {
    pub fn candidate_is_perfect(&self) -> bool {
        self.candidate_matching == self.unseeded
    }
}

pub fn seeded_match(a: &Graph, b: &Graph, seeds: &SeedMap, q: f64, s: f64) -> Result<MatchResult> {
    Ok(seeded_match_with(a, b, seeds, &SeededParams::new(q, s))?.result)
}

/// Seeded matching in two passes.
///
/// First, unseeded `i` and `k` are joined when at least `kappa` seeds `j`
/// have `i ~ j` in `A` and `k ~ seed(j)` in `B`; a maximum matching of that
/// graph, completed in ascending order where it is not perfect, extends the
/// seeds to a permutation `π1`. Second, every pair is scored by its common
/// neighbors under `π1` and the `n` largest scores are read as the output.
pub fn seeded_match_with(a: &Graph, b: &Graph, seeds: &SeedMap, params: &SeededParams) -> Result<SeededOutcome> {
    let n = a.n();
    check_size(n, b.n())?;
    check_size(n, seeds.n())?;
    if seeds.is_empty() {
        return Err(Error::InvalidParameter("seed set is empty".into()));
    }
    let kappa = params.kappa_for(seeds.len());

    let mut seed_of = vec![None; n];
    let mut right_seeded = vec![false; n];
    for &(i, k) in seeds.pairs() {
        seed_of[i] = Some(k);
        right_seeded[k] = true;
    }
    let free_left: Vec<usize> = (0..n).filter(|&i| seed_of[i].is_none()).collect();
    let free_right: Vec<usize> = (0..n).filter(|&k| !right_seeded[k]).collect();
    let mut right_index = vec![usize::MAX; n];
    for (c, &k) in free_right.iter().enumerate() {
        right_index[k] = c;
    }

    let rows: Vec<Vec<usize>> = free_left
        .par_iter()
        .map_init(
            || vec![0u32; free_right.len()],
            |counts, &i| {
                for &j in a.neighbors(i) {
                    let Some(t) = seed_of[j] else { continue };
                    for &k in b.neighbors(t) {
                        if right_index[k] != usize::MAX {
                            counts[right_index[k]] += 1;
                        }
                    }
                }
                let row = (0..counts.len()).filter(|&c| f64::from(counts[c]) >= kappa).collect();
                counts.fill(0);
                row
            },
        )
        .collect();
    let mut h = BipartiteGraph::new(free_left.len(), free_right.len());
    for (r, row) in rows.iter().enumerate() {
        for &c in row {
            h.add_edge(r, c);
        }
    }
    let matching = hopcroft_karp(&h);

    let mut image: Vec<usize> = seed_of.iter().map(|s| s.unwrap_or(usize::MAX)).collect();
    for (r, c) in matching.pairs() {
        image[free_left[r]] = free_right[c];
    }
    complete_ascending(&mut image);
    let initial = Permutation::new(image).expect("seeds plus a matching of the rest form a bijection");

    let w = count_common_neighbors_under(a, b, &initial)?;
    let result = match_by_smallest_n(&w, params.selection);
    Ok(SeededOutcome {
        result,
        kappa,
        candidate_edges: h.num_edges(),
        candidate_matching: matching.size(),
        unseeded: free_left.len(),
        initial,
    })
}
