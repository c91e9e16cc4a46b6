//! Degree profiles and the distances between them.
//!
//! A vertex's degree profile is the empirical distribution of the
//! standardized degrees of its neighbors. Two signatures are compared either
//! as centered histograms over a fixed window (`BinnedL1`) or through the
//! 1-Wasserstein distance between the raw empirical distributions.

use std::collections::HashMap;

use crate::binomial;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Finite multiset of reals kept in ascending order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EmpiricalDistribution {
    sorted: Vec<f64>,
}

impl EmpiricalDistribution {
    pub fn new(mut samples: Vec<f64>) -> Self {
        samples.sort_unstable_by(f64::total_cmp);
        Self { sorted: samples }
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    /// Fraction of samples `<= t`.
    pub fn cdf(&self, t: f64) -> f64 {
        if self.sorted.is_empty() {
            return 0.0;
        }
        self.sorted.partition_point(|&x| x <= t) as f64 / self.sorted.len() as f64
    }
}

/// Signed measure over `L` equal bins of the window `[-w/2, w/2]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinnedProfile {
    mass: Vec<f64>,
}

impl BinnedProfile {
    pub fn new(mass: Vec<f64>) -> Self {
        Self { mass }
    }

    pub fn zeros(bins: usize) -> Self {
        Self { mass: vec![0.0; bins] }
    }

    pub fn bins(&self) -> usize {
        self.mass.len()
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeMode {
    /// Neighbor degrees counted outside the closed neighborhood of the vertex.
    Outdegree,
    /// Plain neighbor degrees.
    PlainDegree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distance {
    BinnedL1,
    Wasserstein1,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProfileConfig {
    pub bins: usize,
    /// Edge probability used to standardize degrees.
    pub q: f64,
    pub mode: DegreeMode,
    pub distance: Distance,
    /// Width of the binning window centred at zero.
    pub window: f64,
}

impl ProfileConfig {
    /// Outdegree profiles compared by binned L1 over [`default_bins`] bins.
    pub fn new(n: usize, q: f64) -> Self {
        Self {
            bins: default_bins(n),
            q,
            mode: DegreeMode::Outdegree,
            distance: Distance::BinnedL1,
            window: 1.0,
        }
    }

    /// Plain-degree profiles compared by W1.
    pub fn plain_w1(n: usize, q: f64) -> Self {
        Self {
            mode: DegreeMode::PlainDegree,
            distance: Distance::Wasserstein1,
            ..Self::new(n, q)
        }
    }

    pub fn with_mode(mut self, mode: DegreeMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_distance(mut self, distance: Distance) -> Self {
        self.distance = distance;
        self
    }

    pub fn with_bins(mut self, bins: usize) -> Self {
        self.bins = bins;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.bins == 0 {
            return Err(Error::InvalidParameter("bin count must be positive".into()));
        }
        if !(self.q > 0.0 && self.q < 1.0) {
            return Err(Error::InvalidParameter(format!("q = {} must lie in (0, 1)", self.q)));
        }
        if self.window.is_nan() || self.window <= 0.0 {
            return Err(Error::InvalidParameter("window must be positive".into()));
        }
        Ok(())
    }
}

/// `ceil(3 ln n)`, at least one bin.
pub fn default_bins(n: usize) -> usize {
    ((3.0 * (n.max(2) as f64).ln()).ceil() as usize).max(1)
}

/// `(count - m q) / sqrt(m q (1 - q))`, or `None` when the denominator
/// vanishes.
#[inline]
pub fn standardize(count: f64, m: usize, q: f64) -> Option<f64> {
    let var = m as f64 * q * (1.0 - q);
    (var > 0.0).then(|| (count - m as f64 * q) / var.sqrt())
}

/// Number of neighbors of `j` outside the closed neighborhood of `i`.
pub fn outdegree_count(g: &Graph, i: usize, j: usize) -> usize {
    let adjacent = usize::from(g.has_edge(i, j));
    g.degree(j) - adjacent - g.common_neighbors(i, j)
}

/// Standardized outdegree of `j` with respect to `i`; zero when `i`'s
/// complement neighborhood is empty.
pub fn outdegree(g: &Graph, i: usize, j: usize, q: f64) -> f64 {
    let m = (g.n() - g.degree(i)).saturating_sub(1);
    standardize(outdegree_count(g, i, j) as f64, m, q).unwrap_or(0.0)
}

/// Trial count of the reference binomial for vertex `i`'s profile.
pub fn reference_trials(g: &Graph, i: usize, mode: DegreeMode) -> usize {
    match mode {
        DegreeMode::Outdegree => (g.n() - g.degree(i)).saturating_sub(1),
        DegreeMode::PlainDegree => g.n().saturating_sub(1),
    }
}

pub fn degree_profile(g: &Graph, i: usize, cfg: &ProfileConfig) -> EmpiricalDistribution {
    let q = cfg.q;
    let samples = match cfg.mode {
        DegreeMode::Outdegree => {
            let m = reference_trials(g, i, cfg.mode);
            let ni = g.neighbors(i);
            ni.iter()
                .map(|&j| {
                    // j is adjacent to i, so the outdegree is a_j - 1 - |N(i) ∩ N(j)|.
                    let count = g.degree(j) - 1 - crate::graph::sorted_intersection_len(ni, g.neighbors(j));
                    standardize(count as f64, m, q).unwrap_or(0.0)
                })
                .collect()
        }
        DegreeMode::PlainDegree => {
            let m = g.n().saturating_sub(1);
            g.neighbors(i)
                .iter()
                .map(|&j| standardize(g.degree(j) as f64, m, q).unwrap_or(0.0))
                .collect()
        }
    };
    EmpiricalDistribution::new(samples)
}

/// Bin of `x` among `bins` equal bins of `[-window/2, window/2]`; bins are
/// half-open except the last, which is closed.
#[inline]
pub fn bin_index(x: f64, bins: usize, window: f64) -> Option<usize> {
    let half = 0.5 * window;
    if !(-half..=half).contains(&x) {
        return None;
    }
    let idx = ((x + half) * bins as f64 / window).floor() as usize;
    Some(idx.min(bins - 1))
}

/// Mass that the standardized binomial `Binomc(m, q)` puts in each bin,
/// summed exactly over the binomial atoms. A degenerate law (`m = 0` or
/// `q` in {0, 1}) is a point mass at zero, matching the outdegree convention.
pub fn standardized_binomial_masses(m: usize, q: f64, bins: usize, window: f64) -> Vec<f64> {
    let mut mass = vec![0.0; bins];
    let var = m as f64 * q * (1.0 - q);
    if var <= 0.0 {
        if let Some(b) = bin_index(0.0, bins, window) {
            mass[b] = 1.0;
        }
        return mass;
    }
    let sd = var.sqrt();
    let mean = m as f64 * q;
    let lo = (mean - 0.5 * window * sd).floor().max(0.0) as u64;
    let hi = ((mean + 0.5 * window * sd).ceil() as u64).min(m as u64);
    for k in lo..=hi {
        let z = standardize(k as f64, m, q).unwrap_or(0.0);
        if let Some(b) = bin_index(z, bins, window) {
            mass[b] += binomial::pmf(m as u64, q, k);
        }
    }
    mass
}

/// Caches reference bin masses by trial count; most vertices of a graph share
/// a handful of distinct values.
#[derive(Debug)]
pub struct ReferenceCache {
    q: f64,
    bins: usize,
    window: f64,
    masses: HashMap<usize, Vec<f64>>,
}

impl ReferenceCache {
    pub fn new(q: f64, bins: usize, window: f64) -> Self {
        Self { q, bins, window, masses: HashMap::new() }
    }

    pub fn get(&mut self, m: usize) -> &[f64] {
        let (q, bins, window) = (self.q, self.bins, self.window);
        self.masses
            .entry(m)
            .or_insert_with(|| standardized_binomial_masses(m, q, bins, window))
    }
}

fn empirical_bins(dist: &EmpiricalDistribution, bins: usize, window: f64) -> Vec<f64> {
    let mut mass = vec![0.0; bins];
    if dist.is_empty() {
        return mass;
    }
    let w = 1.0 / dist.len() as f64;
    for &x in dist.sorted() {
        if let Some(b) = bin_index(x, bins, window) {
            mass[b] += w;
        }
    }
    mass
}

/// Raw histogram of `dist` minus the reference law `Binomc(m, q)`.
pub fn centered_binned_profile(dist: &EmpiricalDistribution, m: usize, q: f64, bins: usize, window: f64) -> BinnedProfile {
    let reference = standardized_binomial_masses(m, q, bins, window);
    centered_with_reference(dist, &reference, window)
}

pub(crate) fn centered_with_reference(dist: &EmpiricalDistribution, reference: &[f64], window: f64) -> BinnedProfile {
    let mut mass = empirical_bins(dist, reference.len(), window);
    for (m, r) in mass.iter_mut().zip(reference) {
        *m -= r;
    }
    BinnedProfile { mass }
}

/// L1 distance between binned profiles.
pub fn z_distance(p1: &BinnedProfile, p2: &BinnedProfile) -> Result<f64> {
    if p1.bins() != p2.bins() {
        return Err(Error::BinMismatch(p1.bins(), p2.bins()));
    }
    Ok(l1(&p1.mass, &p2.mass))
}

#[inline]
pub(crate) fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

/// Which `L_p` norm of the CDF difference to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CdfNorm {
    L1,
    L2,
    Sup,
}

/// 1-Wasserstein distance between empirical distributions, i.e. the integral
/// of `|F1 - F2|`.
pub fn w1_distance(d1: &EmpiricalDistribution, d2: &EmpiricalDistribution) -> Result<f64> {
    if d1.is_empty() || d2.is_empty() {
        return Err(Error::EmptyDistribution);
    }
    if d1.len() == d2.len() {
        Ok(w1_sorted(d1.sorted(), d2.sorted()))
    } else {
        Ok(cdf_walk(d1.sorted(), d2.sorted(), CdfNorm::L1))
    }
}

/// W1 between equal-size samples already sorted ascending: the mean absolute
/// difference of order statistics.
#[inline]
pub fn w1_sorted(x: &[f64], y: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    let sum: f64 = x.iter().zip(y).map(|(a, b)| (a - b).abs()).sum();
    sum / x.len() as f64
}

/// `||F1 - F2||_p` over the real line, exact for step CDFs.
pub fn lp_cdf_distance(d1: &EmpiricalDistribution, d2: &EmpiricalDistribution, norm: CdfNorm) -> Result<f64> {
    if d1.is_empty() || d2.is_empty() {
        return Err(Error::EmptyDistribution);
    }
    Ok(cdf_walk(d1.sorted(), d2.sorted(), norm))
}

/// Walks the merged atoms of two sorted samples. Between consecutive atoms
/// both CDFs are constant, so the integral is a finite sum.
fn cdf_walk(x: &[f64], y: &[f64], norm: CdfNorm) -> f64 {
    let (nx, ny) = (x.len(), y.len());
    let scale = (nx * ny) as f64;
    let (mut i, mut j) = (0usize, 0usize);
    let mut acc = 0.0f64;
    let mut prev = f64::NEG_INFINITY;
    while i < nx || j < ny {
        let t = match (x.get(i), y.get(j)) {
            (Some(&a), Some(&b)) => a.min(b),
            (Some(&a), None) => a,
            (None, Some(&b)) => b,
            (None, None) => unreachable!(),
        };
        if prev.is_finite() {
            // F1 = i/nx, F2 = j/ny on [prev, t).
            let diff = (i * ny).abs_diff(j * nx) as f64 / scale;
            let width = t - prev;
            match norm {
                CdfNorm::L1 => acc += diff * width,
                CdfNorm::L2 => acc += diff * diff * width,
                CdfNorm::Sup => acc = acc.max(diff),
            }
        }
        while i < nx && x[i] == t {
            i += 1;
        }
        while j < ny && y[j] == t {
            j += 1;
        }
        prev = t;
    }
    match norm {
        CdfNorm::L2 => acc.sqrt(),
        _ => acc,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::random_graph;
    use crate::permutation::Permutation;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dist(xs: &[f64]) -> EmpiricalDistribution {
        EmpiricalDistribution::new(xs.to_vec())
    }

    #[test]
    fn cdf_is_right_continuous_step() {
        let d = dist(&[1.0, 2.0, 2.0]);
        assert_eq!(d.cdf(0.5), 0.0);
        assert_eq!(d.cdf(1.0), 1.0 / 3.0);
        assert_eq!(d.cdf(2.0), 1.0);
        assert_eq!(d.cdf(f64::INFINITY), 1.0);
    }

    #[test]
    fn outdegree_on_star() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(outdegree_count(&g, 1, 0), 2);
        assert!((outdegree(&g, 1, 0, 0.5) - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn outdegree_zero_count() {
        // Triangle plus an isolated vertex: from 0, vertex 1 has no neighbor
        // outside N[0] = {0, 1, 2}.
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let q = 0.3;
        let m = 4 - 2 - 1;
        let expected = -(m as f64) * q / (m as f64 * q * (1.0 - q)).sqrt();
        assert!((outdegree(&g, 0, 1, q) - expected).abs() < 1e-12);
    }

    #[test]
    fn outdegree_matches_definition() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut checked = 0;
        while checked < 100 {
            let g = random_graph(30, 0.2, &mut rng);
            let i = rng.random_range(0..30);
            if g.degree(i) == 0 {
                continue;
            }
            let j = g.neighbors(i)[rng.random_range(0..g.degree(i))];
            let q = 0.2;
            let closed: Vec<usize> = g.neighbors(i).iter().copied().chain([i]).collect();
            let raw: f64 = (0..30)
                .filter(|l| !closed.contains(l))
                .map(|l| f64::from(u8::from(g.has_edge(l, j))) - q)
                .sum();
            let m = 30 - g.degree(i) - 1;
            let expected = raw / (m as f64 * q * (1.0 - q)).sqrt();
            assert!((outdegree(&g, i, j, q) - expected).abs() < 1e-12);
            checked += 1;
        }
    }

    #[test]
    fn profile_sample_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let isolated = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert!(degree_profile(&isolated, 2, &ProfileConfig::new(3, 0.5)).is_empty());
        let triangle = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let d = degree_profile(&triangle, 0, &ProfileConfig::new(3, 0.5));
        assert_eq!(d.len(), 2);
        assert_eq!(d.sorted()[0], d.sorted()[1]);
        for _ in 0..100 {
            let g = random_graph(25, 0.2, &mut rng);
            let i = rng.random_range(0..25);
            for mode in [DegreeMode::Outdegree, DegreeMode::PlainDegree] {
                let cfg = ProfileConfig::new(25, 0.2).with_mode(mode);
                assert_eq!(degree_profile(&g, i, &cfg).len(), g.degree(i));
            }
        }
    }

    #[test]
    fn profiles_are_label_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let g = random_graph(40, 0.2, &mut rng);
        let sigma = Permutation::random(40, &mut rng);
        let h = g.permuted(&sigma).unwrap();
        let cfg = ProfileConfig::new(40, 0.2);
        for i in 0..40 {
            assert_eq!(degree_profile(&g, i, &cfg), degree_profile(&h, sigma.apply(i), &cfg));
        }
    }

    #[test]
    fn binning_edges() {
        assert_eq!(bin_index(-0.5, 4, 1.0), Some(0));
        assert_eq!(bin_index(-0.25, 4, 1.0), Some(1));
        assert_eq!(bin_index(0.5, 4, 1.0), Some(3));
        assert_eq!(bin_index(0.51, 4, 1.0), None);
        assert_eq!(bin_index(1.0, 4, 2.0), Some(3));
    }

    #[test]
    fn reference_distribution_centers_to_zero() {
        // An empirical distribution that reproduces the binned reference law
        // exactly: atoms placed at the binomial support points with weights
        // proportional to the pmf are not representable, but a single-bin
        // check is.
        let (m, q, bins) = (100, 0.3, 8);
        let reference = standardized_binomial_masses(m, q, bins, 1.0);
        let inside: f64 = reference.iter().sum();
        // Single-bin case: mass = dist([-1/2, 1/2]) - P(Binomc in [-1/2, 1/2]).
        let d = dist(&[0.0, 0.1, 3.0, -2.0]);
        let one = centered_binned_profile(&d, m, q, 1, 1.0);
        assert!((one.mass()[0] - (0.5 - inside)).abs() < 1e-12);
        // A profile compared against a copy of its own reference is zero.
        let p = centered_with_reference(&EmpiricalDistribution::default(), &reference, 1.0);
        let r = BinnedProfile::new(reference.iter().map(|x| -x).collect());
        assert_eq!(z_distance(&p, &r).unwrap(), 0.0);
    }

    #[test]
    fn binomial_masses_match_monte_carlo() {
        let (m, q, bins) = (100usize, 0.3, 8);
        let exact = standardized_binomial_masses(m, q, bins, 1.0);
        let draws = 1_000_000;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let binom = rand_distr::Binomial::new(m as u64, q).unwrap();
        let mut counts = vec![0usize; bins];
        for _ in 0..draws {
            let k: u64 = rng.sample(binom);
            if let Some(b) = bin_index(standardize(k as f64, m, q).unwrap(), bins, 1.0) {
                counts[b] += 1;
            }
        }
        for (b, &c) in counts.iter().enumerate() {
            let p = exact[b];
            let se = (p * (1.0 - p) / draws as f64).sqrt().max(1e-9);
            let freq = c as f64 / draws as f64;
            assert!((freq - p).abs() <= 4.0 * se, "bin {b}: {freq} vs {p}");
        }
    }

    #[test]
    fn degenerate_reference_is_point_mass_at_zero() {
        let r = standardized_binomial_masses(0, 0.3, 5, 1.0);
        assert_eq!(r, vec![0.0, 0.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn z_distance_hand_values() {
        let zero = BinnedProfile::zeros(2);
        let p = BinnedProfile::new(vec![0.1, -0.1]);
        assert!((z_distance(&zero, &p).unwrap() - 0.2).abs() < 1e-15);
        assert_eq!(z_distance(&p, &p).unwrap(), 0.0);
        assert!(z_distance(&zero, &BinnedProfile::zeros(3)).is_err());
    }

    #[test]
    fn w1_hand_values() {
        assert_eq!(w1_distance(&dist(&[1.0, 2.0]), &dist(&[2.0, 1.0])).unwrap(), 0.0);
        assert_eq!(w1_distance(&dist(&[0.0]), &dist(&[1.0])).unwrap(), 1.0);
        assert!((w1_distance(&dist(&[0.0, 2.0]), &dist(&[1.0, 3.0])).unwrap() - 1.0).abs() < 1e-15);
        let walked = lp_cdf_distance(&dist(&[0.0, 2.0]), &dist(&[1.0, 3.0]), CdfNorm::L1).unwrap();
        assert!((walked - 1.0).abs() < 1e-15);
        assert!(w1_distance(&dist(&[]), &dist(&[1.0])).is_err());
    }

    #[test]
    fn lp_hand_values() {
        assert_eq!(lp_cdf_distance(&dist(&[0.0]), &dist(&[1.0]), CdfNorm::Sup).unwrap(), 1.0);
        let l2 = lp_cdf_distance(&dist(&[0.0, 2.0]), &dist(&[1.0, 3.0]), CdfNorm::L2).unwrap();
        assert!((l2 - 0.5f64.sqrt()).abs() < 1e-15);
        // Unequal sizes: {0} vs {0, 2}: |F1 - F2| = 1/2 on [0, 2).
        assert!((lp_cdf_distance(&dist(&[0.0]), &dist(&[0.0, 2.0]), CdfNorm::L1).unwrap() - 1.0).abs() < 1e-15);
    }

    fn brute_cdf_l1(x: &[f64], y: &[f64]) -> f64 {
        // Midpoint evaluation between all atoms.
        let dx = dist(x);
        let dy = dist(y);
        let mut pts: Vec<f64> = x.iter().chain(y).copied().collect();
        pts.sort_by(f64::total_cmp);
        pts.windows(2)
            .map(|w| {
                let mid = 0.5 * (w[0] + w[1]);
                (dx.cdf(mid) - dy.cdf(mid)).abs() * (w[1] - w[0])
            })
            .sum()
    }

    proptest! {
        #[test]
        fn sorted_formula_equals_cdf_integral(xs in prop::collection::vec(-5.0f64..5.0, 1..40), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ys: Vec<f64> = xs.iter().map(|_| rng.random_range(-5.0..5.0)).collect();
            let (dx, dy) = (dist(&xs), dist(&ys));
            let sorted = w1_sorted(dx.sorted(), dy.sorted());
            let walked = lp_cdf_distance(&dx, &dy, CdfNorm::L1).unwrap();
            prop_assert!((sorted - walked).abs() <= 1e-12);
        }

        #[test]
        fn cdf_walk_matches_midpoint_rule(xs in prop::collection::vec(-5.0f64..5.0, 1..30), ys in prop::collection::vec(-5.0f64..5.0, 1..30)) {
            let walked = lp_cdf_distance(&dist(&xs), &dist(&ys), CdfNorm::L1).unwrap();
            prop_assert!((walked - brute_cdf_l1(&xs, &ys)).abs() <= 1e-9);
            prop_assert!((walked - w1_distance(&dist(&xs), &dist(&ys)).unwrap()).abs() <= 1e-12);
        }

        #[test]
        fn w1_is_a_pseudometric(
            xs in prop::collection::vec(-5.0f64..5.0, 1..20),
            ys in prop::collection::vec(-5.0f64..5.0, 1..20),
            zs in prop::collection::vec(-5.0f64..5.0, 1..20),
        ) {
            let (x, y, z) = (dist(&xs), dist(&ys), dist(&zs));
            let xy = w1_distance(&x, &y).unwrap();
            prop_assert!(xy >= 0.0);
            prop_assert!((xy - w1_distance(&y, &x).unwrap()).abs() < 1e-12);
            prop_assert!(w1_distance(&x, &z).unwrap() <= xy + w1_distance(&y, &z).unwrap() + 1e-9);
        }

        #[test]
        fn z_is_a_pseudometric(
            a in prop::collection::vec(-1.0f64..1.0, 6),
            b in prop::collection::vec(-1.0f64..1.0, 6),
            c in prop::collection::vec(-1.0f64..1.0, 6),
        ) {
            let (a, b, c) = (BinnedProfile::new(a), BinnedProfile::new(b), BinnedProfile::new(c));
            let ab = z_distance(&a, &b).unwrap();
            prop_assert!(ab >= 0.0);
            prop_assert_eq!(ab, z_distance(&b, &a).unwrap());
            prop_assert!(z_distance(&a, &c).unwrap() <= ab + z_distance(&b, &c).unwrap() + 1e-12);
        }
    }
}
