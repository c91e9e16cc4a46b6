//! Brute-force oracles shared by the integration tests and the acceptance
//! harness. Everything here is recomputed from definitions with plain loops
//! over an adjacency matrix, independent of the library's fast paths.

#![allow(dead_code)]

use graphmatch::bipartite::{hopcroft_karp, BipartiteGraph};
use graphmatch::binomial;
use graphmatch::dp::{score_grid, EMPTY_PROFILE_DISTANCE};
use graphmatch::graph::Graph;
use graphmatch::models::{sample_correlated_er, sample_correlated_er_conditional, sample_correlated_wigner, CorrelatedErParams, WignerParams};
use graphmatch::profiles::{outdegree, w1_sorted, ProfileConfig};
use graphmatch::refine::{assignment_value, linear_assignment};
use graphmatch::score::{Orientation, ScoreMatrix};
use graphmatch::sparse::{two_hop_neighborhood, two_hop_outdegree, w_grid, SparseParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<String, String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Random graph whose degrees never exceed `cap`.
pub fn capped_graph(n: usize, p: f64, cap: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut deg = vec![0; n];
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if deg[u] < cap && deg[v] < cap && rng.random_bool(p) {
                deg[u] += 1;
                deg[v] += 1;
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n();
    (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect()
}

fn standardized(count: f64, m: usize, q: f64) -> f64 {
    let var = m as f64 * q * (1.0 - q);
    if var > 0.0 {
        (count - m as f64 * q) / var.sqrt()
    } else {
        0.0
    }
}

/// `(Σ_{k ∉ N[i]} A_kj − m q) / sqrt(m q (1 − q))` with `m = n − a_i − 1`.
pub fn outdegree_oracle(adj: &[Vec<bool>], i: usize, j: usize, q: f64) -> f64 {
    let n = adj.len();
    let a_i = (0..n).filter(|&k| adj[i][k]).count();
    let count = (0..n).filter(|&k| k != i && !adj[i][k] && adj[k][j]).count();
    standardized(count as f64, n - a_i - 1, q)
}

/// Vertices within distance two of `i`, by breadth-first search.
pub fn two_hop_oracle(adj: &[Vec<bool>], i: usize) -> Vec<bool> {
    let n = adj.len();
    let mut dist = vec![usize::MAX; n];
    dist[i] = 0;
    let mut frontier = vec![i];
    for d in 1..=2 {
        let mut next = Vec::new();
        for &u in &frontier {
            for v in 0..n {
                if adj[u][v] && dist[v] == usize::MAX {
                    dist[v] = d;
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    dist.iter().map(|&d| d <= 2).collect()
}

pub fn two_hop_outdegree_oracle(adj: &[Vec<bool>], i: usize, ell: usize, q: f64) -> f64 {
    let inside = two_hop_oracle(adj, i);
    let n = adj.len();
    let size = inside.iter().filter(|&&b| b).count();
    let count = (0..n).filter(|&k| !inside[k] && adj[k][ell]).count();
    standardized(count as f64, n - size, q)
}

fn bin_of(x: f64, bins: usize) -> Option<usize> {
    if !(-0.5..=0.5).contains(&x) {
        return None;
    }
    Some((((x + 0.5) * bins as f64).floor() as usize).min(bins - 1))
}

/// Bin masses of `Binomc(m, q)` over every atom `0..=m`.
fn reference_oracle(m: usize, q: f64, bins: usize) -> Vec<f64> {
    let mut mass = vec![0.0; bins];
    if m == 0 {
        mass[bin_of(0.0, bins).unwrap()] = 1.0;
        return mass;
    }
    for k in 0..=m {
        if let Some(b) = bin_of(standardized(k as f64, m, q), bins) {
            mass[b] += binomial::pmf(m as u64, q, k as u64);
        }
    }
    mass
}

fn histogram(samples: &[f64], bins: usize) -> Vec<f64> {
    let mut h = vec![0.0; bins];
    for &x in samples {
        if let Some(b) = bin_of(x, bins) {
            h[b] += 1.0 / samples.len() as f64;
        }
    }
    h
}

fn l1(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).abs()).sum()
}

/// Centered, binned outdegree profile of `i`, or `None` for an isolated
/// vertex.
fn z_profile_oracle(adj: &[Vec<bool>], i: usize, q: f64, bins: usize) -> Option<Vec<f64>> {
    let n = adj.len();
    let nbrs: Vec<usize> = (0..n).filter(|&j| adj[i][j]).collect();
    if nbrs.is_empty() {
        return None;
    }
    let samples: Vec<f64> = nbrs.iter().map(|&j| outdegree_oracle(adj, i, j, q)).collect();
    let reference = reference_oracle(n - nbrs.len() - 1, q, bins);
    Some(histogram(&samples, bins).iter().zip(&reference).map(|(h, r)| h - r).collect())
}

/// Neighbor profiles of `i` for the three-hop statistic, in neighbor order.
fn w_profiles_oracle(adj: &[Vec<bool>], i: usize, q: f64, bins: usize) -> Vec<Vec<f64>> {
    let n = adj.len();
    let inside = two_hop_oracle(adj, i);
    let m = n - inside.iter().filter(|&&b| b).count();
    let reference = reference_oracle(m, q, bins);
    (0..n)
        .filter(|&j| adj[i][j])
        .map(|j| {
            let samples: Vec<f64> = (0..n)
                .filter(|&l| adj[j][l] && l != i && !adj[i][l])
                .map(|l| two_hop_outdegree_oracle(adj, i, l, q))
                .collect();
            let h = if samples.is_empty() { vec![0.0; bins] } else { histogram(&samples, bins) };
            h.iter().zip(&reference).map(|(x, r)| x - r).collect()
        })
        .collect()
}

/// Maximum matching size by trying every assignment of left vertices.
pub fn max_matching_exhaustive(edges: &[Vec<bool>]) -> usize {
    fn go(r: usize, edges: &[Vec<bool>], used: &mut Vec<bool>) -> usize {
        if r == edges.len() {
            return 0;
        }
        let mut best = go(r + 1, edges, used);
        for c in 0..used.len() {
            if edges[r][c] && !used[c] {
                used[c] = true;
                best = best.max(1 + go(r + 1, edges, used));
                used[c] = false;
            }
        }
        best
    }
    let cols = edges.first().map_or(0, Vec::len);
    go(0, edges, &mut vec![false; cols])
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            a.swap(j, k - 1);
        }
    }
    let mut out = Vec::new();
    heap(n, &mut (0..n).collect(), &mut out);
    out
}

pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    permutations(n)
}

// ---- checks; each returns a one-line summary ----

pub fn check_outdegrees(instances: usize) -> Check {
    let mut r = rng(101);
    let mut compared = 0;
    for _ in 0..instances {
        let n = r.random_range(5..=30);
        let q = r.random_range(0.05..0.5);
        let g = random_graph(n, q, &mut r);
        let adj = adjacency(&g);
        for i in 0..n {
            for &j in g.neighbors(i) {
                let (got, want) = (outdegree(&g, i, j, q), outdegree_oracle(&adj, i, j, q));
                if (got - want).abs() > 1e-12 {
                    return Err(format!("outdegree({i},{j}) = {got}, oracle {want}"));
                }
                compared += 1;
            }
            for l in 0..n {
                let (got, want) = (two_hop_outdegree(&g, i, l, q), two_hop_outdegree_oracle(&adj, i, l, q));
                if (got - want).abs() > 1e-12 {
                    return Err(format!("two-hop outdegree({i},{l}) = {got}, oracle {want}"));
                }
                compared += 1;
            }
            let hood: Vec<usize> = two_hop_oracle(&adj, i).iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v).collect();
            if two_hop_neighborhood(&g, i) != hood {
                return Err(format!("two-hop neighborhood of {i} differs from BFS"));
            }
        }
    }
    Ok(format!("{instances} graphs, {compared} values"))
}

pub fn check_z_grid(instances: usize) -> Check {
    let mut r = rng(202);
    for t in 0..instances {
        let n = r.random_range(4..=15);
        let q = r.random_range(0.15..0.5);
        let (a, b) = (random_graph(n, q, &mut r), random_graph(n, q, &mut r));
        let cfg = ProfileConfig::new(n, q);
        let grid = score_grid(&a, &b, &cfg).map_err(|e| e.to_string())?;
        let (adj_a, adj_b) = (adjacency(&a), adjacency(&b));
        for i in 0..n {
            for k in 0..n {
                let want = match (z_profile_oracle(&adj_a, i, q, cfg.bins), z_profile_oracle(&adj_b, k, q, cfg.bins)) {
                    (Some(x), Some(y)) => l1(&x, &y),
                    _ => EMPTY_PROFILE_DISTANCE,
                };
                let got = grid.get(i, k);
                if (got - want).abs() > 1e-12 {
                    return Err(format!("instance {t}: Z({i},{k}) = {got}, oracle {want}"));
                }
            }
        }
    }
    Ok(format!("{instances} pairs, n <= 15"))
}

pub fn check_w_grid(instances: usize) -> Check {
    let mut r = rng(303);
    let mut nonzero = 0;
    for t in 0..instances {
        let n = r.random_range(6..=15);
        let q = r.random_range(0.15..0.4);
        let (a, b) = (capped_graph(n, q, 6, &mut r), capped_graph(n, q, 6, &mut r));
        let mut params = SparseParams::new(n, q);
        params.eta0 = [0.1, 0.5, 1.0, 3.0][t % 4];
        let eta = params.eta(n);
        let grid = w_grid(&a, &b, &params).map_err(|e| e.to_string())?;
        let (adj_a, adj_b) = (adjacency(&a), adjacency(&b));
        for i in 0..n {
            let pa = w_profiles_oracle(&adj_a, i, q, params.bins);
            for k in 0..n {
                let pb = w_profiles_oracle(&adj_b, k, q, params.bins);
                // Bracket the threshold so rounding at the boundary cannot flip
                // an edge of Y.
                let w_at = |e: f64| {
                    let y: Vec<Vec<bool>> = pa.iter().map(|x| pb.iter().map(|z| l1(x, z) <= e).collect()).collect();
                    max_matching_exhaustive(&y)
                };
                let (lo, hi) = (w_at(eta - 1e-9), w_at(eta + 1e-9));
                let got = grid.get(i, k) as usize;
                if got < lo || got > hi {
                    return Err(format!("instance {t}: W({i},{k}) = {got}, oracle in [{lo}, {hi}]"));
                }
                nonzero += usize::from(got > 0);
            }
        }
    }
    Ok(format!("{instances} pairs, degrees <= 6, {nonzero} nonzero entries"))
}

pub fn check_hopcroft_karp(instances: usize) -> Check {
    let mut r = rng(404);
    for t in 0..instances {
        let p = r.random_range(0.05..0.6);
        let edges: Vec<Vec<bool>> = (0..8).map(|_| (0..8).map(|_| r.random_bool(p)).collect()).collect();
        let g = BipartiteGraph::from_fn(8, 8, |u, v| edges[u][v]);
        let (got, want) = (hopcroft_karp(&g).size(), max_matching_exhaustive(&edges));
        if got != want {
            return Err(format!("instance {t}: Hopcroft-Karp {got}, exhaustive {want}"));
        }
    }
    Ok(format!("{instances} random 8x8 graphs"))
}

pub fn check_linear_assignment(instances: usize) -> Check {
    let mut r = rng(505);
    for t in 0..instances {
        let n = r.random_range(1..=8);
        let vals: Vec<f64> = (0..n * n).map(|_| r.random_range(-5.0..5.0)).collect();
        let orientation = if t % 2 == 0 { Orientation::LargerIsBetter } else { Orientation::SmallerIsBetter };
        let s = ScoreMatrix::new(n, vals.clone(), orientation).unwrap();
        let got = assignment_value(&s, &linear_assignment(&s));
        let values = permutations(n).into_iter().map(|p| (0..n).map(|i| vals[i * n + p[i]]).sum::<f64>());
        let want = match orientation {
            Orientation::LargerIsBetter => values.fold(f64::NEG_INFINITY, f64::max),
            Orientation::SmallerIsBetter => values.fold(f64::INFINITY, f64::min),
        };
        if (got - want).abs() > 1e-9 {
            return Err(format!("instance {t}: assignment value {got}, brute force {want}"));
        }
    }
    Ok(format!("{instances} matrices, n <= 8"))
}

/// `∫ |F − G|` evaluated piecewise between consecutive sample points.
pub fn w1_cdf_integral(x: &[f64], y: &[f64]) -> f64 {
    let mut pts: Vec<f64> = x.iter().chain(y).copied().collect();
    pts.sort_by(f64::total_cmp);
    let cdf = |s: &[f64], t: f64| s.iter().filter(|&&v| v <= t).count() as f64 / s.len() as f64;
    pts.windows(2).map(|w| (cdf(x, w[0]) - cdf(y, w[0])).abs() * (w[1] - w[0])).sum()
}

pub fn check_w1(instances: usize) -> Check {
    let mut r = rng(606);
    let mut worst = 0.0f64;
    for t in 0..instances {
        let m = r.random_range(1..=40);
        // Small integer lattice values keep every partial sum exact.
        let mut x: Vec<f64> = (0..m).map(|_| r.random_range(-20i32..20) as f64 / 8.0).collect();
        let mut y: Vec<f64> = (0..m).map(|_| r.random_range(-20i32..20) as f64 / 8.0).collect();
        let oracle = w1_cdf_integral(&x, &y);
        x.sort_by(f64::total_cmp);
        y.sort_by(f64::total_cmp);
        let got = w1_sorted(&x, &y);
        worst = worst.max((got - oracle).abs());
        if (got - oracle).abs() > 1e-12 {
            return Err(format!("instance {t}: sorted {got}, CDF integral {oracle}"));
        }
    }
    Ok(format!("{instances} sample pairs, max gap {worst:e}"))
}

// ---- generator statistics ----

/// Pooled counts over `trials` correlated ER samples: (pairs, edges of A,
/// edges of B, edges present in both under the planted relabeling).
pub fn er_counts(n: usize, q: f64, s: f64, trials: u64, conditional: bool) -> (f64, f64, f64, f64) {
    let (mut pairs, mut ea, mut eb, mut both) = (0.0, 0.0, 0.0, 0.0);
    for t in 0..trials {
        let params = CorrelatedErParams::new(n, q, s, 9000 + t + if conditional { 1 << 20 } else { 0 });
        let pair = if conditional { sample_correlated_er_conditional(&params) } else { sample_correlated_er(&params) }.unwrap();
        pairs += (n * (n - 1) / 2) as f64;
        ea += pair.a.num_edges() as f64;
        eb += pair.b.num_edges() as f64;
        both += pair.a.edges().filter(|&(u, v)| pair.b.has_edge(pair.pi_star.apply(u), pair.pi_star.apply(v))).count() as f64;
    }
    (pairs, ea, eb, both)
}

fn z_score(hits: f64, total: f64, p: f64) -> f64 {
    (hits / total - p) / (p * (1.0 - p) / total).sqrt()
}

fn two_sample_z(h1: f64, t1: f64, h2: f64, t2: f64) -> f64 {
    let (p1, p2) = (h1 / t1, h2 / t2);
    let pooled = (h1 + h2) / (t1 + t2);
    (p1 - p2) / (pooled * (1.0 - pooled) * (1.0 / t1 + 1.0 / t2)).sqrt()
}

pub fn check_er_generators(n: usize, q: f64, s: f64, trials: u64) -> Check {
    let parent = er_counts(n, q, s, trials, false);
    let cond = er_counts(n, q, s, trials, true);
    let mut worst: f64 = 0.0;
    for (name, (pairs, ea, eb, both)) in [("parent", parent), ("conditional", cond)] {
        for (what, z) in [
            ("A density", z_score(ea, pairs, q)),
            ("B density", z_score(eb, pairs, q)),
            ("joint", z_score(both, pairs, q * s)),
        ] {
            worst = worst.max(z.abs());
            if z.abs() > 4.0 {
                return Err(format!("{name} sampler: {what} is {z:.2} standard errors off"));
            }
        }
    }
    for (what, z) in [
        ("A density", two_sample_z(parent.1, parent.0, cond.1, cond.0)),
        ("B density", two_sample_z(parent.2, parent.0, cond.2, cond.0)),
        ("joint", two_sample_z(parent.3, parent.0, cond.3, cond.0)),
    ] {
        worst = worst.max(z.abs());
        if z.abs() > 4.0 {
            return Err(format!("parent vs conditional: {what} differs by {z:.2} standard errors"));
        }
    }
    Ok(format!("n={n} q={q} s={s}, {trials} trials per sampler, max |z| {worst:.2}"))
}

pub fn check_wigner_correlation(n: usize, sigma: f64, trials: u64) -> Check {
    let rho = (1.0 - sigma * sigma).sqrt();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for t in 0..trials {
        let pair = sample_correlated_wigner(&WignerParams::new(n, sigma, 7000 + t)).unwrap();
        let p = pair.pi_star.as_slice();
        for i in 0..n {
            for j in i..n {
                xs.push(pair.a.get(i, j));
                ys.push(pair.b.get(p[i], p[j]));
            }
        }
    }
    let m = xs.len() as f64;
    let mean = |v: &[f64]| v.iter().sum::<f64>() / m;
    let (mx, my) = (mean(&xs), mean(&ys));
    let cov = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>() / m;
    let sd = |v: &[f64], c: f64| (v.iter().map(|x| (x - c).powi(2)).sum::<f64>() / m).sqrt();
    let r = cov / (sd(&xs, mx) * sd(&ys, my));
    // Standard error of a sample correlation for bivariate normals.
    let se = (1.0 - rho * rho) / (m - 1.0).sqrt();
    let z = (r - rho) / se;
    if z.abs() > 4.0 {
        return Err(format!("correlation {r:.5} vs {rho:.5}: {z:.2} standard errors"));
    }
    Ok(format!("correlation {r:.5} vs {rho:.5} ({z:.2} standard errors)"))
}

/// Accuracy of a match result; a failure scores zero.
pub fn score(r: &graphmatch::MatchResult, truth: &graphmatch::Permutation) -> f64 {
    r.permutation().map_or(0.0, |p| graphmatch::accuracy(p, truth).unwrap())
}

pub fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len().is_multiple_of(2) { 0.5 * (v[m - 1] + v[m]) } else { v[m] }
}

/// The benchmark CSV with the wall-clock column removed.
pub fn csv_without_runtime(rows: &[graphmatch::experiment::ResultRow]) -> String {
    let mut buf = Vec::new();
    graphmatch::experiment::write_csv(rows, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let col = graphmatch::experiment::CSV_HEADER.iter().position(|&h| h == "runtime_ms").unwrap();
    text.lines()
        .map(|line| {
            let mut fields: Vec<&str> = line.split(',').collect();
            fields.remove(col);
            fields.join(",")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn check_determinism() -> Check {
    let cfg = graphmatch::experiment::ExperimentConfig::parse(
        "model = er\nn = 200\nsweep = 0.25, 1.0, 2.0\ntrials = 3\nalgos = dp, dp-plus, degree\nseed = 17\n",
    )
    .map_err(|e| e.to_string())?;
    let first = graphmatch::experiment::run_experiment(&cfg).map_err(|e| e.to_string())?;
    let second = graphmatch::experiment::run_experiment(&cfg).map_err(|e| e.to_string())?;
    let (x, y) = (csv_without_runtime(&first), csv_without_runtime(&second));
    if x != y {
        return Err("two runs with the same seed differ outside the runtime column".into());
    }
    Ok(format!("{} rows identical across two runs", first.len()))
}

pub fn check_qp() -> Check {
    use graphmatch::baselines::{match_qp, qp_objective, solve_qp_relaxation, DoublyStochastic, QpParams};
    use graphmatch::models::SymMatrix;
    let n = 6;
    let perms = all_permutations(n);
    let mut worst_gap = f64::INFINITY;
    for t in 0..10 {
        let mut r = rng(800 + t);
        let (ga, gb) = (random_graph(n, 0.5, &mut r), random_graph(n, 0.5, &mut r));
        let (a, b) = (SymMatrix::adjacency(&ga), SymMatrix::adjacency(&gb));
        let best = perms
            .iter()
            .map(|p| {
                let mut x = vec![0.0; n * n];
                for (i, &k) in p.iter().enumerate() {
                    x[i * n + k] = 1.0;
                }
                qp_objective(&a, &b, &x).unwrap()
            })
            .fold(f64::INFINITY, f64::min);
        let sol = solve_qp_relaxation(&a, &b, &QpParams::default()).map_err(|e| e.to_string())?;
        if !sol.x.is_feasible(DoublyStochastic::TOL) {
            return Err(format!("n=6 instance {t}: infeasible output {:?}", sol.x.violation()));
        }
        if sol.objective > best + 1e-6 {
            return Err(format!("n=6 instance {t}: relaxation {} above best permutation {best}", sol.objective));
        }
        worst_gap = worst_gap.min(best - sol.objective);
    }
    let mut r = rng(850);
    let a = SymMatrix::adjacency(&random_graph(50, 0.2, &mut r));
    let sol = solve_qp_relaxation(&a, &a, &QpParams::default()).map_err(|e| e.to_string())?;
    if !sol.x.is_feasible(DoublyStochastic::TOL) {
        return Err(format!("n=50: infeasible output {:?}", sol.x.violation()));
    }
    let residual = sol.objective.sqrt();
    if residual > 1e-4 {
        return Err(format!("n=50 identical graphs: residual {residual:e}"));
    }
    let m = match_qp(&a, &a, &QpParams::default()).map_err(|e| e.to_string())?;
    if !m.permutation().is_some_and(|p| p.is_identity()) {
        return Err("n=50 identical graphs: rounding is not the identity".into());
    }
    Ok(format!("feasible; n=6 bound holds on 10 pairs (smallest margin {worst_gap:.1e}); n=50 residual {residual:.1e}, identity recovered"))
}
