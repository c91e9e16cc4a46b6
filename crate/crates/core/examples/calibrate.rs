//! Pilot runs used to pick default constants and acceptance instances.
//!
//! Usage: `cargo run --release -p graphmatch --example calibrate -- <pilot>`

use std::env;
use std::time::Instant;

use graphmatch::models::{sample_correlated_er, CorrelatedErParams};
use graphmatch::rng::derive_seed;
use graphmatch::score::Selection;
use graphmatch::seeded::{seeded_match_with, SeedMap, SeededParams};
use graphmatch::{accuracy, Permutation};
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn seeded_pilot() {
    let (n, q, s, m) = (1000, 0.02, 0.95, 200);
    for policy in ["random", "high", "low"] {
        let mut exact_strict = 0;
        let mut exact_permissive = 0;
        let mut exact_lex = 0;
        for trial in 0..10 {
            let seed = derive_seed(7, 0, trial);
            let pair = sample_correlated_er(&CorrelatedErParams::new(n, q, s, seed)).unwrap();
            let mut order: Vec<usize> = (0..n).collect();
            match policy {
                "random" => order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed)),
                "high" => order.sort_by_key(|&i| (std::cmp::Reverse(pair.a.degree(i)), i)),
                _ => order.sort_by_key(|&i| (pair.a.degree(i), i)),
            }
            let seeds = SeedMap::from_permutation(&pair.pi_star, order[..m].iter().copied()).unwrap();
            let t = Instant::now();
            let strict = seeded_match_with(&pair.a, &pair.b, &seeds, &SeededParams::new(q, s)).unwrap();
            let permissive = seeded_match_with(
                &pair.a,
                &pair.b,
                &seeds,
                &SeededParams::new(q, s).with_selection(Selection::Permissive),
            )
            .unwrap();
            let lex = seeded_match_with(
                &pair.a,
                &pair.b,
                &seeds,
                &SeededParams::new(q, s).with_selection(Selection::Lexicographic),
            )
            .unwrap();
            let acc = |p: Option<&Permutation>| p.map_or(0.0, |p| accuracy(p, &pair.pi_star).unwrap());
            let (a1, a2, a3) = (acc(strict.result.permutation()), acc(permissive.result.permutation()), acc(lex.result.permutation()));
            exact_lex += usize::from(a3 == 1.0);
            exact_strict += usize::from(a1 == 1.0);
            exact_permissive += usize::from(a2 == 1.0);
            println!(
                "{policy} trial {trial}: strict {:?} acc {a1:.4}, permissive acc {a2:.4}, lexicographic acc {a3:.4}, first pass {}/{} init acc {:.4} ({:.2}s)",
                strict.result.failure(),
                strict.candidate_matching,
                strict.unseeded,
                accuracy(&strict.initial, &pair.pi_star).unwrap(),
                t.elapsed().as_secs_f64()
            );
        }
        println!("{policy}: strict exact {exact_strict}/10, lexicographic {exact_lex}/10, permissive exact {exact_permissive}/10");
    }
}

/// Z statistics of candidate pairs (both degrees above the threshold) in
/// units of sqrt(L / (n q)), i.e. the ratio that the xi constant multiplies.
fn dense_pilot() {
    use graphmatch::dense::DenseParams;
    use graphmatch::dp::score_grid;
    let l0: f64 = env::args().nth(2).map_or(1.0, |v| v.parse().unwrap());
    let w1 = env::args().nth(3).as_deref() == Some("w1");
    for &(n, q, s) in &[(300usize, 0.2, 1.0), (500, 0.2, 0.99), (1000, 0.3, 0.995)] {
        let mut params = DenseParams::new(q, s);
        params.l0 = l0;
        if w1 {
            params.distance = graphmatch::profiles::Distance::Wasserstein1;
        }
        let (tau, bins) = (params.tau(n), params.bins(n));
        let unit = (bins as f64 / (n as f64 * q)).sqrt();
        for trial in 0..3 {
            let pair = sample_correlated_er(&CorrelatedErParams::new(n, q, s, derive_seed(11, n as u64, trial))).unwrap();
            let scores = score_grid(&pair.a, &pair.b, &params.profile_config(n)).unwrap();
            let left: Vec<usize> = (0..n).filter(|&i| pair.a.degree(i) >= tau).collect();
            let right: Vec<usize> = (0..n).filter(|&k| pair.b.degree(k) > tau).collect();
            let mut true_z = Vec::new();
            let mut min_fake = f64::INFINITY;
            for &i in &left {
                for &k in &right {
                    let z = scores.get(i, k) / unit;
                    if pair.pi_star.apply(i) == k {
                        true_z.push(z);
                    } else {
                        min_fake = min_fake.min(z);
                    }
                }
            }
            true_z.sort_by(f64::total_cmp);
            let quant = |f: f64| true_z.get(((true_z.len() as f64 - 1.0) * f) as usize).copied().unwrap_or(f64::NAN);
            println!(
                "n={n} q={q} s={s} L={bins} tau={tau} alpha={:.3}: |left|={} |right|={} true={} true-z q50 {:.3} q90 {:.3} max {:.3}; min fake {:.3}; true below min fake {}",
                params.alpha(n),
                left.len(),
                right.len(),
                true_z.len(),
                quant(0.5),
                quant(0.9),
                quant(1.0),
                min_fake,
                true_z.iter().filter(|&&z| z < min_fake).count(),
            );
        }
    }
}

/// End-to-end dense matching over a grid of (alpha0, C) with one score grid
/// per trial.
fn dense_sweep() {
    use graphmatch::dense::{build_degree_seed_set, DenseParams};
    use graphmatch::dp::score_grid;
    use graphmatch::profiles::Distance;
    let n: usize = env::args().nth(2).map_or(1000, |v| v.parse().unwrap());
    let q: f64 = env::args().nth(3).map_or(0.3, |v| v.parse().unwrap());
    let s: f64 = env::args().nth(4).map_or(0.995, |v| v.parse().unwrap());
    let distance = match env::args().nth(5).as_deref() {
        Some("z") => Distance::BinnedL1,
        _ => Distance::Wasserstein1,
    };
    let trials = 5;
    let pairs: Vec<_> = (0..trials)
        .map(|t| sample_correlated_er(&CorrelatedErParams::new(n, q, s, derive_seed(13, n as u64, t))).unwrap())
        .collect();
    let mut base = DenseParams::new(q, s);
    base.distance = distance;
    let grids: Vec<_> = pairs.iter().map(|p| score_grid(&p.a, &p.b, &base.profile_config(n)).unwrap()).collect();
    for alpha0 in [1.0, 4.0, 16.0, 64.0] {
        for c in [0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.6, 1.0] {
            let mut params = base;
            params.alpha0 = alpha0;
            params.c_xi = c;
            let mut line = format!("alpha0={alpha0} C={c} tau={}:", params.tau(n));
            let mut exact = 0;
            for (pair, grid) in pairs.iter().zip(&grids) {
                match build_degree_seed_set(&pair.a, &pair.b, grid, params.tau(n), params.xi(n)) {
                    Err(r) => line += &format!(" {r:?}"),
                    Ok(seeds) => {
                        let fake = seeds.pairs().iter().filter(|&&(i, k)| pair.pi_star.apply(i) != k).count();
                        let out = seeded_match_with(&pair.a, &pair.b, &seeds, &SeededParams::new(q, s)).unwrap();
                        let acc = out.result.permutation().map_or(0.0, |p| accuracy(p, &pair.pi_star).unwrap());
                        exact += usize::from(acc == 1.0);
                        line += &format!(
                            " [{}+{fake}f init {:.2} {}]",
                            seeds.len() - fake,
                            accuracy(&out.initial, &pair.pi_star).unwrap(),
                            if acc == 1.0 { "ok".to_string() } else { format!("{:?}", out.result.failure()) }
                        );
                    }
                }
            }
            println!("{line} exact {exact}/{trials}");
        }
    }
}

/// `sparse n c s trials [eta0]` with q = c ln n / n.
fn sparse_pilot() {
    use graphmatch::sparse::{w_grid, SparseParams};
    let args: Vec<String> = env::args().collect();
    let arg = |k: usize, d: f64| args.get(k).and_then(|v| v.parse().ok()).unwrap_or(d);
    let n = arg(2, 500.0) as usize;
    let q = arg(3, 2.0) * (n as f64).ln() / n as f64;
    let s = arg(4, 1.0);
    let trials = arg(5, 10.0) as u64;
    let mut params = SparseParams::new(n, q).with_selection(Selection::Permissive);
    params.eta0 = arg(6, SparseParams::DEFAULT_ETA0);
    println!("n {n} q {q:.4} s {s} L {} eta {:.4}", params.bins, params.eta(n));
    for t in 0..trials {
        let start = Instant::now();
        let pair = sample_correlated_er(&CorrelatedErParams::new(n, q, s, derive_seed(7, 0, t))).unwrap();
        let w = w_grid(&pair.a, &pair.b, &params).unwrap();
        let truth = pair.pi_star.as_slice();
        let true_mean = (0..n).map(|i| w.get(i, truth[i])).sum::<f64>() / n as f64;
        let beaten = (0..n)
            .filter(|&i| (0..n).any(|k| k != truth[i] && w.get(i, k) >= w.get(i, truth[i])))
            .count();
        let strict = graphmatch::score::match_by_smallest_n(&w, Selection::Strict);
        let perm = graphmatch::score::match_by_smallest_n(&w, Selection::Permissive);
        let acc = accuracy(perm.permutation().unwrap(), &pair.pi_star).unwrap();
        println!(
            "trial {t}: true mean W {true_mean:.2} rows with fake >= true {beaten} strict {:?} permissive acc {acc:.3} ({:.1?})",
            strict.failure(),
            start.elapsed()
        );
    }
}

/// `qp n sigma_log_n`: objective, rounding accuracy and time per iteration cap.
fn qp_pilot() {
    use graphmatch::baselines::{solve_qp_relaxation, QpParams};
    use graphmatch::models::{sample_correlated_wigner, WignerParams};
    use graphmatch::refine::linear_assignment;
    use graphmatch::score::{Orientation, ScoreMatrix};
    let args: Vec<String> = env::args().collect();
    let n: usize = args.get(2).and_then(|v| v.parse().ok()).unwrap_or(300);
    let x: f64 = args.get(3).and_then(|v| v.parse().ok()).unwrap_or(1.5);
    let pair = sample_correlated_wigner(&WignerParams::new(n, x / (n as f64).ln(), 3)).unwrap();
    for iters in [25, 50, 100, 200, 400, 1000] {
        let start = Instant::now();
        let rho: f64 = args.get(4).and_then(|v| v.parse().ok()).unwrap_or(1.0);
        let params = QpParams { max_iters: iters, rho, ..QpParams::default() };
        let sol = solve_qp_relaxation(&pair.a, &pair.b, &params).unwrap();
        let scores = ScoreMatrix::new(n, sol.x.entries().to_vec(), Orientation::LargerIsBetter).unwrap();
        let acc = accuracy(&linear_assignment(&scores), &pair.pi_star).unwrap();
        println!(
            "cap {iters}: iterations {} converged {} objective {:.4} accuracy {acc:.3} ({:.1?})",
            sol.iterations,
            sol.converged,
            sol.objective,
            start.elapsed()
        );
    }
}

fn main() {
    match env::args().nth(1).as_deref() {
        Some("seeded") => seeded_pilot(),
        Some("dense") => dense_pilot(),
        Some("dense-sweep") => dense_sweep(),
        Some("sparse") => sparse_pilot(),
        Some("qp") => qp_pilot(),
        other => eprintln!("unknown pilot {other:?}; choose one of: seeded"),
    }
}
