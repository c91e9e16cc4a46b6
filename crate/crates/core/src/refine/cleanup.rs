use nalgebra::DMatrix;
use rayon::prelude::*;

use super::{greedy_match, greedy_match_sparse, linear_assignment_preferring};
use crate::error::{check_size, Result};
use crate::graph::Graph;
use crate::models::SymMatrix;
use crate::permutation::Permutation;
use crate::score::{Orientation, ScoreMatrix};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CleanupSolver {
    /// Exact assignment, keeping the current permutation when it is optimal.
    Exact,
    #[default]
    Greedy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CleanupParams {
    pub max_iters: usize,
    pub solver: CleanupSolver,
}

impl Default for CleanupParams {
    fn default() -> Self {
        Self { max_iters: 100, solver: CleanupSolver::Greedy }
    }
}

/// Positive entries of `A Π B` as `(i, k, w)`, where `w` counts neighbors
/// `j` of `i` in `A` with `p(j)` adjacent to `k` in `B`.
pub fn common_neighbor_counts(a: &Graph, b: &Graph, p: &Permutation) -> Result<Vec<(usize, usize, u32)>> {
    let n = a.n();
    check_size(n, b.n())?;
    check_size(n, p.len())?;
    let rows: Vec<Vec<(usize, usize, u32)>> = (0..n)
        .into_par_iter()
        .map_init(
            || (vec![0u32; n], Vec::new()),
            |(counts, touched), i| {
                for &j in a.neighbors(i) {
                    for &k in b.neighbors(p.apply(j)) {
                        if counts[k] == 0 {
                            touched.push(k);
                        }
                        counts[k] += 1;
                    }
                }
                touched.sort_unstable();
                let row = touched.iter().map(|&k| (i, k, std::mem::take(&mut counts[k]))).collect();
                touched.clear();
                row
            },
        )
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

/// Dense grid `w(i, k) = sum_j A_ij B_{k, p(j)}`, larger is better.
pub fn count_common_neighbors_under(a: &Graph, b: &Graph, p: &Permutation) -> Result<ScoreMatrix> {
    let n = a.n();
    let entries = common_neighbor_counts(a, b, p)?;
    let mut values = vec![0.0; n * n];
    for (i, k, w) in entries {
        values[i * n + k] = f64::from(w);
    }
    ScoreMatrix::new(n, values, Orientation::LargerIsBetter)
}

/// Repeats `π <- argmax <Π, A Π_t B>` up to `max_iters` times, stopping early
/// at a fixed point.
pub fn iterative_cleanup(a: &Graph, b: &Graph, init: &Permutation, params: CleanupParams) -> Result<Permutation> {
    let n = a.n();
    check_size(n, b.n())?;
    check_size(n, init.len())?;
    let mut current = init.clone();
    for _ in 0..params.max_iters {
        let next = match params.solver {
            CleanupSolver::Greedy => greedy_match_sparse(n, common_neighbor_counts(a, b, &current)?),
            CleanupSolver::Exact => {
                let grid = count_common_neighbors_under(a, b, &current)?;
                linear_assignment_preferring(&grid, Some(&current))
            }
        };
        if next == current {
            break;
        }
        current = next;
    }
    Ok(current)
}

/// Clean-up for weighted symmetric matrices; `A Π_t B` is a dense product.
pub fn iterative_cleanup_dense(
    a: &SymMatrix,
    b: &SymMatrix,
    init: &Permutation,
    params: CleanupParams,
) -> Result<Permutation> {
    let n = a.n();
    check_size(n, b.n())?;
    check_size(n, init.len())?;
    // Symmetric, so the row-major buffer reads the same column-major.
    let am = DMatrix::from_column_slice(n, n, a.as_slice());
    let mut current = init.clone();
    for _ in 0..params.max_iters {
        // (Π B)_{jk} = B_{p(j), k}.
        let pb = DMatrix::from_fn(n, n, |j, k| b.get(current.apply(j), k));
        let m = &am * pb;
        // m is column-major; its transpose's buffer is m in row-major order.
        let grid = ScoreMatrix::new(n, m.transpose().as_slice().to_vec(), Orientation::LargerIsBetter)?;
        let next = match params.solver {
            CleanupSolver::Greedy => greedy_match(&grid),
            CleanupSolver::Exact => linear_assignment_preferring(&grid, Some(&current)),
        };
        if next == current {
            break;
        }
        current = next;
    }
    Ok(current)
}
