//! Turning score grids into permutations, and improving a permutation by
//! repeated assignment against `A Π B`.

mod assignment;
mod cleanup;
mod greedy;

pub use assignment::{assignment_value, linear_assignment, linear_assignment_preferring};
pub use cleanup::{
    common_neighbor_counts, count_common_neighbors_under, iterative_cleanup, iterative_cleanup_dense, CleanupParams,
    CleanupSolver,
};
pub use greedy::{complete_ascending, greedy_match, greedy_match_sparse};
