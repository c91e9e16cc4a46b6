//! Comparison methods: degree sorting, spectral alignment, and the
//! doubly stochastic quadratic relaxation.

mod degree;
mod qp;
mod spectral;

pub use degree::{match_by_sorted_values, match_degree_sort};
pub use qp::{
    match_qp, project_doubly_stochastic, project_doubly_stochastic_with, qp_objective, solve_qp_relaxation,
    DoublyStochastic, QpParams, QpSolution, XUpdate,
};
pub use spectral::{dense_leading_eigenvector, leading_eigenvector, match_spectral, quadratic_agreement, Eigenpair};
