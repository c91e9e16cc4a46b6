//! Recovering the vertex correspondence between two correlated random graphs
//! or matrices.

pub mod baselines;
pub mod binomial;
pub mod bipartite;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod ingest;
pub mod models;
pub mod outcome;
pub mod permutation;
pub mod dense;
pub mod dp;
pub mod profiles;
pub mod rng;

pub use error::{Error, Result};
pub use graph::Graph;
pub use outcome::{FailureReason, MatchResult};
pub use permutation::{accuracy, Permutation};
pub mod refine;
pub mod score;
pub mod seeded;
pub mod sparse;
