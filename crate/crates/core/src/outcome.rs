use std::fmt;

use crate::permutation::Permutation;

/// Why a matcher could not certify its output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FailureReason {
    /// The selected index pairs do not form a permutation.
    NotAPerfectMatching,
    /// The selection cut falls inside a run of equal scores.
    TiedScores,
    /// The input carries no signal (e.g. every profile is empty).
    DegenerateInput,
    /// A seed set maps some vertex twice.
    SeedConflict,
    /// A seed set came out empty.
    NoSeeds,
    /// An iterative solver stopped at its iteration cap.
    NotConverged,
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FailureReason::NotAPerfectMatching => "not a perfect matching",
            FailureReason::TiedScores => "tied scores at the selection cut",
            FailureReason::DegenerateInput => "degenerate input",
            FailureReason::SeedConflict => "seed set is not a matching",
            FailureReason::NoSeeds => "empty seed set",
            FailureReason::NotConverged => "solver did not converge",
        };
        f.write_str(s)
    }
}

/// Output of a matcher: either a certified permutation, a permutation
/// produced by a completion fallback after a failure, or a bare failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchResult {
    Exact(Permutation),
    Fallback {
        permutation: Permutation,
        reason: FailureReason,
    },
    Failed(FailureReason),
}

impl MatchResult {
    pub fn permutation(&self) -> Option<&Permutation> {
        match self {
            MatchResult::Exact(p) | MatchResult::Fallback { permutation: p, .. } => Some(p),
            MatchResult::Failed(_) => None,
        }
    }

    pub fn into_permutation(self) -> Option<Permutation> {
        match self {
            MatchResult::Exact(p) | MatchResult::Fallback { permutation: p, .. } => Some(p),
            MatchResult::Failed(_) => None,
        }
    }

    pub fn failure(&self) -> Option<FailureReason> {
        match self {
            MatchResult::Exact(_) => None,
            MatchResult::Fallback { reason, .. } | MatchResult::Failed(reason) => Some(*reason),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, MatchResult::Exact(_))
    }
}
