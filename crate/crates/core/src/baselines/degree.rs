use crate::error::{check_size, Result};
use crate::graph::Graph;
use crate::outcome::MatchResult;
use crate::permutation::Permutation;

/// Pair vertices by rank after sorting each side by value, largest first.
/// Ties fall back to vertex index, so the output is always a permutation.
pub fn match_by_sorted_values(x: &[f64], y: &[f64]) -> Result<Permutation> {
    check_size(x.len(), y.len())?;
    let rank = |v: &[f64]| {
        let mut order: Vec<usize> = (0..v.len()).collect();
        order.sort_by(|&i, &j| v[j].total_cmp(&v[i]).then(i.cmp(&j)));
        order
    };
    let (ra, rb) = (rank(x), rank(y));
    let mut image = vec![0; x.len()];
    for (&i, &k) in ra.iter().zip(&rb) {
        image[i] = k;
    }
    Permutation::new(image)
}

/// Degree-sort baseline. Uninformative on regular graphs, where it returns
/// the identity.
pub fn match_degree_sort(a: &Graph, b: &Graph) -> Result<MatchResult> {
    let deg = |g: &Graph| g.degrees().iter().map(|&d| d as f64).collect::<Vec<_>>();
    Ok(MatchResult::Exact(match_by_sorted_values(&deg(a), &deg(b))?))
}
