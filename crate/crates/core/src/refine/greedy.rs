use std::cmp::Reverse;

use crate::permutation::Permutation;
use crate::score::ScoreMatrix;

const FREE: usize = usize::MAX;

/// Scans entries best first (ties by `(i, k)`) and keeps every pair whose
/// endpoints are both still free.
///
/// Entries are pulled in growing chunks by partial selection, so a grid whose
/// best `O(n)` entries already form a matching costs `O(n^2)` rather than a
/// full sort.
pub fn greedy_match(scores: &ScoreMatrix) -> Permutation {
    let n = scores.n();
    let mut image = vec![FREE; n];
    let mut col_used = vec![false; n];
    let mut matched = 0;
    let mut rest: Vec<usize> = (0..n * n).collect();
    let mut chunk = (4 * n).max(16);
    while matched < n && !rest.is_empty() {
        let k = chunk.min(rest.len());
        if k < rest.len() {
            rest.select_nth_unstable_by(k - 1, |&a, &b| scores.cmp_entries(a, b));
        }
        let mut head: Vec<usize> = rest.drain(..k).collect();
        head.sort_unstable_by(|&a, &b| scores.cmp_entries(a, b));
        for e in head {
            let (i, j) = (e / n, e % n);
            if image[i] == FREE && !col_used[j] {
                image[i] = j;
                col_used[j] = true;
                matched += 1;
            }
        }
        rest.retain(|&e| image[e / n] == FREE && !col_used[e % n]);
        chunk *= 2;
    }
    complete_ascending(&mut image);
    Permutation::new(image).expect("greedy output is a bijection")
}

/// Greedy matching for a nonnegative weight grid given by its positive
/// entries `(i, k, w)`; every other entry is zero.
///
/// After the positive entries are exhausted every free-free pair has weight
/// zero, and scanning those zeros in `(i, k)` order pairs the free rows with
/// the free columns in ascending order. The result therefore equals
/// [`greedy_match`] on the dense grid.
pub fn greedy_match_sparse(n: usize, mut entries: Vec<(usize, usize, u32)>) -> Permutation {
    entries.retain(|e| e.2 > 0);
    entries.sort_unstable_by_key(|&(i, k, w)| (Reverse(w), i, k));
    let mut image = vec![FREE; n];
    let mut col_used = vec![false; n];
    for (i, k, _) in entries {
        if image[i] == FREE && !col_used[k] {
            image[i] = k;
            col_used[k] = true;
        }
    }
    complete_ascending(&mut image);
    Permutation::new(image).expect("greedy output is a bijection")
}

/// Pairs unassigned positions (marked `usize::MAX`) with the unused values in
/// ascending order.
pub fn complete_ascending(image: &mut [usize]) {
    let n = image.len();
    let mut used = vec![false; n];
    for &k in image.iter().filter(|&&k| k != FREE) {
        used[k] = true;
    }
    let mut free = (0..n).filter(|&k| !used[k]);
    for slot in image.iter_mut().filter(|k| **k == FREE) {
        *slot = free.next().expect("as many free values as free slots");
    }
}
