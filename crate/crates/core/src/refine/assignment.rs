use crate::permutation::Permutation;
use crate::score::{Orientation, ScoreMatrix};

/// Optimal assignment for the grid's orientation (maximum total score for
/// `LargerIsBetter`, minimum for `SmallerIsBetter`), by shortest augmenting
/// paths with potentials in `O(n^3)`.
pub fn linear_assignment(scores: &ScoreMatrix) -> Permutation {
    linear_assignment_preferring(scores, None)
}

/// As [`linear_assignment`], but returns `incumbent` whenever it attains the
/// optimal value (up to rounding in the last bits).
pub fn linear_assignment_preferring(scores: &ScoreMatrix, incumbent: Option<&Permutation>) -> Permutation {
    let best = hungarian(scores);
    if let Some(inc) = incumbent {
        let (vi, vb) = (scores.objective(inc), scores.objective(&best));
        let tol = 1e-9 * (1.0 + vb.abs());
        let as_good = match scores.orientation() {
            Orientation::LargerIsBetter => vi >= vb - tol,
            Orientation::SmallerIsBetter => vi <= vb + tol,
        };
        if as_good {
            return inc.clone();
        }
    }
    best
}

/// `<Π, W>` for the permutation matrix of `p`.
pub fn assignment_value(scores: &ScoreMatrix, p: &Permutation) -> f64 {
    scores.objective(p)
}

fn hungarian(scores: &ScoreMatrix) -> Permutation {
    let n = scores.n();
    if n == 0 {
        return Permutation::identity(0);
    }
    let sign = match scores.orientation() {
        Orientation::SmallerIsBetter => 1.0,
        Orientation::LargerIsBetter => -1.0,
    };
    let cost = |i: usize, j: usize| sign * scores.get(i - 1, j - 1);
    // 1-based rows and columns; column 0 is the virtual root.
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut row_of = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    let mut minv = vec![f64::INFINITY; n + 1];
    let mut used = vec![false; n + 1];
    for i in 1..=n {
        row_of[0] = i;
        let mut j0 = 0;
        minv.fill(f64::INFINITY);
        used.fill(false);
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost(i0, j) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut image = vec![0usize; n];
    for j in 1..=n {
        image[row_of[j] - 1] = j - 1;
    }
    Permutation::new(image).expect("assignment is a bijection")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::refine::greedy_match;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn all_permutations(n: usize) -> Vec<Vec<usize>> {
        fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
            if prefix.len() == used.len() {
                out.push(prefix.clone());
                return;
            }
            for k in 0..used.len() {
                if !used[k] {
                    used[k] = true;
                    prefix.push(k);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[k] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    fn brute_max(s: &ScoreMatrix) -> f64 {
        all_permutations(s.n())
            .into_iter()
            .map(|p| s.objective(&Permutation::new(p).unwrap()))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    #[test]
    fn two_by_two() {
        let s = ScoreMatrix::new(2, vec![4.0, 1.0, 2.0, 0.0], Orientation::LargerIsBetter).unwrap();
        let p = linear_assignment(&s);
        assert!(p.is_identity());
        assert_eq!(s.objective(&p), 4.0);
    }

    #[test]
    fn rank_one_rearrangement() {
        let u = [0.3, -1.2, 2.5, 0.9];
        let v = [1.1, 0.2, -0.7, 3.3];
        let s = ScoreMatrix::from_fn(4, Orientation::LargerIsBetter, |i, k| u[i] * v[k]);
        let p = linear_assignment(&s);
        // Largest u goes with largest v, and so on.
        let mut ru: Vec<usize> = (0..4).collect();
        ru.sort_by(|&a, &b| u[a].total_cmp(&u[b]));
        let mut rv: Vec<usize> = (0..4).collect();
        rv.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
        for r in 0..4 {
            assert_eq!(p.apply(ru[r]), rv[r]);
        }
        assert!((s.objective(&p) - brute_max(&s)).abs() < 1e-12);
    }

    #[test]
    fn beats_random_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let s = ScoreMatrix::from_fn(8, Orientation::LargerIsBetter, |i, k| ((i * 31 + k * 17) % 11) as f64 - 0.3 * k as f64);
        let best = s.objective(&linear_assignment(&s));
        for _ in 0..1000 {
            assert!(best >= s.objective(&Permutation::random(8, &mut rng)) - 1e-12);
        }
    }

    #[test]
    fn minimizes_when_smaller_is_better() {
        let s = ScoreMatrix::new(2, vec![4.0, 1.0, 2.0, 0.0], Orientation::SmallerIsBetter).unwrap();
        assert_eq!(linear_assignment(&s).as_slice(), &[1, 0]);
    }

    #[test]
    fn incumbent_kept_on_ties() {
        let s = ScoreMatrix::from_fn(5, Orientation::LargerIsBetter, |_, _| 1.0);
        let inc = Permutation::new(vec![4, 2, 0, 1, 3]).unwrap();
        assert_eq!(linear_assignment_preferring(&s, Some(&inc)), inc);
        let strict = ScoreMatrix::from_fn(5, Orientation::LargerIsBetter, |i, k| f64::from(u8::from(i == k)));
        assert!(linear_assignment_preferring(&strict, Some(&inc)).is_identity());
    }

    proptest! {
        #[test]
        fn optimal_against_brute_force(n in 1usize..=7, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let v: Vec<f64> = (0..n * n).map(|_| rng.random_range(-5.0..5.0)).collect();
            let s = ScoreMatrix::new(n, v, Orientation::LargerIsBetter).unwrap();
            let got = s.objective(&linear_assignment(&s));
            prop_assert!((got - brute_max(&s)).abs() < 1e-9);
            prop_assert!(got >= s.objective(&greedy_match(&s)) - 1e-9);
        }
    }
}
