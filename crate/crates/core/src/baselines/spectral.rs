use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{check_size, Error, Result};
use crate::models::SymMatrix;
use crate::outcome::{FailureReason, MatchResult};
use crate::permutation::Permutation;

use super::degree::match_by_sorted_values;

#[derive(Clone, Debug, PartialEq)]
pub struct Eigenpair {
    pub value: f64,
    pub vector: Vec<f64>,
}

fn matvec(m: &SymMatrix, x: &[f64], out: &mut [f64]) {
    for (i, o) in out.iter_mut().enumerate() {
        *o = m.row(i).iter().zip(x).map(|(a, b)| a * b).sum();
    }
}

fn normalize(x: &mut [f64]) -> f64 {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
    norm
}

/// Flip so the first coordinate that is nonzero (relative to the largest)
/// is positive.
fn fix_sign(x: &mut [f64]) {
    let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if let Some(&first) = x.iter().find(|v| v.abs() > 1e-12 * scale) {
        if first < 0.0 {
            x.iter_mut().for_each(|v| *v = -*v);
        }
    }
}

/// Largest eigenvalue (by value) and its unit eigenvector by power iteration
/// on `M + cI`, where `c` is the largest absolute row sum so every shifted
/// eigenvalue is nonnegative. Stops when successive iterates are within
/// angle `tol`.
pub fn leading_eigenvector(m: &SymMatrix, tol: f64, max_iters: usize) -> Result<Eigenpair> {
    let n = m.n();
    if n == 0 {
        return Err(Error::InvalidParameter("empty matrix has no eigenvector".into()));
    }
    let shift = (0..n).map(|i| m.row(i).iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max);
    // A start vector not orthogonal to common eigenvectors like the all-ones.
    let mut x: Vec<f64> = (0..n).map(|i| 1.0 + (i as f64 + 1.0).sqrt().fract()).collect();
    normalize(&mut x);
    let mut y = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for _ in 0..max_iters {
        matvec(m, &x, &mut y);
        y.iter_mut().zip(&x).for_each(|(v, xi)| *v += shift * xi);
        if normalize(&mut y) == 0.0 {
            // Zero matrix: every vector is an eigenvector for 0.
            fix_sign(&mut x);
            return Ok(Eigenpair { value: 0.0, vector: x });
        }
        let cos = x.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>().clamp(-1.0, 1.0);
        std::mem::swap(&mut x, &mut y);
        residual = cos.acos();
        if residual < tol {
            matvec(m, &x, &mut y);
            let value = x.iter().zip(&y).map(|(a, b)| a * b).sum();
            fix_sign(&mut x);
            return Ok(Eigenpair { value, vector: x });
        }
    }
    Err(Error::NoConvergence { iterations: max_iters, residual })
}

/// Top eigenpair from a full symmetric eigendecomposition. Used when the
/// spectral gap is too small for power iteration.
pub fn dense_leading_eigenvector(m: &SymMatrix) -> Result<Eigenpair> {
    let n = m.n();
    if n == 0 {
        return Err(Error::InvalidParameter("empty matrix has no eigenvector".into()));
    }
    let eig = SymmetricEigen::new(DMatrix::from_row_slice(n, n, m.as_slice()));
    let top = eig.eigenvalues.imax();
    let mut vector: Vec<f64> = eig.eigenvectors.column(top).iter().copied().collect();
    normalize(&mut vector);
    fix_sign(&mut vector);
    Ok(Eigenpair { value: eig.eigenvalues[top], vector })
}

fn top_eigenvector(m: &SymMatrix) -> Result<Vec<f64>> {
    match leading_eigenvector(m, 1e-8, 2000) {
        Ok(pair) => Ok(pair.vector),
        Err(Error::NoConvergence { .. }) => Ok(dense_leading_eigenvector(m)?.vector),
        Err(e) => Err(e),
    }
}

/// `Σ_ij A_ij B_{p(i) p(j)}`, the quadratic assignment objective.
pub fn quadratic_agreement(a: &SymMatrix, b: &SymMatrix, p: &Permutation) -> Result<f64> {
    check_size(a.n(), b.n())?;
    check_size(a.n(), p.len())?;
    let img = p.as_slice();
    Ok((0..a.n())
        .map(|i| {
            let brow = b.row(img[i]);
            a.row(i).iter().zip(img).map(|(x, &pj)| x * brow[pj]).sum::<f64>()
        })
        .sum())
}

/// Align the leading eigenvectors of `A` and `B` by sorting, trying both
/// signs of the second and keeping the alignment with the larger quadratic
/// agreement. A constant eigenvector carries no information; the result is
/// then flagged as tied.
pub fn match_spectral(a: &SymMatrix, b: &SymMatrix) -> Result<MatchResult> {
    check_size(a.n(), b.n())?;
    let u = top_eigenvector(a)?;
    let v = top_eigenvector(b)?;
    let flipped: Vec<f64> = v.iter().map(|x| -x).collect();
    let plus = match_by_sorted_values(&u, &v)?;
    let minus = match_by_sorted_values(&u, &flipped)?;
    let best = if quadratic_agreement(a, b, &minus)? > quadratic_agreement(a, b, &plus)? { minus } else { plus };
    let spread = u.iter().fold(f64::NEG_INFINITY, |m, x| m.max(*x)) - u.iter().fold(f64::INFINITY, |m, x| m.min(*x));
    let scale = u.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if spread <= 1e-6 * scale {
        return Ok(MatchResult::Fallback { permutation: best, reason: FailureReason::TiedScores });
    }
    Ok(MatchResult::Exact(best))
}
