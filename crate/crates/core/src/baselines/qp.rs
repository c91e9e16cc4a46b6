use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{check_size, Error, Result};
use crate::models::SymMatrix;
use crate::outcome::{FailureReason, MatchResult};
use crate::refine::linear_assignment;
use crate::score::{Orientation, ScoreMatrix};

/// How the ADMM step on the quadratic term is solved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XUpdate {
    /// Closed form in the eigenbases of `A` and `B`.
    Eigen,
    /// Conjugate gradient using products `A·X` and `X·B` only.
    ConjugateGradient { max_iters: usize },
}

/// ADMM settings. Tolerances are relative: the primal residual `‖X − Y‖`
/// is compared with `primal_tol · max(‖X‖, ‖Y‖)` and the dual residual
/// `ρ‖Y − Y_prev‖` with `dual_tol · ‖ρU‖` (both floored at 1).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QpParams {
    pub max_iters: usize,
    pub rho: f64,
    pub primal_tol: f64,
    pub dual_tol: f64,
    pub projection_iters: usize,
    pub x_update: XUpdate,
}

impl Default for QpParams {
    fn default() -> Self {
        Self {
            max_iters: 500,
            rho: 1.0,
            primal_tol: 1e-5,
            dual_tol: 1e-5,
            projection_iters: 200,
            x_update: XUpdate::Eigen,
        }
    }
}

impl QpParams {
    pub fn validate(&self) -> Result<()> {
        let ok = self.max_iters > 0
            && self.rho > 0.0
            && self.primal_tol > 0.0
            && self.dual_tol > 0.0
            && self.projection_iters > 0
            && !matches!(self.x_update, XUpdate::ConjugateGradient { max_iters: 0 });
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter("QP parameters must be positive".into()))
        }
    }
}

/// Row-major `n × n` matrix with unit row and column sums and nonnegative
/// entries, up to numerical tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct DoublyStochastic {
    n: usize,
    entries: Vec<f64>,
}

impl DoublyStochastic {
    pub const TOL: f64 = 1e-6;

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, k: usize) -> f64 {
        self.entries[i * self.n + k]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Largest row or column sum error and the most negative entry (as a
    /// nonnegative number).
    pub fn violation(&self) -> (f64, f64) {
        let n = self.n;
        let mut sums = 0.0f64;
        for i in 0..n {
            let row: f64 = self.entries[i * n..(i + 1) * n].iter().sum();
            let col: f64 = (0..n).map(|r| self.entries[r * n + i]).sum();
            sums = sums.max((row - 1.0).abs()).max((col - 1.0).abs());
        }
        let neg = self.entries.iter().fold(0.0f64, |m, &v| m.max(-v));
        (sums, neg)
    }

    pub fn is_feasible(&self, tol: f64) -> bool {
        let (s, neg) = self.violation();
        s <= tol && neg <= tol
    }
}

/// Projection onto `{X : X1 = 1, Xᵀ1 = 1}` in place.
fn project_affine(x: &mut [f64], n: usize) {
    let nf = n as f64;
    let mut row = vec![0.0; n];
    let mut col = vec![0.0; n];
    for i in 0..n {
        for k in 0..n {
            let v = x[i * n + k];
            row[i] += v;
            col[k] += v;
        }
    }
    let total: f64 = row.iter().sum();
    let shift = (nf - total) / (nf * nf);
    for i in 0..n {
        let r = (1.0 - row[i]) / nf;
        for k in 0..n {
            x[i * n + k] += r + (1.0 - col[k]) / nf - shift;
        }
    }
}

pub fn project_doubly_stochastic(m: &[f64], n: usize) -> Result<DoublyStochastic> {
    project_doubly_stochastic_with(m, n, 10_000)
}

/// Euclidean projection onto the Birkhoff polytope by Dykstra's algorithm,
/// alternating the affine projection with clamping at zero. Stops after
/// `max_iters` rounds or once an update moves no entry by more than 1e-8.
/// The affine set needs no correction term, so only the orthant keeps one.
pub fn project_doubly_stochastic_with(m: &[f64], n: usize, max_iters: usize) -> Result<DoublyStochastic> {
    check_size(n * n, m.len())?;
    let mut x = m.to_vec();
    let mut y = vec![0.0; n * n];
    let mut corr = vec![0.0; n * n];
    for _ in 0..max_iters {
        y.copy_from_slice(&x);
        project_affine(&mut y, n);
        let mut change = 0.0f64;
        for ((xv, &yv), c) in x.iter_mut().zip(&y).zip(corr.iter_mut()) {
            let next = (yv + *c).max(0.0);
            *c = yv + *c - next;
            change = change.max((next - *xv).abs());
            *xv = next;
        }
        if change <= 1e-8 {
            break;
        }
    }
    Ok(DoublyStochastic { n, entries: x })
}

fn to_dmatrix(m: &SymMatrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.n(), m.n(), m.as_slice())
}

/// `‖A X − X B‖²_F` for row-major `X`.
pub fn qp_objective(a: &SymMatrix, b: &SymMatrix, x: &[f64]) -> Result<f64> {
    let n = a.n();
    check_size(n, b.n())?;
    check_size(n * n, x.len())?;
    let xm = DMatrix::from_row_slice(n, n, x);
    Ok((to_dmatrix(a) * &xm - &xm * to_dmatrix(b)).norm_squared())
}

#[derive(Clone, Debug)]
pub struct QpSolution {
    pub x: DoublyStochastic,
    pub objective: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Solves the quadratic step `min ‖AX − XB‖² + (ρ/2)‖X − V‖²`.
enum Solver {
    Eigen { p: DMatrix<f64>, q: DMatrix<f64>, gaps: DMatrix<f64> },
    Cg { a: DMatrix<f64>, b: DMatrix<f64>, max_iters: usize },
}

impl Solver {
    fn new(a: &SymMatrix, b: &SymMatrix, update: XUpdate) -> Self {
        match update {
            XUpdate::Eigen => {
                let ea = SymmetricEigen::new(to_dmatrix(a));
                let eb = SymmetricEigen::new(to_dmatrix(b));
                let n = a.n();
                let gaps = DMatrix::from_fn(n, n, |i, k| 2.0 * (ea.eigenvalues[i] - eb.eigenvalues[k]).powi(2));
                Solver::Eigen { p: ea.eigenvectors, q: eb.eigenvectors, gaps }
            }
            XUpdate::ConjugateGradient { max_iters } => Solver::Cg { a: to_dmatrix(a), b: to_dmatrix(b), max_iters },
        }
    }

    fn solve(&self, v: &DMatrix<f64>, warm: &DMatrix<f64>, rho: f64) -> DMatrix<f64> {
        match self {
            Solver::Eigen { p, q, gaps } => {
                // Stationarity 2(A²X − 2AXB + XB²) + ρX = ρV is diagonal in the
                // eigenbases: (2(λ_i − μ_k)² + ρ) X̃_ik = ρ Ṽ_ik.
                let mut t = p.transpose() * v * q;
                t.zip_apply(gaps, |x, g| *x *= rho / (rho + g));
                p * t * q.transpose()
            }
            Solver::Cg { a, b, max_iters } => {
                let op = |x: &DMatrix<f64>| {
                    let r = a * x - x * b;
                    (a * &r - &r * b) * 2.0 + x * rho
                };
                let rhs = v * rho;
                let mut x = warm.clone();
                let mut r = &rhs - op(&x);
                let mut d = r.clone();
                let mut rr = r.norm_squared();
                let stop = 1e-20f64.max(1e-24 * rhs.norm_squared());
                for _ in 0..*max_iters {
                    if rr <= stop {
                        break;
                    }
                    let ad = op(&d);
                    let step = rr / d.dot(&ad);
                    x += &d * step;
                    r -= &ad * step;
                    let next = r.norm_squared();
                    d = &r + &d * (next / rr);
                    rr = next;
                }
                x
            }
        }
    }
}

/// ADMM on `min ‖AX − XB‖²_F` over doubly stochastic `X`, split as `X = Y`
/// with `Y` projected onto the Birkhoff polytope. The penalty adapts by a
/// factor of 2 whenever one residual exceeds the other tenfold. Returns the
/// final `Y`, projected once more to full precision.
pub fn solve_qp_relaxation(a: &SymMatrix, b: &SymMatrix, params: &QpParams) -> Result<QpSolution> {
    let n = a.n();
    check_size(n, b.n())?;
    params.validate()?;
    let solver = Solver::new(a, b, params.x_update);
    let mut rho = params.rho;
    let mut y = DMatrix::from_element(n, n, 1.0 / n as f64);
    let mut x = y.clone();
    let mut u = DMatrix::zeros(n, n);
    let mut converged = false;
    let mut iterations = 0;
    for it in 1..=params.max_iters {
        iterations = it;
        x = solver.solve(&(&y - &u), &x, rho);
        let target = &x + &u;
        // nalgebra is column-major; the transpose's buffer is row-major.
        let proj = project_doubly_stochastic_with(target.transpose().as_slice(), n, params.projection_iters)?;
        let y_next = DMatrix::from_row_slice(n, n, proj.entries());
        let primal = (&x - &y_next).norm();
        let dual = rho * (&y_next - &y).norm();
        u += &x - &y_next;
        y = y_next;
        let scale_primal = x.norm().max(y.norm()).max(1.0);
        let scale_dual = (rho * u.norm()).max(1.0);
        if primal < params.primal_tol * scale_primal && dual < params.dual_tol * scale_dual {
            converged = true;
            break;
        }
        if primal > 10.0 * dual {
            rho *= 2.0;
            u /= 2.0;
        } else if dual > 10.0 * primal {
            rho /= 2.0;
            u *= 2.0;
        }
    }
    let x = project_doubly_stochastic(y.transpose().as_slice(), n)?;
    let objective = qp_objective(a, b, x.entries())?;
    Ok(QpSolution { x, objective, iterations, converged })
}

/// QP relaxation rounded to the nearest permutation, i.e. the assignment
/// maximizing `⟨Π, X̂⟩`.
pub fn match_qp(a: &SymMatrix, b: &SymMatrix, params: &QpParams) -> Result<MatchResult> {
    let sol = solve_qp_relaxation(a, b, params)?;
    let n = a.n();
    let scores = ScoreMatrix::new(n, sol.x.entries().to_vec(), Orientation::LargerIsBetter)?;
    let permutation = linear_assignment(&scores);
    let degenerate = a.as_slice().iter().chain(b.as_slice()).all(|&v| v == 0.0);
    Ok(if degenerate {
        MatchResult::Fallback { permutation, reason: FailureReason::DegenerateInput }
    } else if !sol.converged {
        MatchResult::Fallback { permutation, reason: FailureReason::NotConverged }
    } else {
        MatchResult::Exact(permutation)
    })
}
