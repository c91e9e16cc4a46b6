//! Samplers for correlated Erdős–Rényi graph pairs and correlated Gaussian
//! Wigner matrix pairs.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{check_size, Error, Result};
use crate::graph::Graph;
use crate::permutation::Permutation;
use crate::rng::{stream_rng, Stream};

/// How the latent correspondence is drawn.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Relabel {
    #[default]
    Uniform,
    /// Keep the identity; handy when debugging matchers.
    Identity,
}

impl Relabel {
    fn draw(self, n: usize, seed: u64) -> Permutation {
        match self {
            Relabel::Uniform => Permutation::random(n, &mut stream_rng(seed, Stream::Permutation)),
            Relabel::Identity => Permutation::identity(n),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrelatedErParams {
    pub n: usize,
    /// Marginal edge probability of each graph.
    pub q: f64,
    /// Probability that a parent edge survives in each graph.
    pub s: f64,
    pub seed: u64,
    pub relabel: Relabel,
}

impl CorrelatedErParams {
    pub fn new(n: usize, q: f64, s: f64, seed: u64) -> Self {
        Self { n, q, s, seed, relabel: Relabel::Uniform }
    }

    /// Parameterized by the parent-graph edge probability `p = q / s`.
    pub fn from_parent(n: usize, p: f64, s: f64, seed: u64) -> Self {
        Self::new(n, p * s, s, seed)
    }

    pub fn with_identity(mut self) -> Self {
        self.relabel = Relabel::Identity;
        self
    }

    pub fn parent_probability(&self) -> f64 {
        self.q / self.s
    }

    pub fn validate(&self) -> Result<()> {
        let (q, s) = (self.q, self.s);
        if !(0.0..1.0).contains(&q) {
            return Err(Error::InvalidParameter(format!("q = {q} must lie in [0, 1)")));
        }
        if !(s > 0.0 && s <= 1.0) {
            return Err(Error::InvalidParameter(format!("s = {s} must lie in (0, 1]")));
        }
        if q > s {
            return Err(Error::InvalidParameter(format!("q = {q} exceeds s = {s}, parent probability above 1")));
        }
        if q * (1.0 - s) > 1.0 - q {
            return Err(Error::InvalidParameter(format!("q(1-s) > 1-q for q = {q}, s = {s}")));
        }
        Ok(())
    }
}

/// Two observed objects and the correspondence `pi_star` mapping vertex `i`
/// of `a` to vertex `pi_star(i)` of `b`.
#[derive(Clone, Debug)]
pub struct CorrelatedPair<T> {
    pub a: T,
    pub b: T,
    pub pi_star: Permutation,
}

/// Parent-graph construction: draw `G ~ G(n, q/s)`, keep each parent edge in
/// `A` and, independently, in `B'` with probability `s`, then relabel `B'` by
/// `pi_star`.
pub fn sample_correlated_er(params: &CorrelatedErParams) -> Result<CorrelatedPair<Graph>> {
    params.validate()?;
    let n = params.n;
    let p = params.parent_probability();
    let s = params.s;
    let mut rng = stream_rng(params.seed, Stream::Edges);
    let mut a_edges = Vec::new();
    let mut b_edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                if rng.random::<f64>() < s {
                    a_edges.push((u, v));
                }
                if rng.random::<f64>() < s {
                    b_edges.push((u, v));
                }
            }
        }
    }
    finish_er(n, a_edges, b_edges, params)
}

/// Conditional construction: `A ~ G(n, q)`, then each pair of `B'` is
/// Bernoulli(`s`) over an edge of `A` and Bernoulli(`q(1-s)/(1-q)`) otherwise.
/// Same law as [`sample_correlated_er`].
pub fn sample_correlated_er_conditional(params: &CorrelatedErParams) -> Result<CorrelatedPair<Graph>> {
    params.validate()?;
    let n = params.n;
    let (q, s) = (params.q, params.s);
    let off = q * (1.0 - s) / (1.0 - q);
    let mut rng = stream_rng(params.seed, Stream::Edges);
    let mut a_edges = Vec::new();
    let mut b_edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let in_a = rng.random::<f64>() < q;
            if in_a {
                a_edges.push((u, v));
            }
            let prob = if in_a { s } else { off };
            if rng.random::<f64>() < prob {
                b_edges.push((u, v));
            }
        }
    }
    finish_er(n, a_edges, b_edges, params)
}

fn finish_er(
    n: usize,
    a_edges: Vec<(usize, usize)>,
    b_edges: Vec<(usize, usize)>,
    params: &CorrelatedErParams,
) -> Result<CorrelatedPair<Graph>> {
    let pi_star = params.relabel.draw(n, params.seed);
    let a = Graph::from_edges(n, a_edges)?;
    let b = Graph::from_edges(n, b_edges.into_iter().map(|(u, v)| (pi_star.apply(u), pi_star.apply(v))))?;
    Ok(CorrelatedPair { a, b, pi_star })
}

/// Dense symmetric matrix, stored in full row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    /// Fills `(i, j)` and `(j, i)` from `f(i, j)` evaluated for `i <= j`.
    pub fn from_upper<F: FnMut(usize, usize) -> f64>(n: usize, mut f: F) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let x = f(i, j);
                m.data[i * n + j] = x;
                m.data[j * n + i] = x;
            }
        }
        m
    }

    /// Row-major data; rejects non-symmetric input.
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        check_size(n * n, data.len())?;
        let m = Self { n, data };
        if !m.is_symmetric() {
            return Err(Error::InvalidParameter("matrix is not symmetric".into()));
        }
        Ok(m)
    }

    /// 0/1 adjacency matrix of a graph.
    pub fn adjacency(g: &Graph) -> Self {
        let n = g.n();
        let mut m = Self::zeros(n);
        for (u, v) in g.edges() {
            m.data[u * n + v] = 1.0;
            m.data[v * n + u] = 1.0;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (i + 1..n).all(|j| self.data[i * n + j] == self.data[j * n + i]))
    }

    /// Entry `(p(i), p(j))` of the result is entry `(i, j)` of `self`.
    pub fn permuted(&self, p: &Permutation) -> Result<Self> {
        check_size(self.n, p.len())?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            let pi = p.apply(i);
            for j in 0..n {
                out.data[pi * n + p.apply(j)] = self.data[i * n + j];
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WignerParams {
    pub n: usize,
    /// Noise magnitude; the entry correlation is `sqrt(1 - sigma^2)`.
    pub sigma: f64,
    pub seed: u64,
    pub relabel: Relabel,
}

impl WignerParams {
    pub fn new(n: usize, sigma: f64, seed: u64) -> Self {
        Self { n, sigma, seed, relabel: Relabel::Uniform }
    }

    pub fn with_identity(mut self) -> Self {
        self.relabel = Relabel::Identity;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.sigma) {
            return Err(Error::InvalidParameter(format!("sigma = {} must lie in [0, 1)", self.sigma)));
        }
        Ok(())
    }
}

/// `A`, `Z` with iid N(0,1) upper triangles (diagonal included),
/// `B' = sqrt(1 - sigma^2) A + sigma Z`, `B = B'` relabeled by `pi_star`.
pub fn sample_correlated_wigner(params: &WignerParams) -> Result<CorrelatedPair<SymMatrix>> {
    params.validate()?;
    let n = params.n;
    let rho = (1.0 - params.sigma * params.sigma).sqrt();
    let sigma = params.sigma;
    let mut rng = stream_rng(params.seed, Stream::Entries);
    let mut a = SymMatrix::zeros(n);
    let mut b_prime = SymMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let x: f64 = rng.sample(StandardNormal);
            let z: f64 = rng.sample(StandardNormal);
            let y = rho * x + sigma * z;
            a.data[i * n + j] = x;
            a.data[j * n + i] = x;
            b_prime.data[i * n + j] = y;
            b_prime.data[j * n + i] = y;
        }
    }
    let pi_star = params.relabel.draw(n, params.seed);
    let b = b_prime.permuted(&pi_star)?;
    Ok(CorrelatedPair { a, b, pi_star })
}
