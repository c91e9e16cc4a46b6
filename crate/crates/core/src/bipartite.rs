//! Bipartite graphs with bitset rows and maximum-cardinality matching.

use std::collections::VecDeque;

/// Bipartite graph between `left` and `right` vertex sets, one bitset of
/// right neighbors per left vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize) -> Self {
        let words = right.div_ceil(64);
        Self { left, right, words, bits: vec![0; left * words] }
    }

    pub fn complete(left: usize, right: usize) -> Self {
        Self::from_fn(left, right, |_, _| true)
    }

    pub fn from_fn<F: FnMut(usize, usize) -> bool>(left: usize, right: usize, mut f: F) -> Self {
        let mut g = Self::new(left, right);
        for u in 0..left {
            for v in 0..right {
                if f(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    /// Panics when `u` or `v` is out of range.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.left && v < self.right, "edge ({u}, {v}) outside {}x{}", self.left, self.right);
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn num_edges(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.bits[u * self.words..(u + 1) * self.words];
        row.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                (rest != 0).then(|| {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    w * 64 + b
                })
            })
        })
    }
}

/// A set of disjoint left-right pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    mate_left: Vec<Option<usize>>,
    mate_right: Vec<Option<usize>>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.mate_left.iter().flatten().count()
    }

    pub fn left_mate(&self, u: usize) -> Option<usize> {
        self.mate_left[u]
    }

    pub fn right_mate(&self, v: usize) -> Option<usize> {
        self.mate_right[v]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mate_left.iter().enumerate().filter_map(|(u, m)| m.map(|v| (u, v)))
    }
}

const INF: usize = usize::MAX;

/// Maximum-cardinality matching by Hopcroft-Karp in `O(E sqrt(V))`.
pub fn hopcroft_karp(g: &BipartiteGraph) -> Matching {
    let mut hk = HopcroftKarp {
        g,
        mate_left: vec![None; g.left],
        mate_right: vec![None; g.right],
        dist: vec![INF; g.left],
        adj: (0..g.left).map(|u| g.neighbors(u).collect()).collect(),
        cursor: vec![0; g.left],
    };
    while hk.bfs() {
        hk.cursor.fill(0);
        for u in 0..g.left {
            if hk.mate_left[u].is_none() {
                hk.dfs(u);
            }
        }
    }
    Matching { mate_left: hk.mate_left, mate_right: hk.mate_right }
}

struct HopcroftKarp<'a> {
    g: &'a BipartiteGraph,
    mate_left: Vec<Option<usize>>,
    mate_right: Vec<Option<usize>>,
    dist: Vec<usize>,
    adj: Vec<Vec<usize>>,
    cursor: Vec<usize>,
}

impl HopcroftKarp<'_> {
    /// Layers the left vertices by alternating-path distance from the free
    /// ones; true when some augmenting path exists.
    fn bfs(&mut self) -> bool {
        let mut queue = VecDeque::new();
        for u in 0..self.g.left {
            if self.mate_left[u].is_none() {
                self.dist[u] = 0;
                queue.push_back(u);
            } else {
                self.dist[u] = INF;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                match self.mate_right[v] {
                    None => found = true,
                    Some(w) if self.dist[w] == INF => {
                        self.dist[w] = self.dist[u] + 1;
                        queue.push_back(w);
                    }
                    Some(_) => {}
                }
            }
        }
        found
    }

    fn dfs(&mut self, u: usize) -> bool {
        while self.cursor[u] < self.adj[u].len() {
            let v = self.adj[u][self.cursor[u]];
            self.cursor[u] += 1;
            let ok = match self.mate_right[v] {
                None => true,
                Some(w) => self.dist[w] == self.dist[u] + 1 && self.dfs(w),
            };
            if ok {
                self.mate_left[u] = Some(v);
                self.mate_right[v] = Some(u);
                return true;
            }
        }
        self.dist[u] = INF;
        false
    }
}
