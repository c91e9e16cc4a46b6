//! SNAP-style edge lists: one whitespace-separated integer pair per line,
//! `#` starts a comment line.

use std::collections::{BTreeSet, HashMap};
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::permutation::Permutation;

/// A graph read from an external edge list together with the external id of
/// every dense vertex index.
#[derive(Clone, Debug)]
pub struct IngestedGraph {
    pub graph: Graph,
    /// `ids[v]` is the external id of vertex `v`; ascending.
    pub ids: Vec<u64>,
}

fn parse_pair(line: &str, lineno: usize) -> Result<Option<(u64, u64)>> {
    let trimmed = line.trim();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return Ok(None);
    }
    let mut tokens = trimmed.split_whitespace();
    let mut next = || -> Result<u64> {
        let tok = tokens.next().ok_or_else(|| Error::Parse {
            line: lineno,
            message: "expected two vertex ids".into(),
        })?;
        tok.parse::<u64>().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("not a vertex id: {tok:?}"),
        })
    };
    let u = next()?;
    let v = next()?;
    Ok(Some((u, v)))
}

/// Reads a possibly directed edge list into an undirected simple graph.
///
/// Edges with an endpoint above `max_vertex_id` are dropped, orientation is
/// collapsed, self-loops and duplicates are discarded. Vertices are the ids
/// that remain as endpoints of some edge, re-indexed densely in ascending id
/// order.
pub fn ingest_edge_list<R: BufRead>(reader: R, max_vertex_id: Option<u64>) -> Result<IngestedGraph> {
    let mut pairs = BTreeSet::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let Some((u, v)) = parse_pair(&line, idx + 1)? else {
            continue;
        };
        if u == v {
            continue;
        }
        if let Some(max) = max_vertex_id {
            if u > max || v > max {
                continue;
            }
        }
        pairs.insert((u.min(v), u.max(v)));
    }
    let ids: Vec<u64> = pairs
        .iter()
        .flat_map(|&(u, v)| [u, v])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: HashMap<u64, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
    let graph = Graph::from_edges(ids.len(), pairs.iter().map(|(u, v)| (index[u], index[v])))?;
    Ok(IngestedGraph { graph, ids })
}

const VERTEX_HEADER: &str = "# vertices:";

/// Writes `graph` as an edge list whose header records the vertex count, so
/// isolated vertices survive a round trip through [`read_graph`].
pub fn write_edge_list<W: Write>(graph: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "{VERTEX_HEADER} {}", graph.n())?;
    for (u, v) in graph.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

/// Reads an edge list over already-dense ids. The vertex count is the larger
/// of the `# vertices:` header (if present), `min_vertices`, and the largest id
/// plus one.
pub fn read_graph<R: BufRead>(reader: R, min_vertices: Option<usize>) -> Result<Graph> {
    let mut n = min_vertices.unwrap_or(0);
    let mut edges = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if let Some(rest) = line.trim().strip_prefix(VERTEX_HEADER) {
            let declared = rest.trim().parse::<usize>().map_err(|_| Error::Parse {
                line: idx + 1,
                message: "bad vertex count header".into(),
            })?;
            n = n.max(declared);
            continue;
        }
        if let Some((u, v)) = parse_pair(&line, idx + 1)? {
            let (u, v) = (u as usize, v as usize);
            n = n.max(u.max(v) + 1);
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, edges)
}

/// Permutation files hold one `i pi(i)` line per vertex.
pub fn write_permutation<W: Write>(p: &Permutation, mut out: W) -> Result<()> {
    for (i, &v) in p.as_slice().iter().enumerate() {
        writeln!(out, "{i} {v}")?;
    }
    Ok(())
}

pub fn read_permutation<R: BufRead>(reader: R) -> Result<Permutation> {
    let mut entries = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if let Some((i, v)) = parse_pair(&line, idx + 1)? {
            entries.push((i as usize, v as usize));
        }
    }
    let n = entries.len();
    let mut image = vec![usize::MAX; n];
    for (i, v) in entries {
        if i >= n || image[i] != usize::MAX {
            return Err(Error::NotAPermutation(format!("bad or repeated index {i}")));
        }
        image[i] = v;
    }
    Permutation::new(image)
}
