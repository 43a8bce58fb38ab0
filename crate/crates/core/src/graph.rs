//! Simple undirected graphs over bitset adjacency rows.

use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("bipartition has length {got}, expected {expected}")]
    BipartitionLength { expected: usize, got: usize },
    #[error("edge {0}-{1} lies inside one side of the bipartition")]
    InvalidBipartition(usize, usize),
    #[error("adjacency list is not symmetric at {0}-{1}")]
    Asymmetric(usize, usize),
}

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

/// Iterates the set bits of a bitset row.
pub(crate) fn bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(w, &word)| {
        let mut x = word;
        std::iter::from_fn(move || {
            if x == 0 {
                None
            } else {
                let b = x.trailing_zeros() as usize;
                x &= x - 1;
                Some(w * 64 + b)
            }
        })
    })
}

/// All-pairs shortest path lengths; `u16::MAX` marks unreachable pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u16>,
}

impl DistanceMatrix {
    pub const INFINITY: u16 = u16::MAX;

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn raw(&self, u: usize, v: usize) -> u16 {
        self.dist[u * self.n + v]
    }

    /// `None` when `v` is unreachable from `u`.
    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        let d = self.raw(u, v);
        (d != Self::INFINITY).then_some(d as usize)
    }

    /// Largest finite distance, or `None` if some pair is disconnected.
    pub fn max(&self) -> Option<usize> {
        let mut best = 0;
        for &d in &self.dist {
            if d == Self::INFINITY {
                return None;
            }
            best = best.max(d as usize);
        }
        Some(best)
    }

    /// Number of vertices at each distance from `u` (index = distance).
    pub fn distribution(&self, u: usize) -> Vec<usize> {
        let mut counts = Vec::new();
        for v in 0..self.n {
            if let Some(d) = self.get(u, v) {
                if counts.len() <= d {
                    counts.resize(d + 1, 0);
                }
                counts[d] += 1;
            }
        }
        counts
    }
}

pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    labels: Option<Vec<String>>,
    distances: OnceLock<DistanceMatrix>,
}

impl Clone for Graph {
    fn clone(&self) -> Self {
        Graph {
            n: self.n,
            words: self.words,
            adj: self.adj.clone(),
            labels: self.labels.clone(),
            distances: self.distances.clone(),
        }
    }
}

/// Equality ignores labels.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edges()).finish()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        Graph { n, words, adj: vec![0; n * words], labels: None, distances: OnceLock::new() }
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Adds `{u, v}` for every `u < v` with `adjacent(u, v)`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    /// Builds from adjacency lists, rejecting asymmetric input.
    pub fn from_adjacency_lists(adj: &[Vec<usize>]) -> Result<Self, GraphError> {
        let n = adj.len();
        let mut edges = Vec::new();
        for (u, row) in adj.iter().enumerate() {
            for &v in row {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
                if !adj[v].contains(&u) {
                    return Err(GraphError::Asymmetric(u, v));
                }
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, edges)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::LabelCount { expected: self.n, got: labels.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.row(v))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Common valency, if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = if self.n == 0 { 0 } else { self.degree(0) };
        (0..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v))).collect()
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|v| self.neighbors(v).collect()).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    /// The graph with vertex `v` renamed `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v]);
        }
        if let Some(l) = &self.labels {
            let mut nl = vec![String::new(); self.n];
            for (v, name) in l.iter().enumerate() {
                nl[perm[v]] = name.clone();
            }
            g.labels = Some(nl);
        }
        g
    }

    /// Breadth-first distances from `source`, by frontier bitsets.
    pub fn bfs(&self, source: usize) -> Vec<u16> {
        let mut dist = vec![DistanceMatrix::INFINITY; self.n];
        let mut visited = vec![0u64; self.words];
        let mut frontier = vec![0u64; self.words];
        visited[source / 64] |= 1 << (source % 64);
        frontier[source / 64] |= 1 << (source % 64);
        dist[source] = 0;
        let mut level = 0u16;
        loop {
            let mut next = vec![0u64; self.words];
            for v in bits(&frontier) {
                for (nw, &a) in next.iter_mut().zip(self.row(v)) {
                    *nw |= a;
                }
            }
            for (nw, &vw) in next.iter_mut().zip(&visited) {
                *nw &= !vw;
            }
            if next.iter().all(|&w| w == 0) {
                break;
            }
            level += 1;
            for v in bits(&next) {
                dist[v] = level;
            }
            for (vw, &nw) in visited.iter_mut().zip(&next) {
                *vw |= nw;
            }
            frontier = next;
        }
        dist
    }

    /// All-pairs distances, computed once and cached.
    pub fn distances(&self) -> &DistanceMatrix {
        self.distances.get_or_init(|| {
            let mut dist = Vec::with_capacity(self.n * self.n);
            for u in 0..self.n {
                dist.extend(self.bfs(u));
            }
            DistanceMatrix { n: self.n, dist }
        })
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.bfs(0).iter().all(|&d| d != DistanceMatrix::INFINITY)
    }

    /// `None` for disconnected graphs (infinite diameter).
    pub fn diameter(&self) -> Option<usize> {
        self.distances().max()
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for root in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[u] + 1 >= b {
                        break;
                    }
                }
                for w in self.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Side assignment of a proper 2-colouring, if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for start in 0..self.n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].expect("queued vertices are coloured");
                for w in self.neighbors(u) {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.expect("all coloured")).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::from_fn(self.n, |u, v| !self.has_edge(u, v));
        g.labels = self.labels.clone();
        g
    }

    /// Toggles every pair that crosses the bipartition `side`.
    pub fn bipartite_complement(&self, side: &[bool]) -> Result<Graph, GraphError> {
        if side.len() != self.n {
            return Err(GraphError::BipartitionLength { expected: self.n, got: side.len() });
        }
        if let Some(&(u, v)) = self.edges().iter().find(|&&(u, v)| side[u] == side[v]) {
            return Err(GraphError::InvalidBipartition(u, v));
        }
        let mut g = Graph::from_fn(self.n, |u, v| side[u] != side[v] && !self.has_edge(u, v));
        g.labels = self.labels.clone();
        Ok(g)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            adj: self.adjacency_lists(),
            labels: (0..self.n).map(|v| self.label(v)).collect(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Graph, GraphError> {
        if json.adj.len() != json.n {
            return Err(GraphError::LabelCount { expected: json.n, got: json.adj.len() });
        }
        let g = Graph::from_adjacency_lists(&json.adj)?;
        if json.labels.is_empty() {
            Ok(g)
        } else {
            g.with_labels(json.labels.clone())
        }
    }
}

/// JSON adjacency-list interchange form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub adj: Vec<Vec<usize>>,
    #[serde(default)]
    pub labels: Vec<String>,
}

/// Small named graphs used across tests and examples.
pub mod small {
    use super::Graph;

    pub fn complete(n: usize) -> Graph {
        Graph::from_fn(n, |_, _| true)
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::from_fn(n, |u, v| v == u + 1 || (u == 0 && v == n - 1 && n > 2))
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_fn(n, |u, v| v == u + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::small::*;
    use super::*;

    fn k_mm(m: usize) -> Graph {
        Graph::from_fn(2 * m, |u, v| (u < m) != (v < m))
    }

    fn k42() -> Graph {
        Graph::from_fn(8, |u, v| u / 2 != v / 2)
    }

    #[test]
    fn distances_complete_and_cycle() {
        let k4 = complete(4);
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(k4.distances().get(u, v), Some(usize::from(u != v)));
            }
        }
        assert_eq!(cycle(6).distances().get(0, 3), Some(3));
    }

    #[test]
    fn antipodal_pairs_in_k42() {
        let g = k42();
        for u in 0..8 {
            let far: Vec<usize> = (0..8).filter(|&v| g.distances().get(u, v) == Some(2)).collect();
            assert_eq!(far, vec![u ^ 1]);
        }
        assert_eq!(g.diameter(), Some(2));
        assert_eq!(g.girth(), Some(3));
    }

    #[test]
    fn girth_values() {
        assert_eq!(k_mm(4).girth(), Some(4));
        assert_eq!(path(5).girth(), None);
        assert_eq!(cycle(7).girth(), Some(7));
        assert_eq!(complete(2).diameter(), Some(1));
    }

    #[test]
    fn disconnected_diameter_is_infinite() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.diameter(), None);
        assert!(!g.is_connected());
        assert_eq!(g.distances().get(0, 2), None);
    }

    #[test]
    fn bipartition_detection() {
        assert!(cycle(6).is_bipartite());
        assert!(!cycle(5).is_bipartite());
        let side = k_mm(3).bipartition().unwrap();
        assert_eq!(side.iter().filter(|&&s| s).count(), 3);
    }

    #[test]
    fn complements() {
        let g = cycle(7);
        assert_eq!(g.complement().complement(), g);
        let m = 5;
        let kmm_minus = Graph::from_fn(2 * m, |u, v| (u < m) != (v < m) && u % m != v % m);
        let side: Vec<bool> = (0..2 * m).map(|v| v >= m).collect();
        let matching = kmm_minus.bipartite_complement(&side).unwrap();
        assert_eq!(matching.edge_count(), m);
        assert!((0..m).all(|i| matching.has_edge(i, i + m)));
        assert_eq!(
            cycle(5).bipartite_complement(&[false, true, false, true, false]),
            Err(GraphError::InvalidBipartition(0, 4))
        );
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(3, [(0, 0)]), Err(GraphError::Loop(0)));
        assert_eq!(Graph::from_edges(3, [(0, 3)]), Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 }));
        assert_eq!(Graph::from_adjacency_lists(&[vec![1], vec![]]), Err(GraphError::Asymmetric(0, 1)));
    }

    #[test]
    fn json_round_trip() {
        let g = cycle(5).with_labels((0..5).map(|i| format!("v{i}")).collect()).unwrap();
        let text = serde_json::to_string(&g.to_json()).unwrap();
        assert!(text.starts_with(r#"{"n":5,"adj":[[1,4],"#));
        let back = Graph::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.label(3), "v3");
    }

    #[test]
    fn large_graph_bitsets() {
        let g = cycle(150);
        assert_eq!(g.diameter(), Some(75));
        assert_eq!(g.girth(), Some(150));
        assert_eq!(g.regular_degree(), Some(2));
    }
}
