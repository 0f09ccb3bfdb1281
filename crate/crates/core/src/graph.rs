//! Simple undirected graphs on dense 0-based vertex indices.

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

use crate::error::{Error, Result};

/// Undirected graph without loops or multi-edges. Vertices are `0..n`;
/// isolated vertices are kept (they matter for vertex-count bounds).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

/// Witness for a book subgraph B_p: `p` triangles over one shared edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BookWitness {
    pub shared_edge: (usize, usize),
    pub apexes: Vec<usize>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn with_edges(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in pairs {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n {
            return Err(Error::VertexOutOfRange(u, self.n));
        }
        if v >= self.n {
            return Err(Error::VertexOutOfRange(v, self.n));
        }
        if u == v {
            return Err(Error::MalformedEdge(vec![u, v], 2));
        }
        self.edges.insert((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order, each as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors(u).len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    /// Open neighborhood N(u), ascending.
    pub fn neighbors(&self, u: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for v in 0..self.n {
            if self.has_edge(u, v) {
                out.push(v);
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    g.edges.insert((u, v));
                }
            }
        }
        g
    }

    /// Subgraph induced by `vertices` (deduplicated, ascending). Returns the
    /// graph on `0..k` together with the map from new index to original label.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let kept: Vec<usize> = vertices
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .filter(|&v| v < self.n)
            .collect();
        let mut position = vec![usize::MAX; self.n];
        for (new, &old) in kept.iter().enumerate() {
            position[old] = new;
        }
        let mut g = Graph::new(kept.len());
        for &(u, v) in &self.edges {
            if position[u] != usize::MAX && position[v] != usize::MAX {
                g.edges.insert((position[u].min(position[v]), position[u].max(position[v])));
            }
        }
        (g, kept)
    }

    /// G_u: the subgraph induced by the open neighborhood of `u`, re-indexed.
    pub fn induced_neighborhood(&self, u: usize) -> Result<(Graph, Vec<usize>)> {
        if u >= self.n {
            return Err(Error::VertexOutOfRange(u, self.n));
        }
        Ok(self.induced_subgraph(&self.neighbors(u)))
    }

    /// Common neighborhood N(u) ∩ N(v), ascending.
    pub fn common_neighbors(&self, u: usize, v: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&w| w != u && w != v && self.has_edge(u, w) && self.has_edge(v, w))
            .collect()
    }

    /// Finds an edge whose endpoints have at least `p` common neighbors,
    /// i.e. a book B_p. Scans edges lexicographically so the witness is
    /// reproducible.
    pub fn contains_book(&self, p: usize) -> Option<BookWitness> {
        if p == 0 {
            return None;
        }
        for &(u, v) in &self.edges {
            let common = self.common_neighbors(u, v);
            if common.len() >= p {
                return Some(BookWitness {
                    shared_edge: (u, v),
                    apexes: common[..p].to_vec(),
                });
            }
        }
        None
    }

    /// K₁∨G: one new vertex joined to every existing vertex.
    pub fn star_join(&self) -> Graph {
        let x = self.n;
        let mut g = Graph::new(self.n + 1);
        g.edges = self.edges.clone();
        for v in 0..self.n {
            g.edges.insert((v, x));
        }
        g
    }

    /// Pairwise graph distances by BFS; `usize::MAX` marks unreachable pairs.
    pub fn distances(&self) -> Vec<Vec<usize>> {
        let adj: Vec<Vec<usize>> = (0..self.n).map(|u| self.neighbors(u)).collect();
        let mut dist = vec![vec![usize::MAX; self.n]; self.n];
        for s in 0..self.n {
            dist[s][s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if dist[s][v] == usize::MAX {
                        dist[s][v] = dist[s][u] + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        dist
    }

    /// Erdős–Rényi graph: each pair kept with probability `prob`,
    /// deterministic for a fixed seed.
    pub fn random(n: usize, prob: f64, seed: u64) -> Result<Graph> {
        if !(0.0..=1.0).contains(&prob) {
            return Err(Error::InvalidParameter(format!(
                "edge probability must lie in [0, 1], got {prob}"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen::<f64>() < prob {
                    g.edges.insert((u, v));
                }
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.edges.insert((u, v));
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::new(n);
        if n >= 3 {
            for u in 0..n {
                g.edges.insert((u.min((u + 1) % n), u.max((u + 1) % n)));
            }
        }
        g
    }

    /// Book graph B_p: triangles {0,1,2+i} for i < p over the shared edge {0,1}.
    pub fn book(p: usize) -> Graph {
        let mut g = Graph::new(2 + p);
        if p > 0 {
            g.edges.insert((0, 1));
        }
        for i in 0..p {
            g.edges.insert((0, 2 + i));
            g.edges.insert((1, 2 + i));
        }
        g
    }

    /// Star K_{1,k} with center 0.
    pub fn star(k: usize) -> Graph {
        let mut g = Graph::new(k + 1);
        for v in 1..=k {
            g.edges.insert((0, v));
        }
        g
    }

    pub fn petersen() -> Graph {
        let mut g = Graph::new(10);
        for u in 0..5 {
            g.edges.insert((u.min((u + 1) % 5), u.max((u + 1) % 5)));
            g.edges.insert((u, u + 5));
            let w = 5 + (u + 2) % 5;
            g.edges.insert(((u + 5).min(w), (u + 5).max(w)));
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_range() {
        let mut g = Graph::new(3);
        assert!(g.add_edge(1, 1).is_err());
        assert!(g.add_edge(0, 3).is_err());
        assert!(g.add_edge(2, 0).is_ok());
        assert!(g.has_edge(0, 2));
    }

    #[test]
    fn induced_neighborhood_k4_is_triangle() {
        let g = Graph::complete(4);
        let (gu, map) = g.induced_neighborhood(0).unwrap();
        assert_eq!(gu.vertex_count(), 3);
        assert_eq!(gu.edge_count(), 3);
        assert_eq!(map, vec![1, 2, 3]);
    }

    #[test]
    fn induced_neighborhood_c5_is_edgeless() {
        let g = Graph::cycle(5);
        let (gu, _) = g.induced_neighborhood(0).unwrap();
        assert_eq!(gu.vertex_count(), 2);
        assert_eq!(gu.edge_count(), 0);
    }

    #[test]
    fn petersen_neighborhoods_are_independent() {
        let g = Graph::petersen();
        assert_eq!(g.edge_count(), 15);
        for u in 0..10 {
            let (gu, _) = g.induced_neighborhood(u).unwrap();
            assert_eq!(gu.vertex_count(), 3);
            assert_eq!(gu.edge_count(), 0, "Petersen is triangle-free");
        }
    }

    #[test]
    fn book_search() {
        assert!(Graph::complete(4).contains_book(2).is_some());
        assert!(Graph::cycle(5).contains_book(1).is_none());
        let w = Graph::complete(5).contains_book(3).unwrap();
        assert_eq!(w.apexes.len(), 3);
    }

    #[test]
    fn star_join_of_triangle_is_k4() {
        let g = Graph::complete(3).star_join();
        assert_eq!(g, Graph::complete(4));
    }

    #[test]
    fn random_graph_is_deterministic() {
        let a = Graph::random(12, 0.4, 99).unwrap();
        let b = Graph::random(12, 0.4, 99).unwrap();
        assert_eq!(a, b);
    }
}
