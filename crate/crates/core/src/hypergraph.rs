//! Uniform hypergraphs: edges are sorted r-sets of dense vertex indices.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// r-uniform hypergraph. Every edge is a strictly increasing vector of `r`
/// distinct vertices below `n`; the edge set is duplicate-free by
/// construction. Isolated vertices are kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformHypergraph {
    rank: usize,
    n: usize,
    edges: BTreeSet<Vec<usize>>,
}

/// Witness for a family of edges through one common vertex pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharedPairWitness {
    pub pair: (usize, usize),
    pub edges: Vec<Vec<usize>>,
}

impl UniformHypergraph {
    pub fn new(rank: usize, n: usize) -> Result<Self> {
        if rank < 2 {
            return Err(Error::RankTooSmall { min: 2, got: rank });
        }
        Ok(UniformHypergraph {
            rank,
            n,
            edges: BTreeSet::new(),
        })
    }

    pub fn with_edges(rank: usize, n: usize, edges: &[Vec<usize>]) -> Result<Self> {
        let mut h = Self::new(rank, n)?;
        for e in edges {
            h.add_edge(e)?;
        }
        Ok(h)
    }

    pub fn add_edge(&mut self, edge: &[usize]) -> Result<()> {
        let mut e: Vec<usize> = edge.to_vec();
        e.sort_unstable();
        e.dedup();
        if e.len() != self.rank || edge.len() != self.rank {
            return Err(Error::MalformedEdge(edge.to_vec(), self.rank));
        }
        if let Some(&v) = e.last() {
            if v >= self.n {
                return Err(Error::VertexOutOfRange(v, self.n));
            }
        }
        self.edges.insert(e);
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = &Vec<usize>> + '_ {
        self.edges.iter()
    }

    pub fn has_edge(&self, edge: &[usize]) -> bool {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.edges.contains(&e)
    }

    /// Number of edges containing `u`.
    pub fn degree(&self, u: usize) -> usize {
        self.edges.iter().filter(|e| e.binary_search(&u).is_ok()).count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    /// Edges containing `u`, lexicographic.
    pub fn edges_at(&self, u: usize) -> Vec<Vec<usize>> {
        self.edges
            .iter()
            .filter(|e| e.binary_search(&u).is_ok())
            .cloned()
            .collect()
    }

    /// The 2-section graph H^(2): vertices of H, with an edge for every pair
    /// of vertices that co-occur in some hyperedge.
    pub fn two_section(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for e in &self.edges {
            for i in 0..e.len() {
                for j in (i + 1)..e.len() {
                    g.add_edge(e[i], e[j]).expect("edge vertices are in range");
                }
            }
        }
        g
    }

    /// Open neighborhood of `u` in the 2-section graph, ascending.
    pub fn neighborhood(&self, u: usize) -> Vec<usize> {
        let mut nb = BTreeSet::new();
        for e in &self.edges {
            if e.binary_search(&u).is_ok() {
                for &v in e {
                    if v != u {
                        nb.insert(v);
                    }
                }
            }
        }
        nb.into_iter().collect()
    }

    /// The link H(u): the (r−1)-uniform hypergraph on N(u) with edges
    /// {e∖{u} : u ∈ e}, re-indexed to `0..|N(u)|`. Returns the map from new
    /// index to original label. Isolated `u` yields the empty hypergraph on
    /// zero vertices.
    pub fn link(&self, u: usize) -> Result<(UniformHypergraph, Vec<usize>)> {
        if self.rank < 3 {
            return Err(Error::RankTooSmall { min: 3, got: self.rank });
        }
        if u >= self.n {
            return Err(Error::VertexOutOfRange(u, self.n));
        }
        let nb = self.neighborhood(u);
        let mut position = vec![usize::MAX; self.n];
        for (new, &old) in nb.iter().enumerate() {
            position[old] = new;
        }
        let mut link = UniformHypergraph::new(self.rank - 1, nb.len())?;
        for e in &self.edges {
            if e.binary_search(&u).is_ok() {
                let reduced: Vec<usize> =
                    e.iter().filter(|&&v| v != u).map(|&v| position[v]).collect();
                link.add_edge(&reduced)?;
            }
        }
        Ok((link, nb))
    }

    /// K₁∗H: one new vertex added to every edge, raising the rank by one.
    pub fn star_join(&self) -> UniformHypergraph {
        let x = self.n;
        let mut edges = BTreeSet::new();
        for e in &self.edges {
            let mut bigger = e.clone();
            bigger.push(x);
            edges.insert(bigger);
        }
        UniformHypergraph {
            rank: self.rank + 1,
            n: self.n + 1,
            edges,
        }
    }

    /// Searches for `p` distinct edges whose intersection contains a common
    /// pair {u, v}. Pairs are scanned lexicographically; the first hit is
    /// returned with its first `p` edges.
    pub fn shared_pair_family(&self, p: usize) -> Option<SharedPairWitness> {
        self.shared_pair_family_filtered(p, |_| true)
    }

    /// Same search restricted to edges accepted by `keep`.
    pub fn shared_pair_family_filtered<F>(&self, p: usize, keep: F) -> Option<SharedPairWitness>
    where
        F: Fn(&[usize]) -> bool,
    {
        if p == 0 {
            return None;
        }
        let mut counts: std::collections::BTreeMap<(usize, usize), Vec<Vec<usize>>> =
            std::collections::BTreeMap::new();
        for e in &self.edges {
            if !keep(e) {
                continue;
            }
            for i in 0..e.len() {
                for j in (i + 1)..e.len() {
                    counts.entry((e[i], e[j])).or_default().push(e.clone());
                }
            }
        }
        counts
            .into_iter()
            .find(|(_, edges)| edges.len() >= p)
            .map(|(pair, edges)| SharedPairWitness {
                pair,
                edges: edges[..p].to_vec(),
            })
    }

    /// True when every two distinct edges meet in at most one vertex.
    pub fn is_linear(&self) -> bool {
        self.shared_pair_family(2).is_none()
    }

    /// Largest pairwise edge intersection; checks the |e ∩ f| ≤ `limit`
    /// precondition and reports the first offending pair.
    pub fn check_pairwise_intersections(&self, limit: usize) -> Result<()> {
        let edges: Vec<&Vec<usize>> = self.edges.iter().collect();
        for i in 0..edges.len() {
            for j in (i + 1)..edges.len() {
                let inter = edges[i].iter().filter(|v| edges[j].contains(v)).count();
                if inter > limit {
                    return Err(Error::IntersectionTooLarge(
                        edges[i].clone(),
                        edges[j].clone(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Uniformly random hypergraph with `m` distinct edges, deterministic
    /// for a fixed seed.
    pub fn random(n: usize, rank: usize, m: usize, seed: u64) -> Result<UniformHypergraph> {
        let mut all = r_subsets(n, rank)?;
        if m > all.len() {
            return Err(Error::TooManyEdges {
                requested: m,
                available: all.len(),
                r: rank,
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        all.shuffle(&mut rng);
        let mut h = UniformHypergraph::new(rank, n)?;
        for e in all.into_iter().take(m) {
            h.add_edge(&e)?;
        }
        Ok(h)
    }

    /// Complete r-uniform hypergraph on `n` vertices.
    pub fn complete(n: usize, rank: usize) -> Result<UniformHypergraph> {
        let mut h = UniformHypergraph::new(rank, n)?;
        for e in r_subsets(n, rank)? {
            h.add_edge(&e)?;
        }
        Ok(h)
    }

    /// The Fano plane: lines {i, i+1, i+3} mod 7.
    pub fn fano() -> UniformHypergraph {
        let mut h = UniformHypergraph::new(3, 7).expect("rank 3 is valid");
        for i in 0..7 {
            h.add_edge(&[i, (i + 1) % 7, (i + 3) % 7]).expect("line is a 3-set");
        }
        h
    }

    /// Matching M_t^r: t pairwise disjoint r-edges.
    pub fn matching(t: usize, rank: usize) -> Result<UniformHypergraph> {
        let mut h = UniformHypergraph::new(rank, t * rank)?;
        for i in 0..t {
            let e: Vec<usize> = (i * rank..(i + 1) * rank).collect();
            h.add_edge(&e)?;
        }
        Ok(h)
    }

    /// K⁺_{r+1}: each of the C(r+1, 2) edges of K_{r+1} enlarged with r−2
    /// fresh vertices, all enlargements disjoint.
    pub fn k_plus(rank: usize) -> Result<UniformHypergraph> {
        if rank < 2 {
            return Err(Error::RankTooSmall { min: 2, got: rank });
        }
        let base = rank + 1;
        let pad = rank - 2;
        let pairs: Vec<(usize, usize)> = (0..base)
            .flat_map(|u| ((u + 1)..base).map(move |v| (u, v)))
            .collect();
        let mut h = UniformHypergraph::new(rank, base + pad * pairs.len())?;
        for (k, &(u, v)) in pairs.iter().enumerate() {
            let mut e = vec![u, v];
            e.extend((0..pad).map(|j| base + k * pad + j));
            h.add_edge(&e)?;
        }
        Ok(h)
    }
}

/// All r-subsets of `0..n` in lexicographic order.
pub fn r_subsets(n: usize, r: usize) -> Result<Vec<Vec<usize>>> {
    if r < 1 {
        return Err(Error::RankTooSmall { min: 1, got: r });
    }
    let mut out = Vec::new();
    if r > n {
        return Ok(out);
    }
    let mut current: Vec<usize> = (0..r).collect();
    loop {
        out.push(current.clone());
        // advance to the next combination
        let mut i = r;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if current[i] != i + n - r {
                break;
            }
        }
        current[i] += 1;
        for j in (i + 1)..r {
            current[j] = current[j - 1] + 1;
        }
    }
}
