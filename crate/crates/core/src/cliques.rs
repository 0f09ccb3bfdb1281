//! Clique enumeration and the clique hypergraph construction.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::UniformHypergraph;

/// The family C_r(G) of r-cliques of a host graph, lexicographically sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueFamily {
    pub r: usize,
    pub cliques: Vec<Vec<usize>>,
}

impl CliqueFamily {
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }
}

/// All r-cliques of `g` by ordered extension: each partial clique is grown
/// only with larger vertices adjacent to every chosen one, so the output is
/// exactly C_r(G) in lexicographic order.
pub fn enumerate_cliques(g: &Graph, r: usize) -> CliqueFamily {
    let mut cliques = Vec::new();
    if r == 0 {
        return CliqueFamily { r, cliques };
    }
    let mut current = Vec::with_capacity(r);
    let candidates: Vec<usize> = (0..g.vertex_count()).collect();
    extend_cliques(g, r, &mut current, &candidates, &mut cliques);
    CliqueFamily { r, cliques }
}

fn extend_cliques(
    g: &Graph,
    r: usize,
    current: &mut Vec<usize>,
    candidates: &[usize],
    out: &mut Vec<Vec<usize>>,
) {
    if current.len() == r {
        out.push(current.clone());
        return;
    }
    // not enough candidates left to finish
    if current.len() + candidates.len() < r {
        return;
    }
    for (i, &v) in candidates.iter().enumerate() {
        let next: Vec<usize> = candidates[(i + 1)..]
            .iter()
            .copied()
            .filter(|&w| g.has_edge(v, w))
            .collect();
        current.push(v);
        extend_cliques(g, r, current, &next, out);
        current.pop();
    }
}

/// All maximal cliques via Bron–Kerbosch with a deterministic pivot
/// (largest candidate intersection, ties to the smallest vertex).
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let p: Vec<usize> = (0..g.vertex_count()).collect();
    bron_kerbosch(g, &mut Vec::new(), p, Vec::new(), &mut out);
    out.sort();
    out
}

fn bron_kerbosch(
    g: &Graph,
    r: &mut Vec<usize>,
    mut p: Vec<usize>,
    mut x: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        let mut clique = r.clone();
        clique.sort_unstable();
        out.push(clique);
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| (p.iter().filter(|&&v| g.has_edge(u, v)).count(), usize::MAX - u))
        .expect("p or x nonempty");
    let candidates: Vec<usize> = p.iter().copied().filter(|&v| !g.has_edge(pivot, v)).collect();
    for v in candidates {
        let new_p: Vec<usize> = p.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        let new_x: Vec<usize> = x.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        r.push(v);
        bron_kerbosch(g, r, new_p, new_x, out);
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}

/// ω(G): 0 on the empty vertex set, 1 on edgeless nonempty graphs.
pub fn clique_number(g: &Graph) -> usize {
    if g.vertex_count() == 0 {
        return 0;
    }
    maximal_cliques(g).iter().map(|c| c.len()).max().unwrap_or(1)
}

/// The r-uniform hypergraph H_r on V(G) whose edges are the r-cliques of G.
pub fn clique_hypergraph(g: &Graph, r: usize) -> Result<UniformHypergraph> {
    let family = enumerate_cliques(g, r);
    UniformHypergraph::with_edges(r, g.vertex_count(), &family.cliques)
}

/// Deletes every edge of `g` that lies in no r-clique. Each edge is tested
/// on its own by searching an (r−2)-clique among the common neighbors, so
/// the result does not depend on the clique-hypergraph route.
pub fn reduced_subgraph(g: &Graph, r: usize) -> Result<Graph> {
    if r < 2 {
        return Err(Error::RankTooSmall { min: 2, got: r });
    }
    let mut kept = Vec::new();
    for (u, v) in g.edges() {
        if r == 2 {
            kept.push((u, v));
            continue;
        }
        let (common, _) = g.induced_subgraph(&g.common_neighbors(u, v));
        if !enumerate_cliques(&common, r - 2).is_empty() {
            kept.push((u, v));
        }
    }
    Graph::with_edges(g.vertex_count(), &kept)
}
