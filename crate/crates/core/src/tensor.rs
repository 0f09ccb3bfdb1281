//! Implicit nonnegative tensors and their spectral radii.
//!
//! A tensor of order m is stored by its support: sorted m-sets of distinct
//! indices, one weight per slot. The contribution of a set S to component
//! `S[k]` of `A x^{m-1}` is `slot_weights[k] · Π_{j ∈ S, j ≠ S[k]} x_j`. For
//! an adjacency tensor every slot weight is 1, which corresponds to the
//! dense entry 1/(m−1)! replicated over the index permutations of each
//! edge; the permutation count and the factorial cancel in the apply.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::UniformHypergraph;
use crate::scalar::Scalar;

/// One support set with per-slot weights (all nonnegative).
#[derive(Debug, Clone)]
pub struct SupportSet<T> {
    pub vertices: Vec<usize>,
    pub slot_weights: Vec<T>,
}

/// Order-m dimension-n nonnegative tensor in implicit support form.
#[derive(Debug, Clone)]
pub struct ImplicitTensor<T> {
    order: usize,
    dim: usize,
    support: Vec<SupportSet<T>>,
}

/// Power-iteration output: ρ estimate with the Collatz–Wielandt bracket
/// `cw_low ≤ ρ ≤ cw_high` (min/max of `(A x^{m-1})_i / x_i^{m-1}` over the
/// final strictly positive iterate, a valid sandwich for any nonnegative
/// tensor), and the eigenvector normalized so that Σ x_i^m = 1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralCertificate<T> {
    pub rho: T,
    pub cw_low: T,
    pub cw_high: T,
    pub iterations: usize,
    pub converged: bool,
    pub x: Vec<T>,
}

impl<T: Scalar> ImplicitTensor<T> {
    /// General constructor; weights must be nonnegative and every set must
    /// consist of `order` strictly increasing indices below `dim`.
    pub fn new(order: usize, dim: usize, support: Vec<SupportSet<T>>) -> Result<Self> {
        if order < 2 {
            return Err(Error::RankTooSmall { min: 2, got: order });
        }
        for set in &support {
            if set.vertices.len() != order || set.slot_weights.len() != order {
                return Err(Error::MalformedEdge(set.vertices.clone(), order));
            }
            if !set.vertices.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::MalformedEdge(set.vertices.clone(), order));
            }
            if *set.vertices.last().expect("order >= 2") >= dim {
                return Err(Error::VertexOutOfRange(*set.vertices.last().unwrap(), dim));
            }
            if set.slot_weights.iter().any(|w| *w < T::zero()) {
                return Err(Error::InvalidParameter(
                    "tensor weights must be nonnegative".into(),
                ));
            }
        }
        Ok(ImplicitTensor { order, dim, support })
    }

    /// Symmetric tensor: one weight per set, replicated across slots.
    pub fn symmetric(order: usize, dim: usize, sets: Vec<(Vec<usize>, T)>) -> Result<Self> {
        let support = sets
            .into_iter()
            .map(|(vertices, w)| {
                let slots = vertices.len();
                SupportSet {
                    vertices,
                    slot_weights: vec![w; slots],
                }
            })
            .collect();
        Self::new(order, dim, support)
    }

    /// Adjacency tensor of an r-uniform hypergraph (unit weight per edge).
    pub fn adjacency(h: &UniformHypergraph) -> Self {
        let sets = h.edges().map(|e| (e.clone(), T::one())).collect();
        Self::symmetric(h.rank(), h.vertex_count(), sets)
            .expect("hypergraph edges are valid support sets")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn support(&self) -> &[SupportSet<T>] {
        &self.support
    }

    /// `A x^{m-1}`.
    pub fn apply(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        let mut out = vec![T::zero(); self.dim];
        for set in &self.support {
            for (k, &i) in set.vertices.iter().enumerate() {
                let w = set.slot_weights[k];
                if w == T::zero() {
                    continue;
                }
                let mut prod = w;
                for (l, &j) in set.vertices.iter().enumerate() {
                    if l != k {
                        prod *= x[j];
                    }
                }
                out[i] += prod;
            }
        }
        Ok(out)
    }

    /// The homogeneous form `A x^m = xᵀ (A x^{m-1})`.
    pub fn total_form(&self, x: &[T]) -> Result<T> {
        let ax = self.apply(x)?;
        Ok(ax.iter().zip(x.iter()).map(|(&a, &b)| a * b).sum())
    }

    /// Σ of slot weights at `i` over all support sets: row sum of the apply,
    /// an upper bound for ρ at the all-ones vector.
    pub fn weighted_degree(&self, i: usize) -> T {
        let mut d = T::zero();
        for set in &self.support {
            for (k, &v) in set.vertices.iter().enumerate() {
                if v == i {
                    d += set.slot_weights[k];
                }
            }
        }
        d
    }

    /// Spectral radius by shifted power iteration.
    ///
    /// The support is split into weakly irreducible blocks (strongly
    /// connected components of the representation digraph, refined until
    /// every kept set lies inside one block); ρ is the maximum over blocks,
    /// and the certificate bracket combines the per-block brackets. Indices
    /// outside every block contribute eigenvalue 0.
    pub fn spectral_radius(&self, tol: T, max_iter: usize) -> SpectralCertificate<T> {
        let blocks = self.irreducible_blocks();
        let mut best: Option<BlockOutcome<T>> = None;
        let mut cw_low = T::zero();
        let mut cw_high = T::zero();
        let mut iterations = 0;
        let mut converged = true;
        for (vertices, sets) in &blocks {
            let outcome = power_iterate_block(self, vertices, sets, tol, max_iter);
            iterations += outcome.iterations;
            converged &= outcome.converged;
            cw_low = cw_low.max(outcome.cw_low);
            cw_high = cw_high.max(outcome.cw_high);
            let better = match &best {
                None => true,
                Some(b) => outcome.rho > b.rho,
            };
            if better {
                best = Some(outcome);
            }
        }
        match best {
            None => SpectralCertificate {
                rho: T::zero(),
                cw_low: T::zero(),
                cw_high: T::zero(),
                iterations: 0,
                converged: true,
                x: uniform_m_normalized(self.dim, self.order),
            },
            Some(b) => {
                let mut x = vec![T::zero(); self.dim];
                for (local, &global) in b.vertices.iter().enumerate() {
                    x[global] = b.x[local];
                }
                normalize_m(&mut x, self.order);
                SpectralCertificate {
                    rho: b.rho,
                    cw_low,
                    cw_high,
                    iterations,
                    converged,
                    x,
                }
            }
        }
    }

    /// Strongly connected blocks of the representation digraph, keeping only
    /// sets fully inside one block and refining until stable.
    fn irreducible_blocks(&self) -> Vec<(Vec<usize>, Vec<SupportSet<T>>)> {
        let mut alive: Vec<SupportSet<T>> = self
            .support
            .iter()
            .filter(|s| s.slot_weights.iter().any(|w| *w > T::zero()))
            .cloned()
            .collect();
        loop {
            // arcs i -> j whenever some alive set gives row i a term with x_j
            let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.dim];
            for set in &alive {
                for (k, &i) in set.vertices.iter().enumerate() {
                    if set.slot_weights[k] > T::zero() {
                        for &j in &set.vertices {
                            if j != i {
                                adj[i].push(j);
                            }
                        }
                    }
                }
            }
            let comp = tarjan_scc(&adj);
            let before = alive.len();
            alive.retain(|set| {
                let c = comp[set.vertices[0]];
                set.vertices.iter().all(|&v| comp[v] == c)
            });
            if alive.len() == before {
                let mut blocks: std::collections::BTreeMap<usize, (Vec<usize>, Vec<SupportSet<T>>)> =
                    std::collections::BTreeMap::new();
                for set in &alive {
                    let c = comp[set.vertices[0]];
                    blocks.entry(c).or_default().1.push(set.clone());
                }
                for (c, entry) in blocks.iter_mut() {
                    entry.0 = (0..self.dim).filter(|&v| comp[v] == *c).collect();
                }
                return blocks.into_values().collect();
            }
        }
    }
}

struct BlockOutcome<T> {
    vertices: Vec<usize>,
    rho: T,
    cw_low: T,
    cw_high: T,
    iterations: usize,
    converged: bool,
    x: Vec<T>,
}

fn power_iterate_block<T: Scalar>(
    tensor: &ImplicitTensor<T>,
    vertices: &[usize],
    sets: &[SupportSet<T>],
    tol: T,
    max_iter: usize,
) -> BlockOutcome<T> {
    let n = vertices.len();
    let m = tensor.order();
    let mut position = vec![usize::MAX; tensor.dim()];
    for (local, &global) in vertices.iter().enumerate() {
        position[global] = local;
    }
    let local_sets: Vec<SupportSet<T>> = sets
        .iter()
        .map(|s| SupportSet {
            vertices: s.vertices.iter().map(|&v| position[v]).collect(),
            slot_weights: s.slot_weights.clone(),
        })
        .collect();
    let local = ImplicitTensor {
        order: m,
        dim: n,
        support: local_sets,
    };
    let shift = (0..n)
        .map(|i| local.weighted_degree(i))
        .fold(T::zero(), T::max);
    let exp = T::one() / T::from_count(m - 1);

    let mut x = vec![T::one(); n];
    let mut cw_low = T::zero();
    let mut cw_high = T::infinity();
    let mut ratios = vec![T::zero(); n];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter.max(1) {
        iterations += 1;
        let ax = local.apply(&x).expect("block dimensions match");
        let mut max_y = T::zero();
        for i in 0..n {
            let xim = x[i].powi(m as i32 - 1);
            ratios[i] = ax[i] / xim;
            let y = ax[i] + shift * xim;
            x[i] = y.powf(exp);
            max_y = max_y.max(x[i]);
        }
        for xi in x.iter_mut() {
            *xi /= max_y;
        }
        cw_low = ratios.iter().copied().fold(T::infinity(), T::min);
        cw_high = ratios.iter().copied().fold(T::zero(), T::max);
        if cw_high - cw_low <= tol {
            converged = true;
            break;
        }
    }
    let mut sorted = ratios.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("ratios are finite"));
    let rho = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / (T::one() + T::one())
    };
    BlockOutcome {
        vertices: vertices.to_vec(),
        rho,
        cw_low,
        cw_high,
        iterations,
        converged,
        x,
    }
}

fn uniform_m_normalized<T: Scalar>(n: usize, m: usize) -> Vec<T> {
    if n == 0 {
        return Vec::new();
    }
    let v = T::from_count(n).powf(-T::one() / T::from_count(m));
    vec![v; n]
}

fn normalize_m<T: Scalar>(x: &mut [T], m: usize) {
    let total: T = x.iter().map(|&v| v.powi(m as i32)).sum();
    if total > T::zero() {
        let scale = total.powf(-T::one() / T::from_count(m));
        for v in x.iter_mut() {
            *v *= scale;
        }
    }
}

/// Iterative Tarjan strongly connected components; returns a component id
/// per vertex.
fn tarjan_scc(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut comp = vec![usize::MAX; n];
    let mut next_index = 0;
    let mut next_comp = 0;

    // explicit DFS stack: (vertex, next child position)
    let mut work: Vec<(usize, usize)> = Vec::new();
    for start in 0..n {
        if index[start] != usize::MAX {
            continue;
        }
        work.push((start, 0));
        index[start] = next_index;
        low[start] = next_index;
        next_index += 1;
        stack.push(start);
        on_stack[start] = true;
        while let Some(&(v, child)) = work.last() {
            if child < adj[v].len() {
                let w = adj[v][child];
                work.last_mut().expect("nonempty").1 += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    work.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                work.pop();
                if let Some(&(parent, _)) = work.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    while let Some(w) = stack.pop() {
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}
