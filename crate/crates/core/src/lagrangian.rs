//! Hypergraph Lagrangians by multi-start projected gradient ascent on the
//! standard simplex, plus closed-form clique-monomial and matching-density
//! values.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};
use serde::{Deserialize, Serialize};

use crate::cliques::{clique_number, maximal_cliques};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::UniformHypergraph;
use crate::scalar::Scalar;
use crate::tensor::ImplicitTensor;

/// Seed for the restart generator; fixed so results are reproducible.
const MASTER_SEED: u64 = 0x5eed_1a62;
const PGA_MAX_ITERS: usize = 400;
const BACKTRACK_LIMIT: usize = 40;

/// λ(H) along with the maximizing simplex point. The reported value is a
/// certified lower bound (a feasible point); global optimality is heuristic.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LagrangianResult<T> {
    pub value: T,
    pub x: Vec<T>,
    pub restarts_used: usize,
    pub support: Vec<usize>,
}

/// Euclidean projection onto the standard simplex {x ≥ 0, Σx = 1}.
pub fn simplex_project<T: Scalar>(v: &[T]) -> Vec<T> {
    let n = v.len();
    if n == 0 {
        return Vec::new();
    }
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).expect("finite entries"));
    let mut cumulative = T::zero();
    let mut tau = T::zero();
    for (j, &u) in sorted.iter().enumerate() {
        cumulative += u;
        let candidate = (cumulative - T::one()) / T::from_count(j + 1);
        if u - candidate > T::zero() {
            tau = candidate;
        } else {
            break;
        }
    }
    v.iter().map(|&vi| (vi - tau).max(T::zero())).collect()
}

/// Edge-monomial objective Σ_{e∈E} Π_{i∈e} x_i.
fn objective<T: Scalar>(h: &UniformHypergraph, x: &[T]) -> T {
    h.edges()
        .map(|e| e.iter().map(|&i| x[i]).fold(T::one(), |a, b| a * b))
        .sum()
}

/// Gradient of the objective: component i is Σ_{e∋i} Π_{j∈e∖i} x_j, which
/// is exactly the adjacency-tensor apply.
struct Ascent<'a, T> {
    h: &'a UniformHypergraph,
    tensor: ImplicitTensor<T>,
}

impl<'a, T: Scalar> Ascent<'a, T> {
    fn new(h: &'a UniformHypergraph) -> Self {
        Ascent {
            h,
            tensor: ImplicitTensor::adjacency(h),
        }
    }

    /// Projected gradient ascent with backtracking; returns the final point
    /// and value, monotone in the objective.
    fn run(&self, start: Vec<T>, tol: T) -> (Vec<T>, T) {
        let mut x = simplex_project(&start);
        let mut fx = objective(self.h, &x);
        let mut step = T::one();
        for _ in 0..PGA_MAX_ITERS {
            let grad = self.tensor.apply(&x).expect("dimension fixed");
            let mut improved = false;
            for _ in 0..BACKTRACK_LIMIT {
                let trial: Vec<T> = x
                    .iter()
                    .zip(grad.iter())
                    .map(|(&xi, &gi)| xi + step * gi)
                    .collect();
                let projected = simplex_project(&trial);
                let f_trial = objective(self.h, &projected);
                if f_trial > fx {
                    let gain = f_trial - fx;
                    x = projected;
                    fx = f_trial;
                    improved = true;
                    // grow the step back so progress is not throttled
                    step = (step + step).min(T::from_count(1024));
                    if gain <= tol {
                        return (x, fx);
                    }
                    break;
                }
                step /= T::one() + T::one();
            }
            if !improved {
                break;
            }
        }
        (x, fx)
    }
}

/// λ(H): best objective value over the uniform start, uniform points on the
/// maximal cliques of the 2-section, and `restarts` random Dirichlet starts.
pub fn lagrangian<T: Scalar>(
    h: &UniformHypergraph,
    restarts: usize,
    tol: T,
) -> LagrangianResult<T> {
    let n = h.vertex_count();
    if n == 0 {
        return LagrangianResult {
            value: T::zero(),
            x: Vec::new(),
            restarts_used: 0,
            support: Vec::new(),
        };
    }
    if h.edge_count() == 0 {
        let x = vec![T::one() / T::from_count(n); n];
        return LagrangianResult {
            value: T::zero(),
            support: (0..n).collect(),
            x,
            restarts_used: 0,
        };
    }
    let ascent = Ascent::new(h);
    let mut starts: Vec<Vec<T>> = Vec::new();
    starts.push(vec![T::one() / T::from_count(n); n]);
    // optima concentrate on pair-covered supports, which live inside
    // maximal cliques of the 2-section
    let mut cliques = maximal_cliques(&h.two_section());
    cliques.sort_by_key(|c| usize::MAX - c.len());
    for clique in cliques.into_iter().take(200) {
        if clique.len() < h.rank() {
            continue;
        }
        let mut x = vec![T::zero(); n];
        let w = T::one() / T::from_count(clique.len());
        for &v in &clique {
            x[v] = w;
        }
        starts.push(x);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(MASTER_SEED);
    for _ in 0..restarts.max(1) {
        let raw: Vec<T> = (0..n)
            .map(|_| {
                let u: f64 = rng.gen_range(1e-12..1.0);
                T::from_f64(-u.ln()).expect("finite")
            })
            .collect();
        let total: T = raw.iter().copied().sum();
        starts.push(raw.into_iter().map(|v| v / total).collect());
    }

    let restarts_used = starts.len();
    let mut best_x = starts[0].clone();
    let mut best = T::neg_infinity();
    for start in starts {
        let (x, fx) = ascent.run(start, tol);
        if fx > best {
            best = fx;
            best_x = x;
        }
    }
    finish(h, best_x, restarts_used)
}

/// Exhaustive-support λ for small hypergraphs: one ascent from the uniform
/// point of every vertex subset. Guarded to n ≤ 12.
pub fn lagrangian_support_scan<T: Scalar>(h: &UniformHypergraph, tol: T) -> Result<LagrangianResult<T>> {
    let n = h.vertex_count();
    if n > 12 {
        return Err(Error::TooLarge { n, limit: 12 });
    }
    if n == 0 || h.edge_count() == 0 {
        return Ok(lagrangian(h, 1, tol));
    }
    let ascent = Ascent::new(h);
    let mut best_x = vec![T::one() / T::from_count(n); n];
    let mut best = objective(h, &best_x);
    let mut scanned = 0usize;
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size < h.rank() {
            continue;
        }
        scanned += 1;
        let mut x = vec![T::zero(); n];
        let w = T::one() / T::from_count(size);
        for (i, xi) in x.iter_mut().enumerate() {
            if mask & (1 << i) != 0 {
                *xi = w;
            }
        }
        let (x, fx) = ascent.run(x, tol);
        if fx > best {
            best = fx;
            best_x = x;
        }
    }
    Ok(finish(h, best_x, scanned))
}

fn finish<T: Scalar>(
    h: &UniformHypergraph,
    mut x: Vec<T>,
    restarts_used: usize,
) -> LagrangianResult<T> {
    // exact renormalization so the feasibility invariant is tight
    let total: T = x.iter().copied().sum();
    if total > T::zero() {
        for v in x.iter_mut() {
            *v /= total;
        }
    }
    let value = objective(h, &x);
    let eps = T::from_f64(1e-9).expect("small constant");
    let support = (0..x.len()).filter(|&i| x[i] > eps).collect();
    LagrangianResult {
        value,
        x,
        restarts_used,
        support,
    }
}

fn big_binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..k.min(n - k) {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Maximum of the t-clique monomial sum over the simplex: the exact
/// rational C(ω, t)·ω^{−t} for 1 ≤ t ≤ ω(G).
pub fn clique_monomial_max(g: &Graph, t: usize) -> Result<BigRational> {
    let omega = clique_number(g);
    if t < 1 || t > omega {
        return Err(Error::InvalidParameter(format!(
            "t must satisfy 1 <= t <= omega(G) = {omega}, got {t}"
        )));
    }
    let omega_pow = BigInt::from(omega).pow(t as u32);
    Ok(BigRational::new(big_binomial(omega, t), omega_pow))
}

/// Lagrangian density of the 3-uniform t-matching: the exact rational
/// 3!·C(3t−1, 3)·(3t−1)^{−3}, valid for t ≥ 2.
pub fn matching_lagrangian_density(t: usize) -> Result<BigRational> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!(
            "matching density formula needs t >= 2, got {t}"
        )));
    }
    let n = 3 * t - 1;
    let num = BigInt::from(6) * big_binomial(n, 3);
    let den = BigInt::from(n).pow(3);
    Ok(BigRational::new(num, den))
}
