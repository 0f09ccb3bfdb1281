//! Spectral radii of graphs, hypergraphs and clique tensors, and the
//! spectral radius ratios β(H) and γ_r(G).

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::cliques::{clique_hypergraph, reduced_subgraph};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::UniformHypergraph;
use crate::io::graph_to_hypergraph;
use crate::scalar::Scalar;
use crate::tensor::{ImplicitTensor, SpectralCertificate};

pub const DEFAULT_MATRIX_TOL: f64 = 1e-10;
pub const DEFAULT_TENSOR_TOL: f64 = 1e-8;
pub const DEFAULT_MAX_ITER: usize = 100_000;

/// A quotient of two certified radii with the propagated enclosure
/// `low ≤ value ≤ high`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RadiusRatio<T> {
    pub value: T,
    pub low: T,
    pub high: T,
    pub numerator: SpectralCertificate<T>,
    pub denominator: SpectralCertificate<T>,
}

impl<T: Scalar> RadiusRatio<T> {
    fn new(numerator: SpectralCertificate<T>, denominator: SpectralCertificate<T>) -> Self {
        let value = numerator.rho / denominator.rho;
        let high = if denominator.cw_low > T::zero() {
            numerator.cw_high / denominator.cw_low
        } else {
            T::infinity()
        };
        let low = if denominator.cw_high > T::zero() {
            numerator.cw_low / denominator.cw_high
        } else {
            T::zero()
        };
        RadiusRatio {
            value,
            low,
            high,
            numerator,
            denominator,
        }
    }
}

/// Perron root of the adjacency matrix; maximum over components for
/// disconnected graphs.
pub fn matrix_spectral_radius<T: Scalar>(g: &Graph, tol: T) -> SpectralCertificate<T> {
    ImplicitTensor::adjacency(&graph_to_hypergraph(g)).spectral_radius(tol, DEFAULT_MAX_ITER)
}

/// ρ(H): spectral radius of the adjacency tensor of H.
pub fn hypergraph_spectral_radius<T: Scalar>(
    h: &UniformHypergraph,
    tol: T,
) -> SpectralCertificate<T> {
    ImplicitTensor::adjacency(h).spectral_radius(tol, DEFAULT_MAX_ITER)
}

/// ρ_r(G): spectral radius of the r-clique tensor of G.
pub fn clique_spectral_radius<T: Scalar>(
    g: &Graph,
    r: usize,
    tol: T,
) -> Result<SpectralCertificate<T>> {
    Ok(hypergraph_spectral_radius(&clique_hypergraph(g, r)?, tol))
}

/// β(H) = ρ(H) / ρ(H^(2)). The matrix side is solved at least to the
/// matrix default tolerance so the ratio enclosure stays tight.
pub fn beta<T: Scalar>(h: &UniformHypergraph, tol: T) -> Result<RadiusRatio<T>> {
    if h.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let numerator = hypergraph_spectral_radius(h, tol);
    let denominator = matrix_spectral_radius(&h.two_section(), matrix_tol(tol));
    Ok(RadiusRatio::new(numerator, denominator))
}

/// γ_r(G) = ρ_r(G) / ρ₂(H) with H the subgraph of edges lying in an
/// r-clique; equals β of the r-clique hypergraph.
pub fn gamma<T: Scalar>(g: &Graph, r: usize, tol: T) -> Result<RadiusRatio<T>> {
    let hr = clique_hypergraph(g, r)?;
    if hr.edge_count() == 0 {
        return Err(Error::NoCliques(r));
    }
    let numerator = hypergraph_spectral_radius(&hr, tol);
    let denominator = matrix_spectral_radius(&reduced_subgraph(g, r)?, matrix_tol(tol));
    Ok(RadiusRatio::new(numerator, denominator))
}

fn matrix_tol<T: Scalar>(tol: T) -> T {
    tol.min(T::from_f64(DEFAULT_MATRIX_TOL).expect("constant"))
}

/// Exact rational sandwich r|E(H)|/n ≤ ρ(H) ≤ Δ(H).
pub fn degree_bounds(h: &UniformHypergraph) -> Result<(Rational64, Rational64)> {
    if h.vertex_count() == 0 {
        return Err(Error::InvalidParameter(
            "degree bounds need at least one vertex".into(),
        ));
    }
    let lower = Rational64::new(
        (h.rank() * h.edge_count()) as i64,
        h.vertex_count() as i64,
    );
    let upper = Rational64::from_integer(h.max_degree() as i64);
    Ok((lower, upper))
}
