//! Spectral analysis of graphs and uniform hypergraphs: adjacency and
//! clique tensor radii with Collatz–Wielandt certificates, hypergraph
//! Lagrangians, Schrijver-theta SDP quantities, and witness-producing
//! checkers for the local-structure inequalities built from them.

pub mod cliques;
pub mod error;
pub mod graph;
pub mod hypergraph;
pub mod io;
pub mod scalar;
pub mod lagrangian;
pub mod linalg;
pub mod sdp;
pub mod spectra;
pub mod theorems;
pub mod theta;
pub mod tensor;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Default working precision for the CLI and concrete type aliases.
pub type Real = f64;

pub type SpectralCertificate = tensor::SpectralCertificate<Real>;
pub type RadiusRatio = spectra::RadiusRatio<Real>;
