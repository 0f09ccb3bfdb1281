//! Schrijver theta, vector and local chromatic numbers, 2-distance
//! representations, and the weighted 3-clique tensor radius μ_f.

use serde::{Deserialize, Serialize};

use crate::cliques::enumerate_cliques;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{min_eigenvalue, psd_project};
use crate::scalar::Scalar;
use crate::sdp::{DiagRule, EntryRule, SdpOptions, SeparableSdp};
use crate::tensor::{ImplicitTensor, SpectralCertificate, SupportSet};

/// Slack allowed on PSD-ness and representation constraints.
pub const PSD_TOL: f64 = 1e-7;
/// Brute-force local chromatic number is exhaustive up to this many vertices.
pub const PSI_LIMIT: usize = 10;

const EIGEN_TOL: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GramRole {
    OrthonormalRepresentation,
    SdpVariable,
    TwoDistance,
}

/// Symmetric PSD matrix of pairwise inner products.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GramMatrix<T> {
    pub entries: Vec<Vec<T>>,
    pub role: GramRole,
}

impl<T: Scalar> GramMatrix<T> {
    pub fn n(&self) -> usize {
        self.entries.len()
    }

    /// Checks the PSD invariant: smallest eigenvalue ≥ −psd_tol.
    pub fn validate_psd(&self, psd_tol: T) -> Result<()> {
        if self.n() == 0 {
            return Ok(());
        }
        let min_eig = min_eigenvalue(&self.entries, T::from_f64(EIGEN_TOL).expect("constant"))?;
        if min_eig < -psd_tol {
            return Err(Error::InvalidRepresentation(format!(
                "matrix is not positive semidefinite: min eigenvalue {min_eig}"
            )));
        }
        Ok(())
    }
}

/// Value and optimizer of a theta-type SDP.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThetaResult<T> {
    pub value: T,
    pub matrix: GramMatrix<T>,
    pub primal_residual: T,
    pub dual_bound: Option<T>,
    pub iterations: usize,
    pub converged: bool,
}

fn sdp_options<T: Scalar>(tol: T) -> SdpOptions<T> {
    SdpOptions {
        residual_tol: tol,
        max_iter: 50_000,
        eigen_tol: T::from_f64(EIGEN_TOL).expect("constant"),
    }
}

/// Schrijver theta ϑ′(G): maximize ⟨J, X⟩ over trace-one, entrywise
/// nonnegative PSD matrices vanishing on the edges of G. Satisfies
/// α(G) ≤ ϑ′(G) ≤ n.
pub fn theta_prime<T: Scalar>(g: &Graph, tol: T) -> Result<ThetaResult<T>> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(ThetaResult {
            value: T::zero(),
            matrix: GramMatrix {
                entries: Vec::new(),
                role: GramRole::SdpVariable,
            },
            primal_residual: T::zero(),
            dual_bound: None,
            iterations: 0,
            converged: true,
        });
    }
    let mut off = vec![vec![EntryRule::NonNeg; n]; n];
    for (u, v) in g.edges() {
        off[u][v] = EntryRule::Fixed(T::zero());
        off[v][u] = EntryRule::Fixed(T::zero());
    }
    let sdp = SeparableSdp {
        n,
        objective: vec![vec![T::one(); n]; n],
        off_diag: off,
        diag: DiagRule::Simplex,
    };
    let sol = sdp.solve(&sdp_options(tol))?;
    Ok(ThetaResult {
        value: sol.value,
        matrix: GramMatrix {
            entries: sol.matrix,
            role: GramRole::SdpVariable,
        },
        primal_residual: sol.primal_residual,
        dual_bound: None,
        iterations: sol.iterations,
        converged: sol.converged,
    })
}

/// Nonnegative orthonormal-representation witness for ϑ′: the optimal X
/// rescaled to unit diagonal on its support. Its largest eigenvalue matches
/// ϑ′(G) at the optimum.
pub fn theta_prime_gram_witness<T: Scalar>(g: &Graph, tol: T) -> Result<GramMatrix<T>> {
    let result = theta_prime(g, tol)?;
    let x = &result.matrix.entries;
    let n = g.vertex_count();
    let floor = T::from_f64(1e-9).expect("constant");
    let support: Vec<usize> = (0..n).filter(|&i| x[i][i] > floor).collect();
    let entries: Vec<Vec<T>> = support
        .iter()
        .map(|&i| {
            support
                .iter()
                .map(|&j| x[i][j] / (x[i][i] * x[j][j]).sqrt())
                .collect()
        })
        .collect();
    Ok(GramMatrix {
        entries,
        role: GramRole::OrthonormalRepresentation,
    })
}

/// Vector chromatic number χ_v(G) = ϑ′(Ḡ).
pub fn vector_chromatic<T: Scalar>(g: &Graph, tol: T) -> Result<ThetaResult<T>> {
    theta_prime(&g.complement(), tol)
}

/// Direct vector-coloring route to χ_v: bisection over the edge inner
/// product bound −1/(k−1), each candidate tested by alternating projections
/// between the PSD cone and the unit-diagonal box. Slower and coarser than
/// [`vector_chromatic`]; kept as an independent cross-check of Lemma-style
/// identities between the two formulations.
pub fn vector_chromatic_direct<T: Scalar>(g: &Graph, rounds: usize) -> Result<T> {
    let n = g.vertex_count();
    if g.edge_count() == 0 {
        return Ok(if n == 0 { T::zero() } else { T::one() });
    }
    let feasible = |alpha: T| -> Result<bool> {
        let mut off = vec![vec![EntryRule::Free; n]; n];
        for (u, v) in g.edges() {
            off[u][v] = EntryRule::AtMost(alpha);
            off[v][u] = EntryRule::AtMost(alpha);
        }
        let set = SeparableSdp {
            n,
            objective: vec![vec![T::zero(); n]; n],
            off_diag: off,
            diag: DiagRule::Fixed(T::one()),
        };
        let eigen_tol = T::from_f64(EIGEN_TOL).expect("constant");
        let feas_eps = T::from_f64(1e-6).expect("constant");
        let mut m = set.project_separable(&crate::linalg::identity(n));
        let mut gap = T::infinity();
        for _ in 0..rounds {
            let (projected, _) = psd_project(&m, eigen_tol)?;
            gap = set.feasibility_gap(&projected);
            if gap <= feas_eps {
                return Ok(true);
            }
            m = set.project_separable(&projected);
        }
        Ok(gap <= feas_eps)
    };
    // k = 1 − 1/α is increasing in α on [−1, 0), and feasibility is monotone
    let mut lo = -T::one();
    let mut hi = -T::one() / T::from_count(2 * n);
    if feasible(lo)? {
        return Ok(T::one() + T::one());
    }
    for _ in 0..40 {
        let mid = (lo + hi) / (T::one() + T::one());
        if feasible(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(T::one() - T::one() / hi)
}

/// Local vector chromatic number φ(G) = 1 + max_u χ_v(G_u) with the
/// maximizing vertex (smallest index on ties).
pub fn local_vector_chromatic<T: Scalar>(g: &Graph, tol: T) -> Result<(T, usize)> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::InvalidParameter(
            "local vector chromatic number needs at least one vertex".into(),
        ));
    }
    let mut best = T::neg_infinity();
    let mut best_vertex = 0;
    for u in 0..n {
        let (gu, _) = g.induced_neighborhood(u)?;
        let value = if gu.vertex_count() == 0 {
            T::zero()
        } else {
            vector_chromatic(&gu, tol)?.value
        };
        if value > best {
            best = value;
            best_vertex = u;
        }
    }
    Ok((T::one() + best, best_vertex))
}

/// Exact local chromatic number ψ(G) = 1 + min over proper colorings of the
/// largest number of colors in an open neighborhood. Exhausts partitions
/// into independent sets; limited to [`PSI_LIMIT`] vertices.
pub fn local_chromatic_bruteforce(g: &Graph) -> Result<usize> {
    let n = g.vertex_count();
    if n > PSI_LIMIT {
        return Err(Error::TooLarge { n, limit: PSI_LIMIT });
    }
    if n == 0 {
        return Ok(1);
    }
    let neighbors: Vec<Vec<usize>> = (0..n).map(|u| g.neighbors(u)).collect();
    let mut colors = vec![0usize; n];
    let mut best = usize::MAX;
    search_colorings(&neighbors, &mut colors, 0, 0, &mut best);
    Ok(1 + best)
}

fn search_colorings(
    neighbors: &[Vec<usize>],
    colors: &mut Vec<usize>,
    vertex: usize,
    used: usize,
    best: &mut usize,
) {
    let n = colors.len();
    if vertex == n {
        let stat = (0..n)
            .map(|v| {
                let mut seen = [false; PSI_LIMIT];
                let mut count = 0;
                for &u in &neighbors[v] {
                    if !seen[colors[u]] {
                        seen[colors[u]] = true;
                        count += 1;
                    }
                }
                count
            })
            .max()
            .unwrap_or(0);
        *best = (*best).min(stat);
        return;
    }
    // canonical color order: an existing color or the next fresh one
    for c in 0..=used.min(n - 1) {
        if neighbors[vertex]
            .iter()
            .all(|&u| u >= vertex || colors[u] != c)
        {
            colors[vertex] = c;
            let next_used = used.max(c + 1);
            search_colorings(neighbors, colors, vertex + 1, next_used, best);
        }
    }
}

/// How a 2-distance representation is obtained.
#[derive(Debug, Clone)]
pub enum RepMode<T> {
    /// The identity Gram matrix, valid for every graph.
    Identity,
    /// SDP heuristic maximizing the total inner-product weight over
    /// triangles, then projected to feasibility.
    Heuristic,
    /// A user-supplied Gram matrix, validated against the invariants.
    User(Vec<Vec<T>>),
}

/// Unit vectors assigned to the vertices with u_i·u_j = 0 at graph distance
/// exactly two and all inner products nonnegative.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwoDistanceRep<T> {
    pub gram: GramMatrix<T>,
}

impl<T: Scalar> TwoDistanceRep<T> {
    pub fn entries(&self) -> &Vec<Vec<T>> {
        &self.gram.entries
    }

    /// Checks every invariant against `g`, naming the first violated one.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.vertex_count();
        let m = &self.gram.entries;
        if m.len() != n || m.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidRepresentation(format!(
                "matrix must be {n}x{n} to match the graph"
            )));
        }
        let psd_tol = T::from_f64(PSD_TOL).expect("constant");
        let sym_tol = T::from_f64(1e-12)
            .expect("constant")
            .max(T::epsilon() * T::from_count(100));
        for i in 0..n {
            if (m[i][i] - T::one()).abs() > psd_tol {
                return Err(Error::InvalidRepresentation(format!(
                    "unit diagonal violated at vertex {i}: M[{i}][{i}] = {}",
                    m[i][i]
                )));
            }
            for j in 0..n {
                if (m[i][j] - m[j][i]).abs() > sym_tol {
                    return Err(Error::InvalidRepresentation(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
                if m[i][j] < -psd_tol {
                    return Err(Error::InvalidRepresentation(format!(
                        "nonnegativity violated at ({i}, {j}): {}",
                        m[i][j]
                    )));
                }
            }
        }
        let dist = g.distances();
        for i in 0..n {
            for j in (i + 1)..n {
                if dist[i][j] == 2 && m[i][j].abs() > psd_tol {
                    return Err(Error::InvalidRepresentation(format!(
                        "vertices {i} and {j} are at distance 2 but M[{i}][{j}] = {}",
                        m[i][j]
                    )));
                }
            }
        }
        self.gram.validate_psd(psd_tol)
    }
}

/// Builds a 2-distance representation of `g` in the requested mode.
pub fn two_distance_rep<T: Scalar>(g: &Graph, mode: RepMode<T>) -> Result<TwoDistanceRep<T>> {
    let n = g.vertex_count();
    let rep = match mode {
        RepMode::Identity => TwoDistanceRep {
            gram: GramMatrix {
                entries: crate::linalg::identity(n),
                role: GramRole::TwoDistance,
            },
        },
        RepMode::User(mut entries) => {
            // re-symmetrize inputs that are symmetric within tolerance;
            // genuinely asymmetric ones still fail validation below
            let rows = entries.len();
            if entries.iter().all(|row| row.len() == rows) {
                let two = T::one() + T::one();
                for i in 0..rows {
                    for j in (i + 1)..rows {
                        let avg = (entries[i][j] + entries[j][i]) / two;
                        let gap = (entries[i][j] - entries[j][i]).abs();
                        if gap <= T::from_f64(1e-12).expect("constant")
                            .max(T::epsilon() * T::from_count(100))
                        {
                            entries[i][j] = avg;
                            entries[j][i] = avg;
                        }
                    }
                }
            }
            TwoDistanceRep {
                gram: GramMatrix {
                    entries,
                    role: GramRole::TwoDistance,
                },
            }
        }
        RepMode::Heuristic => {
            let triangles = enumerate_cliques(g, 3);
            let mut weight = vec![vec![T::zero(); n]; n];
            for t in &triangles.cliques {
                for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                    weight[a][b] += T::one();
                    weight[b][a] += T::one();
                }
            }
            let dist = g.distances();
            let mut off = vec![vec![EntryRule::NonNeg; n]; n];
            for i in 0..n {
                for j in 0..n {
                    if i != j && dist[i][j] == 2 {
                        off[i][j] = EntryRule::Fixed(T::zero());
                    }
                }
            }
            let sdp = SeparableSdp {
                n,
                objective: weight,
                off_diag: off,
                diag: DiagRule::Fixed(T::one()),
            };
            let tol = T::from_f64(PSD_TOL).expect("constant");
            let sol = sdp.solve(&sdp_options(tol))?;
            // polish: the separable projection is exact, so a few PSD
            // round-trips push the eigenvalue floor above −PSD_TOL
            let mut entries = sol.matrix;
            let eigen_tol = T::from_f64(EIGEN_TOL).expect("constant");
            for _ in 0..50 {
                let min_eig = min_eigenvalue(&entries, eigen_tol)?;
                if min_eig >= -tol {
                    break;
                }
                let (projected, _) = psd_project(&entries, eigen_tol)?;
                entries = sdp.project_separable(&projected);
            }
            TwoDistanceRep {
                gram: GramMatrix {
                    entries,
                    role: GramRole::TwoDistance,
                },
            }
        }
    };
    rep.validate(g)?;
    Ok(rep)
}

/// μ_f(G): spectral radius of the weighted 3-clique tensor whose entry at
/// (i, j, k) is u_j·u_k for each triangle {i, j, k}, so the apply at i sums
/// 2·M_jk·x_j·x_k over triangles through i.
pub fn mu_f<T: Scalar>(
    g: &Graph,
    f: &TwoDistanceRep<T>,
    tol: T,
) -> Result<SpectralCertificate<T>> {
    f.validate(g)?;
    let n = g.vertex_count();
    let m = f.entries();
    let two = T::one() + T::one();
    let triangles = enumerate_cliques(g, 3);
    let sets: Vec<SupportSet<T>> = triangles
        .cliques
        .iter()
        .map(|t| SupportSet {
            vertices: t.clone(),
            slot_weights: vec![
                two * m[t[1]][t[2]].max(T::zero()),
                two * m[t[0]][t[2]].max(T::zero()),
                two * m[t[0]][t[1]].max(T::zero()),
            ],
        })
        .collect();
    Ok(ImplicitTensor::new(3, n, sets)?.spectral_radius(tol, crate::spectra::DEFAULT_MAX_ITER))
}
