//! ADMM solver for semidefinite programs whose non-PSD constraints are
//! entrywise separable.
//!
//! Solves  max ⟨C, X⟩  over  X ∈ S ∩ PSD  where S fixes or clamps entries
//! one at a time (plus an optional simplex coupling over the diagonal).
//! The splitting alternates an exact projection onto S against the PSD
//! projection, with scaled dual updates and residual-balanced penalty.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lagrangian::simplex_project;
use crate::linalg::{frobenius_distance, inner_product, psd_project};
use crate::scalar::Scalar;

/// Per-entry constraint for the separable set S.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EntryRule<T> {
    /// Entry forced to exactly this value.
    Fixed(T),
    /// Entry clamped to be nonnegative.
    NonNeg,
    /// Entry clamped from above.
    AtMost(T),
    /// Entry unconstrained.
    Free,
}

/// Constraint on the diagonal as a whole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiagRule<T> {
    /// Diagonal entries form a probability simplex (trace one, nonnegative).
    Simplex,
    /// Every diagonal entry fixed to this value.
    Fixed(T),
}

/// Separable SDP instance: maximize ⟨objective, X⟩ subject to the entry
/// rules, the diagonal rule, and X ⪰ 0.
#[derive(Debug, Clone)]
pub struct SeparableSdp<T> {
    pub n: usize,
    pub objective: Vec<Vec<T>>,
    pub off_diag: Vec<Vec<EntryRule<T>>>,
    pub diag: DiagRule<T>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SdpSolution<T> {
    pub value: T,
    pub matrix: Vec<Vec<T>>,
    pub primal_residual: T,
    pub dual_residual: T,
    pub iterations: usize,
    pub converged: bool,
}

pub struct SdpOptions<T> {
    pub residual_tol: T,
    pub max_iter: usize,
    pub eigen_tol: T,
}

impl<T: Scalar> Default for SdpOptions<T> {
    fn default() -> Self {
        SdpOptions {
            residual_tol: T::from_f64(1e-7).expect("constant"),
            max_iter: 50_000,
            eigen_tol: T::from_f64(1e-11).expect("constant"),
        }
    }
}

impl<T: Scalar> SeparableSdp<T> {
    /// Exact Euclidean projection onto S: clamp or fix the off-diagonal
    /// entries, project the diagonal onto its rule.
    pub fn project_separable(&self, m: &[Vec<T>]) -> Vec<Vec<T>> {
        let n = self.n;
        let mut out = vec![vec![T::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let symmetrized = (m[i][j] + m[j][i]) / (T::one() + T::one());
                out[i][j] = match self.off_diag[i][j] {
                    EntryRule::Fixed(v) => v,
                    EntryRule::NonNeg => symmetrized.max(T::zero()),
                    EntryRule::AtMost(bound) => symmetrized.min(bound),
                    EntryRule::Free => symmetrized,
                };
            }
        }
        match self.diag {
            DiagRule::Fixed(v) => {
                for i in 0..n {
                    out[i][i] = v;
                }
            }
            DiagRule::Simplex => {
                let diag: Vec<T> = (0..n).map(|i| m[i][i]).collect();
                let projected = simplex_project(&diag);
                for i in 0..n {
                    out[i][i] = projected[i];
                }
            }
        }
        out
    }

    /// Max violation of the separable constraints by `m`.
    pub fn feasibility_gap(&self, m: &[Vec<T>]) -> T {
        frobenius_distance(m, &self.project_separable(m))
    }

    pub fn solve(&self, options: &SdpOptions<T>) -> Result<SdpSolution<T>> {
        let n = self.n;
        if n == 0 {
            return Ok(SdpSolution {
                value: T::zero(),
                matrix: Vec::new(),
                primal_residual: T::zero(),
                dual_residual: T::zero(),
                iterations: 0,
                converged: true,
            });
        }
        let two = T::one() + T::one();
        let ten = T::from_count(10);
        let mut penalty = T::one();
        let mut x;
        let mut z = self.project_separable(&vec![vec![T::zero(); n]; n]);
        let mut u = vec![vec![T::zero(); n]; n];
        let mut primal = T::infinity();
        let mut dual = T::infinity();
        let mut iterations = 0;
        let mut converged = false;
        while iterations < options.max_iter {
            iterations += 1;
            // X-step: argmax ⟨C,X⟩ − (penalty/2)‖X − Z + U‖² over S
            let shifted: Vec<Vec<T>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| z[i][j] - u[i][j] + self.objective[i][j] / penalty)
                        .collect()
                })
                .collect();
            x = self.project_separable(&shifted);
            // Z-step: PSD projection of X + U
            let target: Vec<Vec<T>> = (0..n)
                .map(|i| (0..n).map(|j| x[i][j] + u[i][j]).collect())
                .collect();
            let (z_new, _) = psd_project(&target, options.eigen_tol)?;
            dual = penalty * frobenius_distance(&z_new, &z);
            z = z_new;
            primal = T::zero();
            for i in 0..n {
                for j in 0..n {
                    let r = x[i][j] - z[i][j];
                    primal += r * r;
                    u[i][j] += r;
                }
            }
            primal = primal.sqrt();
            if primal <= options.residual_tol && dual <= options.residual_tol {
                converged = true;
                break;
            }
            // residual balancing keeps the two projections in step
            if iterations % 10 == 0 {
                if primal > ten * dual {
                    penalty *= two;
                    for row in u.iter_mut() {
                        for v in row.iter_mut() {
                            *v /= two;
                        }
                    }
                } else if dual > ten * primal {
                    penalty /= two;
                    for row in u.iter_mut() {
                        for v in row.iter_mut() {
                            *v *= two;
                        }
                    }
                }
            }
        }
        // report the S-feasible iterate
        let x_final = self.project_separable(&z);
        let value = inner_product(&self.objective, &x_final);
        Ok(SdpSolution {
            value,
            matrix: x_final,
            primal_residual: primal,
            dual_residual: dual,
            iterations,
            converged,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_ones(n: usize) -> Vec<Vec<f64>> {
        vec![vec![1.0; n]; n]
    }

    /// max ⟨J,X⟩ with trace 1, X ≥ 0 entrywise, no zero pattern: optimum is
    /// X = J/n with value n.
    #[test]
    fn dense_trace_one_optimum() {
        let n = 4;
        let sdp = SeparableSdp {
            n,
            objective: all_ones(n),
            off_diag: vec![vec![EntryRule::NonNeg; n]; n],
            diag: DiagRule::Simplex,
        };
        let sol = sdp.solve(&SdpOptions::default()).unwrap();
        assert!(sol.converged);
        assert!((sol.value - 4.0).abs() < 1e-5, "value {}", sol.value);
    }

    /// Zero pattern forcing X diagonal: optimum is a single unit diagonal
    /// entry with value 1.
    #[test]
    fn fully_constrained_pattern() {
        let n = 3;
        let mut off = vec![vec![EntryRule::NonNeg; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off[i][j] = EntryRule::Fixed(0.0);
                }
            }
        }
        let sdp = SeparableSdp {
            n,
            objective: all_ones(n),
            off_diag: off,
            diag: DiagRule::Simplex,
        };
        let sol = sdp.solve(&SdpOptions::default()).unwrap();
        assert!((sol.value - 1.0).abs() < 1e-5);
    }

    /// Unit diagonal with free off-diagonal maximizing the total sum: the
    /// all-ones matrix, value n².
    #[test]
    fn unit_diagonal_all_ones() {
        let n = 3;
        let sdp = SeparableSdp {
            n,
            objective: all_ones(n),
            off_diag: vec![vec![EntryRule::NonNeg; n]; n],
            diag: DiagRule::Fixed(1.0),
        };
        let sol = sdp.solve(&SdpOptions::default()).unwrap();
        assert!((sol.value - 9.0).abs() < 1e-5, "value {}", sol.value);
        let gap = sdp.feasibility_gap(&sol.matrix);
        assert!(gap < 1e-9);
    }
}
