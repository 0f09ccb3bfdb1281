//! Dense symmetric matrices: cyclic Jacobi eigendecomposition and the
//! positive-semidefinite projection used by the SDP solver.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Max asymmetry tolerated before `sym_eigen` rejects its input; anything
/// inside is silently re-symmetrized.
pub const SYMMETRY_TOL: f64 = 1e-12;

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues ascending and the matching orthonormal eigenvectors
/// (`vectors[k]` pairs with `values[k]`), satisfying
/// ‖M − Σ λ_k v_k v_kᵀ‖_max ≤ tol.
pub fn sym_eigen<T: Scalar>(matrix: &[Vec<T>], tol: T) -> Result<(Vec<T>, Vec<Vec<T>>)> {
    let n = matrix.len();
    // scale with the working precision so f32 inputs are not rejected for
    // rounding noise (100 eps ≈ 2e-14 at f64, still under the contract)
    let sym_tol = T::from_f64(SYMMETRY_TOL)
        .expect("constant")
        .max(T::epsilon() * T::from_count(100));
    let mut a = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        if matrix[i].len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: matrix[i].len(),
            });
        }
        for j in 0..n {
            let gap = (matrix[i][j] - matrix[j][i]).abs();
            if gap > sym_tol {
                return Err(Error::NotSymmetric(gap.to_f64().unwrap_or(f64::NAN)));
            }
            a[i][j] = (matrix[i][j] + matrix[j][i]) / (T::one() + T::one());
        }
    }

    let mut q = vec![vec![T::zero(); n]; n];
    for (i, row) in q.iter_mut().enumerate() {
        row[i] = T::one();
    }
    // rotations stop once every off-diagonal entry is below this
    let threshold = tol / T::from_count(n.max(1) * n.max(1));
    for _ in 0..MAX_SWEEPS {
        let mut off = T::zero();
        for p in 0..n {
            for r in (p + 1)..n {
                off = off.max(a[p][r].abs());
            }
        }
        if off <= threshold {
            break;
        }
        for p in 0..n {
            for r in (p + 1)..n {
                if a[p][r].abs() <= threshold {
                    continue;
                }
                let apq = a[p][r];
                let theta = (a[r][r] - a[p][p]) / ((T::one() + T::one()) * apq);
                let t = {
                    let magnitude = T::one() / (theta.abs() + (theta * theta + T::one()).sqrt());
                    if theta < T::zero() {
                        -magnitude
                    } else {
                        magnitude
                    }
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][r];
                    a[k][p] = c * akp - s * akq;
                    a[k][r] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[r][k];
                    a[p][k] = c * apk - s * aqk;
                    a[r][k] = s * apk + c * aqk;
                }
                for row in q.iter_mut() {
                    let qp = row[p];
                    let qq = row[r];
                    row[p] = c * qp - s * qq;
                    row[r] = s * qp + c * qq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].partial_cmp(&a[j][j]).expect("finite eigenvalues"));
    let values: Vec<T> = order.iter().map(|&i| a[i][i]).collect();
    let vectors: Vec<Vec<T>> = order
        .iter()
        .map(|&col| (0..n).map(|row| q[row][col]).collect())
        .collect();
    Ok((values, vectors))
}

/// Projection onto the PSD cone: eigenvalue clipping. Also returns the
/// smallest eigenvalue of the input.
pub fn psd_project<T: Scalar>(matrix: &[Vec<T>], eigen_tol: T) -> Result<(Vec<Vec<T>>, T)> {
    let n = matrix.len();
    let (values, vectors) = sym_eigen(matrix, eigen_tol)?;
    let min_eig = values.first().copied().unwrap_or_else(T::zero);
    let mut out = vec![vec![T::zero(); n]; n];
    for (lambda, v) in values.iter().zip(vectors.iter()) {
        if *lambda <= T::zero() {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                out[i][j] += *lambda * v[i] * v[j];
            }
        }
    }
    Ok((out, min_eig))
}

/// Smallest eigenvalue of a symmetric matrix.
pub fn min_eigenvalue<T: Scalar>(matrix: &[Vec<T>], eigen_tol: T) -> Result<T> {
    let (values, _) = sym_eigen(matrix, eigen_tol)?;
    Ok(values.first().copied().unwrap_or_else(T::zero))
}

pub fn identity<T: Scalar>(n: usize) -> Vec<Vec<T>> {
    let mut m = vec![vec![T::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = T::one();
    }
    m
}

pub fn frobenius_distance<T: Scalar>(a: &[Vec<T>], b: &[Vec<T>]) -> T {
    let mut total = T::zero();
    for (ra, rb) in a.iter().zip(b.iter()) {
        for (x, y) in ra.iter().zip(rb.iter()) {
            let d = *x - *y;
            total += d * d;
        }
    }
    total.sqrt()
}

pub fn inner_product<T: Scalar>(a: &[Vec<T>], b: &[Vec<T>]) -> T {
    a.iter()
        .zip(b.iter())
        .map(|(ra, rb)| ra.iter().zip(rb.iter()).map(|(x, y)| *x * *y).sum::<T>())
        .sum()
}
