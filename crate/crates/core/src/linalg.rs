//! Dense linear algebra: exact solves and a Jacobi symmetric eigensolver.

use num_traits::Float;

use crate::scalar::Scalar;

/// Solves `m x = b` by Gaussian elimination; `None` when `m` is singular.
pub fn solve_exact<T: Scalar>(mut m: Vec<Vec<T>>, mut b: Vec<T>) -> Option<Vec<T>> {
    let n = m.len();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        b.swap(col, p);
        let piv = m[col][col].clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone() / piv.clone();
            for c in col..n {
                let v = m[col][c].clone();
                m[r][c] = m[r][c].clone() - f.clone() * v;
            }
            let v = b[col].clone();
            b[r] = b[r].clone() - f * v;
        }
    }
    let mut x = vec![T::zero(); n];
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for c in r + 1..n {
            acc = acc - m[r][c].clone() * x[c].clone();
        }
        x[r] = acc / m[r][r].clone();
    }
    Some(x)
}

/// Eigenvalues in increasing order with matching orthonormal eigenvectors;
/// `vectors[k]` belongs to `values[k]`.
#[derive(Clone, Debug)]
pub struct SymmetricEigen<F> {
    pub values: Vec<F>,
    pub vectors: Vec<Vec<F>>,
}

/// Cyclic Jacobi rotations until the off-diagonal mass is negligible.
pub fn symmetric_eigen<F: Float>(a: &[Vec<F>]) -> SymmetricEigen<F> {
    let n = a.len();
    let mut m: Vec<Vec<F>> = a.to_vec();
    let mut v: Vec<Vec<F>> = (0..n)
        .map(|r| (0..n).map(|c| if r == c { F::one() } else { F::zero() }).collect())
        .collect();
    let two = F::one() + F::one();
    let scale = m
        .iter()
        .flatten()
        .fold(F::zero(), |s, &x| s + x * x)
        .sqrt()
        .max(F::min_positive_value());
    let tiny = F::epsilon() * scale;
    for _sweep in 0..100 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p][q];
                if apq.abs() <= tiny {
                    continue;
                }
                rotated = true;
                let theta = (m[q][q] - m[p][p]) / (two * apq);
                let t = if theta == F::zero() {
                    F::one()
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + F::one()).sqrt())
                };
                let c = F::one() / (t * t + F::one()).sqrt();
                let s = t * c;
                for row in m.iter_mut() {
                    let (mkp, mkq) = (row[p], row[q]);
                    row[p] = c * mkp - s * mkq;
                    row[q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[p][k], m[q][k]);
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                m[p][q] = F::zero();
                m[q][p] = F::zero();
                for row in v.iter_mut() {
                    let (vkp, vkq) = (row[p], row[q]);
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| m[x][x].partial_cmp(&m[y][y]).unwrap_or(std::cmp::Ordering::Equal));
    SymmetricEigen {
        values: order.iter().map(|&k| m[k][k]).collect(),
        vectors: order.iter().map(|&k| (0..n).map(|r| v[r][k]).collect()).collect(),
    }
}

pub fn eigenvalues<F: Float>(a: &[Vec<F>]) -> Vec<F> {
    symmetric_eigen(a).values
}

/// Spectral norm of a symmetric matrix.
pub fn op_norm_symmetric<F: Float>(a: &[Vec<F>]) -> F {
    eigenvalues(a).into_iter().fold(F::zero(), |m, x| m.max(x.abs()))
}

pub fn is_symmetric<F: Float>(a: &[Vec<F>]) -> bool {
    let n = a.len();
    (0..n).all(|r| a[r].len() == n && (0..r).all(|c| a[r][c] == a[c][r]))
}

pub fn mat_sub<F: Float>(a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(&p, &q)| p - q).collect())
        .collect()
}
