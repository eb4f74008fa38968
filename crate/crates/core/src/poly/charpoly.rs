//! Characteristic polynomials via Hessenberg reduction.
//!
//! The matrix is brought to upper Hessenberg form by similarity transforms
//! (pivoted Gaussian elimination below the subdiagonal), then `det(tI - H)`
//! follows from the standard three-term-style recurrence on leading minors.
//! Every step is a field operation, so over exact rationals the result is exact.

use super::Poly;
use crate::graph::Graph;
use crate::scalar::Scalar;

pub fn charpoly<T: Scalar>(g: &Graph) -> Poly<T> {
    charpoly_of_matrix(g.matrix::<T>())
}

/// `det(tI - M)` for a square matrix; the empty matrix gives 1.
pub fn charpoly_of_matrix<T: Scalar>(mut h: Vec<Vec<T>>) -> Poly<T> {
    let n = h.len();
    hessenberg(&mut h);
    let mut p: Vec<Poly<T>> = Vec::with_capacity(n + 1);
    p.push(Poly::one());
    for m in 1..=n {
        let col = m - 1;
        let mut next = &Poly::linear(h[col][col].clone()) * &p[m - 1];
        let mut prod = T::one();
        for i in 1..m {
            prod = prod * h[col - i + 1][col - i].clone();
            if prod.is_zero() {
                break;
            }
            let c = h[col - i][col].clone() * prod.clone();
            if !c.is_zero() {
                next = &next - &p[m - 1 - i].scale(&c);
            }
        }
        p.push(next);
    }
    p.pop().expect("p holds at least the constant 1")
}

fn hessenberg<T: Scalar>(h: &mut [Vec<T>]) {
    let n = h.len();
    for k in 0..n.saturating_sub(2) {
        let pivot = match (k + 1..n).find(|&r| !h[r][k].is_zero()) {
            Some(r) => r,
            None => continue,
        };
        if pivot != k + 1 {
            h.swap(pivot, k + 1);
            for row in h.iter_mut() {
                row.swap(pivot, k + 1);
            }
        }
        let piv = h[k + 1][k].clone();
        for r in k + 2..n {
            if h[r][k].is_zero() {
                continue;
            }
            let f = h[r][k].clone() / piv.clone();
            // row_r -= f * row_{k+1}
            for c in 0..n {
                let v = h[k + 1][c].clone();
                if !v.is_zero() {
                    h[r][c] = h[r][c].clone() - f.clone() * v;
                }
            }
            // col_{k+1} += f * col_r
            for row in h.iter_mut() {
                let v = row[r].clone();
                if !v.is_zero() {
                    row[k + 1] = row[k + 1].clone() + f.clone() * v;
                }
            }
        }
    }
}
