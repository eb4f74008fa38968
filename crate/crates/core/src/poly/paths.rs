//! The path-sum polynomial `S = Σ_P ρ_P φ(G\P)` over simple `i`–`j` paths.

use num_traits::{One, Signed, Zero};

use super::charpoly::charpoly;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::solve_exact;
use crate::{QPoly, Rational};

pub const BRUTEFORCE_MAX_ORDER: usize = 14;

fn check_pair(g: &Graph, i: usize, j: usize) -> Result<()> {
    for v in [i, j] {
        if v >= g.order() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.order() });
        }
    }
    if i == j {
        return Err(Error::Precondition("path sums need two distinct vertices".into()));
    }
    Ok(())
}

/// `φ^{G\i} φ^{G\j} - φ^{G\{i,j}} φ^G`.
pub fn wronskian(phi_i: &QPoly, phi_j: &QPoly, phi_ij: &QPoly, phi: &QPoly) -> QPoly {
    &(phi_i * phi_j) - &(phi_ij * phi)
}

/// Exact square root of the Wronskian, computed from scratch.
pub fn path_sum_poly(g: &Graph, i: usize, j: usize) -> Result<QPoly> {
    check_pair(g, i, j)?;
    let phi: QPoly = charpoly(g);
    let phi_i: QPoly = charpoly(&g.delete_vertices(&[i])?);
    let phi_j: QPoly = charpoly(&g.delete_vertices(&[j])?);
    let phi_ij: QPoly = charpoly(&g.delete_vertices(&[i, j])?);
    path_sum_from_wronskian(g, i, j, &wronskian(&phi_i, &phi_j, &phi_ij, &phi))
}

/// Square root of a precomputed Wronskian with the sign of the true path sum.
///
/// The square root is fixed only up to sign. The path sum equals
/// `φ^G(t)·[(tI - A)^{-1}]_{ij}`, and above the spectral radius `φ^G > 0`, so
/// the sign of one resolvent entry there picks the branch.
pub fn path_sum_from_wronskian(g: &Graph, i: usize, j: usize, w: &QPoly) -> Result<QPoly> {
    let q = w
        .sqrt()
        .map_err(|_| Error::Invariant(format!("Wronskian for ({i}, {j}) is not a perfect square")))?;
    if q.is_zero() {
        return Ok(q);
    }
    let a = g.matrix::<Rational>();
    let n = a.len();
    let radius = a
        .iter()
        .map(|row| row.iter().map(|x| x.abs()).fold(Rational::zero(), |s, x| s + x))
        .fold(Rational::zero(), |m, x| if x > m { x } else { m });
    let mut t0 = radius.ceil() + Rational::one();
    loop {
        let qv = q.eval(&t0);
        if !qv.is_zero() {
            let mut m = vec![vec![Rational::zero(); n]; n];
            for r in 0..n {
                for c in 0..n {
                    m[r][c] = if r == c { &t0 - &a[r][c] } else { -a[r][c].clone() };
                }
            }
            let mut e = vec![Rational::zero(); n];
            e[j] = Rational::one();
            let x = solve_exact(m, e).ok_or_else(|| Error::Invariant("resolvent is singular above the spectral radius".into()))?;
            if x[i].is_zero() {
                return Err(Error::Invariant("resolvent entry vanishes where the path sum does not".into()));
            }
            return Ok(if x[i].is_negative() == qv.is_negative() { q } else { -q });
        }
        t0 += Rational::one();
    }
}

/// `Σ ρ_P φ(G\P)` by enumerating every simple path; for small graphs only.
pub fn path_sum_bruteforce(g: &Graph, i: usize, j: usize) -> Result<QPoly> {
    check_pair(g, i, j)?;
    if g.order() > BRUTEFORCE_MAX_ORDER {
        return Err(Error::ParameterOutOfRange(format!(
            "path enumeration needs n <= {BRUTEFORCE_MAX_ORDER}, got {}",
            g.order()
        )));
    }
    let adj = g.adjacency_lists();
    let mut total = QPoly::zero();
    let mut path = vec![i];
    let mut on_path = vec![false; g.order()];
    on_path[i] = true;
    extend(g, &adj, j, &mut path, &mut on_path, Rational::one(), &mut total)?;
    Ok(total)
}

fn extend(
    g: &Graph,
    adj: &[Vec<usize>],
    target: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    rho: Rational,
    total: &mut QPoly,
) -> Result<()> {
    let x = *path.last().expect("path starts at i");
    if x == target {
        let rest = g.delete_vertices(path)?;
        *total = &*total + &charpoly::<Rational>(&rest).scale(&rho);
        return Ok(());
    }
    for &y in &adj[x] {
        if on_path[y] {
            continue;
        }
        on_path[y] = true;
        path.push(y);
        extend(g, adj, target, path, on_path, &rho * g.weight(x, y), total)?;
        path.pop();
        on_path[y] = false;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{cycle, path};
    use crate::scalar::{int, rat};

    #[test]
    fn examples() {
        let p3 = path(3).unwrap();
        assert_eq!(path_sum_poly(&p3, 0, 2).unwrap(), QPoly::one());
        assert_eq!(path_sum_poly(&path(4).unwrap(), 0, 3).unwrap(), QPoly::one());
        assert_eq!(path_sum_poly(&Graph::new(2), 0, 1).unwrap(), QPoly::zero());
        assert_eq!(path_sum_bruteforce(&p3, 0, 2).unwrap(), QPoly::one());
        assert_eq!(path_sum_bruteforce(&cycle(3).unwrap(), 0, 1).unwrap(), QPoly::from_ints(&[1, 1]));
        assert_eq!(path_sum_bruteforce(&Graph::new(2), 0, 1).unwrap(), QPoly::zero());
        assert!(path_sum_poly(&p3, 1, 1).is_err());
        assert!(path_sum_bruteforce(&path(15).unwrap(), 0, 1).is_err());
    }

    #[test]
    fn negative_weights_keep_the_true_sign() {
        let mut g = path(3).unwrap();
        g.set_weight(0, 1, int(-2)).unwrap();
        g.set_weight(1, 2, rat(1, 3)).unwrap();
        g.set_weight(1, 1, int(4)).unwrap();
        let s = path_sum_poly(&g, 0, 2).unwrap();
        assert_eq!(s, QPoly::constant(rat(-2, 3)));
        assert_eq!(s, path_sum_bruteforce(&g, 0, 2).unwrap());
    }

    #[test]
    fn cycle_with_mixed_signs() {
        let mut g = cycle(5).unwrap();
        g.set_weight(0, 1, int(-1)).unwrap();
        g.set_weight(2, 3, rat(5, 2)).unwrap();
        for (i, j) in [(0, 1), (0, 2), (1, 3), (2, 4)] {
            assert_eq!(path_sum_poly(&g, i, j).unwrap(), path_sum_bruteforce(&g, i, j).unwrap());
        }
    }
}
