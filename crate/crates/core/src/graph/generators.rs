use num_traits::Zero;

use super::Graph;
use crate::error::{Error, Result};
use crate::Rational;

fn at_least(name: &str, v: usize, min: usize) -> Result<()> {
    if v < min {
        Err(Error::ParameterOutOfRange(format!("{name} = {v}, needs >= {min}")))
    } else {
        Ok(())
    }
}

/// `P_n`, vertices `0 - 1 - ... - n-1`.
pub fn path(n: usize) -> Result<Graph> {
    at_least("n", n, 1)?;
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &edges)
}

/// Star on `n` vertices (`K_{1,n-1}`) with center 0.
pub fn star(n: usize) -> Result<Graph> {
    at_least("n", n, 1)?;
    let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
    Graph::from_edges(n, &edges)
}

/// Two adjacent centers 0 and 1 carrying `a` and `b` leaves respectively.
pub fn double_star(a: usize, b: usize) -> Result<Graph> {
    at_least("a", a, 1)?;
    at_least("b", b, 1)?;
    let n = 2 + a + b;
    let mut edges = vec![(0, 1)];
    edges.extend((0..a).map(|k| (0, 2 + k)));
    edges.extend((0..b).map(|k| (1, 2 + a + k)));
    Graph::from_edges(n, &edges)
}

/// `Q_d`: vertices are bit strings, adjacent when they differ in one bit.
pub fn hypercube(d: usize) -> Result<Graph> {
    at_least("d", d, 1)?;
    if d > 10 {
        return Err(Error::ParameterOutOfRange(format!("d = {d}, needs <= 10")));
    }
    let n = 1usize << d;
    let mut edges = Vec::new();
    for v in 0..n {
        for b in 0..d {
            let w = v ^ (1 << b);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

pub fn cycle(n: usize) -> Result<Graph> {
    at_least("n", n, 3)?;
    let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

pub fn complete(n: usize) -> Result<Graph> {
    at_least("n", n, 1)?;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Disjoint union; vertices of `h` are shifted past those of `g`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let off = g.order();
    let mut out = Graph::new(off + h.order());
    for (e, w) in g.edges() {
        out.set_weight(e.u, e.v, w.clone()).unwrap();
    }
    for (v, w) in g.loops() {
        out.set_weight(v, v, w.clone()).unwrap();
    }
    for (e, w) in h.edges() {
        out.set_weight(e.u + off, e.v + off, w.clone()).unwrap();
    }
    for (v, w) in h.loops() {
        out.set_weight(v + off, v + off, w.clone()).unwrap();
    }
    out
}

/// `L = D - A` as a graph: edges carry `-w`, loops carry weighted degrees.
/// Loops of `g` do not contribute to `L`.
pub fn laplacian_form(g: &Graph) -> Graph {
    let n = g.order();
    let mut out = Graph::new(n);
    let mut degree = vec![Rational::zero(); n];
    for (e, w) in g.edges() {
        out.set_weight(e.u, e.v, -w.clone()).unwrap();
        degree[e.u] += w;
        degree[e.v] += w;
    }
    for (v, d) in degree.into_iter().enumerate() {
        out.set_weight(v, v, d).unwrap();
    }
    out
}

/// Multiplies every entry by `c`.
pub fn scaled(g: &Graph, c: &Rational) -> Graph {
    let mut out = Graph::new(g.order());
    for (e, w) in g.edges() {
        out.set_weight(e.u, e.v, w * c).unwrap();
    }
    for (v, w) in g.loops() {
        out.set_weight(v, v, w * c).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::structure::is_tree;
    use crate::scalar::int;

    #[test]
    fn small_generators() {
        let p3 = path(3).unwrap();
        assert_eq!(p3.edge_count(), 2);
        assert!(p3.has_edge(0, 1) && p3.has_edge(1, 2));
        let q2 = hypercube(2).unwrap();
        // Q2 is the 4-cycle 00-01-11-10
        assert_eq!(q2.degree_sequence(), vec![2, 2, 2, 2]);
        assert!(!q2.has_edge(0, 3));
        assert!(hypercube(11).is_err());
        assert!(path(0).is_err());
        let ds = double_star(2, 3).unwrap();
        assert!(is_tree(&ds));
        assert_eq!(ds.degree(0), 3);
        assert_eq!(ds.degree(1), 4);
        assert_eq!(star(4).unwrap().degree(0), 3);
    }

    #[test]
    fn laplacian_of_p2() {
        let l = laplacian_form(&path(2).unwrap());
        assert_eq!(l.weight(0, 0), int(1));
        assert_eq!(l.weight(1, 1), int(1));
        assert_eq!(l.weight(0, 1), int(-1));
    }
}
