//! Weighted undirected graphs with optional loops.
//!
//! A [`Graph`] is a symmetric matrix with exact rational entries. Off-diagonal
//! entries are edge weights and diagonal entries are loops, so the Laplacian
//! model can be expressed as an ordinary weighted graph (see
//! [`generators::laplacian_form`]).

pub mod generators;
pub mod io;
pub mod structure;
pub mod trees;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{int, is_integer, Scalar};
use crate::Rational;

/// An unordered vertex pair, stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeRef {
    pub u: usize,
    pub v: usize,
}

impl EdgeRef {
    /// Orders the endpoints. Panics on `a == b`; loops are not edges.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "an edge needs two distinct endpoints");
        EdgeRef {
            u: a.min(b),
            v: a.max(b),
        }
    }

    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graph {
    n: usize,
    // key (u, v) with u <= v; zero weights are never stored
    entries: BTreeMap<(usize, usize), Rational>,
}

impl Graph {
    /// Edgeless graph on `n` vertices. `n == 0` is the empty graph produced by
    /// deleting every vertex; its characteristic polynomial is 1.
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            entries: BTreeMap::new(),
        }
    }

    /// Unit-weight graph from an edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.set_weight(u, v, int(1))?;
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// Sets the symmetric entry `(u, v)`; a zero weight removes it.
    pub fn set_weight(&mut self, u: usize, v: usize, w: Rational) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let key = (u.min(v), u.max(v));
        if w.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, w);
        }
        Ok(())
    }

    pub fn weight(&self, u: usize, v: usize) -> Rational {
        self.entries
            .get(&(u.min(v), u.max(v)))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.entries.contains_key(&(u.min(v), u.max(v)))
    }

    /// Off-diagonal entries in key order.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeRef, &Rational)> + '_ {
        self.entries
            .iter()
            .filter(|((u, v), _)| u != v)
            .map(|(&(u, v), w)| (EdgeRef { u, v }, w))
    }

    pub fn loops(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.entries
            .iter()
            .filter(|((u, v), _)| u == v)
            .map(|(&(u, _), w)| (u, w))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| self.has_edge(u, v)).collect()
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for (e, _) in self.edges() {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    /// Dense symmetric matrix over any scalar type.
    pub fn matrix<T: Scalar>(&self) -> Vec<Vec<T>> {
        let mut m = vec![vec![T::zero(); self.n]; self.n];
        for (&(u, v), w) in &self.entries {
            let x = T::from_rational(w);
            m[u][v] = x.clone();
            m[v][u] = x;
        }
        m
    }

    pub fn matrix_f64(&self) -> Vec<Vec<f64>> {
        self.matrix::<f64>()
    }

    pub fn is_integer_weighted(&self) -> bool {
        self.entries.values().all(is_integer)
    }

    pub fn is_unit_weighted(&self) -> bool {
        self.loops().next().is_none() && self.edges().all(|(_, w)| *w == int(1))
    }

    /// True when no off-diagonal entry is negative.
    pub fn offdiag_nonnegative(&self) -> bool {
        self.edges().all(|(_, w)| !Signed::is_negative(w))
    }

    /// Induced subgraph on the complement of `removed`, relabeled in increasing
    /// order of the surviving vertices.
    pub fn delete_vertices(&self, removed: &[usize]) -> Result<Graph> {
        for &v in removed {
            self.check_vertex(v)?;
        }
        let removed: BTreeSet<usize> = removed.iter().copied().collect();
        let mut relabel = vec![usize::MAX; self.n];
        let mut next = 0;
        for (v, slot) in relabel.iter_mut().enumerate() {
            if !removed.contains(&v) {
                *slot = next;
                next += 1;
            }
        }
        let mut g = Graph::new(next);
        for (&(u, v), w) in &self.entries {
            if relabel[u] != usize::MAX && relabel[v] != usize::MAX {
                g.entries.insert((relabel[u], relabel[v]), w.clone());
            }
        }
        Ok(g)
    }

    /// Degree sequence ignoring loops, sorted ascending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn weights_are_symmetric_and_zero_is_absent() {
        let mut g = Graph::new(3);
        g.set_weight(2, 0, rat(1, 2)).unwrap();
        assert_eq!(g.weight(0, 2), rat(1, 2));
        assert_eq!(g.weight(2, 0), rat(1, 2));
        g.set_weight(0, 2, int(0)).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert!(g.set_weight(3, 0, int(1)).is_err());
    }

    #[test]
    fn delete_vertices_examples() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let two_isolated = p3.delete_vertices(&[1]).unwrap();
        assert_eq!(two_isolated.order(), 2);
        assert_eq!(two_isolated.edge_count(), 0);
        let p2 = p3.delete_vertices(&[0]).unwrap();
        assert_eq!(p2, Graph::from_edges(2, &[(0, 1)]).unwrap());
        let empty = p3.delete_vertices(&[0, 1, 2]).unwrap();
        assert!(empty.is_empty());
        assert!(p3.delete_vertices(&[3]).is_err());
    }

    #[test]
    fn delete_vertices_composes() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (1, 4)]).unwrap();
        let once = g.delete_vertices(&[1, 4]).unwrap();
        // vertices 0,2,3,5 -> 0,1,2,3; deleting original 3 is new label 2
        let twice = once.delete_vertices(&[2]).unwrap();
        assert_eq!(twice, g.delete_vertices(&[1, 3, 4]).unwrap());
    }
}
