//! Free trees up to isomorphism.
//!
//! Every tree is identified by its canonical code: the parenthesis string of
//! the tree rooted at its centroid, children sorted, taking the smaller of the
//! two rootings when there are two centroids. Trees on `n` vertices are
//! produced by attaching a leaf to every vertex of every tree on `n - 1`
//! vertices and rejecting codes already seen. The stream is ordered by code.

use std::collections::BTreeSet;

use super::Graph;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_TREE_ORDER: usize = 16;

/// Canonical parenthesis code, `b'('`/`b')'` bytes.
pub type TreeCode = Vec<u8>;

/// Canonical code of a tree given by adjacency lists.
pub fn canonical_code(adj: &[Vec<usize>]) -> TreeCode {
    let n = adj.len();
    if n == 0 {
        return Vec::new();
    }
    centroids(adj)
        .into_iter()
        .map(|c| rooted_code(adj, c, usize::MAX))
        .min()
        .expect("a nonempty tree has a centroid")
}

pub fn canonical_code_of(g: &Graph) -> TreeCode {
    canonical_code(&g.adjacency_lists())
}

fn rooted_code(adj: &[Vec<usize>], v: usize, parent: usize) -> TreeCode {
    let mut kids: Vec<TreeCode> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_code(adj, w, v))
        .collect();
    kids.sort_unstable();
    let mut code = Vec::with_capacity(2 + kids.iter().map(Vec::len).sum::<usize>());
    code.push(b'(');
    for k in kids {
        code.extend(k);
    }
    code.push(b')');
    code
}

fn centroids(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![0];
    let mut seen = vec![false; n];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    let mut size = vec![1usize; n];
    for &x in order.iter().rev() {
        if parent[x] != usize::MAX {
            size[parent[x]] += size[x];
        }
    }
    (0..n)
        .filter(|&v| {
            let mut worst = n - size[v];
            for &w in &adj[v] {
                if w != parent[v] {
                    worst = worst.max(size[w]);
                }
            }
            2 * worst <= n
        })
        .collect()
}

/// Builds the tree encoded by `code`, labeling vertices in preorder (root = 0).
pub fn tree_from_code(code: &[u8]) -> Graph {
    let n = code.len() / 2;
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut stack: Vec<usize> = Vec::new();
    let mut next = 0;
    for &b in code {
        if b == b'(' {
            if let Some(&p) = stack.last() {
                edges.push((p, next));
            }
            stack.push(next);
            next += 1;
        } else {
            stack.pop();
        }
    }
    Graph::from_edges(n, &edges).expect("code describes a valid tree")
}

fn adjacency_from_code(code: &[u8]) -> Vec<Vec<usize>> {
    tree_from_code(code).adjacency_lists()
}

/// Canonical codes of all free trees on `n` vertices, sorted.
pub fn tree_codes(n: usize) -> Vec<TreeCode> {
    if n == 0 {
        return Vec::new();
    }
    let mut level: BTreeSet<TreeCode> = BTreeSet::from([b"()".to_vec()]);
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for code in &level {
            let mut adj = adjacency_from_code(code);
            let m = adj.len();
            adj.push(Vec::new());
            for v in 0..m {
                adj[v].push(m);
                adj[m].push(v);
                next.insert(canonical_code(&adj));
                adj[v].pop();
                adj[m].clear();
            }
        }
        level = next;
    }
    level.into_iter().collect()
}

/// Deterministic stream of non-isomorphic unit-weight trees.
#[derive(Debug, Clone)]
pub struct TreeStream {
    codes: std::vec::IntoIter<TreeCode>,
}

impl Iterator for TreeStream {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        self.codes.next().map(|c| tree_from_code(&c))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.codes.size_hint()
    }
}

impl ExactSizeIterator for TreeStream {}

pub fn enumerate_trees(n: usize) -> Result<TreeStream> {
    enumerate_trees_capped(n, DEFAULT_MAX_TREE_ORDER)
}

pub fn enumerate_trees_capped(n: usize, max: usize) -> Result<TreeStream> {
    if n == 0 || n > max {
        return Err(Error::ParameterOutOfRange(format!("tree order {n} not in 1..={max}")));
    }
    Ok(TreeStream {
        codes: tree_codes(n).into_iter(),
    })
}
