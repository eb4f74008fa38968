//! Connectivity, bridges and hop distances.

use std::collections::VecDeque;

use super::{EdgeRef, Graph};
use crate::error::{Error, Result};

/// Component id per vertex, ids assigned in order of smallest member.
pub fn components(g: &Graph) -> Vec<usize> {
    components_of(&g.adjacency_lists())
}

fn components_of(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if comp[y] == usize::MAX {
                    comp[y] = next;
                    stack.push(y);
                }
            }
        }
        next += 1;
    }
    comp
}

pub fn is_connected(g: &Graph) -> bool {
    components(g).iter().all(|&c| c == 0)
}

pub fn same_component(g: &Graph, a: usize, b: usize) -> bool {
    let c = components(g);
    c[a] == c[b]
}

/// All bridges, found with an iterative low-link DFS.
pub fn bridges(g: &Graph) -> Vec<EdgeRef> {
    let adj = g.adjacency_lists();
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut out = Vec::new();
    let mut timer = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // (vertex, parent, next neighbor index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(top) = stack.last_mut() {
            let (x, parent) = (top.0, top.1);
            if top.2 < adj[x].len() {
                let y = adj[x][top.2];
                top.2 += 1;
                if y == parent {
                    continue;
                }
                if disc[y] == usize::MAX {
                    disc[y] = timer;
                    low[y] = timer;
                    timer += 1;
                    stack.push((y, x, 0));
                } else {
                    low[x] = low[x].min(disc[y]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[x]);
                    if low[x] > disc[parent] {
                        out.push(EdgeRef::new(parent, x));
                    }
                }
            }
        }
    }
    out.sort();
    out
}

pub fn is_bridge(g: &Graph, e: EdgeRef) -> bool {
    bridges(g).contains(&e)
}

fn reachable_without_edge(g: &Graph, e: EdgeRef, from: usize) -> Vec<bool> {
    let adj = g.adjacency_lists();
    let mut seen = vec![false; g.order()];
    seen[from] = true;
    let mut stack = vec![from];
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if EdgeRef::new(x, y) == e || seen[y] {
                continue;
            }
            seen[y] = true;
            stack.push(y);
        }
    }
    seen
}

/// Whether `e` is a bridge whose removal leaves `i` and `j` in different components.
pub fn separating_cut_edge(g: &Graph, e: EdgeRef, i: usize, j: usize) -> Result<bool> {
    if e.v >= g.order() || !g.has_edge(e.u, e.v) {
        return Err(Error::NotAnEdge { u: e.u, v: e.v });
    }
    for v in [i, j] {
        if v >= g.order() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.order() });
        }
    }
    let from_u = reachable_without_edge(g, e, e.u);
    if from_u[e.v] {
        return Ok(false);
    }
    let from_i = reachable_without_edge(g, e, i);
    Ok(!from_i[j])
}

/// A neighbor `i'` of `i`, different from `j`, such that `ii'` is a bridge
/// separating `i` from `j`. On a tree this is the next vertex on the `i`–`j` path.
pub fn separating_neighbor(g: &Graph, i: usize, j: usize) -> Option<usize> {
    g.neighbors(i).into_iter().find(|&x| {
        x != j && separating_cut_edge(g, EdgeRef::new(i, x), i, j).unwrap_or(false)
    })
}

/// Unweighted hop distances from `v`; `None` for unreachable vertices.
pub fn hop_distances(g: &Graph, v: usize) -> Vec<Option<usize>> {
    let adj = g.adjacency_lists();
    let mut dist = vec![None; g.order()];
    dist[v] = Some(0);
    let mut queue = VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        let d = dist[x].unwrap();
        for &y in &adj[x] {
            if dist[y].is_none() {
                dist[y] = Some(d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Largest hop distance from `v`. Errors on disconnected graphs.
pub fn eccentricity(g: &Graph, v: usize) -> Result<usize> {
    if v >= g.order() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.order() });
    }
    hop_distances(g, v)
        .into_iter()
        .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
        .ok_or(Error::Disconnected)
}

pub fn is_tree(g: &Graph) -> bool {
    g.order() >= 1 && g.edge_count() + 1 == g.order() && is_connected(g)
}

/// Degree-sequence test for `P_n` (loops ignored).
pub fn is_path_graph(g: &Graph, n: usize) -> bool {
    if g.order() != n || !is_tree(g) {
        return false;
    }
    match n {
        1 => true,
        _ => g.degree_sequence().iter().all(|&d| d <= 2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{cycle, path};

    #[test]
    fn separating_cut_edge_examples() {
        let p4 = path(4).unwrap();
        assert!(separating_cut_edge(&p4, EdgeRef::new(1, 2), 0, 3).unwrap());
        assert!(separating_cut_edge(&p4, EdgeRef::new(0, 1), 0, 3).unwrap());
        assert!(!separating_cut_edge(&p4, EdgeRef::new(2, 3), 0, 1).unwrap());
        let c4 = cycle(4).unwrap();
        for (e, _) in c4.edges() {
            for i in 0..4 {
                for j in 0..4 {
                    if i != j {
                        assert!(!separating_cut_edge(&c4, e, i, j).unwrap());
                    }
                }
            }
        }
        assert!(separating_cut_edge(&p4, EdgeRef::new(0, 2), 0, 3).is_err());
    }

    #[test]
    fn bridges_of_cycle_with_tail() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]).unwrap();
        assert_eq!(bridges(&g), vec![EdgeRef::new(2, 3), EdgeRef::new(3, 4)]);
        assert!(bridges(&cycle(5).unwrap()).is_empty());
        assert_eq!(bridges(&path(4).unwrap()).len(), 3);
    }

    #[test]
    fn eccentricity_examples() {
        let p3 = path(3).unwrap();
        assert_eq!(eccentricity(&p3, 0).unwrap(), 2);
        assert_eq!(eccentricity(&p3, 1).unwrap(), 1);
        assert_eq!(eccentricity(&path(1).unwrap(), 0).unwrap(), 0);
        assert_eq!(eccentricity(&Graph::new(2), 0), Err(Error::Disconnected));
    }
}
