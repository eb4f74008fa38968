//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use pstlab::scalar::rat;
use pstlab::Graph;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero rational with small numerator and denominator, either sign.
pub fn random_weight(r: &mut impl Rng) -> pstlab::Rational {
    let mut p = r.gen_range(-3i64..=3);
    if p == 0 {
        p = 1;
    }
    rat(p, r.gen_range(1i64..=3))
}

/// Random weighted graph with optional loops.
pub fn random_weighted_graph(r: &mut impl Rng, n: usize, p: f64, loops: bool) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                g.set_weight(u, v, random_weight(r)).unwrap();
            }
        }
        if loops && r.gen_bool(0.2) {
            g.set_weight(u, u, random_weight(r)).unwrap();
        }
    }
    g
}

/// Random graph with positive rational edge weights and arbitrary loops.
pub fn positive_weighted_graph(r: &mut impl Rng, n: usize, p: f64) -> Graph {
    let g = random_weighted_graph(r, n, p, true);
    let mut h = Graph::new(n);
    for (e, w) in g.edges() {
        h.set_weight(e.u, e.v, num_traits::Signed::abs(w)).unwrap();
    }
    for (v, w) in g.loops() {
        h.set_weight(v, v, w.clone()).unwrap();
    }
    h
}

/// Two copies of a random rooted weighted graph `H` joined by an edge between
/// the copies of one vertex, each copy carrying a pendant vertex. The pendant
/// vertices are swapped by an automorphism and each hangs from a bridge.
/// Returns `(G, i, j)` with `i, j` the pendant vertices.
pub fn mirrored_pendant_graph(r: &mut impl Rng, h_order: usize, unit_bridges: bool) -> (Graph, usize, usize) {
    let h = random_weighted_graph(r, h_order, 0.5, true);
    let link = r.gen_range(0..h_order);
    let attach = r.gen_range(0..h_order);
    let n = 2 * h_order + 2;
    let mut g = Graph::new(n);
    for (e, w) in h.edges() {
        g.set_weight(e.u, e.v, w.clone()).unwrap();
        g.set_weight(e.u + h_order, e.v + h_order, w.clone()).unwrap();
    }
    for (v, w) in h.loops() {
        g.set_weight(v, v, w.clone()).unwrap();
        g.set_weight(v + h_order, v + h_order, w.clone()).unwrap();
    }
    g.set_weight(link, link + h_order, random_weight(r)).unwrap();
    let (i, j) = (n - 2, n - 1);
    let w = if unit_bridges { rat(1, 1) } else { random_weight(r) };
    g.set_weight(i, attach, w.clone()).unwrap();
    g.set_weight(j, attach + h_order, w).unwrap();
    (g, i, j)
}

/// Random labelled tree from a random Prüfer sequence.
pub fn random_tree(r: &mut impl Rng, n: usize) -> Graph {
    if n == 1 {
        return Graph::new(1);
    }
    if n == 2 {
        return Graph::from_edges(2, &[(0, 1)]).unwrap();
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| r.gen_range(0..n)).collect();
    Graph::from_edges(n, &prufer_edges(n, &seq)).unwrap()
}

pub fn prufer_edges(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = *leaves.iter().next().unwrap();
        leaves.remove(&leaf);
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.insert(x);
        }
    }
    let rest: Vec<usize> = leaves.into_iter().collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Center-rooted AHU string of a tree given as an edge list; the smaller of the
/// two rootings when the center is an edge.
pub fn center_code(n: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &u in &adj[v] {
                deg[u] -= 1;
                if deg[u] == 1 {
                    next.push(u);
                }
            }
        }
        layer = next;
    }
    fn enc(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
        let mut kids: Vec<String> = adj[v].iter().filter(|&&u| u != parent).map(|&u| enc(adj, u, v)).collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    layer.iter().map(|&c| enc(&adj, c, usize::MAX)).min().unwrap()
}

/// Number of free trees on `n` vertices by deduplicating all Prüfer sequences.
pub fn prufer_tree_count(n: usize) -> usize {
    if n <= 2 {
        return 1;
    }
    let len = n - 2;
    let mut seq = vec![0usize; len];
    let mut seen = HashSet::new();
    loop {
        seen.insert(center_code(n, &prufer_edges(n, &seq)));
        let mut k = 0;
        loop {
            if k == len {
                return seen.len();
            }
            seq[k] += 1;
            if seq[k] < n {
                break;
            }
            seq[k] = 0;
            k += 1;
        }
    }
}

/// Free-tree counts `t(1..=max)` from the rooted-tree recurrence and Otter's
/// dissimilarity formula.
pub fn otter_counts(max: usize) -> Vec<u64> {
    let mut r = vec![0u64; max + 1];
    r[1] = 1;
    for m in 1..max {
        let mut s = 0u64;
        for k in 1..=m {
            let d_sum: u64 = (1..=k).filter(|d| k % d == 0).map(|d| d as u64 * r[d]).sum();
            s += d_sum * r[m - k + 1];
        }
        r[m + 1] = s / m as u64;
    }
    (1..=max)
        .map(|n| {
            let mut pairs = 0u64;
            for a in 1..n {
                pairs += r[a] * r[n - a];
            }
            let mut t2 = 2 * r[n] - pairs;
            if n % 2 == 0 {
                t2 += r[n / 2];
            }
            t2 / 2
        })
        .collect()
}

type CMat = Vec<Vec<(f64, f64)>>;

fn cmul(a: &CMat, b: &CMat) -> CMat {
    let n = a.len();
    let mut c = vec![vec![(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            let (ar, ai) = a[i][k];
            if ar == 0.0 && ai == 0.0 {
                continue;
            }
            for j in 0..n {
                let (br, bi) = b[k][j];
                c[i][j].0 += ar * br - ai * bi;
                c[i][j].1 += ar * bi + ai * br;
            }
        }
    }
    c
}

/// `exp(itM)` by scaling and squaring of a truncated Taylor series.
pub fn taylor_expm(m: &[Vec<f64>], t: f64) -> CMat {
    let n = m.len();
    let norm = m.iter().map(|r| r.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max) * t.abs();
    let s = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let h = t / 2f64.powi(s);
    let x: CMat = m.iter().map(|r| r.iter().map(|&v| (0.0, v * h)).collect()).collect();
    let mut result: CMat = (0..n).map(|i| (0..n).map(|j| if i == j { (1.0, 0.0) } else { (0.0, 0.0) }).collect()).collect();
    let mut term = result.clone();
    for k in 1..=30 {
        term = cmul(&term, &x);
        for row in term.iter_mut() {
            for e in row.iter_mut() {
                e.0 /= k as f64;
                e.1 /= k as f64;
            }
        }
        for i in 0..n {
            for j in 0..n {
                result[i][j].0 += term[i][j].0;
                result[i][j].1 += term[i][j].1;
            }
        }
    }
    for _ in 0..s {
        result = cmul(&result, &result);
    }
    result
}

pub fn random_symmetric(r: &mut impl Rng, n: usize, scale: f64) -> Vec<Vec<f64>> {
    let mut a = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let x = r.gen_range(-scale..scale);
            a[i][j] = x;
            a[j][i] = x;
        }
    }
    a
}
