//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::f64::consts::{PI, SQRT_2};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use nalgebra::DMatrix;
use pstlab::gapcert::{general_bound, merged_alphas_with, residue_mass};
use pstlab::graph::generators::path;
use pstlab::graph::trees::enumerate_trees;
use pstlab::graph::Graph;
use pstlab::poly::paths::{path_sum_bruteforce, path_sum_poly};
use pstlab::poly::roots::isolate_real_roots;
use pstlab::pst::{decide_pst, pst_pairs, Model, Verdict};
use pstlab::scan::{scan_trees, ScanReport};
use pstlab::spectra::GraphSpectra;
use pstlab::walksim::{fidelity, Propagator64};
use pstlab::QRatFunc;
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn trees_up_to(max: usize) -> impl Iterator<Item = Graph> {
    (1..=max).flat_map(|n| enumerate_trees(n).unwrap())
}

fn pst_positive_controls() -> Outcome {
    for (n, i, j, expected) in [(2, 0, 1, PI / 2.0), (3, 0, 2, PI / SQRT_2)] {
        let g = path(n).unwrap();
        let c = decide_pst(&g, i, j, Model::Adjacency).map_err(|e| e.to_string())?;
        ensure(c.result == Verdict::Pst, || format!("P{n}: verdict {:?}", c.result))?;
        let t = c.t_min.unwrap();
        ensure((t - expected).abs() < 1e-12, || format!("P{n}: t_min = {t}, expected {expected}"))?;
        let f = fidelity(&g, i, j, t).unwrap();
        ensure(f >= 1.0 - 1e-9, || format!("P{n}: fidelity {f} at t_min"))?;
    }
    Ok("P2 at π/2 and P3 at π/√2, fidelity ≥ 1 − 1e−9".into())
}

fn tree_scan(report: &ScanReport) -> Outcome {
    let counts = report.tree_counts();
    let otter = common::otter_counts(12);
    for n in 1..=9 {
        let p = common::prufer_tree_count(n);
        ensure(p == counts[n - 1], || format!("n = {n}: {} trees, Prüfer oracle {p}", counts[n - 1]))?;
    }
    for n in 1..=12 {
        ensure(otter[n - 1] as usize == counts[n - 1], || {
            format!("n = {n}: {} trees, counting oracle {}", counts[n - 1], otter[n - 1])
        })?;
    }
    for o in &report.orders {
        let expected = usize::from(o.n == 2 || o.n == 3);
        ensure(o.pst_pairs.len() == expected, || format!("n = {}: {} PST pairs", o.n, o.pst_pairs.len()))?;
    }
    ensure(report.violations().is_empty(), || report.violations().join("; "))?;
    Ok(format!(
        "tree counts {counts:?} match the oracles; PST only at n = 2, 3; scan {:.1}s",
        report.wall_time_s
    ))
}

fn gap_bound(report: &ScanReport) -> Outcome {
    let mut certified = 0;
    let mut worst: f64 = 0.0;
    for o in &report.orders {
        ensure(o.gap_violations.is_empty(), || format!("n = {}: {:?}", o.n, o.gap_violations))?;
        certified += o.certified_pairs;
        if let Some(g) = o.max_certified_gap {
            ensure(g <= SQRT_2 + 1e-9, || format!("n = {}: gap {g}", o.n))?;
        }
        match o.n {
            3 => ensure(o.equality_cases.len() == 1, || "P3 equality not detected".into())?,
            _ => ensure(o.equality_cases.is_empty(), || format!("n = {}: equality outside P3", o.n))?,
        }
        if o.n >= 4 {
            if let Some(g) = o.max_gap_without_equality {
                ensure(g <= SQRT_2 - 1e-6, || format!("n = {}: gap {g} not below √2", o.n))?;
                worst = worst.max(g);
            }
        }
    }
    Ok(format!("{certified} certified pairs; largest gap for n ≥ 4 is {worst:.6}; equality only on P3"))
}

fn wronskian_oracle() -> Outcome {
    let mut checked = 0;
    for t in trees_up_to(8) {
        for i in 0..t.order() {
            for j in i + 1..t.order() {
                ensure(path_sum_poly(&t, i, j).unwrap() == path_sum_bruteforce(&t, i, j).unwrap(), || {
                    format!("tree {:?}, pair ({i}, {j})", t)
                })?;
                checked += 1;
            }
        }
    }
    let mut r = common::rng(2024);
    for k in 0..200 {
        let n = 2 + k % 7;
        let g = common::random_weighted_graph(&mut r, n, 0.6, true);
        for i in 0..n {
            for j in i + 1..n {
                ensure(path_sum_poly(&g, i, j).unwrap() == path_sum_bruteforce(&g, i, j).unwrap(), || {
                    format!("random graph {g:?}, pair ({i}, {j})")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} pairs agree exactly"))
}

fn residue_bounds(report: &ScanReport) -> Outcome {
    let worst = report.orders.iter().filter_map(|o| o.max_residue_mass).fold(0.0, f64::max);
    ensure(worst <= 1.0 + 1e-9, || format!("residue mass {worst}"))?;
    let p4 = residue_mass(&path(4).unwrap(), 0, 3).map_err(|e| e.to_string())?;
    ensure((p4.mass - 1.0).abs() <= 1e-6, || format!("P4 residue mass {}", p4.mass))?;
    let b = general_bound(&path(4).unwrap(), 0, 3).map_err(|e| e.to_string())?;
    ensure(b.a_ij == 0.0 && b.neighbors.i_side.len() == 1 && b.neighbors.j_side.len() == 1, || {
        format!("P4 ends: a_ij = {}, neighbors {:?}", b.a_ij, b.neighbors)
    })?;
    ensure((b.value - SQRT_2).abs() < 1e-12, || format!("general bound {}", b.value))?;
    Ok(format!("max residue mass {worst}; P4 ends mass {:.9}; general bound √2", p4.mass))
}

fn residues_nonnegative(g: &Graph) -> Result<(), String> {
    let sp = GraphSpectra::new(g);
    for i in 0..g.order() {
        let f = QRatFunc::new(sp.deleted(i).unwrap().clone(), sp.phi().clone()).unwrap();
        ensure(f.den().is_square_free(), || format!("{g:?}: repeated pole at vertex {i}"))?;
        let (nf, df) = (f.num().to_f64(), f.den().derivative().to_f64());
        for b in isolate_real_roots(f.den()) {
            let res = nf.eval_f64(b.mid) / df.eval_f64(b.mid);
            ensure(res >= -1e-9, || format!("{g:?}: residue {res} at vertex {i}"))?;
        }
    }
    for i in 0..g.order() {
        for j in i + 1..g.order() {
            if sp.is_strongly_cospectral(i, j).unwrap() {
                let m = merged_alphas_with(&sp, i, j).map_err(|e| e.to_string())?;
                let min = m.plus.min_residue().min(m.minus.min_residue());
                ensure(min >= -1e-9 || m.k() == 0, || format!("{g:?}: merged residue {min} at ({i}, {j})"))?;
            }
        }
    }
    Ok(())
}

fn interlacing() -> Outcome {
    let mut graphs = 0;
    for t in trees_up_to(10) {
        residues_nonnegative(&t)?;
        graphs += 1;
    }
    let mut r = common::rng(99);
    for k in 0..150 {
        let g = common::random_weighted_graph(&mut r, 2 + k % 9, 0.5, true);
        residues_nonnegative(&g)?;
        graphs += 1;
    }
    for k in 0..100 {
        let (g, _, _) = common::mirrored_pendant_graph(&mut r, 1 + k % 4, k % 2 == 0);
        residues_nonnegative(&g)?;
        graphs += 1;
    }
    Ok(format!("{graphs} graphs: simple poles, residues ≥ −1e−9"))
}

fn sorted_eigenvalues(a: &[Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    let mut v: Vec<f64> = DMatrix::from_fn(n, n, |i, j| a[i][j]).symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

fn weyl(report: &ScanReport) -> Outcome {
    let worst = report.orders.iter().filter_map(|o| o.max_weyl_excess).fold(f64::NEG_INFINITY, f64::max);
    ensure(worst <= 1e-9, || format!("scanned pair exceeds the operator norm by {worst}"))?;
    let mut r = common::rng(5);
    for _ in 0..100 {
        let n = r.gen_range(1..10);
        let a = common::random_symmetric(&mut r, n, 3.0);
        let b = common::random_symmetric(&mut r, n, 3.0);
        let diff: Vec<Vec<f64>> = a.iter().zip(&b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect()).collect();
        let norm = sorted_eigenvalues(&diff).iter().fold(0.0f64, |m, x| m.max(x.abs()));
        for (x, y) in sorted_eigenvalues(&a).iter().zip(sorted_eigenvalues(&b)) {
            ensure((x - y).abs() <= norm + 1e-9, || format!("random pair: shift {} > {norm}", (x - y).abs()))?;
        }
    }
    Ok(format!("scanned pairs (max excess {worst:.3e}) and 100 random pairs"))
}

fn bfs_eccentricity(g: &Graph, v: usize) -> usize {
    let adj = g.adjacency_lists();
    let mut dist = vec![usize::MAX; g.order()];
    dist[v] = 0;
    let mut queue = std::collections::VecDeque::from([v]);
    let mut far = 0;
    while let Some(x) = queue.pop_front() {
        far = far.max(dist[x]);
        for &y in &adj[x] {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    far
}

fn eccentricity_bound() -> Outcome {
    let mut vertices = 0;
    for t in trees_up_to(12) {
        let sp = GraphSpectra::new(&t);
        for v in 0..t.order() {
            let s = sp.support_size(v).unwrap();
            let e = bfs_eccentricity(&t, v);
            ensure(s > e, || format!("tree {t:?}, vertex {v}: |Φ| = {s}, ecc = {e}"))?;
            vertices += 1;
        }
    }
    Ok(format!("{vertices} vertices of trees with n ≤ 12"))
}

fn no_pst_soundness() -> Outcome {
    let h = 1e-4;
    let steps = (4.0 * PI / h).floor() as usize;
    let mut verdicts = 0;
    let mut worst: f64 = 0.0;
    for t in trees_up_to(8) {
        let n = t.order();
        let prop = Propagator64::new(&t.matrix_f64());
        for i in 0..n {
            for j in i + 1..n {
                let c = decide_pst(&t, i, j, Model::Adjacency).map_err(|e| e.to_string())?;
                if c.result != Verdict::NoPst {
                    continue;
                }
                verdicts += 1;
                let (_, peak) = prop.scan_max(i, j, h, steps);
                let peak = peak.max(prop.fidelity(i, j, 4.0 * PI));
                worst = worst.max(peak);
                ensure(peak < 1.0 - 1e-6, || format!("tree {t:?}, pair ({i}, {j}): fidelity {peak}"))?;
            }
        }
    }
    Ok(format!("{verdicts} NO_PST verdicts, highest fidelity {worst:.6}"))
}

fn laplacian_trees() -> Outcome {
    let mut hits = Vec::new();
    let mut trees = 0;
    for t in trees_up_to(10) {
        trees += 1;
        for (i, j, _) in pst_pairs(&t, Model::Laplacian).map_err(|e| e.to_string())? {
            hits.push((t.order(), i, j));
        }
    }
    ensure(hits == vec![(2, 0, 1)], || format!("Laplacian PST at {hits:?}"))?;
    Ok(format!("{trees} trees; Laplacian PST only on P2"))
}

fn bridge_remark(report: &ScanReport) -> Outcome {
    let mut pairs = 0;
    for o in &report.orders {
        pairs += o.bridge_pairs;
        if let Some(g) = o.max_bridge_gap {
            let exempt = o.n == 2;
            ensure(exempt || g <= 1.0 + 1e-9, || format!("n = {}: bridge gap {g}", o.n))?;
        }
    }
    let p2 = report.orders[1].max_bridge_gap;
    ensure(p2.is_some_and(|g| (g - 2.0).abs() < 1e-12), || format!("P2 gap {p2:?}"))?;
    Ok(format!("{pairs} cospectral bridge pairs; gap ≤ 1 except P2 (gap 2)"))
}

fn main() {
    let start = Instant::now();
    let report = scan_trees(12, 0).expect("scan runs");
    let criteria: Vec<(usize, &str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, "PST positive controls", Box::new(pst_positive_controls)),
        (2, "no PST on trees with n ≥ 4", Box::new(|| tree_scan(&report))),
        (3, "gap bound √2, equality only on P3", Box::new(|| gap_bound(&report))),
        (4, "path sum equals brute force", Box::new(wronskian_oracle)),
        (5, "residue mass bounds", Box::new(|| residue_bounds(&report))),
        (6, "interlacing and positive residues", Box::new(interlacing)),
        (7, "Weyl-type bound", Box::new(|| weyl(&report))),
        (8, "eccentricity bound", Box::new(eccentricity_bound)),
        (9, "NO_PST soundness by simulation", Box::new(no_pst_soundness)),
        (10, "Laplacian PST only on P2", Box::new(laplacian_trees)),
        (11, "bridge pairs have gap ≤ 1", Box::new(|| bridge_remark(&report))),
    ];
    let mut failed = 0;
    for (k, name, run) in &criteria {
        let t0 = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = t0.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {k:>2} PASS  {name}: {detail} ({secs:.2}s)"),
            Err(detail) => {
                failed += 1;
                println!("criterion {k:>2} FAIL  {name}: {detail} ({secs:.2}s)");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
