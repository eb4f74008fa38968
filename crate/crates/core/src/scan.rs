//! Exhaustive scan of small trees: transfer pairs, gap certificates and the
//! residue, bridge and eccentricity checks on every cospectral pair.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::gapcert::{bridge_gap_check_with, certify_gap_with, residue_mass_with};
use crate::graph::structure::eccentricity;
use crate::graph::trees::{tree_codes, tree_from_code, DEFAULT_MAX_TREE_ORDER};
use crate::graph::Graph;
use crate::pst::{decide_on_matrix, Model, PstCertificate};
use crate::spectra::GraphSpectra;
use crate::walksim::sig12;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct PstHit {
    pub tree_index: usize,
    pub code: String,
    pub i: usize,
    pub j: usize,
    pub certificate: PstCertificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub tree_index: usize,
    pub code: String,
    pub i: usize,
    pub j: usize,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct OrderStats {
    pub n: usize,
    pub trees: usize,
    pub cospectral_pairs: usize,
    pub strongly_cospectral_pairs: usize,
    /// Strongly cospectral pairs with separating cut-edges at both ends.
    pub certified_pairs: usize,
    pub bridge_pairs: usize,
    /// Largest support gap over certified pairs.
    pub max_certified_gap: Option<f64>,
    /// Largest support gap over certified pairs without the equality form.
    pub max_gap_without_equality: Option<f64>,
    pub max_residue_mass: Option<f64>,
    pub max_bridge_gap: Option<f64>,
    pub max_weyl_excess: Option<f64>,
    pub pst_pairs: Vec<PstHit>,
    pub equality_cases: Vec<Finding>,
    pub gap_violations: Vec<Finding>,
    pub other_violations: Vec<Finding>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub schema: u32,
    pub version: String,
    pub max_n: usize,
    pub tolerance: f64,
    pub orders: Vec<OrderStats>,
    pub wall_time_s: f64,
}

fn fmax(a: Option<f64>, b: f64) -> Option<f64> {
    Some(a.map_or(b, |a| a.max(b)))
}

fn fmax_opt(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match b {
        Some(b) => fmax(a, b),
        None => a,
    }
}

impl OrderStats {
    fn absorb(&mut self, o: OrderStats) {
        self.trees += o.trees;
        self.cospectral_pairs += o.cospectral_pairs;
        self.strongly_cospectral_pairs += o.strongly_cospectral_pairs;
        self.certified_pairs += o.certified_pairs;
        self.bridge_pairs += o.bridge_pairs;
        self.max_certified_gap = fmax_opt(self.max_certified_gap, o.max_certified_gap);
        self.max_gap_without_equality = fmax_opt(self.max_gap_without_equality, o.max_gap_without_equality);
        self.max_residue_mass = fmax_opt(self.max_residue_mass, o.max_residue_mass);
        self.max_bridge_gap = fmax_opt(self.max_bridge_gap, o.max_bridge_gap);
        self.max_weyl_excess = fmax_opt(self.max_weyl_excess, o.max_weyl_excess);
        self.pst_pairs.extend(o.pst_pairs);
        self.equality_cases.extend(o.equality_cases);
        self.gap_violations.extend(o.gap_violations);
        self.other_violations.extend(o.other_violations);
    }
}

/// All checks for one tree, pairs in lexicographic order.
pub fn analyze_tree(g: &Graph, tree_index: usize, code: &str, tol: f64) -> OrderStats {
    let n = g.order();
    let mut st = OrderStats {
        n,
        trees: 1,
        ..Default::default()
    };
    let finding = |i, j, detail: String| Finding {
        tree_index,
        code: code.to_string(),
        i,
        j,
        detail,
    };
    let sp = GraphSpectra::new(g);
    for v in 0..n {
        match (sp.support_size(v), eccentricity(g, v)) {
            (Ok(s), Ok(e)) if s < e + 1 => st
                .other_violations
                .push(finding(v, v, format!("support size {s} below eccentricity {e} + 1"))),
            (Err(e), _) | (_, Err(e)) => st.other_violations.push(finding(v, v, e.to_string())),
            _ => {}
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if let Err(e) = analyze_pair(&sp, i, j, tol, &mut st, &finding) {
                st.other_violations.push(finding(i, j, e.to_string()));
            }
        }
    }
    st
}

fn analyze_pair(
    sp: &GraphSpectra,
    i: usize,
    j: usize,
    tol: f64,
    st: &mut OrderStats,
    finding: &dyn Fn(usize, usize, String) -> Finding,
) -> Result<()> {
    let g = sp.graph();
    if !sp.is_cospectral(i, j)? {
        return Ok(());
    }
    st.cospectral_pairs += 1;
    if g.has_edge(i, j) {
        st.bridge_pairs += 1;
        let r = bridge_gap_check_with(sp, i, j, tol)?;
        st.max_bridge_gap = fmax(st.max_bridge_gap, r.gap);
        if !r.holds {
            st.gap_violations
                .push(finding(i, j, format!("bridge pair with support gap {} > 1", r.gap)));
        }
    }
    if !sp.is_strongly_cospectral(i, j)? {
        return Ok(());
    }
    st.strongly_cospectral_pairs += 1;
    let cert = decide_on_matrix(sp, g, i, j, Model::Adjacency, &BigInt::one())?;
    if cert.is_pst() {
        st.pst_pairs.push(PstHit {
            tree_index: 0,
            code: String::new(),
            i,
            j,
            certificate: cert,
        });
    }
    let gc = certify_gap_with(sp, i, j, tol)?;
    for v in &gc.invariant_violations {
        st.gap_violations.push(finding(i, j, v.clone()));
    }
    st.max_weyl_excess = fmax_opt(st.max_weyl_excess, gc.weyl_excess);
    if gc.hypotheses_ok {
        st.certified_pairs += 1;
        st.max_certified_gap = fmax_opt(st.max_certified_gap, gc.achieved_gap);
        if gc.equality_detected {
            st.equality_cases.push(finding(i, j, gc.conclusion.clone()));
        } else {
            st.max_gap_without_equality = fmax_opt(st.max_gap_without_equality, gc.achieved_gap);
        }
        let rm = residue_mass_with(sp, i, j, None, tol)?;
        if rm.bound > 1.0 + tol {
            st.other_violations
                .push(finding(i, j, format!("cut-edge pair with residue bound {}", rm.bound)));
        }
        st.max_residue_mass = fmax(st.max_residue_mass, rm.mass);
    }
    Ok(())
}

fn code_string(code: &[u8]) -> String {
    String::from_utf8_lossy(code).into_owned()
}

#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    pub max_n: usize,
    pub jobs: usize,
    pub tolerance: f64,
    /// Upper limit accepted for `max_n`.
    pub cap: usize,
}

impl ScanOptions {
    pub fn new(max_n: usize) -> Self {
        ScanOptions {
            max_n,
            jobs: 0,
            tolerance: 1e-9,
            cap: DEFAULT_MAX_TREE_ORDER,
        }
    }
}

pub fn scan_trees(max_n: usize, jobs: usize) -> Result<ScanReport> {
    scan_trees_with(ScanOptions {
        jobs,
        ..ScanOptions::new(max_n)
    })
}

/// Scans every tree on `1..=max_n` vertices on a pool of `jobs` threads
/// (0 picks the default). Results are merged in canonical tree order, so the
/// report does not depend on `jobs`.
pub fn scan_trees_with(opts: ScanOptions) -> Result<ScanReport> {
    if opts.max_n < 2 || opts.max_n > opts.cap {
        return Err(Error::ParameterOutOfRange(format!(
            "max_n = {} not in 2..={}",
            opts.max_n, opts.cap
        )));
    }
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::ParameterOutOfRange(e.to_string()))?;
    let mut orders = Vec::with_capacity(opts.max_n);
    for n in 1..=opts.max_n {
        let codes = tree_codes(n);
        let per_tree: Vec<OrderStats> = pool.install(|| {
            codes
                .par_iter()
                .enumerate()
                .map(|(idx, code)| {
                    let code = code_string(code);
                    let mut st = analyze_tree(&tree_from_code(code.as_bytes()), idx, &code, opts.tolerance);
                    for hit in &mut st.pst_pairs {
                        hit.tree_index = idx;
                        hit.code = code.clone();
                    }
                    st
                })
                .collect()
        });
        let mut total = OrderStats {
            n,
            ..Default::default()
        };
        for st in per_tree {
            total.absorb(st);
        }
        orders.push(total);
    }
    Ok(ScanReport {
        schema: SCHEMA_VERSION,
        version: env!("CARGO_PKG_VERSION").to_string(),
        max_n: opts.max_n,
        tolerance: opts.tolerance,
        orders,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

impl ScanReport {
    /// Violated report invariants; empty when the scan supports the theorem.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for o in &self.orders {
            let pairs: Vec<(usize, usize)> = o.pst_pairs.iter().map(|h| (h.i, h.j)).collect();
            let expected: &[(usize, usize)] = match o.n {
                2 => &[(0, 1)],
                3 => &[(1, 2)],
                _ => &[],
            };
            if o.n <= 3 {
                if pairs != expected {
                    out.push(format!("n = {}: transfer pairs {pairs:?}, expected {expected:?}", o.n));
                }
            } else if !pairs.is_empty() {
                out.push(format!("n = {}: transfer pairs {pairs:?} on a tree with more than three vertices", o.n));
            }
            for f in &o.gap_violations {
                out.push(format!("n = {}, tree {}, pair ({}, {}): {}", o.n, f.tree_index, f.i, f.j, f.detail));
            }
            for f in &o.other_violations {
                out.push(format!("n = {}, tree {}, pair ({}, {}): {}", o.n, f.tree_index, f.i, f.j, f.detail));
            }
            if o.n != 3 && !o.equality_cases.is_empty() {
                out.push(format!("n = {}: equality form outside P3", o.n));
            }
        }
        out
    }

    pub fn tree_counts(&self) -> Vec<usize> {
        self.orders.iter().map(|o| o.trees).collect()
    }

    /// JSON with every float rounded to 12 significant digits.
    pub fn to_json_value(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        round_floats(&mut v);
        v
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("value serializes")
    }
}

/// Rounds every non-integer JSON number to 12 significant digits.
pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(num) if num.is_f64() => {
            let x = num.as_f64().unwrap();
            let r: f64 = sig12(x).parse().unwrap_or(x);
            if let Some(n) = serde_json::Number::from_f64(r) {
                *num = n;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_scan() {
        let r = scan_trees(6, 2).unwrap();
        assert_eq!(r.tree_counts(), vec![1, 1, 1, 2, 3, 6]);
        assert!(r.violations().is_empty(), "{:?}", r.violations());
        assert_eq!(r.orders[1].pst_pairs.len(), 1);
        assert_eq!(r.orders[2].pst_pairs.len(), 1);
        assert_eq!(r.orders[2].equality_cases.len(), 1);
        assert!(r.orders[3..].iter().all(|o| o.pst_pairs.is_empty()));
        let p3 = &r.orders[2].pst_pairs[0];
        assert!((p3.certificate.t_min.unwrap() - std::f64::consts::PI / 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn deterministic_across_jobs() {
        let strip = |r: &ScanReport| {
            let mut v = r.to_json_value();
            v["wall_time_s"] = Value::Null;
            serde_json::to_string(&v).unwrap()
        };
        assert_eq!(strip(&scan_trees(7, 1).unwrap()), strip(&scan_trees(7, 3).unwrap()));
    }

    #[test]
    fn bounds() {
        assert!(scan_trees(1, 1).is_err());
        assert!(scan_trees(17, 1).is_err());
    }

    #[test]
    fn rounding() {
        let mut v = serde_json::json!({"a": [std::f64::consts::PI, 2, 0.1], "b": 1e-20});
        round_floats(&mut v);
        assert_eq!(v.to_string(), r#"{"a":[3.14159265359,2,0.1],"b":1e-20}"#);
    }
}
