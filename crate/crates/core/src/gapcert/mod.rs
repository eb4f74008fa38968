//! Eigenvalue-gap certificates for strongly cospectral pairs.
//!
//! The support of `i` splits into the zeros of `α⁺` and `α⁻`. Both functions
//! are written over a common pole set as `t - r0 - Σ μ_ℓ/(t - r_ℓ)`, which
//! makes their zeros the spectra of two arrow matrices differing by a rank-two
//! perturbation. A shared eigenvalue index then bounds the gap between a zero
//! of `α⁺` and a zero of `α⁻`.

pub mod arrow;
pub mod partial;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::structure::{is_bridge, is_path_graph, same_component, separating_neighbor};
use crate::graph::{EdgeRef, Graph};
use crate::linalg::{mat_sub, op_norm_symmetric};
use crate::poly::roots::isolate_real_roots;
use crate::scalar::ratio_to_f64;
use crate::spectra::GraphSpectra;
use crate::{QPoly, QRatFunc, Rational};

pub use arrow::{arrow_matrix, ArrowMatrix};
pub use partial::{
    alpha_pair, alpha_pair_with, merged_alphas, merged_alphas_with, partial_fraction, MergedAlphas, PartialFraction,
    PfTerm,
};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Neighbors `i'` of `i` and `j'` of `j` (with `i' ≠ j`, `j' ≠ i`) whose edges
/// are bridges separating `i` from `j`.
pub fn cut_edge_neighbors(g: &Graph, i: usize, j: usize) -> Option<(usize, usize)> {
    if i == j || i >= g.order() || j >= g.order() {
        return None;
    }
    Some((separating_neighbor(g, i, j)?, separating_neighbor(g, j, i)?))
}

/// `t - r - 2/(t - r)` paired with `t - r`, in either order. Returns `r`.
pub fn equality_shift(plus: &QRatFunc, minus: &QRatFunc) -> Option<Rational> {
    let linear_shift = |f: &QRatFunc| -> Option<Rational> {
        (f.den().degree() == Some(0) && f.num().degree() == Some(1) && f.num().is_monic()).then(|| -f.num().coeff(0))
    };
    let matches = |f: &QRatFunc, r: &Rational| -> bool {
        let lin = QPoly::linear(r.clone());
        let num = &(&lin * &lin) - &QPoly::constant(Rational::from_integer(2.into()));
        QRatFunc::new(num, lin).map(|e| &e == f).unwrap_or(false)
    };
    if let Some(r) = linear_shift(minus) {
        if matches(plus, &r) {
            return Some(r);
        }
    }
    let r = linear_shift(plus)?;
    matches(minus, &r).then_some(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct GapCertificate {
    pub i: usize,
    pub j: usize,
    pub strongly_cospectral: bool,
    pub i_prime: Option<usize>,
    pub j_prime: Option<usize>,
    pub hypotheses_ok: bool,
    /// Number of common poles; the arrow matrices have order `k + 1`.
    pub k: Option<usize>,
    pub alpha_plus: Option<PartialFraction>,
    pub alpha_minus: Option<PartialFraction>,
    pub m_plus: Option<ArrowMatrix>,
    pub m_minus: Option<ArrowMatrix>,
    pub eigenvalues_plus: Vec<f64>,
    pub eigenvalues_minus: Vec<f64>,
    /// Largest distance between the numeric arrow spectra and the exactly known ones.
    pub eigen_crosscheck: Option<f64>,
    pub m: Option<usize>,
    pub theta_m_plus: Option<f64>,
    pub theta_m_minus: Option<f64>,
    /// `‖M⁺ - M⁻‖`.
    pub op_norm: Option<f64>,
    /// `√Σ(√μ⁺ - √μ⁻)²`.
    pub rank_two_norm: Option<f64>,
    pub sum_abs_residue_diff: Option<f64>,
    /// `max_ℓ |θ_ℓ(M⁺) - θ_ℓ(M⁻)| - ‖M⁺ - M⁻‖`, nonpositive up to rounding.
    pub weyl_excess: Option<f64>,
    pub achieved_gap: Option<f64>,
    pub bound: f64,
    pub equality_detected: bool,
    pub conclusion: String,
    pub invariant_violations: Vec<String>,
}

pub fn certify_gap(g: &Graph, i: usize, j: usize) -> Result<GapCertificate> {
    certify_gap_with(&GraphSpectra::new(g), i, j, DEFAULT_TOLERANCE)
}

/// Checks the hypotheses, builds both arrow matrices and records every
/// intermediate bound. Hypothesis failures and violated invariants are
/// reported in the certificate rather than returned as errors.
pub fn certify_gap_with(sp: &GraphSpectra, i: usize, j: usize, tol: f64) -> Result<GapCertificate> {
    let g = sp.graph();
    sp.check_vertex(i)?;
    sp.check_vertex(j)?;
    if i == j {
        return Err(Error::ParameterOutOfRange(format!("pair ({i}, {j}) needs two distinct vertices")));
    }
    let strongly_cospectral = sp.is_strongly_cospectral(i, j)?;
    let cut = cut_edge_neighbors(g, i, j);
    let hypotheses_ok = strongly_cospectral && cut.is_some();
    let achieved_gap = if sp.support_size(i)? >= 2 {
        Some(sp.min_support_gap(i)?)
    } else {
        None
    };
    let bound = match cut {
        Some((ip, jp)) if hypotheses_ok => {
            (2.0 * (ratio_to_f64(&g.weight(i, ip)) * ratio_to_f64(&g.weight(jp, j))).abs()).sqrt()
        }
        _ => 2f64.sqrt(),
    };
    let mut cert = GapCertificate {
        i,
        j,
        strongly_cospectral,
        i_prime: cut.map(|c| c.0),
        j_prime: cut.map(|c| c.1),
        hypotheses_ok,
        k: None,
        alpha_plus: None,
        alpha_minus: None,
        m_plus: None,
        m_minus: None,
        eigenvalues_plus: Vec::new(),
        eigenvalues_minus: Vec::new(),
        eigen_crosscheck: None,
        m: None,
        theta_m_plus: None,
        theta_m_minus: None,
        op_norm: None,
        rank_two_norm: None,
        sum_abs_residue_diff: None,
        weyl_excess: None,
        achieved_gap,
        bound,
        equality_detected: false,
        conclusion: String::new(),
        invariant_violations: Vec::new(),
    };
    if !strongly_cospectral {
        cert.conclusion = format!("hypotheses not met: {i} and {j} are not strongly cospectral");
        return Ok(cert);
    }
    if let Err(e) = fill_arrows(sp, &mut cert, tol) {
        cert.invariant_violations.push(e.to_string());
    }
    if hypotheses_ok {
        match achieved_gap {
            Some(gap) if gap > bound + tol => cert
                .invariant_violations
                .push(format!("support gap {gap} exceeds the bound {bound}")),
            None => cert.invariant_violations.push("support has fewer than two elements".into()),
            _ => {}
        }
        if let Some(s) = cert.sum_abs_residue_diff {
            if s > bound * bound + tol {
                cert.invariant_violations
                    .push(format!("residue difference mass {s} exceeds {}", bound * bound));
            }
        }
    }
    if cert.equality_detected && !is_path_graph(g, 3) {
        cert.invariant_violations
            .push("equality form detected on a graph other than P3".into());
    }
    let gap = achieved_gap.map_or("undefined".to_string(), |x| x.to_string());
    cert.conclusion = if !hypotheses_ok {
        format!("hypotheses not met: no separating cut-edges at {i} and {j}; support gap {gap}")
    } else if cert.equality_detected {
        "G ≅ P3".to_string()
    } else {
        format!("support gap {gap} < bound {bound}")
    };
    Ok(cert)
}

fn fill_arrows(sp: &GraphSpectra, cert: &mut GapCertificate, tol: f64) -> Result<()> {
    let (i, j) = (cert.i, cert.j);
    let (plus, minus) = alpha_pair_with(sp, i, j)?;
    cert.equality_detected = equality_shift(&plus, &minus).is_some();
    let merged = partial::merge(&plus, &minus)?;
    if cert.hypotheses_ok && !merged.common_shift {
        cert.invariant_violations.push(format!(
            "shifts differ: {} vs {}",
            merged.plus.s0_exact, merged.minus.s0_exact
        ));
    }
    let k = merged.k();
    cert.k = Some(k);
    let mp = arrow_matrix(&merged.plus)?;
    let mm = arrow_matrix(&merged.minus)?;
    let ev_p = mp.eigenvalues();
    let ev_m = mm.eigenvalues();

    let labelled = |f: &QRatFunc, pf: &PartialFraction| -> Vec<(f64, bool)> {
        let mut v: Vec<(f64, bool)> = isolate_real_roots(f.num()).into_iter().map(|b| (b.mid, true)).collect();
        v.extend(pf.terms.iter().filter(|t| t.residue == 0.0).map(|t| (t.pole, false)));
        v.sort_by(|a, b| a.0.total_cmp(&b.0));
        v
    };
    let lp = labelled(&plus, &merged.plus);
    let lm = labelled(&minus, &merged.minus);
    if lp.len() != k + 1 || lm.len() != k + 1 {
        return Err(Error::Invariant(format!(
            "arrow spectra have {} and {} known eigenvalues, expected {}",
            lp.len(),
            lm.len(),
            k + 1
        )));
    }
    let cross = lp
        .iter()
        .zip(&ev_p)
        .chain(lm.iter().zip(&ev_m))
        .map(|(a, b)| (a.0 - b).abs())
        .fold(0.0, f64::max);
    cert.eigen_crosscheck = Some(cross);
    if cross > 1e-7 {
        cert.invariant_violations
            .push(format!("arrow eigenvalues differ from the exact zeros and poles by {cross}"));
    }

    let op = op_norm_symmetric(&mat_sub(&mp.to_dense(), &mm.to_dense()));
    let rank_two = mp
        .arms
        .iter()
        .zip(&mm.arms)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    let abs_diff: f64 = merged
        .plus
        .terms
        .iter()
        .zip(&merged.minus.terms)
        .map(|(a, b)| (a.residue - b.residue).abs())
        .sum();
    let weyl = lp
        .iter()
        .zip(&lm)
        .map(|(a, b)| (a.0 - b.0).abs())
        .chain(ev_p.iter().zip(&ev_m).map(|(a, b)| (a - b).abs()))
        .fold(0.0, f64::max)
        - op;
    cert.op_norm = Some(op);
    cert.rank_two_norm = Some(rank_two);
    cert.sum_abs_residue_diff = Some(abs_diff);
    cert.weyl_excess = Some(weyl);
    if weyl > tol {
        cert.invariant_violations
            .push(format!("eigenvalue shift exceeds the operator norm by {weyl}"));
    }
    if merged.common_shift && (op - rank_two).abs() > 1e-7 * (1.0 + op) {
        cert.invariant_violations
            .push(format!("difference norm {op} is not the rank-two value {rank_two}"));
    }
    if rank_two * rank_two > abs_diff + tol {
        cert.invariant_violations
            .push("squared root-residue differences exceed the residue differences".into());
    }

    let m = (0..=k)
        .filter(|&l| lp[l].1 && lm[l].1)
        .min_by(|&a, &b| (lp[a].0 - lm[a].0).abs().total_cmp(&(lp[b].0 - lm[b].0).abs()));
    match m {
        Some(m) => {
            let d = (lp[m].0 - lm[m].0).abs();
            cert.m = Some(m);
            cert.theta_m_plus = Some(lp[m].0);
            cert.theta_m_minus = Some(lm[m].0);
            if d > op + tol {
                cert.invariant_violations
                    .push(format!("index {m} gap {d} exceeds the operator norm {op}"));
            }
            if let Some(gap) = cert.achieved_gap {
                if gap > d + tol {
                    cert.invariant_violations
                        .push(format!("support gap {gap} exceeds the distance {d} at index {m}"));
                }
            }
        }
        None => cert.invariant_violations.push("no common index carries zeros of both functions".into()),
    }
    cert.m_plus = Some(mp);
    cert.m_minus = Some(mm);
    cert.eigenvalues_plus = ev_p;
    cert.eigenvalues_minus = ev_m;
    cert.alpha_plus = Some(merged.plus);
    cert.alpha_minus = Some(merged.minus);
    Ok(())
}

/// Neighbors of `i` and of `j` through which every `i`–`j` path other than the
/// edge `ij` passes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NeighborSets {
    pub i_side: Vec<usize>,
    pub j_side: Vec<usize>,
}

/// Neighbors of `i` (resp. `j`) lying in a component of `G \ {i, j}` that also
/// meets a neighbor of the other endpoint.
pub fn detect_neighbor_sets(g: &Graph, i: usize, j: usize) -> NeighborSets {
    let n = g.order();
    let adj = g.adjacency_lists();
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if s == i || s == j || comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if y != i && y != j && comp[y] == usize::MAX {
                    comp[y] = next;
                    stack.push(y);
                }
            }
        }
        next += 1;
    }
    let side = |a: usize, b: usize| -> Vec<&usize> { adj[a].iter().filter(|&&x| x != b && x != a).collect() };
    let (ni, nj) = (side(i, j), side(j, i));
    let shared = |x: usize, other: &[&usize]| other.iter().any(|&&y| comp[y] == comp[x]);
    NeighborSets {
        i_side: ni.iter().filter(|&&&x| shared(x, &nj)).map(|&&x| x).collect(),
        j_side: nj.iter().filter(|&&&x| shared(x, &ni)).map(|&&x| x).collect(),
    }
}

fn resolve_sets(g: &Graph, i: usize, j: usize, given: Option<NeighborSets>) -> Result<NeighborSets> {
    let detected = detect_neighbor_sets(g, i, j);
    let Some(given) = given else {
        return Ok(detected);
    };
    for (v, other, set, need) in [(i, j, &given.i_side, &detected.i_side), (j, i, &given.j_side, &detected.j_side)] {
        for &x in set {
            if x == other || x == v || !g.has_edge(v, x) {
                return Err(Error::Structure(format!("{x} is not an admissible neighbor of {v}")));
            }
        }
        if let Some(x) = need.iter().find(|x| !set.contains(x)) {
            return Err(Error::Structure(format!(
                "a path from {i} to {j} leaves {v} through {x}, which is not in the given set"
            )));
        }
    }
    Ok(given)
}

fn sum_sq(g: &Graph, v: usize, set: &[usize]) -> f64 {
    set.iter().map(|&x| ratio_to_f64(&g.weight(v, x)).powi(2)).sum()
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidueMass {
    pub i: usize,
    pub j: usize,
    pub neighbors: NeighborSets,
    /// Polynomial part of `S/φ^{G\{i,j}}`, equal to the weight of `ij`.
    pub polynomial_part: f64,
    pub terms: Vec<PfTerm>,
    pub mass: f64,
    pub bound: f64,
}

pub fn residue_mass(g: &Graph, i: usize, j: usize) -> Result<ResidueMass> {
    residue_mass_with(&GraphSpectra::new(g), i, j, None, DEFAULT_TOLERANCE)
}

/// Residues `λ_ℓ` of `S/φ^{G\{i,j}}` with `Σ|λ_ℓ|` checked against
/// `√(Σ a_{i,i_k}² · Σ a_{j_l,j}²)`.
pub fn residue_mass_with(
    sp: &GraphSpectra,
    i: usize,
    j: usize,
    sets: Option<NeighborSets>,
    tol: f64,
) -> Result<ResidueMass> {
    let g = sp.graph();
    let pp = sp.pair(i, j)?;
    if i == j {
        return Err(Error::ParameterOutOfRange(format!("pair ({i}, {j}) needs two distinct vertices")));
    }
    let neighbors = resolve_sets(g, i, j, sets)?;
    let bound = (sum_sq(g, i, &neighbors.i_side) * sum_sq(g, j, &neighbors.j_side)).sqrt();
    let f = QRatFunc::new(pp.s.clone(), pp.phi_ij.clone())?;
    let (q, r) = f.split();
    if q != QPoly::constant(g.weight(i, j)) {
        return Err(Error::Invariant(format!(
            "polynomial part of the path quotient is {q}, expected the weight of ({i}, {j})"
        )));
    }
    let terms: Vec<PfTerm> = if r.is_zero() {
        Vec::new()
    } else {
        if !f.den().is_square_free() {
            return Err(Error::RepeatedPoles);
        }
        let (rf, dp) = (r.to_f64(), f.den().derivative().to_f64());
        isolate_real_roots(f.den())
            .into_iter()
            .map(|b| PfTerm {
                pole: b.mid,
                residue: rf.eval_f64(b.mid) / dp.eval_f64(b.mid),
            })
            .collect()
    };
    let mass = terms.iter().map(|t| t.residue.abs()).sum::<f64>();
    if mass > bound + tol {
        return Err(Error::Invariant(format!("residue mass {mass} exceeds the bound {bound} for ({i}, {j})")));
    }
    Ok(ResidueMass {
        i,
        j,
        neighbors,
        polynomial_part: ratio_to_f64(&g.weight(i, j)),
        terms,
        mass,
        bound,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneralBound {
    pub i: usize,
    pub j: usize,
    pub neighbors: NeighborSets,
    pub a_ij: f64,
    pub sum_i: f64,
    pub sum_j: f64,
    pub value: f64,
    pub gap: f64,
}

pub fn general_bound(g: &Graph, i: usize, j: usize) -> Result<GeneralBound> {
    general_bound_with(&GraphSpectra::new(g), i, j, None, DEFAULT_TOLERANCE)
}

/// `|a_ij| + √(a_ij² + 2√(Σ a_{i,i_k}² · Σ a_{j_l,j}²))`, checked against the support gap.
pub fn general_bound_with(
    sp: &GraphSpectra,
    i: usize,
    j: usize,
    sets: Option<NeighborSets>,
    tol: f64,
) -> Result<GeneralBound> {
    let g = sp.graph();
    if i == j || !sp.is_strongly_cospectral(i, j)? {
        return Err(Error::Precondition(format!("vertices {i} and {j} are not strongly cospectral")));
    }
    let neighbors = resolve_sets(g, i, j, sets)?;
    let a = ratio_to_f64(&g.weight(i, j)).abs();
    let (sum_i, sum_j) = (sum_sq(g, i, &neighbors.i_side), sum_sq(g, j, &neighbors.j_side));
    let value = a + (a * a + 2.0 * (sum_i * sum_j).sqrt()).sqrt();
    let gap = sp.min_support_gap(i)?;
    if gap > value + tol {
        return Err(Error::Invariant(format!("support gap {gap} exceeds the bound {value} for ({i}, {j})")));
    }
    Ok(GeneralBound {
        i,
        j,
        neighbors,
        a_ij: a,
        sum_i,
        sum_j,
        value,
        gap,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BridgeReport {
    pub i: usize,
    pub j: usize,
    pub gap: f64,
    pub is_p2: bool,
    /// `gap ≤ 1` or the graph is `P2`.
    pub holds: bool,
}

pub fn bridge_gap_check(g: &Graph, i: usize, j: usize) -> Result<BridgeReport> {
    bridge_gap_check_with(&GraphSpectra::new(g), i, j, DEFAULT_TOLERANCE)
}

/// For a cospectral pair joined by a bridge, the support of `i` has two
/// elements at distance at most 1 unless the graph is `P2`.
pub fn bridge_gap_check_with(sp: &GraphSpectra, i: usize, j: usize, tol: f64) -> Result<BridgeReport> {
    let g = sp.graph();
    sp.check_vertex(i)?;
    sp.check_vertex(j)?;
    if i == j || !g.has_edge(i, j) || !is_bridge(g, EdgeRef::new(i, j)) {
        return Err(Error::Precondition(format!("({i}, {j}) is not a bridge")));
    }
    if !sp.is_cospectral(i, j)? {
        return Err(Error::Precondition(format!("vertices {i} and {j} are not cospectral")));
    }
    debug_assert!(same_component(g, i, j));
    let gap = sp.min_support_gap(i)?;
    let is_p2 = is_path_graph(g, 2);
    Ok(BridgeReport {
        i,
        j,
        gap,
        is_p2,
        holds: is_p2 || gap <= 1.0 + tol,
    })
}
