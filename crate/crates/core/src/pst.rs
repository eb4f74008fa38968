//! Perfect state transfer decider.
//!
//! A pair `(i, j)` admits transfer iff it is strongly cospectral, every support
//! eigenvalue has the form `(a + b_r √Δ)/2` with one integer `a` and one
//! square-free `Δ`, and the normalized differences `δ_r = (b_0 - b_r)/2` admit
//! a divisor `g` with `δ_r / g` even exactly on the plus part. Transfer then
//! happens at the odd multiples of `π/(g√Δ)`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::generators::{laplacian_form, scaled};
use crate::graph::Graph;
use crate::poly::roots::{is_root_of, isolate_real_roots};
use crate::scalar::ratio_to_f64;
use crate::spectra::{partition_from_pair, GraphSpectra};
use crate::walksim::{model_matrix, verify_certificate, Propagator};
use crate::{QPoly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Adjacency,
    Laplacian,
}

impl std::str::FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adjacency" => Ok(Model::Adjacency),
            "laplacian" => Ok(Model::Laplacian),
            _ => Err(Error::ParameterOutOfRange(format!("unknown model {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PST")]
    Pst,
    #[serde(rename = "NO_PST")]
    NoPst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailingCondition {
    NotStronglyCospectral,
    RatioConditionB,
    ParityConditionC,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadraticRoot {
    pub theta: f64,
    pub b: i64,
}

/// Support eigenvalues written as `(a + b_r √Δ)/2`, largest first.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadraticSpectrum {
    pub a: i64,
    pub delta: u64,
    pub roots: Vec<QuadraticRoot>,
}

impl QuadraticSpectrum {
    pub fn value(&self, b: i64) -> f64 {
        (self.a as f64 + b as f64 * (self.delta as f64).sqrt()) / 2.0
    }
}

/// Largest square-free divisor `d` with `m = d·s²`.
pub fn square_free_kernel(m: u64) -> u64 {
    let mut m = m;
    let mut out = 1;
    let mut p = 2;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    out * m
}

fn isqrt_exact(m: u64) -> Option<u64> {
    let r = (m as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&x| x * x == m)
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Exact `(a, Δ, b_r)` fit of a square-free support polynomial, or `None`
/// when the roots are not of the required shape.
pub fn fit_quadratic_spectrum(support: &QPoly) -> Option<QuadraticSpectrum> {
    let deg = support.degree()?;
    if deg == 0 {
        return None;
    }
    let support = support.monic();
    let boxes = isolate_real_roots(&support);
    if boxes.len() != deg || boxes.iter().any(|b| b.multiplicity != 1) {
        return None;
    }
    let limit = (1u64 << 40) as f64;
    if boxes.iter().any(|b| b.mid.abs() > limit) {
        return None;
    }
    // rational roots of the required shape are half-integers
    let mut rational: Vec<(f64, Rational)> = Vec::new();
    let mut irrational: Vec<f64> = Vec::new();
    for b in &boxes {
        let c = Rational::new(BigInt::from((2.0 * b.mid).round() as i64), BigInt::from(2));
        if b.contains(&c) && support.eval(&c).is_zero() {
            rational.push((b.mid, c));
        } else {
            irrational.push(b.mid);
        }
    }

    let (a, delta, bs): (i64, u64, Vec<(f64, i64)>) = if irrational.is_empty() {
        // Δ = 1: θ = (a + b)/2 with b ≡ a forces integer eigenvalues
        let mut bs = Vec::new();
        for (mid, c) in &rational {
            if !c.is_integer() {
                return None;
            }
            bs.push((*mid, 2 * c.to_integer().to_i64()?));
        }
        (0, 1, bs)
    } else {
        if rational.len() > 1 {
            return None;
        }
        let lo = irrational.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = irrational.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let a = (lo + hi).round() as i64;
        let mut bs = Vec::new();
        if let Some((mid, c)) = rational.first() {
            if c * int(2) != int(a) {
                return None;
            }
            bs.push((*mid, 0));
        }
        let mut delta = 0u64;
        for &th in &irrational {
            let x = 2.0 * th - a as f64;
            let m = (x * x).round();
            if m < 1.0 {
                return None;
            }
            let m = m as u64;
            let d = square_free_kernel(m);
            if delta == 0 {
                delta = d;
            } else if d != delta {
                return None;
            }
            let b = isqrt_exact(m / d)? as i64;
            bs.push((th, if x < 0.0 { -b } else { b }));
        }
        if delta < 2 {
            return None;
        }
        (a, delta, bs)
    };

    let spec = QuadraticSpectrum {
        a,
        delta,
        roots: {
            let mut r: Vec<QuadraticRoot> = bs.into_iter().map(|(theta, b)| QuadraticRoot { theta, b }).collect();
            r.sort_by(|x, y| y.theta.total_cmp(&x.theta));
            r
        },
    };
    if spec.roots.iter().any(|r| (spec.value(r.b) - r.theta).abs() > 1e-9) {
        return None;
    }
    if spec.roots.iter().any(|r| (r.b - a).rem_euclid(2) != 0) {
        return None;
    }
    // exact identity: support = Π over conjugate pairs and rational roots
    let mut product = QPoly::one();
    let four = int(4);
    for r in &spec.roots {
        if r.b < 0 && delta > 1 {
            continue;
        }
        let factor = if delta == 1 || r.b == 0 {
            QPoly::linear(Rational::new(BigInt::from(a + r.b), BigInt::from(2)))
        } else {
            let c0 = (int(a) * int(a) - int(r.b) * int(r.b) * int(delta as i64)) / &four;
            QPoly::new(vec![c0, int(-a), Rational::one()])
        };
        product = &product * &factor;
    }
    (product == support).then_some(spec)
}

/// Outcome of the decider, including the witness when transfer occurs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PstCertificate {
    pub i: usize,
    pub j: usize,
    pub model: Model,
    pub result: Verdict,
    pub failing_condition: Option<FailingCondition>,
    pub spectrum: Option<QuadraticSpectrum>,
    /// `σ_r` aligned with `spectrum.roots`.
    pub signs: Vec<i8>,
    /// Index of the reference eigenvalue `θ_0` (largest in the plus part).
    pub reference: usize,
    pub g: Option<u64>,
    pub k: Vec<i64>,
    /// The matrix actually analyzed is `weight_scale · M`; times are reported for `M`.
    pub weight_scale: String,
    /// `π / (g √Δ)`, rescaled by `weight_scale`.
    pub t_min: Option<f64>,
    /// `λ` with `exp(i t_min M) e_i = λ e_j`, as `[re, im]`.
    pub phase: Option<[f64; 2]>,
    pub fidelity: Option<f64>,
    pub invariant_violations: Vec<String>,
}

impl PstCertificate {
    fn no(i: usize, j: usize, model: Model, why: FailingCondition) -> Self {
        PstCertificate {
            i,
            j,
            model,
            result: Verdict::NoPst,
            failing_condition: Some(why),
            spectrum: None,
            signs: Vec::new(),
            reference: 0,
            g: None,
            k: Vec::new(),
            weight_scale: "1".into(),
            t_min: None,
            phase: None,
            fidelity: None,
            invariant_violations: Vec::new(),
        }
    }

    pub fn is_pst(&self) -> bool {
        self.result == Verdict::Pst
    }
}

fn lcm_of_denominators(g: &Graph) -> BigInt {
    g.edges()
        .map(|(_, w)| w)
        .chain(g.loops().map(|(_, w)| w))
        .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()))
}

/// Decides transfer between `i` and `j` and cross-checks a positive verdict
/// against the simulated walk.
pub fn decide_pst(g: &Graph, i: usize, j: usize, model: Model) -> Result<PstCertificate> {
    for v in [i, j] {
        if v >= g.order() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.order() });
        }
    }
    if i == j {
        return Err(Error::Precondition("transfer needs two distinct vertices".into()));
    }
    let (matrix_graph, scale) = match model {
        Model::Laplacian => {
            if !g.is_integer_weighted() {
                return Err(Error::NonIntegerWeights);
            }
            (laplacian_form(g), BigInt::one())
        }
        Model::Adjacency => {
            let l = lcm_of_denominators(g);
            if l.is_one() {
                (g.clone(), l)
            } else {
                (scaled(g, &Rational::from_integer(l.clone())), l)
            }
        }
    };
    decide_on_matrix(&GraphSpectra::new(&matrix_graph), g, i, j, model, &scale)
}

/// Decider over a precomputed spectra cache of the integer matrix graph.
pub fn decide_on_matrix(
    sp: &GraphSpectra,
    original: &Graph,
    i: usize,
    j: usize,
    model: Model,
    scale: &BigInt,
) -> Result<PstCertificate> {
    if !sp.is_strongly_cospectral(i, j)? {
        return Ok(PstCertificate::no(i, j, model, FailingCondition::NotStronglyCospectral));
    }
    let support = sp.support_poly(i)?;
    let spec = match fit_quadratic_spectrum(&support) {
        Some(s) => s,
        None => return Ok(PstCertificate::no(i, j, model, FailingCondition::RatioConditionB)),
    };
    let pp = sp.pair(i, j)?;
    let part = partition_from_pair(sp.graph(), &pp, support.clone())?;
    let boxes = isolate_real_roots(&support);
    // spectrum.roots is descending, boxes ascending
    let signs: Vec<i8> = spec
        .roots
        .iter()
        .enumerate()
        .map(|(k, _)| {
            let bx = &boxes[boxes.len() - 1 - k];
            if is_root_of(&support, bx, &part.plus_poly) {
                1
            } else {
                -1
            }
        })
        .collect();
    let reference = signs
        .iter()
        .position(|&s| s == 1)
        .ok_or_else(|| Error::Invariant("plus part of a strongly cospectral pair is empty".into()))?;
    let b0 = spec.roots[reference].b;
    let delta: Vec<i64> = spec.roots.iter().map(|r| (b0 - r.b) / 2).collect();
    let common = delta.iter().fold(0i64, |acc, &d| acc.gcd(&d));
    if common == 0 {
        return Err(Error::Invariant("support of a strongly cospectral pair is a single eigenvalue".into()));
    }
    let works = |g: i64| {
        delta
            .iter()
            .zip(&signs)
            .all(|(&d, &s)| (d / g).rem_euclid(2) == i64::from(s == -1))
    };
    let chosen = (1..=common).rev().filter(|g| common % g == 0).find(|&g| works(g));
    let mut cert = PstCertificate::no(i, j, model, FailingCondition::ParityConditionC);
    cert.spectrum = Some(spec.clone());
    cert.signs = signs;
    cert.reference = reference;
    cert.weight_scale = scale.to_string();
    let gg = match chosen {
        Some(gg) => gg,
        None => return Ok(cert),
    };
    let scale_f = ratio_to_f64(&Rational::from_integer(scale.clone()));
    let t_min = scale_f * PI / (gg as f64 * (spec.delta as f64).sqrt());
    cert.result = Verdict::Pst;
    cert.failing_condition = None;
    cert.g = Some(gg as u64);
    cert.k = delta.iter().map(|d| d / gg).collect();
    cert.t_min = Some(t_min);

    let prop = Propagator::new(&model_matrix(original, model));
    let (re, im) = prop.amplitude(i, j, t_min);
    cert.phase = Some([re, im]);
    cert.fidelity = Some((re * re + im * im).sqrt());

    if cert.k[reference] != 0 || cert.signs[reference] != 1 {
        cert.invariant_violations.push("reference eigenvalue must have k = 0 and σ = +1".into());
    }
    if original.is_integer_weighted() {
        if t_min > PI / 2f64.sqrt() + 1e-12 {
            cert.invariant_violations
                .push(format!("minimum transfer time {t_min} exceeds π/√2"));
        }
        if gg < 2 && spec.delta < 2 {
            cert.invariant_violations.push("g = Δ = 1 for an integer-weighted graph".into());
        }
    }
    if !verify_certificate(original, &cert) {
        return Err(Error::Invariant(format!(
            "walk simulation does not confirm transfer between {i} and {j} at t = {t_min}"
        )));
    }
    Ok(cert)
}

/// Every unordered pair with perfect state transfer, in lexicographic order.
pub fn pst_pairs(g: &Graph, model: Model) -> Result<Vec<(usize, usize, PstCertificate)>> {
    let (matrix_graph, scale) = match model {
        Model::Laplacian => {
            if !g.is_integer_weighted() {
                return Err(Error::NonIntegerWeights);
            }
            (laplacian_form(g), BigInt::one())
        }
        Model::Adjacency => {
            let l = lcm_of_denominators(g);
            (scaled(g, &Rational::from_integer(l.clone())), l)
        }
    };
    let sp = GraphSpectra::new(&matrix_graph);
    let n = g.order();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            // cheap filter before the full decider
            if !sp.is_cospectral(i, j)? {
                continue;
            }
            let cert = decide_on_matrix(&sp, g, i, j, model, &scale)?;
            if cert.is_pst() {
                out.push((i, j, cert));
            }
        }
    }
    Ok(out)
}
