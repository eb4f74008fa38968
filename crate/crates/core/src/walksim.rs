//! Floating-point quantum walk `U(t) = exp(itM)` through a symmetric eigendecomposition.

use std::fmt::Write as _;

use num_traits::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::generators::laplacian_form;
use crate::graph::Graph;
use crate::linalg::symmetric_eigen;
use crate::pst::{Model, PstCertificate, Verdict};

/// Fidelity threshold for a transfer to count as perfect.
pub const PST_FIDELITY: f64 = 1.0 - 1e-9;

/// Spectral data for `exp(itM)`: eigenvalues and orthonormal eigenvectors.
#[derive(Clone, Debug)]
pub struct Propagator<F> {
    values: Vec<F>,
    /// `vectors[k][v]`: entry `v` of the `k`-th eigenvector.
    vectors: Vec<Vec<F>>,
}

impl<F: Float> Propagator<F> {
    pub fn new(m: &[Vec<F>]) -> Self {
        let e = symmetric_eigen(m);
        Propagator {
            values: e.values,
            vectors: e.vectors,
        }
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn eigenvalues(&self) -> &[F] {
        &self.values
    }

    /// `(θ_k, U_ik U_jk)` for every eigenvalue.
    pub fn pair_weights(&self, i: usize, j: usize) -> Vec<(F, F)> {
        self.values
            .iter()
            .zip(&self.vectors)
            .map(|(&th, v)| (th, v[i] * v[j]))
            .collect()
    }

    /// `⟨j| exp(itM) |i⟩` as `(re, im)`.
    pub fn amplitude(&self, i: usize, j: usize, t: F) -> (F, F) {
        self.values
            .iter()
            .zip(&self.vectors)
            .fold((F::zero(), F::zero()), |(re, im), (&th, v)| {
                let w = v[i] * v[j];
                let (s, c) = (th * t).sin_cos();
                (re + w * c, im + w * s)
            })
    }

    pub fn fidelity(&self, i: usize, j: usize, t: F) -> F {
        let (re, im) = self.amplitude(i, j, t);
        (re * re + im * im).sqrt()
    }

    /// Largest fidelity on the grid `h, 2h, ..., steps·h`, as `(t, value)`.
    ///
    /// Phases advance by multiplication; they are recomputed from scratch every
    /// 1024 steps to keep rounding drift far below the tolerances used here.
    pub fn scan_max(&self, i: usize, j: usize, h: F, steps: usize) -> (F, F) {
        let w = self.pair_weights(i, j);
        let step: Vec<(F, F)> = w.iter().map(|&(th, _)| (th * h).sin_cos()).map(|(s, c)| (c, s)).collect();
        let mut phase: Vec<(F, F)> = vec![(F::one(), F::zero()); w.len()];
        let mut best = (F::zero(), F::zero());
        for k in 1..=steps {
            let t = h * F::from(k).unwrap();
            if k % 1024 == 0 {
                for (p, &(th, _)) in phase.iter_mut().zip(&w) {
                    let (s, c) = (th * t).sin_cos();
                    *p = (c, s);
                }
            } else {
                for (p, &(c, s)) in phase.iter_mut().zip(&step) {
                    *p = (p.0 * c - p.1 * s, p.0 * s + p.1 * c);
                }
            }
            let (re, im) = phase
                .iter()
                .zip(&w)
                .fold((F::zero(), F::zero()), |(re, im), (p, &(_, wk))| (re + wk * p.0, im + wk * p.1));
            let f = (re * re + im * im).sqrt();
            if f > best.1 {
                best = (t, f);
            }
        }
        best
    }
}

pub type Propagator64 = Propagator<f64>;
pub type Propagator32 = Propagator<f32>;

/// The Hamiltonian of a model: the adjacency matrix or `L = D - A`.
pub fn model_matrix(g: &Graph, model: Model) -> Vec<Vec<f64>> {
    match model {
        Model::Adjacency => g.matrix_f64(),
        Model::Laplacian => laplacian_form(g).matrix_f64(),
    }
}

fn check(g: &Graph, i: usize, j: usize, t: f64) -> Result<()> {
    for v in [i, j] {
        if v >= g.order() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.order() });
        }
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::ParameterOutOfRange(format!("time {t} must be finite and nonnegative")));
    }
    Ok(())
}

/// `|⟨j| exp(itA) |i⟩|`.
pub fn fidelity(g: &Graph, i: usize, j: usize, t: f64) -> Result<f64> {
    check(g, i, j, t)?;
    Ok(Propagator::new(&g.matrix_f64()).fidelity(i, j, t))
}

#[derive(Clone, Debug, Serialize)]
pub struct FidelitySeries {
    pub i: usize,
    pub j: usize,
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub peak_t: f64,
    pub peak_value: f64,
}

impl FidelitySeries {
    /// `t,fidelity` rows with 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,fidelity\n");
        for (t, f) in self.times.iter().zip(&self.values) {
            writeln!(out, "{},{}", sig12(*t), sig12(*f)).unwrap();
        }
        out
    }
}

/// Decimal rendering with 12 significant digits.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (11 - exp).max(0) as usize;
    let s = format!("{:.*}", decimals, x);
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

pub fn fidelity_scan(g: &Graph, i: usize, j: usize, t_max: f64, steps: usize) -> Result<FidelitySeries> {
    fidelity_scan_model(g, i, j, t_max, steps, Model::Adjacency)
}

/// Uniform samples on `[0, t_max]` with a parabolic refinement of the best one.
pub fn fidelity_scan_model(g: &Graph, i: usize, j: usize, t_max: f64, steps: usize, model: Model) -> Result<FidelitySeries> {
    check(g, i, j, t_max)?;
    if steps < 2 {
        return Err(Error::ParameterOutOfRange(format!("steps = {steps}, needs >= 2")));
    }
    let prop = Propagator::new(&model_matrix(g, model));
    let h = t_max / (steps - 1) as f64;
    let times: Vec<f64> = (0..steps).map(|k| k as f64 * h).collect();
    let values: Vec<f64> = times.iter().map(|&t| prop.fidelity(i, j, t)).collect();
    let best = (0..steps)
        .max_by(|&a, &b| values[a].total_cmp(&values[b]).then(b.cmp(&a)))
        .expect("steps >= 2");
    let (mut peak_t, mut peak_value) = (times[best], values[best]);
    if best > 0 && best + 1 < steps {
        let (l, c, r) = (values[best - 1], values[best], values[best + 1]);
        let curv = l - 2.0 * c + r;
        if curv < 0.0 {
            let t = times[best] + 0.5 * h * (l - r) / curv;
            let f = prop.fidelity(i, j, t);
            if f > peak_value && (t - times[best]).abs() <= h {
                peak_t = t;
                peak_value = f;
            }
        }
    }
    Ok(FidelitySeries {
        i,
        j,
        times,
        values,
        peak_t,
        peak_value,
    })
}

/// Checks a transfer certificate against the simulated walk: perfect transfer
/// at `t_min` and `3·t_min`, and none at `2·t_min` unless `i` is periodic there.
pub fn verify_certificate(g: &Graph, cert: &PstCertificate) -> bool {
    let t = match (cert.result, cert.t_min) {
        (Verdict::Pst, Some(t)) if t > 0.0 && t.is_finite() => t,
        _ => return false,
    };
    if cert.i >= g.order() || cert.j >= g.order() {
        return false;
    }
    let prop = Propagator::new(&model_matrix(g, cert.model));
    let (i, j) = (cert.i, cert.j);
    if prop.fidelity(i, j, t) < PST_FIDELITY || prop.fidelity(i, j, 3.0 * t) < PST_FIDELITY {
        return false;
    }
    let periodic = prop.fidelity(i, i, 2.0 * t) >= PST_FIDELITY;
    periodic || prop.fidelity(i, j, 2.0 * t) < 1.0 - 1e-6
}
