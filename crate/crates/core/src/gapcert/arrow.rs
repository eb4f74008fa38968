//! Arrow matrices `[[s0, √μ…], [√μ, diag(r)]]` whose spectra carry the zeros of `α`.

use serde::Serialize;

use super::partial::PartialFraction;
use crate::error::{Error, Result};
use crate::linalg::eigenvalues;

/// Residues below this are rejected by [`arrow_matrix`].
pub const NEGATIVE_RESIDUE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArrowMatrix {
    pub corner: f64,
    pub tail: Vec<f64>,
    pub arms: Vec<f64>,
}

impl ArrowMatrix {
    pub fn dimension(&self) -> usize {
        self.tail.len() + 1
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.dimension();
        let mut m = vec![vec![0.0; n]; n];
        m[0][0] = self.corner;
        for (l, (&r, &a)) in self.tail.iter().zip(&self.arms).enumerate() {
            m[0][l + 1] = a;
            m[l + 1][0] = a;
            m[l + 1][l + 1] = r;
        }
        m
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Vec<f64> {
        eigenvalues(&self.to_dense())
    }

    /// `(t - s0)·Π(t - r_ℓ) - Σ μ_ℓ·Π_{m≠ℓ}(t - r_m)`.
    pub fn char_poly_eval(&self, t: f64) -> f64 {
        let factors: Vec<f64> = self.tail.iter().map(|r| t - r).collect();
        let full: f64 = factors.iter().product();
        let mut acc = (t - self.corner) * full;
        for (l, a) in self.arms.iter().enumerate() {
            let others: f64 = factors.iter().enumerate().filter(|&(m, _)| m != l).map(|(_, f)| f).product();
            acc -= a * a * others;
        }
        acc
    }
}

pub fn arrow_matrix(pf: &PartialFraction) -> Result<ArrowMatrix> {
    let mut arms = Vec::with_capacity(pf.terms.len());
    for t in &pf.terms {
        if t.residue < -NEGATIVE_RESIDUE_TOL {
            return Err(Error::NegativeResidue(t.residue));
        }
        arms.push(t.residue.max(0.0).sqrt());
    }
    Ok(ArrowMatrix {
        corner: pf.s0,
        tail: pf.terms.iter().map(|t| t.pole).collect(),
        arms,
    })
}
