//! The `α±` functions and their partial fractions `t - s0 - Σ μ_ℓ/(t - r_ℓ)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::roots::{is_root_of, isolate_real_roots, RootBox};
use crate::scalar::ratio_to_f64;
use crate::spectra::{GraphSpectra, PairPolys};
use crate::{QPoly, QRatFunc};

/// Residues this small are treated as exact zeros.
pub const RESIDUE_CLAMP: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PfTerm {
    pub pole: f64,
    pub residue: f64,
}

/// `t - s0 - Σ residue/(t - pole)`, poles increasing.
#[derive(Clone, Debug, Serialize)]
pub struct PartialFraction {
    pub s0: f64,
    /// `s0` as an exact rational, `"p/q"`.
    pub s0_exact: String,
    pub terms: Vec<PfTerm>,
    pub pole_boxes: Vec<RootBox>,
}

impl PartialFraction {
    pub fn eval(&self, t: f64) -> f64 {
        t - self.s0 - self.terms.iter().map(|x| x.residue / (t - x.pole)).sum::<f64>()
    }

    pub fn min_residue(&self) -> f64 {
        self.terms.iter().map(|x| x.residue).fold(f64::INFINITY, f64::min)
    }
}

fn clamp(x: f64) -> f64 {
    if x.abs() < RESIDUE_CLAMP {
        0.0
    } else {
        x
    }
}

/// `(α⁺, α⁻) = ((φ^{G\i} - S)/φ^{G\{i,j}}, (φ^{G\i} + S)/φ^{G\{i,j}})`, reduced.
pub fn alphas_from_pair(pp: &PairPolys) -> Result<(QRatFunc, QRatFunc)> {
    let plus = QRatFunc::new(&pp.phi_i - &pp.s, pp.phi_ij.clone())?;
    let minus = QRatFunc::new(&pp.phi_i + &pp.s, pp.phi_ij.clone())?;
    Ok((plus, minus))
}

/// The `α±` pair of a strongly cospectral pair, with their zero sets checked
/// against the support partition.
pub fn alpha_pair_with(sp: &GraphSpectra, i: usize, j: usize) -> Result<(QRatFunc, QRatFunc)> {
    let part = sp.support_partition(i, j)?;
    let pp = sp.pair(i, j)?;
    let (plus, minus) = alphas_from_pair(&pp)?;
    for (f, zeros, name) in [(&plus, &part.plus_poly, "plus"), (&minus, &part.minus_poly, "minus")] {
        if f.num().monic() != *zeros {
            return Err(Error::Invariant(format!(
                "zeros of the {name} alpha function for ({i}, {j}) differ from the {name} part of the support"
            )));
        }
    }
    Ok((plus, minus))
}

pub fn alpha_pair(g: &crate::Graph, i: usize, j: usize) -> Result<(QRatFunc, QRatFunc)> {
    alpha_pair_with(&GraphSpectra::new(g), i, j)
}

/// Partial fraction of a reduced `f` with monic numerator of degree one above
/// a square-free denominator.
pub fn partial_fraction(f: &QRatFunc) -> Result<PartialFraction> {
    let (dn, dd) = (f.num().degree(), f.den().degree().unwrap_or(0));
    if dn != Some(dd + 1) {
        return Err(Error::DegreeMismatch(format!(
            "numerator degree {dn:?} must exceed denominator degree {dd} by one"
        )));
    }
    if !f.num().is_monic() {
        return Err(Error::Precondition("leading coefficient of the quotient must be 1".into()));
    }
    if !f.den().is_square_free() {
        return Err(Error::RepeatedPoles);
    }
    let (q, r) = f.split();
    let s0 = -q.coeff(0);
    let boxes = isolate_real_roots(f.den());
    if boxes.len() != dd {
        return Err(Error::Invariant("denominator has non-real poles".into()));
    }
    let rf = r.to_f64();
    let dprime = f.den().derivative().to_f64();
    let terms = boxes
        .iter()
        .map(|b| PfTerm {
            pole: b.mid,
            residue: clamp(-rf.eval_f64(b.mid) / dprime.eval_f64(b.mid)),
        })
        .collect();
    Ok(PartialFraction {
        s0: ratio_to_f64(&s0),
        s0_exact: s0.to_string(),
        terms,
        pole_boxes: boxes,
    })
}

/// `α⁺` and `α⁻` written over the union of their poles; a pole missing from
/// one side gets residue zero there.
#[derive(Clone, Debug, Serialize)]
pub struct MergedAlphas {
    pub plus: PartialFraction,
    pub minus: PartialFraction,
    /// Exact `r_0⁺ = r_0⁻`.
    pub common_shift: bool,
}

impl MergedAlphas {
    pub fn k(&self) -> usize {
        self.plus.terms.len()
    }

    pub fn poles(&self) -> Vec<f64> {
        self.plus.terms.iter().map(|t| t.pole).collect()
    }
}

pub fn merge(plus: &QRatFunc, minus: &QRatFunc) -> Result<MergedAlphas> {
    let pf_plus = partial_fraction(plus)?;
    let pf_minus = partial_fraction(minus)?;
    let g = plus.den().gcd(minus.den())?;
    let union: QPoly = (plus.den() * minus.den()).exact_div(&g)?.monic();
    let boxes = if union.degree() == Some(0) {
        Vec::new()
    } else {
        isolate_real_roots(&union)
    };
    let spread = |f: &QRatFunc, pf: &PartialFraction| -> Vec<PfTerm> {
        let mut it = pf.terms.iter();
        boxes
            .iter()
            .map(|b| {
                if !f.den().is_zero() && is_root_of(&union, b, f.den()) {
                    it.next().cloned().expect("every pole of one side is in the union")
                } else {
                    PfTerm {
                        pole: b.mid,
                        residue: 0.0,
                    }
                }
            })
            .collect()
    };
    let terms_plus = spread(plus, &pf_plus);
    let terms_minus = spread(minus, &pf_minus);
    let common_shift = pf_plus.s0_exact == pf_minus.s0_exact;
    Ok(MergedAlphas {
        plus: PartialFraction {
            terms: terms_plus,
            pole_boxes: boxes.clone(),
            ..pf_plus
        },
        minus: PartialFraction {
            terms: terms_minus,
            pole_boxes: boxes,
            ..pf_minus
        },
        common_shift,
    })
}

/// Merged partial fractions of `α±`. When the cut-edge hypotheses hold the
/// two shifts must agree exactly.
pub fn merged_alphas_with(sp: &GraphSpectra, i: usize, j: usize) -> Result<MergedAlphas> {
    let (plus, minus) = alpha_pair_with(sp, i, j)?;
    let merged = merge(&plus, &minus)?;
    if super::cut_edge_neighbors(sp.graph(), i, j).is_some() && !merged.common_shift {
        return Err(Error::Invariant(format!(
            "shifts of the alpha functions differ for ({i}, {j}): {} vs {}",
            merged.plus.s0_exact, merged.minus.s0_exact
        )));
    }
    Ok(merged)
}

pub fn merged_alphas(g: &crate::Graph, i: usize, j: usize) -> Result<MergedAlphas> {
    merged_alphas_with(&GraphSpectra::new(g), i, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::path;

    fn q(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    #[test]
    fn alpha_examples() {
        let (p, m) = alpha_pair(&path(3).unwrap(), 0, 2).unwrap();
        assert_eq!(p, QRatFunc::new(q(&[-2, 0, 1]), q(&[0, 1])).unwrap());
        assert_eq!(m, QRatFunc::from_poly(q(&[0, 1])));
        let (p, m) = alpha_pair(&path(2).unwrap(), 0, 1).unwrap();
        assert_eq!(p, QRatFunc::from_poly(q(&[-1, 1])));
        assert_eq!(m, QRatFunc::from_poly(q(&[1, 1])));
        // (t^3 - 2t - 1)/(t^2 - 1) = (t^2 - t - 1)/(t - 1)
        let (p, _) = alpha_pair(&path(4).unwrap(), 0, 3).unwrap();
        assert_eq!(p.num(), &q(&[-1, -1, 1]));
        assert_eq!(p.den(), &q(&[-1, 1]));
    }

    #[test]
    fn partial_fraction_examples() {
        let pf = partial_fraction(&QRatFunc::new(q(&[-2, 0, 1]), q(&[0, 1])).unwrap()).unwrap();
        assert_eq!(pf.s0, 0.0);
        assert_eq!(pf.terms, vec![PfTerm { pole: 0.0, residue: 2.0 }]);
        let pf = partial_fraction(&QRatFunc::from_poly(q(&[0, 1]))).unwrap();
        assert_eq!((pf.s0, pf.terms.len()), (0.0, 0));
        let pf = partial_fraction(&QRatFunc::new(q(&[0, -2, 0, 1]), q(&[-1, 0, 1])).unwrap()).unwrap();
        assert_eq!(pf.s0, 0.0);
        for t in &pf.terms {
            assert!((t.residue - 0.5).abs() < 1e-12);
        }
        assert_eq!(pf.terms.iter().map(|t| t.pole).collect::<Vec<_>>(), vec![-1.0, 1.0]);
        assert!(matches!(
            partial_fraction(&QRatFunc::from_poly(q(&[0, 0, 1]))),
            Err(Error::DegreeMismatch(_))
        ));
        assert_eq!(
            partial_fraction(&QRatFunc::new(q(&[1, 0, 0, 1]), q(&[0, 0, 1])).unwrap()).err(),
            Some(Error::RepeatedPoles)
        );
    }

    #[test]
    fn merged_examples() {
        let m = merged_alphas(&path(3).unwrap(), 0, 2).unwrap();
        assert_eq!(m.poles(), vec![0.0]);
        assert_eq!((m.plus.terms[0].residue, m.minus.terms[0].residue), (2.0, 0.0));
        assert_eq!((m.plus.s0, m.minus.s0), (0.0, 0.0));

        let m = merged_alphas(&path(2).unwrap(), 0, 1).unwrap();
        assert_eq!(m.k(), 0);
        assert_eq!((m.plus.s0, m.minus.s0), (1.0, -1.0));
        assert!(!m.common_shift);

        let m = merged_alphas(&path(4).unwrap(), 0, 3).unwrap();
        assert_eq!(m.poles(), vec![-1.0, 1.0]);
        let plus: Vec<f64> = m.plus.terms.iter().map(|t| t.residue).collect();
        let minus: Vec<f64> = m.minus.terms.iter().map(|t| t.residue).collect();
        assert!((plus[0]).abs() < 1e-12 && (plus[1] - 1.0).abs() < 1e-12);
        assert!((minus[0] - 1.0).abs() < 1e-12 && minus[1].abs() < 1e-12);
        assert!(m.common_shift);
    }
}
