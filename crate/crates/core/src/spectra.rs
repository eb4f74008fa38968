//! Cospectrality, eigenvalue supports and the signed support partition.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::structure::same_component;
use crate::graph::Graph;
use crate::poly::charpoly::charpoly;
use crate::poly::paths::{path_sum_from_wronskian, wronskian};
use crate::poly::roots::{is_root_of, isolate_real_roots, RootBox};
use crate::{QPoly, QRatFunc};

/// Characteristic polynomials of `G` and of every `G\v`, computed once.
#[derive(Clone, Debug)]
pub struct GraphSpectra {
    graph: Graph,
    phi: QPoly,
    deleted: Vec<QPoly>,
}

/// The polynomials attached to an unordered pair `i ≠ j`.
#[derive(Clone, Debug, Serialize)]
pub struct PairPolys {
    pub i: usize,
    pub j: usize,
    pub phi: QPoly,
    pub phi_i: QPoly,
    pub phi_j: QPoly,
    pub phi_ij: QPoly,
    /// Path-sum polynomial `S`.
    pub s: QPoly,
}

impl GraphSpectra {
    pub fn new(g: &Graph) -> Self {
        let deleted = (0..g.order())
            .map(|v| charpoly(&g.delete_vertices(&[v]).expect("v < n")))
            .collect();
        GraphSpectra {
            graph: g.clone(),
            phi: charpoly(g),
            deleted,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn phi(&self) -> &QPoly {
        &self.phi
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.graph.order() {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.graph.order(),
            })
        } else {
            Ok(())
        }
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return Err(Error::Precondition(format!("pair needs distinct vertices, got ({i}, {i})")));
        }
        Ok(())
    }

    /// `φ^{G\v}`.
    pub fn deleted(&self, v: usize) -> Result<&QPoly> {
        self.check_vertex(v)?;
        Ok(&self.deleted[v])
    }

    pub fn pair(&self, i: usize, j: usize) -> Result<PairPolys> {
        self.check_pair(i, j)?;
        let phi_ij = charpoly(&self.graph.delete_vertices(&[i, j])?);
        let (phi_i, phi_j) = (self.deleted[i].clone(), self.deleted[j].clone());
        let w = wronskian(&phi_i, &phi_j, &phi_ij, &self.phi);
        let s = path_sum_from_wronskian(&self.graph, i, j, &w)?;
        Ok(PairPolys {
            i,
            j,
            phi: self.phi.clone(),
            phi_i,
            phi_j,
            phi_ij,
            s,
        })
    }

    pub fn is_cospectral(&self, i: usize, j: usize) -> Result<bool> {
        self.check_pair(i, j)?;
        Ok(self.deleted[i] == self.deleted[j])
    }

    pub fn is_strongly_cospectral(&self, i: usize, j: usize) -> Result<bool> {
        if !self.is_cospectral(i, j)? {
            return Ok(false);
        }
        let phi_ij = charpoly(&self.graph.delete_vertices(&[i, j])?);
        Ok(strong_from_polys(&self.graph, i, j, &phi_ij, &self.phi)?)
    }

    /// Monic polynomial whose roots are the eigenvalue support of `i`.
    pub fn support_poly(&self, i: usize) -> Result<QPoly> {
        self.check_vertex(i)?;
        let g = self.phi.gcd(&self.deleted[i])?;
        let support = self.phi.exact_div(&g)?.monic();
        if !support.is_square_free() {
            return Err(Error::Invariant(format!("support of vertex {i} has a repeated eigenvalue")));
        }
        Ok(support)
    }

    /// `|Φ_i|`.
    pub fn support_size(&self, i: usize) -> Result<usize> {
        Ok(self.support_poly(i)?.degree().unwrap_or(0))
    }

    pub fn support_roots(&self, i: usize) -> Result<Vec<RootBox>> {
        Ok(isolate_real_roots(&self.support_poly(i)?))
    }

    pub fn min_support_gap(&self, i: usize) -> Result<f64> {
        min_gap(&self.support_roots(i)?)
    }

    pub fn support_partition(&self, i: usize, j: usize) -> Result<SupportPartition> {
        if !self.is_strongly_cospectral(i, j)? {
            return Err(Error::Precondition(format!("vertices {i} and {j} are not strongly cospectral")));
        }
        let pp = self.pair(i, j)?;
        partition_from_pair(&self.graph, &pp, self.support_poly(i)?)
    }

    pub fn projector_entries(&self, i: usize, j: usize) -> Result<ProjectorTable> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        let support = self.support_poly(i)?;
        let boxes = isolate_real_roots(&support);
        let diag = QRatFunc::new(self.deleted[i].clone(), self.phi.clone())?;
        if i == j {
            let entries = boxes
                .iter()
                .map(|b| {
                    let e = residue_at(&diag, b.mid);
                    ProjectorEntry {
                        theta: b.mid,
                        e_ii: e,
                        e_ij: e,
                        sign: Some(1),
                    }
                })
                .collect();
            return Ok(ProjectorTable { i, j, entries });
        }
        let pp = self.pair(i, j)?;
        let off = QRatFunc::new(pp.s.clone(), self.phi.clone())?;
        let signs: Option<Vec<i8>> = if self.is_strongly_cospectral(i, j)? {
            let part = partition_from_pair(&self.graph, &pp, support.clone())?;
            Some(
                boxes
                    .iter()
                    .map(|b| if is_root_of(&support, b, &part.plus_poly) { 1 } else { -1 })
                    .collect(),
            )
        } else {
            None
        };
        let entries = boxes
            .iter()
            .enumerate()
            .map(|(k, b)| ProjectorEntry {
                theta: b.mid,
                e_ii: residue_at(&diag, b.mid),
                e_ij: residue_at(&off, b.mid),
                sign: signs.as_ref().map(|s| s[k]),
            })
            .collect();
        Ok(ProjectorTable { i, j, entries })
    }
}

/// Residue of a reduced rational function at a simple pole (zero if `x` is no pole).
pub fn residue_at(f: &QRatFunc, x: f64) -> f64 {
    let den = f.den().to_f64();
    let scale = den.coeffs().iter().fold(1.0f64, |m, c| m.max(c.abs())) * (1.0 + x.abs()).powi(den.degree().unwrap_or(0) as i32);
    if den.eval_f64(x).abs() > 1e-7 * scale {
        return 0.0;
    }
    f.num().eval_f64(x) / den.derivative().eval_f64(x)
}

fn strong_from_polys(g: &Graph, i: usize, j: usize, phi_ij: &QPoly, phi: &QPoly) -> Result<bool> {
    let r = QRatFunc::new(phi_ij.clone(), phi.clone())?;
    let strong = r.den().is_square_free();
    if strong && !same_component(g, i, j) {
        return Err(Error::Invariant(format!(
            "vertices {i} and {j} lie in different components but passed the strong cospectrality test"
        )));
    }
    Ok(strong)
}

pub fn min_gap(boxes: &[RootBox]) -> Result<f64> {
    if boxes.len() < 2 {
        return Err(Error::Precondition("eigenvalue support has fewer than two elements".into()));
    }
    Ok(boxes
        .windows(2)
        .map(|w| w[1].mid - w[0].mid)
        .fold(f64::INFINITY, f64::min))
}

/// Signed split of the support of a strongly cospectral pair.
#[derive(Clone, Debug, Serialize)]
pub struct SupportPartition {
    pub support_poly: QPoly,
    pub plus_poly: QPoly,
    pub minus_poly: QPoly,
    pub support_roots: Vec<RootBox>,
    pub plus_roots: Vec<RootBox>,
    pub minus_roots: Vec<RootBox>,
}

impl SupportPartition {
    /// `+1` when the `k`-th support root lies in the plus part.
    pub fn sign_of_support_root(&self, k: usize) -> i8 {
        if is_root_of(&self.support_poly, &self.support_roots[k], &self.plus_poly) {
            1
        } else {
            -1
        }
    }
}

/// Builds and checks the partition from precomputed pair polynomials.
pub fn partition_from_pair(g: &Graph, pp: &PairPolys, support: QPoly) -> Result<SupportPartition> {
    let plus_src = &pp.phi_i + &pp.s;
    let minus_src = &pp.phi_i - &pp.s;
    let plus_poly = pp.phi.exact_div(&pp.phi.gcd(&plus_src)?)?.monic();
    let minus_poly = pp.phi.exact_div(&pp.phi.gcd(&minus_src)?)?.monic();
    if &plus_poly * &minus_poly != support {
        return Err(Error::Invariant(format!(
            "plus and minus parts for ({}, {}) do not multiply to the support",
            pp.i, pp.j
        )));
    }
    if plus_poly.gcd(&minus_poly)?.degree() != Some(0) {
        return Err(Error::Invariant(format!(
            "plus and minus parts for ({}, {}) share an eigenvalue",
            pp.i, pp.j
        )));
    }
    let support_roots = isolate_real_roots(&support);
    if g.offdiag_nonnegative() {
        if let Some(top) = support_roots.last() {
            if !is_root_of(&support, top, &plus_poly) {
                return Err(Error::Invariant(format!(
                    "largest support eigenvalue of ({}, {}) is not in the plus part",
                    pp.i, pp.j
                )));
            }
        }
    }
    Ok(SupportPartition {
        plus_roots: isolate_real_roots(&plus_poly),
        minus_roots: isolate_real_roots(&minus_poly),
        support_poly: support,
        plus_poly,
        minus_poly,
        support_roots,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectorEntry {
    pub theta: f64,
    pub e_ii: f64,
    pub e_ij: f64,
    /// `σ`, present only for strongly cospectral pairs (and `i = j`).
    pub sign: Option<i8>,
}

/// Numeric eigenprojector entries on the support of `i`; diagnostic only.
#[derive(Clone, Debug, Serialize)]
pub struct ProjectorTable {
    pub i: usize,
    pub j: usize,
    pub entries: Vec<ProjectorEntry>,
}

pub fn is_cospectral(g: &Graph, i: usize, j: usize) -> Result<bool> {
    GraphSpectra::new(g).is_cospectral(i, j)
}

pub fn is_strongly_cospectral(g: &Graph, i: usize, j: usize) -> Result<bool> {
    GraphSpectra::new(g).is_strongly_cospectral(i, j)
}

pub fn support_poly(g: &Graph, i: usize) -> Result<QPoly> {
    GraphSpectra::new(g).support_poly(i)
}

pub fn support_partition(g: &Graph, i: usize, j: usize) -> Result<SupportPartition> {
    GraphSpectra::new(g).support_partition(i, j)
}

pub fn projector_entries(g: &Graph, i: usize, j: usize) -> Result<ProjectorTable> {
    GraphSpectra::new(g).projector_entries(i, j)
}

pub fn min_support_gap(g: &Graph, i: usize) -> Result<f64> {
    GraphSpectra::new(g).min_support_gap(i)
}
