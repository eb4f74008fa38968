//! Certified real-root isolation with Sturm sequences.
//!
//! All sign decisions are exact. Polynomials are first made square-free and
//! primitive over the integers, so evaluation at a rational point `a/b` is a
//! homogenized integer Horner scheme. Floating point only proposes refinement
//! brackets, which are then checked exactly.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::Poly;
use crate::scalar::ratio_to_f64;
use crate::{QPoly, Rational};

/// Boxes are refined until narrower than this.
pub const ROOT_BOX_WIDTH: f64 = 1.0 / (1u64 << 40) as f64;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootBox {
    #[serde(serialize_with = "ser_rational")]
    pub lo: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub hi: Rational,
    pub multiplicity: usize,
    pub mid: f64,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl RootBox {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// The exact root when the box has collapsed to a point.
    pub fn exact_value(&self) -> Option<&Rational> {
        self.is_exact().then_some(&self.lo)
    }
}

/// Primitive integer polynomial with the same roots and a positive multiple.
pub fn primitive_integer(p: &QPoly) -> Vec<BigInt> {
    if p.is_zero() {
        return Vec::new();
    }
    let l = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

/// Sign of an integer polynomial at `x`, exactly.
fn sign_at(p: &[BigInt], x: &Rational) -> Sign {
    let d = match p.len().checked_sub(1) {
        Some(d) => d,
        None => return Sign::NoSign,
    };
    let (a, b) = (x.numer(), x.denom());
    let mut bpow = BigInt::one();
    let mut acc = p[d].clone();
    for i in (0..d).rev() {
        bpow *= b;
        acc = acc * a + &p[i] * &bpow;
    }
    acc.sign()
}

pub fn sign_of(p: &QPoly, x: &Rational) -> Sign {
    sign_at(&primitive_integer(p), x)
}

/// Sturm sequence of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<Vec<BigInt>>,
}

impl SturmSequence {
    pub fn new(p: &QPoly) -> Self {
        let mut seq = Vec::new();
        if p.degree().unwrap_or(0) == 0 {
            if !p.is_zero() {
                seq.push(primitive_integer(p));
            }
            return SturmSequence { seq };
        }
        let mut a = p.clone();
        let mut b = p.derivative();
        seq.push(primitive_integer(&a));
        while !b.is_zero() {
            seq.push(primitive_integer(&b));
            let r = a.div_rem(&b).1;
            a = b;
            b = -&r;
        }
        SturmSequence { seq }
    }

    fn variations(&self, x: &Rational) -> usize {
        let mut last = Sign::NoSign;
        let mut count = 0;
        for q in &self.seq {
            let s = sign_at(q, x);
            if s == Sign::NoSign {
                continue;
            }
            if last != Sign::NoSign && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct roots in the half-open interval `(lo, hi]`.
    pub fn count(&self, lo: &Rational, hi: &Rational) -> usize {
        if lo >= hi {
            return 0;
        }
        self.variations(lo).saturating_sub(self.variations(hi))
    }

    pub fn base(&self) -> &[BigInt] {
        self.seq.first().map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Number of distinct real roots of `p` in the closed interval `[lo, hi]`.
pub fn count_roots_in(p: &QPoly, lo: &Rational, hi: &Rational) -> usize {
    if p.is_zero() || lo > hi {
        return 0;
    }
    let sq = p.square_free_part();
    let at_lo = usize::from(sign_of(&sq, lo) == Sign::NoSign);
    at_lo + SturmSequence::new(&sq).count(lo, hi)
}

/// Power of two strictly above every root's absolute value (Cauchy bound).
fn root_bound(p: &QPoly) -> Rational {
    let lc = p.leading();
    let m = p
        .coeffs()
        .iter()
        .map(|c| (c / &lc).abs())
        .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    let bound = m + Rational::one();
    let mut b = Rational::one();
    while b <= bound {
        b *= Rational::from_integer(BigInt::from(2));
    }
    b
}

fn half(a: &Rational, b: &Rational) -> Rational {
    (a + b) / Rational::from_integer(BigInt::from(2))
}

fn f64_to_rational(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// All real roots of `p` (nonzero) as disjoint boxes in increasing order.
pub fn isolate_real_roots(p: &QPoly) -> Vec<RootBox> {
    assert!(!p.is_zero(), "root isolation of the zero polynomial");
    if p.degree() == Some(0) {
        return Vec::new();
    }
    let sq = p.square_free_part();
    let sturm = SturmSequence::new(&sq);
    let base = sturm.base().to_vec();
    let bound = root_bound(&sq);

    // isolate
    let mut isolated: Vec<(Rational, Rational)> = Vec::new();
    let mut work = vec![(-bound.clone(), bound)];
    while let Some((a, b)) = work.pop() {
        match sturm.count(&a, &b) {
            0 => {}
            1 => isolated.push((a, b)),
            _ => {
                let m = half(&a, &b);
                work.push((m.clone(), b));
                work.push((a, m));
            }
        }
    }
    isolated.sort_by(|x, y| x.0.cmp(&y.0));

    let sqf64 = sq.to_f64();
    let mut boxes: Vec<RootBox> = isolated
        .into_iter()
        .map(|(a, b)| refine(&base, &sqf64, a, b))
        .collect();

    let factors = p.square_free_decomposition();
    if factors.len() > 1 {
        let ints: Vec<Vec<BigInt>> = factors.iter().map(primitive_integer).collect();
        for bx in &mut boxes {
            bx.multiplicity = ints
                .iter()
                .position(|f| root_in_box(f, bx))
                .map(|k| k + 1)
                .expect("every root of the square-free part belongs to one factor");
        }
    }
    boxes
}

/// Whether a factor whose roots are all roots of the boxed polynomial has
/// its root inside `bx`.
fn root_in_box(f: &[BigInt], bx: &RootBox) -> bool {
    let s_hi = sign_at(f, &bx.hi);
    if s_hi == Sign::NoSign {
        return true;
    }
    let s_lo = sign_at(f, &bx.lo);
    s_lo != Sign::NoSign && s_lo != s_hi
}

/// Shrinks `(a, b]`, holding exactly one simple root, below the target width.
fn refine(f: &[BigInt], f64poly: &Poly<f64>, mut a: Rational, mut b: Rational) -> RootBox {
    let exact = |x: Rational| RootBox {
        mid: ratio_to_f64(&x),
        lo: x.clone(),
        hi: x,
        multiplicity: 1,
    };
    let s_b = sign_at(f, &b);
    if s_b == Sign::NoSign {
        return exact(b);
    }
    let target = Rational::new(BigInt::one(), BigInt::one() << 40usize);

    // Float bisection proposes a tight bracket; accept it only after exact signs.
    if let Some(bx) = float_bracket(f, f64poly, &a, &b, s_b) {
        return bx;
    }

    let lo_is_root = sign_at(f, &a) == Sign::NoSign;
    let mut first = lo_is_root;
    while &b - &a >= target || first {
        first = false;
        let m = half(&a, &b);
        let s = sign_at(f, &m);
        if s == Sign::NoSign {
            return exact(m);
        }
        if s != s_b {
            a = m;
        } else {
            b = m;
        }
    }
    RootBox {
        mid: ratio_to_f64(&half(&a, &b)),
        lo: a,
        hi: b,
        multiplicity: 1,
    }
}

fn float_bracket(f: &[BigInt], fp: &Poly<f64>, a: &Rational, b: &Rational, s_b: Sign) -> Option<RootBox> {
    let (mut lo, mut hi) = (ratio_to_f64(a), ratio_to_f64(b));
    let up = |x: f64| fp.eval_f64(x) > 0.0;
    let hi_up = s_b == Sign::Plus;
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if m <= lo || m >= hi {
            break;
        }
        if up(m) == hi_up {
            hi = m;
        } else {
            lo = m;
        }
    }
    let x = 0.5 * (lo + hi);
    // integer and half-integer roots are common enough to try exactly
    for c in [x.round(), (2.0 * x).round() / 2.0] {
        if let Some(r) = f64_to_rational(c) {
            if *a < r && r <= *b && sign_at(f, &r) == Sign::NoSign {
                return Some(RootBox {
                    lo: r.clone(),
                    hi: r,
                    multiplicity: 1,
                    mid: c,
                });
            }
        }
    }
    let eps = 2f64.powi(-42);
    let l = f64_to_rational(x - eps)?;
    let h = f64_to_rational(x + eps)?;
    if l <= *a || h > *b {
        return None;
    }
    let (sl, sh) = (sign_at(f, &l), sign_at(f, &h));
    let mid_exact = f64_to_rational(x)?;
    if sign_at(f, &mid_exact) == Sign::NoSign {
        return Some(RootBox {
            lo: mid_exact.clone(),
            hi: mid_exact,
            multiplicity: 1,
            mid: x,
        });
    }
    match (sl, sh) {
        (Sign::NoSign, _) => Some(RootBox {
            lo: l.clone(),
            hi: l,
            multiplicity: 1,
            mid: x - eps,
        }),
        (_, Sign::NoSign) => Some(RootBox {
            lo: h.clone(),
            hi: h,
            multiplicity: 1,
            mid: x + eps,
        }),
        (sl, sh) if sl != sh => Some(RootBox {
            lo: l,
            hi: h,
            multiplicity: 1,
            mid: x,
        }),
        _ => None,
    }
}

/// Whether `q` vanishes at the root of `p` held in `bx` (a box produced for `p`).
pub fn is_root_of(p: &QPoly, bx: &RootBox, q: &QPoly) -> bool {
    if q.is_zero() {
        return true;
    }
    let g = p.gcd(q).expect("p is nonzero");
    if g.degree() == Some(0) {
        return false;
    }
    if let Some(x) = bx.exact_value() {
        return g.eval(x).is_zero();
    }
    count_roots_in(&g, &bx.lo, &bx.hi) > 0
}

/// Refined midpoints of the distinct real roots, increasing.
pub fn real_roots_f64(p: &QPoly) -> Vec<f64> {
    isolate_real_roots(p).into_iter().map(|b| b.mid).collect()
}
