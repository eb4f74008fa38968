//! Dense univariate polynomials over a [`Scalar`] field, low degree first.

pub mod charpoly;
pub mod paths;
pub mod ratfunc;
pub mod roots;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Scalar};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    /// `t - r`.
    pub fn linear(r: T) -> Self {
        Self::new(vec![-r, T::one()])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Horner evaluation after converting coefficients to `f64`.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * T::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        if lc.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|x| x.clone() / lc.clone()).collect())
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division. Panics when `d` is zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() / lc.clone();
            if !c.is_zero() {
                for (m, dc) in d.coeffs.iter().enumerate() {
                    rem[k + m] = rem[k + m].clone() - c.clone() * dc.clone();
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::Precondition("division by the zero polynomial".into()));
        }
        let (q, r) = self.div_rem(d);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Invariant("polynomial division left a remainder".into()))
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.div_rem(self).1.is_zero()
    }

    /// Monic greatest common divisor; `gcd(p, 0)` is `p` made monic.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomials);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            // keep intermediate coefficients small
            b = r.monic();
        }
        Ok(a.monic())
    }

    /// `p / gcd(p, p')`, monic.
    pub fn square_free_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return if self.is_zero() { Self::zero() } else { Self::one() };
        }
        let g = self.gcd(&self.derivative()).expect("p is nonzero");
        self.div_rem(&g).0.monic()
    }

    pub fn is_square_free(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).map(|g| g.degree() == Some(0)).unwrap_or(false),
        }
    }

    /// Yun's decomposition: `factors[m-1]` is the monic product of the roots of
    /// multiplicity exactly `m`.
    pub fn square_free_decomposition(&self) -> Vec<Self> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df).expect("f is nonzero");
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = &c - &b.derivative();
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d).expect("b is nonzero");
            out.push(a.clone());
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = &c - &b.derivative();
        }
        while out.last().is_some_and(|p| p.degree() == Some(0)) {
            out.pop();
        }
        out
    }

    /// Exact square root with positive leading coefficient.
    pub fn sqrt(&self) -> Result<Self> {
        let deg = match self.degree() {
            None => return Ok(Self::zero()),
            Some(d) => d,
        };
        if deg % 2 == 1 {
            return Err(Error::NotASquare);
        }
        let lead = self.leading().try_sqrt().ok_or(Error::NotASquare)?;
        let half = deg / 2;
        // Solve for q top-down: the coefficient of t^(deg-k) in q^2 fixes q_{half-k}.
        let mut q = vec![T::zero(); half + 1];
        q[half] = lead.clone();
        let two_lead = lead.clone() + lead;
        for k in 1..=half {
            let target = self.coeff(deg - k);
            let mut acc = T::zero();
            for m in 1..k {
                acc = acc + q[half - m].clone() * q[half - (k - m)].clone();
            }
            q[half - k] = (target - acc) / two_lead.clone();
        }
        let q = Self::new(q);
        if T::EXACT {
            if &q * &q != *self {
                return Err(Error::NotASquare);
            }
        }
        Ok(q)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn to_f64(&self) -> Poly<f64> {
        self.map(|c| c.to_f64())
    }

    /// Product of `(t - r)` over the given roots.
    pub fn from_roots(roots: &[T]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, r| &acc * &Self::linear(r.clone()))
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;

    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;

    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;

    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in rhs.coeffs.iter().enumerate() {
                out[a + b] = out[a + b].clone() + x.clone() * y.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;

    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl<T: Scalar> $tr for Poly<T> {
            type Output = Poly<T>;

            fn $f(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$f(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<T: Scalar> Neg for Poly<T> {
    type Output = Poly<T>;

    fn neg(self) -> Poly<T> {
        -&self
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs_value();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "t")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Coefficients as strings (`"p"` or `"p/q"`), low degree first.
impl<T: Scalar + fmt::Display> Serialize for Poly<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for Poly<Rational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rational(s).ok_or_else(|| D::Error::custom(format!("bad coefficient {s:?}"))))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Poly::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use crate::QPoly;

    fn q(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    #[test]
    fn gcd_examples() {
        // gcd(t^3 - 2t, t^2) = t
        assert_eq!(q(&[0, -2, 0, 1]).gcd(&q(&[0, 0, 1])).unwrap(), q(&[0, 1]));
        assert_eq!(q(&[2, 4]).gcd(&QPoly::zero()).unwrap(), q(&[1, 2]).scale(&int(1)).monic());
        assert_eq!(QPoly::zero().gcd(&QPoly::zero()), Err(Error::ZeroPolynomials));
    }

    #[test]
    fn square_free_part_example() {
        // (t-1)^2 (t+2)
        let p = &q(&[-1, 1]).pow(2) * &q(&[2, 1]);
        assert_eq!(p.square_free_part(), &q(&[-1, 1]) * &q(&[2, 1]));
        assert!(!p.is_square_free());
        assert!(p.square_free_part().is_square_free());
    }

    #[test]
    fn yun_decomposition() {
        // (t-1)^3 (t+1)^2 t
        let p = &(&q(&[-1, 1]).pow(3) * &q(&[1, 1]).pow(2)) * &q(&[0, 1]);
        let f = p.square_free_decomposition();
        assert_eq!(f, vec![q(&[0, 1]), q(&[1, 1]), q(&[-1, 1])]);
    }

    #[test]
    fn sqrt_examples() {
        let t2m1 = q(&[-1, 0, 1]);
        assert_eq!(t2m1.pow(2).sqrt().unwrap(), t2m1);
        assert_eq!(QPoly::one().sqrt().unwrap(), QPoly::one());
        assert_eq!(q(&[1, 0, 1]).sqrt(), Err(Error::NotASquare));
        assert_eq!(q(&[0, 1]).sqrt(), Err(Error::NotASquare));
        // leading coefficient 4/9 -> root leading coefficient 2/3
        let p = q(&[1, 1]).scale(&rat(2, 3));
        assert_eq!(p.pow(2).sqrt().unwrap(), p);
        // negative leading part comes back with positive sign
        assert_eq!((-&t2m1).pow(2).sqrt().unwrap(), t2m1);
    }

    #[test]
    fn division() {
        let (qq, r) = q(&[-2, 0, 0, 1]).div_rem(&q(&[-1, 1]));
        assert_eq!(qq, q(&[1, 1, 1]));
        assert_eq!(r, q(&[-1]));
        assert!(q(&[-1, 0, 1]).exact_div(&q(&[1, 1])).is_ok());
        assert!(q(&[1, 0, 1]).exact_div(&q(&[1, 1])).is_err());
    }

    #[test]
    fn display_and_json() {
        let p = q(&[0, -2, 0, 1]);
        assert_eq!(p.to_string(), "t^3 - 2t");
        let half = QPoly::new(vec![rat(1, 2), int(-1)]);
        let json = serde_json::to_string(&half).unwrap();
        assert_eq!(json, r#"["1/2","-1"]"#);
        let back: QPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, half);
    }

    #[test]
    fn generic_over_floats() {
        let p = Poly::<f64>::from_ints(&[-2, 0, 1]);
        let (quot, rem) = p.div_rem(&Poly::linear(2f64.sqrt()));
        assert!(rem.coeff(0).abs() < 1e-12);
        assert!((quot.coeff(0) - 2f64.sqrt()).abs() < 1e-12);
        let s = Poly::<f32>::from_ints(&[1, 2, 1]).sqrt().unwrap();
        assert_eq!(s, Poly::<f32>::from_ints(&[1, 1]));
    }

    proptest::proptest! {
        #[test]
        fn div_rem_reconstructs(a in proptest::collection::vec(-20i64..20, 0..8),
                                b in proptest::collection::vec(-20i64..20, 1..5)) {
            let (a, b) = (q(&a), q(&b));
            proptest::prop_assume!(!b.is_zero());
            let (quot, rem) = a.div_rem(&b);
            proptest::prop_assert_eq!(&(&quot * &b) + &rem, a);
            proptest::prop_assert!(rem.degree() < b.degree());
        }

        #[test]
        fn gcd_divides_both(a in proptest::collection::vec(-9i64..9, 1..6),
                            b in proptest::collection::vec(-9i64..9, 1..6),
                            c in proptest::collection::vec(-9i64..9, 1..4)) {
            let (a, b, c) = (q(&a), q(&b), q(&c));
            proptest::prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
            let g = (&a * &c).gcd(&(&b * &c)).unwrap();
            proptest::prop_assert!(g.divides(&(&a * &c)));
            proptest::prop_assert!(g.divides(&(&b * &c)));
            proptest::prop_assert!(c.monic().divides(&g));
        }
    }
}
