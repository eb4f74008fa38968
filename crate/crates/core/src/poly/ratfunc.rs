use std::fmt;

use serde::Serialize;

use super::Poly;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A quotient of polynomials in lowest terms with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RatFunc<T: Scalar + fmt::Display> {
    num: Poly<T>,
    den: Poly<T>,
}

impl<T: Scalar + fmt::Display> RatFunc<T> {
    pub fn new(num: Poly<T>, den: Poly<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Precondition("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(RatFunc {
                num,
                den: Poly::one(),
            });
        }
        let g = num.gcd(&den)?;
        let num = num.div_rem(&g).0;
        let den = den.div_rem(&g).0;
        let lc = den.leading();
        Ok(RatFunc {
            num: num.scale(&(T::one() / lc.clone())),
            den: den.monic(),
        })
    }

    pub fn from_poly(p: Poly<T>) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn num(&self) -> &Poly<T> {
        &self.num
    }

    pub fn den(&self) -> &Poly<T> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Value at `x`; `None` at a pole.
    pub fn eval(&self, x: &T) -> Option<T> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    /// Polynomial part and proper remainder numerator: `num = q·den + r`.
    pub fn split(&self) -> (Poly<T>, Poly<T>) {
        self.num.div_rem(&self.den)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
        .expect("product of nonzero denominators")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den).expect("product of nonzero denominators")
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.num.scale(c), self.den.clone()).expect("denominator unchanged")
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for RatFunc<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
