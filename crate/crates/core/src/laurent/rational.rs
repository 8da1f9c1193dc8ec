//! Fraction field of `Z[t, 1/t]`, kept in lowest terms.

use std::fmt;

use num_traits::Signed;

use super::poly;
use super::{LaurentScalar, Ring};

/// `num / den` with `gcd(num, den) = 1`, `den` having lowest exponent 0 and
/// positive leading coefficient. Canonical, so `==` is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalScalar {
    num: LaurentScalar,
    den: LaurentScalar,
}

impl RationalScalar {
    pub fn new(num: LaurentScalar, den: LaurentScalar) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = Self { num, den };
        r.reduce();
        r
    }

    pub fn from_laurent(x: LaurentScalar) -> Self {
        Self { num: x, den: LaurentScalar::one() }
    }

    pub fn numer(&self) -> &LaurentScalar {
        &self.num
    }

    pub fn denom(&self) -> &LaurentScalar {
        &self.den
    }

    /// `Some` iff the value lies in `Z[t, 1/t]`.
    pub fn to_laurent(&self) -> Option<LaurentScalar> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Self::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inverse().map(|inv| self.times(&inv))
    }

    pub fn bar(&self) -> Self {
        Self::new(self.num.bar(), self.den.bar())
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentScalar::one();
            return;
        }
        if !self.den.is_one() {
            let (a, _) = poly::to_dense(&self.num);
            let (b, _) = poly::to_dense(&self.den);
            let g = poly::from_dense(&poly::gcd(&a, &b), 0);
            if !g.is_one() {
                self.num = self.num.div_exact(&g).expect("gcd divides numerator");
                self.den = self.den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        // strip the unit t^k * (+-1) from the denominator
        let shift = self.den.min_exp().unwrap_or(0);
        if shift != 0 {
            self.num = self.num.shift(-shift);
            self.den = self.den.shift(-shift);
        }
        if self.den.leading_coeff().is_some_and(|c| c.is_negative()) {
            self.num = -&self.num;
            self.den = -&self.den;
        }
    }
}

impl From<LaurentScalar> for RationalScalar {
    fn from(x: LaurentScalar) -> Self {
        Self::from_laurent(x)
    }
}

impl fmt::Display for RationalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalScalar({self})")
    }
}

impl Ring for RationalScalar {
    fn zero() -> Self {
        Self::from_laurent(LaurentScalar::zero())
    }

    fn one() -> Self {
        Self::from_laurent(LaurentScalar::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn plus(&self, other: &Self) -> Self {
        if other.num.is_zero() {
            return self.clone();
        }
        if self.num.is_zero() {
            return other.clone();
        }
        if self.den == other.den {
            return Self::new(&self.num + &other.num, self.den.clone());
        }
        Self::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    fn times(&self, other: &Self) -> Self {
        if self.num.is_zero() || other.num.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_laurent(&self.num * &other.num);
        }
        Self::new(&self.num * &other.num, &self.den * &other.den)
    }

    fn negated(&self) -> Self {
        Self { num: -&self.num, den: self.den.clone() }
    }

    fn from_laurent(x: &LaurentScalar) -> Self {
        Self::from_laurent(x.clone())
    }
}
