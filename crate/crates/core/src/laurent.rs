//! Exact arithmetic in `Z[t, 1/t]` with `t = q^{1/4}`.
//!
//! Every scalar the engine produces (ribbon twists, quantum dimensions,
//! square roots of twist ratios, link invariants) lives on the quarter
//! lattice of `q`, so a single integer-exponent Laurent ring in `t` covers
//! them all. [`RationalScalar`] is the fraction field, used where
//! Clebsch-Gordan normalizations introduce quantum-integer denominators.

mod poly;
mod rational;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use rational::RationalScalar;

/// Number of `t` steps in one power of `q`.
pub const T_PER_Q: i64 = 4;

/// Minimal ring interface shared by [`LaurentScalar`] and [`RationalScalar`],
/// so operators can be built over either.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_laurent(x: &LaurentScalar) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Element of `Z[t, 1/t]`, stored as exponent -> non-zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentScalar {
    terms: BTreeMap<i64, BigInt>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LaurentParseError {
    #[error("expected a JSON array of [exponent, \"coefficient\"] pairs")]
    NotAnArray,
    #[error("malformed term at index {0}")]
    BadTerm(usize),
    #[error("duplicate exponent {0}")]
    DuplicateExponent(i64),
}

impl LaurentScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, c)
    }

    /// `coeff * t^exp`.
    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// `t^exp`, i.e. `q^{exp/4}`.
    pub fn t_pow(exp: i64) -> Self {
        Self::monomial(exp, 1)
    }

    /// `q^k`.
    pub fn q_pow(k: i64) -> Self {
        Self::t_pow(T_PER_Q * k)
    }

    /// `q^{num/den}`; panics unless `den` divides 4 after reduction.
    pub fn q_frac(num: i64, den: i64) -> Self {
        assert!(den != 0);
        let scaled = num * T_PER_Q;
        assert!(scaled % den == 0, "q^({num}/{den}) is off the quarter lattice");
        Self::t_pow(scaled / den)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c.into());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Iterates `(t-exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    /// If this is `c * t^e`, returns `(e, c)`.
    pub fn as_monomial(&self) -> Option<(i64, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Multiplies every exponent by `k`: the ring map `q -> q^k`.
    pub fn substitute_power(&self, k: u32) -> Self {
        assert!(k >= 1, "substitute_power needs k >= 1");
        let k = i64::from(k);
        Self {
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// Inverse of `substitute_power(_, 2)`; `None` if some exponent is odd.
    pub fn halve_exponents(&self) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e % 2 != 0 {
                return None;
            }
            terms.insert(e / 2, c.clone());
        }
        Some(Self { terms })
    }

    /// `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Multiplication by `t^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power of a monomial; `None` for non-monomials with `n < 0`.
    pub fn monomial_pow(&self, n: i64) -> Option<Self> {
        if n >= 0 {
            return Some(self.pow(u32::try_from(n).ok()?));
        }
        let (e, c) = self.as_monomial()?;
        if c.abs().is_one() {
            let sign = if c.is_negative() && n.is_odd() { -1 } else { 1 };
            Some(Self::monomial(e * n, sign))
        } else {
            None
        }
    }

    /// Exact quotient `self / divisor` in `Z[t, 1/t]`, if it exists.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (a, a_shift) = poly::to_dense(self);
        let (b, b_shift) = poly::to_dense(divisor);
        let q = poly::div_exact(&a, &b)?;
        Some(poly::from_dense(&q, a_shift - b_shift))
    }

    /// Evaluates at `t = 1` (i.e. `q = 1`).
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// JSON form: list of `[t_exponent, "coefficient"]`, ascending exponent.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| serde_json::json!([e, c.to_string()]))
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, LaurentParseError> {
        let arr = v.as_array().ok_or(LaurentParseError::NotAnArray)?;
        let mut out = Self::zero();
        for (i, item) in arr.iter().enumerate() {
            let pair = item
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or(LaurentParseError::BadTerm(i))?;
            let e = pair[0].as_i64().ok_or(LaurentParseError::BadTerm(i))?;
            let c: BigInt = pair[1]
                .as_str()
                .and_then(|s| s.parse().ok())
                .ok_or(LaurentParseError::BadTerm(i))?;
            if out.terms.contains_key(&e) {
                return Err(LaurentParseError::DuplicateExponent(e));
            }
            if c.is_zero() {
                return Err(LaurentParseError::BadTerm(i));
            }
            out.terms.insert(e, c);
        }
        Ok(out)
    }
}

/// Balanced quantum integer `[n] = sum_{i<n} q^{n-1-2i}`.
pub fn quantum_integer(n: u32) -> LaurentScalar {
    let n = i64::from(n);
    LaurentScalar::from_terms((0..n).map(|i| (T_PER_Q * (n - 1 - 2 * i), 1)))
}

/// `[n]! = [1][2]...[n]`.
pub fn quantum_factorial(n: u32) -> LaurentScalar {
    (1..=n).fold(LaurentScalar::one(), |acc, k| &acc * &quantum_integer(k))
}

/// Balanced Gaussian binomial `[m choose n]`, built by the q-Pascal rule.
pub fn quantum_binomial(m: u32, n: u32) -> LaurentScalar {
    if n > m {
        return LaurentScalar::zero();
    }
    let mut row = vec![LaurentScalar::one()];
    for mm in 1..=m {
        let mut next = Vec::with_capacity(row.len() + 1);
        for k in 0..=mm.min(n) {
            let mut v = LaurentScalar::zero();
            if (k as usize) < row.len() {
                v += &row[k as usize].shift(-T_PER_Q * i64::from(k));
            }
            if k >= 1 {
                v += &row[(k - 1) as usize].shift(T_PER_Q * i64::from(mm - k));
            }
            next.push(v);
        }
        row = next;
    }
    row.swap_remove(n as usize)
}

fn fmt_q_exponent(e: i64) -> String {
    let g = e.gcd(&T_PER_Q);
    let (num, den) = (e / g, T_PER_Q / g);
    if den == 1 {
        format!("{num}")
    } else {
        format!("{num}/{den}")
    }
}

impl fmt::Display for LaurentScalar {
    /// Descending exponents in `q`, e.g. `q^{5/2} + q^{1/2}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let unit = mag.is_one();
            match (*e, unit) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "q^{{{}}}", fmt_q_exponent(*e))?,
                (_, false) => write!(f, "{mag}*q^{{{}}}", fmt_q_exponent(*e))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentScalar({self})")
    }
}

impl<'a> Add<&'a LaurentScalar> for &'a LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentScalar {
    type Output = LaurentScalar;
    fn add(mut self, rhs: LaurentScalar) -> LaurentScalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentScalar> for LaurentScalar {
    fn add_assign(&mut self, rhs: &LaurentScalar) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentScalar> for LaurentScalar {
    fn sub_assign(&mut self, rhs: &LaurentScalar) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl<'a> Sub<&'a LaurentScalar> for &'a LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentScalar {
    type Output = LaurentScalar;
    fn sub(mut self, rhs: LaurentScalar) -> LaurentScalar {
        self -= &rhs;
        self
    }
}

impl<'a> Mul<&'a LaurentScalar> for &'a LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = LaurentScalar::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: LaurentScalar) -> LaurentScalar {
        &self * &rhs
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        LaurentScalar {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        -&self
    }
}

impl Zero for LaurentScalar {
    fn zero() -> Self {
        LaurentScalar::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentScalar {
    fn one() -> Self {
        LaurentScalar::one()
    }
}

impl From<i64> for LaurentScalar {
    fn from(c: i64) -> Self {
        LaurentScalar::constant(c)
    }
}

impl std::iter::Sum for LaurentScalar {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl Ring for LaurentScalar {
    fn zero() -> Self {
        LaurentScalar::zero()
    }
    fn one() -> Self {
        LaurentScalar::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_laurent(x: &LaurentScalar) -> Self {
        x.clone()
    }
    fn is_one(&self) -> bool {
        LaurentScalar::is_one(self)
    }
}

/// Small helper for tests and rendering: `q`-exponent as `f64`.
pub fn t_exp_to_q(e: i64) -> f64 {
    e.to_f64().unwrap_or(f64::NAN) / T_PER_Q as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(k: i64) -> LaurentScalar {
        LaurentScalar::q_pow(k)
    }

    #[test]
    fn ring_examples() {
        let a = &q(1) + &q(-1);
        assert!((&a * &LaurentScalar::zero()).is_zero());
        let h = LaurentScalar::q_frac(1, 2);
        assert_eq!(&h * &h, q(1));
        let d = &q(1) - &q(-1);
        assert_eq!(&d * &a, &q(2) - &q(-2));
    }

    #[test]
    fn substitute_power_examples() {
        assert_eq!((&q(1) + &q(-1)).substitute_power(2), &q(2) + &q(-2));
        assert_eq!(LaurentScalar::one().substitute_power(7), LaurentScalar::one());
        let x = &LaurentScalar::q_frac(1, 2) - &LaurentScalar::one();
        assert_eq!(x.substitute_power(2), &q(1) - &LaurentScalar::one());
    }

    #[test]
    fn quantum_integer_examples() {
        assert!(quantum_integer(0).is_zero());
        assert_eq!(quantum_integer(1), LaurentScalar::one());
        assert_eq!(quantum_integer(2), &q(1) + &q(-1));
        for n in 0..10 {
            let lhs = &quantum_integer(n) * &(&q(1) - &q(-1));
            assert_eq!(lhs, &q(n as i64) - &q(-(n as i64)));
        }
    }

    #[test]
    fn binomials_match_factorial_quotients() {
        for m in 0..8 {
            for n in 0..=m {
                let lhs = &(&quantum_binomial(m, n) * &quantum_factorial(n)) * &quantum_factorial(m - n);
                assert_eq!(lhs, quantum_factorial(m), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn display_uses_q_units() {
        let x = &LaurentScalar::q_frac(-3, 2) + &LaurentScalar::monomial(4, -2);
        assert_eq!(x.to_string(), "-2*q^{1} + q^{-3/2}");
        assert_eq!(LaurentScalar::zero().to_string(), "0");
        assert_eq!(LaurentScalar::constant(-5).to_string(), "-5");
    }

    #[test]
    fn json_shape() {
        let x = &q(1) + &q(-1);
        assert_eq!(x.to_json().to_string(), r#"[[-4,"1"],[4,"1"]]"#);
        assert_eq!(LaurentScalar::from_json(&x.to_json()).unwrap(), x);
        assert!(LaurentScalar::from_json(&serde_json::json!([[1, "0"]])).is_err());
        assert!(LaurentScalar::from_json(&serde_json::json!({"a": 1})).is_err());
    }

    #[test]
    fn exact_division() {
        let a = &quantum_integer(3) * &quantum_integer(4);
        assert_eq!(a.div_exact(&quantum_integer(3)).unwrap(), quantum_integer(4));
        assert!(quantum_integer(3).div_exact(&quantum_integer(2)).is_none());
        let shifted = a.shift(-9);
        assert_eq!(shifted.div_exact(&quantum_integer(4)).unwrap(), quantum_integer(3).shift(-9));
    }

    fn arb_laurent() -> impl Strategy<Value = LaurentScalar> {
        prop::collection::vec((-12i64..12, -5i64..6), 0..6).prop_map(LaurentScalar::from_terms)
    }

    proptest! {
        #[test]
        fn add_sub_cancels(a in arb_laurent(), b in arb_laurent()) {
            prop_assert_eq!(&(&a + &b) - &b, a);
        }

        #[test]
        fn mul_associates(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn substitute_power_is_multiplicative(a in arb_laurent(), b in arb_laurent(), k in 1u32..5) {
            prop_assert_eq!((&a * &b).substitute_power(k), &a.substitute_power(k) * &b.substitute_power(k));
        }

        #[test]
        fn q_integer_recursion(n in 1u32..25) {
            prop_assert_eq!(
                &quantum_integer(n) * &quantum_integer(2),
                &quantum_integer(n + 1) + &quantum_integer(n - 1)
            );
        }

        #[test]
        fn json_round_trips(a in arb_laurent()) {
            prop_assert_eq!(LaurentScalar::from_json(&a.to_json()).unwrap(), a);
        }
    }
}
