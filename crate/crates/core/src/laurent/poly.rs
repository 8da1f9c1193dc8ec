//! Dense integer polynomials backing gcd and exact division in `Z[t, 1/t]`.
//!
//! Coefficients are stored ascending. A Laurent element is split as
//! `t^shift * p(t)` with `p(0) != 0`; the unit `t^shift` is irrelevant to
//! divisibility.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::LaurentScalar;

pub(super) fn to_dense(x: &LaurentScalar) -> (Vec<BigInt>, i64) {
    let lo = x.min_exp().unwrap_or(0);
    let hi = x.max_exp().unwrap_or(0);
    let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
    for (e, c) in x.terms() {
        v[(e - lo) as usize] = c.clone();
    }
    (v, lo)
}

pub(super) fn from_dense(p: &[BigInt], shift: i64) -> LaurentScalar {
    LaurentScalar::from_terms(
        p.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64 + shift, c.clone())),
    )
}

fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(p: &[BigInt]) -> Vec<BigInt> {
    let c = content(p);
    if c.is_zero() || c.is_one() {
        return p.to_vec();
    }
    p.iter().map(|x| x / &c).collect()
}

/// Exact quotient `a / b`, or `None` if `b` does not divide `a` over `Z`.
pub(super) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let mut b = b.to_vec();
    trim(&mut b);
    if b.is_empty() {
        return None;
    }
    if rem.is_empty() {
        return Some(Vec::new());
    }
    if rem.len() < b.len() {
        return None;
    }
    let lb = b.last().unwrap().clone();
    let mut quot = vec![BigInt::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let (qc, r) = rem.last().unwrap().div_rem(&lb);
        if !r.is_zero() {
            return None;
        }
        let k = rem.len() - b.len();
        for (i, bc) in b.iter().enumerate() {
            rem[k + i] -= &qc * bc;
        }
        quot[k] = qc;
        trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    if rem.is_empty() {
        Some(quot)
    } else {
        None
    }
}

/// Pseudo-remainder of `a` by `b` (both non-zero, trimmed).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let lb = b.last().unwrap();
    while rem.len() >= b.len() && !rem.is_empty() {
        let lr = rem.last().unwrap().clone();
        let k = rem.len() - b.len();
        for c in rem.iter_mut() {
            *c *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            rem[k + i] -= &lr * bc;
        }
        trim(&mut rem);
    }
    rem
}

/// Exponent stride shared by all terms, so `p(t) = r(t^stride)`.
fn stride(p: &[BigInt]) -> usize {
    p.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(0usize, |g, (i, _)| g.gcd(&i))
}

fn compress(p: &[BigInt], s: usize) -> Vec<BigInt> {
    p.iter().step_by(s).cloned().collect()
}

fn expand(p: &[BigInt], s: usize) -> Vec<BigInt> {
    if p.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); (p.len() - 1) * s + 1];
    for (i, c) in p.iter().enumerate() {
        out[i * s] = c.clone();
    }
    out
}

/// Greatest common divisor over `Z`, positive leading coefficient.
pub(super) fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() {
        return normalize_sign(b);
    }
    if b.is_empty() {
        return normalize_sign(a);
    }
    let c = content(&a).gcd(&content(&b));
    if a.len() == 1 || b.len() == 1 {
        return vec![c];
    }
    // both inputs have non-zero constant term, so a shared stride is exact
    let s = stride(&a).gcd(&stride(&b)).max(1);
    let mut a = primitive(&compress(&a, s));
    let mut b = primitive(&compress(&b, s));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive(&r);
    }
    let g: Vec<BigInt> = primitive(&a).iter().map(|x| x * &c).collect();
    normalize_sign(expand(&g, s))
}

fn normalize_sign(mut p: Vec<BigInt>) -> Vec<BigInt> {
    trim(&mut p);
    if p.last().is_some_and(|c| c.is_negative()) {
        for c in p.iter_mut() {
            *c = -&*c;
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::quantum_integer;

    fn dense(x: &LaurentScalar) -> Vec<BigInt> {
        to_dense(x).0
    }

    #[test]
    fn gcd_of_quantum_integers() {
        let a = &quantum_integer(6) * &quantum_integer(5);
        let b = &quantum_integer(3) * &quantum_integer(5);
        let g = from_dense(&gcd(&dense(&a), &dense(&b)), 0);
        // [3] divides [6], so gcd is [3][5] up to a unit
        let expect = &quantum_integer(3) * &quantum_integer(5);
        let (e, _) = to_dense(&expect);
        assert_eq!(dense(&g), e);
    }

    #[test]
    fn gcd_with_integer_content() {
        let a = LaurentScalar::from_terms([(0, 6), (4, 6)]);
        let b = LaurentScalar::from_terms([(0, 4), (8, -4)]);
        let g = gcd(&dense(&a), &dense(&b));
        assert_eq!(from_dense(&g, 0), LaurentScalar::from_terms([(0, 2), (4, 2)]));
    }

    #[test]
    fn coprime_gives_constant() {
        let g = gcd(&dense(&quantum_integer(2)), &dense(&quantum_integer(3)));
        assert_eq!(g, vec![BigInt::one()]);
    }
}
