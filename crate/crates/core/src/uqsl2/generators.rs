//! Generator matrices, the universal R-matrix and the braiding operators.

use std::collections::HashMap;
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::RwLock;

use super::{Spin, TensorOperator};
use crate::laurent::{quantum_binomial, quantum_factorial, LaurentScalar, T_PER_Q};

fn zero_op(j: Spin) -> TensorOperator {
    TensorOperator::zeros(vec![j], vec![j])
}

/// Divided power `E^{(n)}`: `v_k -> [2j-k+n choose n] v_{k-n}`.
pub fn e_divided(j: Spin, n: usize) -> TensorOperator {
    let big_n = j.twice() as usize;
    let mut op = zero_op(j);
    for k in n..j.dim() {
        op.set(k - n, k, quantum_binomial((big_n - k + n) as u32, n as u32));
    }
    op
}

/// Divided power `F^{(n)}`: `v_k -> [k+n choose n] v_{k+n}`.
pub fn f_divided(j: Spin, n: usize) -> TensorOperator {
    let mut op = zero_op(j);
    for k in 0..j.dim().saturating_sub(n) {
        op.set(k + n, k, quantum_binomial((k + n) as u32, n as u32));
    }
    op
}

pub fn e_matrix(j: Spin) -> TensorOperator {
    e_divided(j, 1)
}

pub fn f_matrix(j: Spin) -> TensorOperator {
    f_divided(j, 1)
}

/// `K^{±1}` on `V_j`.
pub fn k_matrix(j: Spin, power: i64) -> TensorOperator {
    let mut op = zero_op(j);
    for k in 0..j.dim() {
        op.set(k, k, LaurentScalar::t_pow(power * T_PER_Q * j.twice_weight(k)));
    }
    op
}

pub fn coproduct_e(a: Spin, b: Spin) -> TensorOperator {
    let left = e_matrix(a).tensor(&k_matrix(b, 1));
    let right = TensorOperator::identity(vec![a]).tensor(&e_matrix(b));
    left.add(&right).expect("same shape")
}

pub fn coproduct_f(a: Spin, b: Spin) -> TensorOperator {
    let left = f_matrix(a).tensor(&TensorOperator::identity(vec![b]));
    let right = k_matrix(a, -1).tensor(&f_matrix(b));
    left.add(&right).expect("same shape")
}

pub fn coproduct_k(a: Spin, b: Spin) -> TensorOperator {
    k_matrix(a, 1).tensor(&k_matrix(b, 1))
}

/// `q^{±H⊗H/2}` on `V_a ⊗ V_b`: `q^{±2 m_1 m_2}` on weight vectors.
fn cartan_factor(a: Spin, b: Spin, sign: i64) -> TensorOperator {
    let mut op = TensorOperator::zeros(vec![a, b], vec![a, b]);
    for i in 0..a.dim() {
        for k in 0..b.dim() {
            let e = sign * 2 * a.twice_weight(i) * b.twice_weight(k);
            let flat = i * b.dim() + k;
            op.set(flat, flat, LaurentScalar::t_pow(e));
        }
    }
    op
}

/// `Σ_n c_n E^{(n)} ⊗ F^{(n)}` with
/// `c_n = (±1)^n q^{±n(n-1)/2} (q - q^{-1})^n [n]!`.
fn theta(a: Spin, b: Spin, inverse: bool) -> TensorOperator {
    let q_minus = &LaurentScalar::q_pow(1) - &LaurentScalar::q_pow(-1);
    let top = a.dim().min(b.dim());
    let mut acc = TensorOperator::zeros(vec![a, b], vec![a, b]);
    for n in 0..top {
        let half_exp = (n * n.saturating_sub(1)) as i64 * T_PER_Q / 2;
        let mut c = &(&q_minus.pow(n as u32) * &quantum_factorial(n as u32))
            * &LaurentScalar::t_pow(if inverse { -half_exp } else { half_exp });
        if inverse && n % 2 == 1 {
            c = -c;
        }
        let term = e_divided(a, n).tensor(&f_divided(b, n)).scale(&c);
        acc = acc.add(&term).expect("same shape");
    }
    acc
}

/// `(a ⊗ b)(R)` as an endomorphism of `V_a ⊗ V_b`.
pub fn universal_r(a: Spin, b: Spin) -> TensorOperator {
    cartan_factor(a, b, 1).compose(&theta(a, b, false)).expect("same shape")
}

/// `(a ⊗ b)(R^{-1})`.
fn universal_r_inverse(a: Spin, b: Spin) -> TensorOperator {
    theta(a, b, true).compose(&cartan_factor(a, b, -1)).expect("same shape")
}

/// Flip `V_a ⊗ V_b -> V_b ⊗ V_a`.
fn flip(a: Spin, b: Spin) -> TensorOperator {
    let mut op = TensorOperator::zeros(vec![b, a], vec![a, b]);
    for i in 0..a.dim() {
        for k in 0..b.dim() {
            op.set(k * a.dim() + i, i * b.dim() + k, LaurentScalar::one());
        }
    }
    op
}

type BraidKey = (Spin, Spin, i8);
static BRAIDING_CACHE: Lazy<RwLock<HashMap<BraidKey, Arc<TensorOperator>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// Crossing operator `V_a ⊗ V_b -> V_b ⊗ V_a`.
///
/// `sign = +1` gives `Ř_{ab} = P ∘ (a⊗b)(R)`; `sign = -1` gives
/// `Ř_{ba}^{-1}`, so `braiding(b, a, 1) ∘ braiding(a, b, -1) = id`.
pub fn braiding(a: Spin, b: Spin, sign: i8) -> Arc<TensorOperator> {
    let sign = if sign >= 0 { 1 } else { -1 };
    let key = (a, b, sign);
    if let Some(op) = BRAIDING_CACHE.read().get(&key) {
        return Arc::clone(op);
    }
    let op = if sign == 1 {
        flip(a, b).compose(&universal_r(a, b)).expect("shapes agree")
    } else {
        universal_r_inverse(b, a).compose(&flip(a, b)).expect("shapes agree")
    };
    let op = Arc::new(op);
    BRAIDING_CACHE.write().entry(key).or_insert_with(|| Arc::clone(&op));
    op
}
