//! Clebsch-Gordan intertwiners `φ^c_{ab}: V_c -> V_a ⊗ V_b` and
//! `ψ^c_{ab}: V_a ⊗ V_b -> V_c`.
//!
//! `φ^c_{ab}` sends `v_0` to the highest-weight vector of weight `c` whose
//! first non-zero coefficient (lowest index in `V_a`) is 1, and
//! `v_k` to `Δ(F)^{(k)}` of it. The `ψ`'s are the rows of the inverse of
//! `[φ^{c_1} | φ^{c_2} | ...]`, so `ψφ = id` and `Σ φψ = id` hold by
//! construction.

use std::collections::HashMap;
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::RwLock;

use super::{coproduct_f, fusion_range, is_admissible, Spin, TensorOperator};
use crate::laurent::{quantum_integer, LaurentScalar, RationalScalar, Ring};
use crate::Error;

type Q = RationalScalar;

#[derive(Clone, Debug)]
pub struct CgPair {
    pub phi: TensorOperator<Q>,
    pub psi: TensorOperator<Q>,
}

type PairTable = HashMap<Spin, CgPair>;
type CgCache = RwLock<HashMap<(Spin, Spin), Arc<PairTable>>>;
static CG_CACHE: Lazy<CgCache> = Lazy::new(|| RwLock::new(HashMap::new()));

/// `(φ^c_{ab}, ψ^c_{ab})`.
pub fn cg_pair(a: Spin, b: Spin, c: Spin) -> Result<CgPair, Error> {
    if !is_admissible(a, b, c) {
        return Err(Error::NotInFusionRange { a, b, c });
    }
    let table = cg_table(a, b);
    Ok(table[&c].clone())
}

pub(crate) fn cg_table(a: Spin, b: Spin) -> Arc<PairTable> {
    if let Some(t) = CG_CACHE.read().get(&(a, b)) {
        return Arc::clone(t);
    }
    let t = Arc::new(build_table(a, b));
    CG_CACHE.write().entry((a, b)).or_insert_with(|| Arc::clone(&t));
    t
}

fn q_int(n: i64) -> LaurentScalar {
    quantum_integer(u32::try_from(n).expect("non-negative"))
}

/// Coefficients of the highest-weight vector of weight `c` in `V_a ⊗ V_b`,
/// as a flat vector.
fn highest_weight_vector(a: Spin, b: Spin, c: Spin) -> Vec<Q> {
    let (ta, tb, tc) = (i64::from(a.twice()), i64::from(b.twice()), i64::from(c.twice()));
    let s = (ta + tb - tc) / 2;
    let i0 = (s - tb).max(0);
    let i1 = s.min(ta);
    let mut out = vec![Q::zero(); a.dim() * b.dim()];
    let mut x = Q::one();
    for i in i0..=i1 {
        let k = s - i;
        out[(i as usize) * b.dim() + k as usize] = x.clone();
        if i < i1 {
            // x_{i+1} [ta-i] q^{tb-2s+2i+2} + x_i [tb-s+i+1] = 0
            let num = -&q_int(tb - s + i + 1);
            let den = &q_int(ta - i) * &LaurentScalar::q_pow(tb - 2 * s + 2 * i + 2);
            x = x.times(&Q::new(num, den));
        }
    }
    out
}

fn apply(op: &TensorOperator, v: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); op.nrows()];
    for (r, c, x) in op.nonzeros() {
        if !v[c].is_zero() {
            out[r] = out[r].plus(&Q::from_laurent(x.clone()).times(&v[c]));
        }
    }
    out
}

fn build_phi(a: Spin, b: Spin, c: Spin) -> TensorOperator<Q> {
    let df = coproduct_f(a, b);
    let mut cols = Vec::with_capacity(c.dim());
    let mut v = highest_weight_vector(a, b, c);
    for k in 0..c.dim() {
        if k > 0 {
            let inv = Q::new(LaurentScalar::one(), quantum_integer(k as u32));
            v = apply(&df, &v).into_iter().map(|x| x.times(&inv)).collect();
        }
        cols.push(v.clone());
    }
    TensorOperator::from_fn(vec![a, b], vec![c], |r, col| cols[col][r].clone())
}

/// Inverse of a square matrix over the fraction field.
pub(crate) fn invert(mut m: Vec<Vec<Q>>) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut inv: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p_inv = m[col][col].inverse()?;
        for j in 0..n {
            m[col][j] = m[col][j].times(&p_inv);
            inv[col][j] = inv[col][j].times(&p_inv);
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in 0..n {
                if !m[col][j].is_zero() {
                    m[r][j] = m[r][j].minus(&f.times(&m[col][j]));
                }
                if !inv[col][j].is_zero() {
                    inv[r][j] = inv[r][j].minus(&f.times(&inv[col][j]));
                }
            }
        }
    }
    Some(inv)
}

fn build_table(a: Spin, b: Spin) -> PairTable {
    let channels = fusion_range(a, b);
    let phis: Vec<TensorOperator<Q>> = channels.iter().map(|&c| build_phi(a, b, c)).collect();
    let mut psis: Vec<TensorOperator<Q>> = channels
        .iter()
        .map(|&c| TensorOperator::zeros(vec![c], vec![a, b]))
        .collect();

    // Φ preserves weight, so invert one weight block at a time.
    let tw = |spins: &[(Spin, usize)]| -> i64 { spins.iter().map(|(s, k)| s.twice_weight(*k)).sum() };
    let max_w = i64::from(a.twice() + b.twice());
    let mut w = -max_w;
    while w <= max_w {
        let rows: Vec<usize> = (0..a.dim() * b.dim())
            .filter(|&f| tw(&[(a, f / b.dim()), (b, f % b.dim())]) == w)
            .collect();
        let cols: Vec<(usize, usize)> = channels
            .iter()
            .enumerate()
            .flat_map(|(ci, &c)| (0..c.dim()).filter(move |&k| c.twice_weight(k) == w).map(move |k| (ci, k)))
            .collect();
        debug_assert_eq!(rows.len(), cols.len());
        let block: Vec<Vec<Q>> = rows
            .iter()
            .map(|&r| cols.iter().map(|&(ci, k)| phis[ci].get(r, k).clone()).collect())
            .collect();
        let inv = invert(block).expect("Clebsch-Gordan matrix is invertible at generic q");
        for (bi, &(ci, k)) in cols.iter().enumerate() {
            for (bj, &r) in rows.iter().enumerate() {
                psis[ci].set(k, r, inv[bi][bj].clone());
            }
        }
        w += 2;
    }

    channels
        .into_iter()
        .zip(phis.into_iter().zip(psis))
        .map(|(c, (phi, psi))| (c, CgPair { phi, psi }))
        .collect()
}
