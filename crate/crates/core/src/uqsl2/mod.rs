//! Representation data of `U_q(sl2)` at generic `q`.
//!
//! Conventions: `K v_k = q^{2m} v_k`, `E v_k = [2j-k+1] v_{k-1}`,
//! `F v_k = [k+1] v_{k+1}` (divided-power basis, so every matrix entry is a
//! Laurent polynomial), coproduct `Δ(E) = E⊗K + 1⊗E`, `Δ(F) = F⊗1 + K⁻¹⊗F`.
//! The universal R-matrix in this convention restricts on `V_½ ⊗ V_½` to
//! `q^{-1/2}(q Σ E_ii⊗E_ii + Σ_{i≠j} E_ii⊗E_jj + (q - q^{-1}) E_12⊗E_21)`.

mod cg;
mod generators;
mod operator;

use std::fmt;
use std::str::FromStr;

use crate::laurent::{quantum_integer, LaurentScalar, Ring, T_PER_Q};
use crate::Error;

pub use cg::{cg_pair, CgPair};
pub use generators::{
    braiding, coproduct_e, coproduct_f, coproduct_k, e_matrix, f_matrix, k_matrix, universal_r,
};
pub use operator::{flatten, space_dim, unflatten, TensorOperator};

/// Irrep label `j ∈ ½ℕ`, stored as `2j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Spin(u32);

impl Spin {
    pub const ZERO: Spin = Spin(0);
    pub const HALF: Spin = Spin(1);
    pub const ONE: Spin = Spin(2);

    pub const fn from_twice(twice_j: u32) -> Self {
        Spin(twice_j)
    }

    pub const fn twice(self) -> u32 {
        self.0
    }

    pub const fn dim(self) -> usize {
        self.0 as usize + 1
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// `2m` for basis index `k`.
    pub fn twice_weight(self, k: usize) -> i64 {
        i64::from(self.0) - 2 * k as i64
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl fmt::Debug for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Spin({self})")
    }
}

impl FromStr for Spin {
    type Err = String;

    /// Accepts `"3"`, `"1/2"`, `"3/2"`, `"4/2"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || format!("invalid spin {s:?}");
        match s.split_once('/') {
            None => {
                let j: u32 = s.parse().map_err(|_| bad())?;
                j.checked_mul(2).map(Spin).ok_or_else(bad)
            }
            Some((num, den)) => {
                let num: u32 = num.trim().parse().map_err(|_| bad())?;
                match den.trim() {
                    "1" => num.checked_mul(2).map(Spin).ok_or_else(bad),
                    "2" => Ok(Spin(num)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

/// Quantum dimension `[2j+1]`.
pub fn qdim(j: Spin) -> LaurentScalar {
    quantum_integer(j.0 + 1)
}

/// `t`-exponent of the ribbon scalar `v_j = q^{-2j(j+1)}`.
fn ribbon_t_exp(j: Spin) -> i64 {
    let tw = i64::from(j.0);
    -2 * tw * (tw + 2)
}

/// Ribbon scalar `v_j = q^{-2j(j+1)}`; `v_½ = q^{-3/2}`.
pub fn ribbon_scalar(j: Spin) -> LaurentScalar {
    LaurentScalar::t_pow(ribbon_t_exp(j))
}

/// `λ_{abc} = (v_a v_b / v_c)^{1/2}`, a monomial on the quarter lattice.
pub fn lambda(a: Spin, b: Spin, c: Spin) -> LaurentScalar {
    let e = ribbon_t_exp(a) + ribbon_t_exp(b) - ribbon_t_exp(c);
    debug_assert!(e % 2 == 0);
    LaurentScalar::t_pow(e / 2)
}

/// `ε_{abc} = (-1)^{a+b-c}`.
pub fn epsilon(a: Spin, b: Spin, c: Spin) -> i64 {
    let k = (a.0 + b.0 - c.0) / 2;
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Eigenvalue of the positive braiding on the `c` channel of `V_a ⊗ V_b`:
/// `ε_{abc} λ_{abc}`, inverted for `sign = -1`.
pub fn channel_eigenvalue(a: Spin, b: Spin, c: Spin, sign: i8) -> LaurentScalar {
    let lam = lambda(a, b, c);
    let (e, _) = lam.as_monomial().expect("λ is a monomial");
    let e = if sign >= 0 { e } else { -e };
    LaurentScalar::monomial(e, epsilon(a, b, c))
}

/// `μ` on `V_j`: `diag(q^{2m})`, weights descending.
pub fn mu_operator(j: Spin) -> TensorOperator {
    TensorOperator::from_fn(vec![j], vec![j], |r, c| {
        if r == c {
            LaurentScalar::t_pow(T_PER_Q * j.twice_weight(r))
        } else {
            LaurentScalar::zero()
        }
    })
}

/// `t`-exponent of the `μ` weight of a flat basis index of `⊗ V_{j_i}`.
pub fn mu_weight_t_exp(spins: &[Spin], flat: usize) -> i64 {
    unflatten(spins, flat)
        .iter()
        .zip(spins)
        .map(|(&k, s)| T_PER_Q * s.twice_weight(k))
        .sum()
}

/// Clebsch-Gordan series `|a-b|, ..., a+b`.
pub fn fusion_range(a: Spin, b: Spin) -> Vec<Spin> {
    let lo = a.0.abs_diff(b.0);
    (lo..=a.0 + b.0).step_by(2).map(Spin).collect()
}

pub fn is_admissible(a: Spin, b: Spin, c: Spin) -> bool {
    c.0 >= a.0.abs_diff(b.0) && c.0 <= a.0 + b.0 && (a.0 + b.0 + c.0).is_multiple_of(2)
}

/// `tr((μ ⊗ ... ⊗ μ) ∘ op)`.
pub fn quantum_trace<S: Ring>(op: &TensorOperator<S>) -> Result<S, Error> {
    if !op.is_square() {
        return Err(Error::NonSquare);
    }
    let spins = op.row_spins();
    let mut acc = S::zero();
    for i in 0..op.nrows() {
        let x = op.get(i, i);
        if x.is_zero() {
            continue;
        }
        let w = S::from_laurent(&LaurentScalar::t_pow(mu_weight_t_exp(spins, i)));
        acc = acc.plus(&w.times(x));
    }
    Ok(acc)
}
