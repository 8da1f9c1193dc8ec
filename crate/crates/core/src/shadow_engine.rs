//! Pipeline B: `w_L` from scalar recoupling coefficients in the
//! Clebsch-Gordan path basis.
//!
//! A path over colors `β_1..β_n` is a chain `γ_0, γ_1, ..., γ_n` with
//! `γ_k ∈ γ_{k-1} ⊗ β_k`; it labels the embedding
//! `Φ_ρ: V_{γ_n} -> V_{γ_0} ⊗ V_{β_1} ⊗ ... ⊗ V_{β_n}` obtained by fusing
//! the strands one at a time onto `V_{γ_0}`. A crossing at generator `i`
//! only changes `γ_i`, by the coefficient `R^{(±)}_{pq}(c, a, b, b')` with
//! `c = γ_{i-1}`, `b = γ_i`, `a = γ_{i+1}`. Closing the braid weighs each
//! diagonal entry with `[d_{γ_n}] / [d_{γ_0}]`.

use std::collections::{BTreeMap, HashMap};

use once_cell::sync::Lazy;
use parking_lot::RwLock;

use crate::braid::{closure_components, ColoredBraidWord};
use crate::exec::Strategy;
use crate::laurent::{LaurentScalar, RationalScalar, Ring};
use crate::uqsl2::{braiding, cg_pair, fusion_range, is_admissible, qdim, Spin, TensorOperator};
use crate::Error;

type Q = RationalScalar;

/// External colors and a fusion chain `γ_0, ..., γ_n` over them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CouplingPath {
    pub colors: Vec<Spin>,
    pub chain: Vec<Spin>,
}

impl CouplingPath {
    pub fn is_admissible(&self) -> bool {
        self.chain.len() == self.colors.len() + 1
            && (1..self.chain.len()).all(|k| is_admissible(self.chain[k - 1], self.colors[k - 1], self.chain[k]))
    }

    pub fn gamma_n(&self) -> Spin {
        *self.chain.last().expect("chain holds γ_0")
    }
}

/// Every admissible chain over `colors` starting at `gamma0`.
pub fn coupling_chains(colors: &[Spin], gamma0: Spin) -> Vec<Vec<Spin>> {
    let mut chains = vec![vec![gamma0]];
    for &beta in colors {
        chains = chains
            .into_iter()
            .flat_map(|ch| {
                let last = *ch.last().unwrap();
                fusion_range(last, beta).into_iter().map(move |g| {
                    let mut next = ch.clone();
                    next.push(g);
                    next
                })
            })
            .collect();
    }
    chains
}

/// Matrix of a braid in the path basis: `(out chain, in chain) -> amplitude`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowState {
    pub in_colors: Vec<Spin>,
    pub out_colors: Vec<Spin>,
    pub amplitudes: BTreeMap<(Vec<Spin>, Vec<Spin>), Q>,
}

impl ShadowState {
    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn get(&self, out: &[Spin], input: &[Spin]) -> Q {
        self.amplitudes.get(&(out.to_vec(), input.to_vec())).cloned().unwrap_or_else(Q::zero)
    }
}

/// Identity in the path basis with `γ_0 = gamma0` and `γ_n` free.
pub fn initial_state(colors: &[Spin], gamma0: Spin) -> ShadowState {
    let amplitudes = coupling_chains(colors, gamma0)
        .into_iter()
        .map(|ch| ((ch.clone(), ch), Q::one()))
        .collect();
    ShadowState { in_colors: colors.to_vec(), out_colors: colors.to_vec(), amplitudes }
}

type CoeffKey = (Spin, Spin, Spin, Spin, Spin, Spin, i8);
static COEFF_CACHE: Lazy<RwLock<HashMap<CoeffKey, Q>>> = Lazy::new(|| RwLock::new(HashMap::new()));

/// `R^{(±)}_{pq}(c, a, b, b')`, defined by
/// `ψ^{b'p}_a (ψ^{cq}_{b'} ⊗ id)(id_c ⊗ Ř^{±1}_{pq})(φ^b_{cp} ⊗ id) φ^a_{bq} = R · id_{V_a}`.
/// Zero when any of the four fusions is inadmissible.
pub fn shadow_coefficient(p: Spin, q: Spin, c: Spin, b: Spin, a: Spin, b_prime: Spin, sign: i8) -> Q {
    if !(is_admissible(c, p, b) && is_admissible(b, q, a) && is_admissible(c, q, b_prime) && is_admissible(b_prime, p, a))
    {
        return Q::zero();
    }
    let sign = if sign >= 0 { 1 } else { -1 };
    let key = (p, q, c, b, a, b_prime, sign);
    if let Some(x) = COEFF_CACHE.read().get(&key) {
        return x.clone();
    }
    let x = contract(p, q, c, b, a, b_prime, sign);
    COEFF_CACHE.write().entry(key).or_insert_with(|| x.clone());
    x
}

fn identity_q(j: Spin) -> TensorOperator<Q> {
    TensorOperator::identity(vec![j])
}

fn contract(p: Spin, q: Spin, c: Spin, b: Spin, a: Spin, b_prime: Spin, sign: i8) -> Q {
    let cg = |x, y, z| cg_pair(x, y, z).expect("admissible");
    let br = braiding(p, q, sign).map(|x| Q::from_laurent(x.clone()));
    let chain = [
        cg(b, q, a).phi,
        cg(c, p, b).phi.tensor(&identity_q(q)),
        identity_q(c).tensor(&br),
        cg(c, q, b_prime).psi.tensor(&identity_q(p)),
        cg(b_prime, p, a).psi,
    ];
    let mut acc = chain[0].clone();
    for op in &chain[1..] {
        acc = op.compose(&acc).expect("factor tuples line up");
    }
    debug_assert!(acc.as_scalar_multiple_of_identity().is_some());
    acc.get(0, 0).clone()
}

/// Out-chains reached from `chain` by a crossing at generator `i` over
/// out-colors `colors`, with their coefficients.
fn crossing_targets(colors: &[Spin], chain: &[Spin], i: usize, sign: i8) -> Vec<(Vec<Spin>, Q)> {
    let (p, q) = (colors[i - 1], colors[i]);
    let (c, b, a) = (chain[i - 1], chain[i], chain[i + 1]);
    fusion_range(c, q)
        .into_iter()
        .filter_map(|bp| {
            let coef = shadow_coefficient(p, q, c, b, a, bp, sign);
            if coef.is_zero() {
                return None;
            }
            let mut next = chain.to_vec();
            next[i] = bp;
            Some((next, coef))
        })
        .collect()
}

/// Composes the crossing `σ_slot^{sign}` after `state`.
pub fn apply_crossing(state: &ShadowState, slot: usize, sign: i8) -> Result<ShadowState, Error> {
    let n = state.out_colors.len();
    if slot == 0 || slot >= n {
        return Err(Error::BadSlot { slot, strands: n });
    }
    let mut amplitudes: BTreeMap<(Vec<Spin>, Vec<Spin>), Q> = BTreeMap::new();
    for ((out, input), amp) in &state.amplitudes {
        for (next, coef) in crossing_targets(&state.out_colors, out, slot, sign) {
            let cell = amplitudes.entry((next, input.clone())).or_insert_with(Q::zero);
            *cell = cell.plus(&coef.times(amp));
        }
    }
    amplitudes.retain(|_, v| !v.is_zero());
    let mut out_colors = state.out_colors.clone();
    out_colors.swap(slot - 1, slot);
    Ok(ShadowState { in_colors: state.in_colors.clone(), out_colors, amplitudes })
}

/// The full braid in the path basis.
pub fn braid_state(b: &ColoredBraidWord, gamma0: Spin) -> Result<ShadowState, Error> {
    let mut state = initial_state(b.colors(), gamma0);
    for &g in b.word() {
        state = apply_crossing(&state, g.unsigned_abs() as usize, g.signum() as i8)?;
    }
    Ok(state)
}

/// Diagonal entry of the braid's path matrix at `chain`.
fn propagate_chain(b: &ColoredBraidWord, chain: &[Spin]) -> Q {
    let mut colors = b.colors().to_vec();
    let mut column: BTreeMap<Vec<Spin>, Q> = BTreeMap::from([(chain.to_vec(), Q::one())]);
    for &g in b.word() {
        let i = g.unsigned_abs() as usize;
        let mut next: BTreeMap<Vec<Spin>, Q> = BTreeMap::new();
        for (ch, amp) in &column {
            for (nc, coef) in crossing_targets(&colors, ch, i, g.signum() as i8) {
                let cell = next.entry(nc).or_insert_with(Q::zero);
                *cell = cell.plus(&coef.times(amp));
            }
        }
        next.retain(|_, v| !v.is_zero());
        column = next;
        colors.swap(i - 1, i);
    }
    column.remove(chain).unwrap_or_else(Q::zero)
}

/// `w_L` with `γ_0 = 0`.
pub fn evaluate_shadow(b: &ColoredBraidWord) -> Result<LaurentScalar, Error> {
    evaluate_shadow_with(b, Spin::ZERO, Strategy::default())
}

/// `w_L = Σ_ρ [d_{γ_n(ρ)}] M_{ρρ} / [d_{γ_0}]` for a fixed `gamma0`.
pub fn evaluate_shadow_with(b: &ColoredBraidWord, gamma0: Spin, strategy: Strategy) -> Result<LaurentScalar, Error> {
    closure_components(b)?;
    let chains = coupling_chains(b.colors(), gamma0);
    let diag = strategy.map_slice(&chains, |ch| propagate_chain(b, ch));
    let mut total = Q::zero();
    for (ch, m) in chains.iter().zip(diag) {
        if !m.is_zero() {
            total = total.plus(&m.times(&Q::from_laurent(qdim(*ch.last().unwrap()))));
        }
    }
    let total = total.times(&Q::new(LaurentScalar::one(), qdim(gamma0)));
    total.to_laurent().ok_or_else(|| Error::NotLaurent(total.to_string()))
}
