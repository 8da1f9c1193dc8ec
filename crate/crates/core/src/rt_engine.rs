//! Pipeline A: `w_L` as the quantum trace of the product of braiding
//! operators over the word, and the framing-corrected invariant `I(L)`.

use std::sync::Arc;

use crate::braid::{closure_components, writhe_per_component, ColoredBraidWord};
use crate::exec::Strategy;
use crate::laurent::LaurentScalar;
use crate::uqsl2::{
    braiding, flatten, mu_weight_t_exp, ribbon_scalar, space_dim, unflatten, Spin, TensorOperator,
};
use crate::Error;

/// `id ⊗ Ř^{±1} ⊗ id` for the letter at `position`, acting on the colors
/// present just below it.
pub fn strip_operator(b: &ColoredBraidWord, position: usize) -> Result<TensorOperator, Error> {
    let g = *b
        .word()
        .get(position)
        .ok_or(Error::BadPosition { position, len: b.len() })?;
    let spins = b.colors_after(position);
    let slot = g.unsigned_abs() as usize - 1;
    let local = braiding(spins[slot], spins[slot + 1], g.signum() as i8);
    TensorOperator::identity(spins).apply_two_site(slot, &local)
}

/// A crossing ready for vector application: slot, output spins, and the
/// local operator's non-zeros grouped by column.
struct Step {
    slot: usize,
    out_spins: Vec<Spin>,
    d_in1: usize,
    d_out1: usize,
    by_col: Vec<Vec<(usize, LaurentScalar)>>,
}

fn prepare(b: &ColoredBraidWord) -> Vec<Step> {
    let mut spins = b.colors().to_vec();
    let mut steps = Vec::with_capacity(b.len());
    for &g in b.word() {
        let slot = g.unsigned_abs() as usize - 1;
        let local: Arc<TensorOperator> = braiding(spins[slot], spins[slot + 1], g.signum() as i8);
        let mut by_col = vec![Vec::new(); local.ncols()];
        for (r, c, v) in local.nonzeros() {
            by_col[c].push((r, v.clone()));
        }
        let d_in1 = spins[slot + 1].dim();
        spins.swap(slot, slot + 1);
        steps.push(Step { slot, out_spins: spins.clone(), d_in1, d_out1: spins[slot + 1].dim(), by_col });
    }
    steps
}

/// Diagonal entry `(M e_col)_col` of the strip product `M`.
fn propagate_column(colors: &[Spin], steps: &[Step], col: usize) -> LaurentScalar {
    let mut spins = colors.to_vec();
    let mut v: Vec<(usize, LaurentScalar)> = vec![(col, LaurentScalar::one())];
    for step in steps {
        let mut next = vec![LaurentScalar::zero(); space_dim(&step.out_spins)];
        for (f, x) in &v {
            let idx = unflatten(&spins, *f);
            let local_c = idx[step.slot] * step.d_in1 + idx[step.slot + 1];
            for (lr, y) in &step.by_col[local_c] {
                let mut nidx = idx.clone();
                nidx[step.slot] = lr / step.d_out1;
                nidx[step.slot + 1] = lr % step.d_out1;
                next[flatten(&step.out_spins, &nidx)] += &(y * x);
            }
        }
        spins.clone_from(&step.out_spins);
        v = next.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
    }
    v.into_iter().find(|(f, _)| *f == col).map(|(_, x)| x).unwrap_or_default()
}

/// `w_L = tr((μ ⊗ ... ⊗ μ) ∏ strips)`.
pub fn evaluate_rt(b: &ColoredBraidWord) -> Result<LaurentScalar, Error> {
    evaluate_rt_with(b, Strategy::default())
}

/// [`evaluate_rt`] with the basis columns propagated under `strategy`.
pub fn evaluate_rt_with(b: &ColoredBraidWord, strategy: Strategy) -> Result<LaurentScalar, Error> {
    closure_components(b)?;
    let colors = b.colors();
    let steps = prepare(b);
    let diag = strategy.map(space_dim(colors), |col| propagate_column(colors, &steps, col));
    Ok(diag
        .into_iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(col, x)| &x * &LaurentScalar::t_pow(mu_weight_t_exp(colors, col)))
        .sum())
}

/// The same value via explicit operator products; slow, used as a check.
pub fn evaluate_rt_dense(b: &ColoredBraidWord) -> Result<LaurentScalar, Error> {
    closure_components(b)?;
    let mut acc = TensorOperator::identity(b.colors().to_vec());
    for pos in 0..b.len() {
        acc = strip_operator(b, pos)?.compose(&acc)?;
    }
    crate::uqsl2::quantum_trace(&acc)
}

/// `I(L) = ∏_i v_{α_i}^{n_i} w_L`, with `n_i` the self-writhe of component
/// `i`. Invariant under all Markov moves.
pub fn framed_invariant(b: &ColoredBraidWord) -> Result<LaurentScalar, Error> {
    let w = evaluate_rt(b)?;
    framing_correction(b).map(|c| &c * &w)
}

/// `∏_i v_{α_i}^{n_i}`.
pub fn framing_correction(b: &ColoredBraidWord) -> Result<LaurentScalar, Error> {
    let comps = closure_components(b)?;
    let writhes = writhe_per_component(b)?;
    Ok(comps
        .iter()
        .zip(writhes)
        .map(|(c, n)| ribbon_scalar(c.color).monomial_pow(n).expect("ribbon scalars are units"))
        .fold(LaurentScalar::one(), |acc, x| &acc * &x))
}

/// Blackboard 2-cable of one component: each of its strands becomes a
/// parallel pair colored `(a, b2)`, and every crossing becomes the block
/// that passes one group of strands across the other.
pub fn two_cabling(
    b: &ColoredBraidWord,
    component: usize,
    a: Spin,
    b2: Spin,
) -> Result<ColoredBraidWord, Error> {
    let comps = closure_components(b)?;
    let chosen = comps.get(component).ok_or(Error::NoSuchComponent(component))?;
    let doubled: Vec<bool> = (0..b.strands()).map(|s| chosen.strands.contains(&s)).collect();
    let width = |s: usize| if doubled[s] { 2 } else { 1 };

    let mut colors = Vec::new();
    for (&d, &c) in doubled.iter().zip(b.colors()) {
        if d {
            colors.extend([a, b2]);
        } else {
            colors.push(c);
        }
    }
    let mut at: Vec<usize> = (0..b.strands()).collect();
    let mut word = Vec::new();
    for &g in b.word() {
        let i = g.unsigned_abs() as usize;
        let offset: usize = at[..i - 1].iter().map(|&s| width(s)).sum();
        let (wl, wr) = (width(at[i - 1]), width(at[i]));
        // strands of the left group, rightmost first, each crossing the whole right group
        for s in (0..wl).rev() {
            for k in 1..=wr {
                let gen = (offset + s + k) as i32;
                word.push(if g > 0 { gen } else { -gen });
            }
        }
        at.swap(i - 1, i);
    }
    ColoredBraidWord::new(colors.len(), colors, word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{markov_moves, stabilize};
    use crate::laurent::quantum_integer;
    use crate::skein_oracle::{skein_triple, SkeinSite};
    use crate::uqsl2::{qdim, universal_r};
    use proptest::prelude::{any, prop_assert_eq, proptest};

    const H: Spin = Spin::HALF;

    fn braid(n: usize, word: &[i32]) -> ColoredBraidWord {
        ColoredBraidWord::uniform(n, H, word.to_vec()).unwrap()
    }

    fn q(k: i64) -> LaurentScalar {
        LaurentScalar::q_pow(k)
    }

    fn qf(n: i64) -> LaurentScalar {
        LaurentScalar::q_frac(n, 2)
    }

    #[test]
    fn unknot_and_kinks() {
        assert_eq!(evaluate_rt(&braid(1, &[])).unwrap(), quantum_integer(2));
        assert_eq!(evaluate_rt(&braid(2, &[1])).unwrap(), &qf(3) * &quantum_integer(2));
        assert_eq!(evaluate_rt(&braid(2, &[-1])).unwrap(), &qf(-3) * &quantum_integer(2));
        assert_eq!(framed_invariant(&braid(2, &[1])).unwrap(), quantum_integer(2));
        assert_eq!(framed_invariant(&braid(2, &[-1])).unwrap(), quantum_integer(2));
        let spin1 = ColoredBraidWord::uniform(1, Spin::ONE, vec![]).unwrap();
        assert_eq!(evaluate_rt(&spin1).unwrap(), qdim(Spin::ONE));
    }

    #[test]
    fn trefoil_and_hopf() {
        let trefoil = [qf(7), qf(3), qf(-1), -qf(-9)].into_iter().sum::<LaurentScalar>();
        assert_eq!(evaluate_rt(&braid(2, &[1, 1, 1])).unwrap(), trefoil);
        let hopf = [q(3), q(1), q(-1), q(-3)].into_iter().sum::<LaurentScalar>();
        assert_eq!(evaluate_rt(&braid(2, &[1, 1])).unwrap(), hopf);
    }

    #[test]
    fn strip_operator_examples() {
        let b = braid(2, &[1]);
        let flip_r = crate::uqsl2::braiding(H, H, 1);
        assert_eq!(strip_operator(&b, 0).unwrap(), *flip_r);
        // row (i, k) of P∘R is row (k, i) of R
        let r = universal_r(H, H);
        for row in 0..4 {
            for col in 0..4 {
                assert_eq!(flip_r.get(row, col), r.get((row % 2) * 2 + row / 2, col));
            }
        }
        let b3 = braid(3, &[2]);
        let want = TensorOperator::identity(vec![H]).tensor(&flip_r);
        assert_eq!(strip_operator(&b3, 0).unwrap(), want);
        assert!(strip_operator(&braid(1, &[]), 0).is_err());
    }

    #[test]
    fn dense_and_columnwise_agree() {
        let colors = vec![H, Spin::ONE, H];
        let b = ColoredBraidWord::new(3, colors, vec![1, 1, 2, 2, -1, -1, 2, -2, 2, 2]).unwrap();
        let dense = evaluate_rt_dense(&b).unwrap();
        assert_eq!(evaluate_rt_with(&b, Strategy::Sequential).unwrap(), dense);
        assert_eq!(evaluate_rt_with(&b, Strategy::Parallel).unwrap(), dense);
    }

    #[test]
    fn color_mismatch_propagates() {
        let b = ColoredBraidWord::new(2, vec![H, Spin::ONE], vec![1]).unwrap();
        assert!(matches!(evaluate_rt(&b), Err(Error::ColorMismatch { .. })));
    }

    #[test]
    fn cabling_examples() {
        let unknot = braid(1, &[]);
        let cable = two_cabling(&unknot, 0, H, H).unwrap();
        assert_eq!(cable, braid(2, &[]));
        let want = &LaurentScalar::one() + &qdim(Spin::ONE);
        assert_eq!(evaluate_rt(&cable).unwrap(), want);

        let trefoil = braid(2, &[1, 1, 1]);
        let cable = two_cabling(&trefoil, 0, H, H).unwrap();
        assert_eq!(cable.strands(), 4);
        assert_eq!(cable.len(), 12);
        let fused: LaurentScalar = [Spin::ZERO, Spin::ONE]
            .into_iter()
            .map(|c| evaluate_rt(&ColoredBraidWord::uniform(2, c, vec![1, 1, 1]).unwrap()).unwrap())
            .sum();
        assert_eq!(evaluate_rt(&cable).unwrap(), fused);
        assert!(two_cabling(&trefoil, 1, H, H).is_err());
    }

    #[test]
    fn cabling_one_component_of_a_link() {
        let hopf = braid(2, &[1, 1]);
        let cable = two_cabling(&hopf, 0, H, H).unwrap();
        assert_eq!(cable.strands(), 3);
        let fused: LaurentScalar = [Spin::ZERO, Spin::ONE]
            .into_iter()
            .map(|c| evaluate_rt(&ColoredBraidWord::new(2, vec![c, H], vec![1, 1]).unwrap()).unwrap())
            .sum();
        assert_eq!(evaluate_rt(&cable).unwrap(), fused);
    }

    /// The word with strand `s` (by starting position) removed.
    fn delete_strand(b: &ColoredBraidWord, s: usize) -> (Vec<i32>, Vec<Spin>) {
        let mut at: Vec<usize> = (0..b.strands()).collect();
        let mut word = Vec::new();
        for &g in b.word() {
            let i = g.unsigned_abs() as usize;
            let ps = at.iter().position(|&x| x == s).unwrap();
            if at[i - 1] != s && at[i] != s {
                let gen = if ps < i - 1 { i - 1 } else { i } as i32;
                word.push(gen * g.signum());
            }
            at.swap(i - 1, i);
        }
        let mut colors = b.colors().to_vec();
        colors.remove(s);
        (word, colors)
    }

    fn arb_word(n: usize, len: usize) -> impl proptest::strategy::Strategy<Value = Vec<i32>> {
        use proptest::strategy::Strategy as _;
        let g = (1..n as i32, any::<bool>()).prop_map(|(i, s)| if s { i } else { -i });
        proptest::collection::vec(g, 0..=len)
    }

    proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]

        #[test]
        fn skein_relation(w in arb_word(3, 5), pos in 0usize..6, gen in 1u32..3) {
            let site = SkeinSite::Insert { position: pos.min(w.len()), generator: gen };
            let (p, m, z) = skein_triple(&braid(3, &w), site).unwrap();
            let lhs = &(&qf(1) * &evaluate_rt(&p).unwrap()) - &(&qf(-1) * &evaluate_rt(&m).unwrap());
            prop_assert_eq!(lhs, &(&q(1) - &q(-1)) * &evaluate_rt(&z).unwrap());
        }

        #[test]
        fn regular_moves_preserve_w(w in arb_word(3, 5)) {
            let b = braid(3, &w);
            let base = evaluate_rt(&b).unwrap();
            let framed = framed_invariant(&b).unwrap();
            for nb in markov_moves(&b) {
                if nb.strands() == b.strands() {
                    prop_assert_eq!(evaluate_rt(&nb).unwrap(), base.clone());
                }
                prop_assert_eq!(framed_invariant(&nb).unwrap(), framed.clone());
            }
        }

        #[test]
        fn positive_stabilization_multiplies_by_inverse_twist(w in arb_word(2, 4), spin in 0u32..3) {
            let c = Spin::from_twice(spin);
            let b = ColoredBraidWord::uniform(2, c, w).unwrap();
            let v = ribbon_scalar(c);
            let base = evaluate_rt(&b).unwrap();
            prop_assert_eq!(evaluate_rt(&stabilize(&b, 1)).unwrap(), &base * &v.monomial_pow(-1).unwrap());
            prop_assert_eq!(evaluate_rt(&stabilize(&b, -1)).unwrap(), &base * &v);
        }

        #[test]
        fn trivial_strands_are_transparent(w in arb_word(3, 6), zero in 0usize..3) {
            let mut colors = vec![H; 3];
            colors[zero] = Spin::ZERO;
            let b = ColoredBraidWord::new(3, colors, w.clone()).unwrap();
            if let Ok(full) = evaluate_rt(&b) {
                let (reduced, reduced_colors) = delete_strand(&b, zero);
                let small = ColoredBraidWord::new(2, reduced_colors, reduced).unwrap();
                prop_assert_eq!(full, evaluate_rt(&small).unwrap());
            }
        }

        #[test]
        fn split_union_multiplies(w1 in arb_word(2, 3), w2 in arb_word(2, 3)) {
            let (a, b) = (braid(2, &w1), braid(2, &w2));
            let u = a.split_union(&b);
            prop_assert_eq!(evaluate_rt(&u).unwrap(), &evaluate_rt(&a).unwrap() * &evaluate_rt(&b).unwrap());
        }
    }
}
