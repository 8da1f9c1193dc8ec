//! Jones polynomial by Kauffman-bracket state expansion.
//!
//! Shares nothing with the R-matrix pipelines except the scalar ring. The
//! bracket variable is embedded as `A = q^{1/2}`, so the loop value is
//! `δ = -A² - A⁻² = -[2]`.

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;

use crate::braid::{ColoredBraidWord, LinkDiagram};
use crate::exec::Strategy;
use crate::laurent::LaurentScalar;
use crate::uqsl2::Spin;
use crate::Error;

/// `t`-exponent of the bracket variable `A`.
const A_T_EXP: i64 = 2;

/// States per work unit of the expansion.
const CHUNK_BITS: u32 = 10;

fn check_fundamental(d: &LinkDiagram) -> Result<(), Error> {
    match d.component_colors.iter().find(|&&c| c != Spin::HALF) {
        Some(&c) => Err(Error::NonFundamental(c)),
        None => Ok(()),
    }
}

fn a_pow(e: i64) -> LaurentScalar {
    LaurentScalar::t_pow(A_T_EXP * e)
}

fn loop_value() -> LaurentScalar {
    -(&a_pow(2) + &a_pow(-2))
}

/// Loops of the smoothing `state` (bit `k` set = B-smoothing at crossing `k`).
fn count_loops(d: &LinkDiagram, state: u64) -> usize {
    let mut uf = UnionFind::<usize>::new(d.num_edges());
    for (k, x) in d.crossings.iter().enumerate() {
        let [a, b, c, e] = x.edges;
        if state >> k & 1 == 0 {
            uf.union(a, b);
            uf.union(c, e);
        } else {
            uf.union(a, e);
            uf.union(b, c);
        }
    }
    let mut roots = uf.into_labeling();
    roots.sort_unstable();
    roots.dedup();
    roots.len() + d.free_loops
}

/// `⟨D⟩ = Σ_s A^{#A(s) - #B(s)} δ^{loops(s)}`; every loop, including a lone
/// unknot, contributes `δ`, and the empty diagram is 1.
pub fn kauffman_bracket(d: &LinkDiagram) -> Result<LaurentScalar, Error> {
    kauffman_bracket_with(d, Strategy::default())
}

pub fn kauffman_bracket_with(d: &LinkDiagram, strategy: Strategy) -> Result<LaurentScalar, Error> {
    check_fundamental(d)?;
    let n = d.crossings.len();
    assert!(n < 40, "state expansion over {n} crossings is out of reach");
    let total: u64 = 1 << n;
    let chunk: u64 = 1 << CHUNK_BITS.min(n as u32);
    let chunks = (total / chunk) as usize;
    // (A-exponent, loops) -> number of states
    let partial = strategy.map(chunks, |ci| {
        let mut counts: BTreeMap<(i64, usize), i64> = BTreeMap::new();
        for state in ci as u64 * chunk..(ci as u64 + 1) * chunk {
            let b_count = i64::from(state.count_ones());
            let a_exp = n as i64 - 2 * b_count;
            *counts.entry((a_exp, count_loops(d, state))).or_default() += 1;
        }
        counts
    });
    let mut counts: BTreeMap<(i64, usize), i64> = BTreeMap::new();
    for part in partial {
        for (k, v) in part {
            *counts.entry(k).or_default() += v;
        }
    }
    let delta = loop_value();
    let mut delta_pows = vec![LaurentScalar::one()];
    let mut acc = LaurentScalar::zero();
    for ((a_exp, loops), count) in counts {
        while delta_pows.len() <= loops {
            let next = delta_pows.last().unwrap() * &delta;
            delta_pows.push(next);
        }
        acc += &(&delta_pows[loops] * &a_pow(a_exp)).scale(&count.into());
    }
    Ok(acc)
}

/// `P(L, q²) = (-1)^{#components} (-A³)^{-w} ⟨D⟩`, normalized so the unknot
/// gives `[2]` and the skein relation
/// `q² P(L₊) − q⁻² P(L₋) = (q − q⁻¹) P(L₀)` holds.
pub fn jones_at_q_squared(d: &LinkDiagram) -> Result<LaurentScalar, Error> {
    let bracket = kauffman_bracket(d)?;
    let w = d.writhe();
    let sign = if (d.components() as i64 + w) % 2 == 0 { 1 } else { -1 };
    Ok((&bracket * &a_pow(-3 * w)).scale(&sign.into()))
}

/// `P(L, z)` as a Laurent polynomial whose `q` stands for `z`; substituting
/// `z = q²` (`substitute_power(·, 2)`) gives [`jones_at_q_squared`].
pub fn jones_unnormalized(d: &LinkDiagram) -> Result<LaurentScalar, Error> {
    jones_at_q_squared(d)?
        .halve_exponents()
        .ok_or_else(|| Error::NotLaurent("Jones polynomial off the z^{1/4} lattice".into()))
}

/// Where a skein triple is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkeinSite {
    /// The letter at this index of the word.
    At(usize),
    /// A new letter `σ_generator^{±1}` inserted before this index.
    Insert { position: usize, generator: u32 },
}

/// `(L₊, L₋, L₀)`: the site carries `σ_i`, `σ_i⁻¹`, or nothing.
pub fn skein_triple(
    b: &ColoredBraidWord,
    site: SkeinSite,
) -> Result<(ColoredBraidWord, ColoredBraidWord, ColoredBraidWord), Error> {
    let w = b.word();
    let (position, generator, remove) = match site {
        SkeinSite::At(p) if p < w.len() => (p, w[p].abs(), true),
        SkeinSite::At(p) => return Err(Error::BadPosition { position: p, len: w.len() }),
        SkeinSite::Insert { position, generator } => {
            if position > w.len() {
                return Err(Error::BadPosition { position, len: w.len() });
            }
            let g = generator as i32;
            if g == 0 || generator as usize >= b.strands() {
                return Err(Error::InvalidGenerator { generator: g, strands: b.strands() });
            }
            (position, g, false)
        }
    };
    let with = |letter: Option<i32>| {
        let mut nw = w.to_vec();
        if remove {
            nw.remove(position);
        }
        if let Some(l) = letter {
            nw.insert(position, l);
        }
        b.with_word(nw)
    };
    Ok((with(Some(generator))?, with(Some(-generator))?, with(None)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::braid_to_diagram;
    use crate::laurent::quantum_integer;
    use proptest::prelude::{any, prop, prop_assert_eq, proptest};

    fn braid(n: usize, word: &[i32]) -> ColoredBraidWord {
        ColoredBraidWord::uniform(n, Spin::HALF, word.to_vec()).unwrap()
    }

    fn bracket(n: usize, word: &[i32]) -> LaurentScalar {
        kauffman_bracket(&braid_to_diagram(&braid(n, word)).unwrap()).unwrap()
    }

    fn p2(n: usize, word: &[i32]) -> LaurentScalar {
        jones_at_q_squared(&braid_to_diagram(&braid(n, word)).unwrap()).unwrap()
    }

    fn q(k: i64) -> LaurentScalar {
        LaurentScalar::q_pow(k)
    }

    #[test]
    fn bracket_of_unlinks() {
        let delta = loop_value();
        assert_eq!(delta, -quantum_integer(2));
        assert_eq!(bracket(1, &[]), delta);
        assert_eq!(bracket(2, &[]), &delta * &delta);
        let empty = LinkDiagram { crossings: vec![], free_loops: 0, component_colors: vec![] };
        assert!(kauffman_bracket(&empty).unwrap().is_one());
    }

    #[test]
    fn rejects_other_colors() {
        let b = ColoredBraidWord::uniform(2, Spin::ONE, vec![1]).unwrap();
        let d = braid_to_diagram(&b).unwrap();
        assert_eq!(kauffman_bracket(&d), Err(Error::NonFundamental(Spin::ONE)));
    }

    #[test]
    fn trefoil_bracket_is_the_textbook_value() {
        // A^{-7} - A^{-3} - A^5 up to chirality, times δ for the δ-per-loop count
        let norm = &(&a_pow(-7) - &a_pow(-3)) - &a_pow(5);
        let got = bracket(2, &[1, 1, 1]);
        let want = &norm * &loop_value();
        assert!(got == want || got == want.bar(), "{got}");
    }

    #[test]
    fn jones_values() {
        assert_eq!(p2(1, &[]), quantum_integer(2));
        assert_eq!(p2(2, &[1]), quantum_integer(2));
        assert_eq!(p2(2, &[]), &quantum_integer(2) * &quantum_integer(2));
        let trefoil = [q(-1), q(-3), q(-5), -q(-9)].into_iter().sum::<LaurentScalar>();
        assert_eq!(p2(2, &[1, 1, 1]), trefoil);
        assert_eq!(p2(2, &[-1, -1, -1]), trefoil.bar());
        let hopf = [q(0), q(-2), q(-4), q(-6)].into_iter().sum::<LaurentScalar>();
        assert_eq!(p2(2, &[1, 1]), hopf);
        // figure-eight is amphichiral
        let fig8 = p2(3, &[1, -2, 1, -2]);
        assert_eq!(fig8, fig8.bar());
        let z = jones_unnormalized(&braid_to_diagram(&braid(1, &[])).unwrap()).unwrap();
        assert_eq!(z.substitute_power(2), quantum_integer(2));
    }

    #[test]
    fn skein_triple_examples() {
        let (p, m, z) = skein_triple(&braid(2, &[1, 1, 1]), SkeinSite::At(0)).unwrap();
        assert_eq!((p.word(), m.word(), z.word()), (&[1, 1, 1][..], &[-1, 1, 1][..], &[1, 1][..]));
        let site = SkeinSite::Insert { position: 0, generator: 1 };
        let (p, m, z) = skein_triple(&braid(2, &[]), site).unwrap();
        assert_eq!((p.word(), m.word(), z.word()), (&[1][..], &[-1][..], &[][..]));
        assert!(skein_triple(&braid(1, &[]), SkeinSite::At(0)).is_err());
        assert!(skein_triple(&braid(1, &[]), SkeinSite::Insert { position: 0, generator: 1 }).is_err());
    }

    #[test]
    fn strategies_agree() {
        let d = braid_to_diagram(&braid(4, &[1, -2, 3, 1, -2, 3, 1, -2, 3, 2, 2, -1])).unwrap();
        assert_eq!(
            kauffman_bracket_with(&d, crate::Strategy::Sequential).unwrap(),
            kauffman_bracket_with(&d, crate::Strategy::Parallel).unwrap()
        );
    }

    fn arb_word(n: usize, len: usize) -> impl proptest::strategy::Strategy<Value = Vec<i32>> {
        use proptest::strategy::Strategy as _;
        let g = (1..n as i32, any::<bool>()).prop_map(|(i, s)| if s { i } else { -i });
        proptest::collection::vec(g, 0..=len)
    }

    proptest! {
        #[test]
        fn oracle_skein_relation(w in arb_word(3, 6), pos in 0usize..7, gen in 1u32..3) {
            let b = braid(3, &w);
            let site = SkeinSite::Insert { position: pos.min(w.len()), generator: gen };
            let (p, m, z) = skein_triple(&b, site).unwrap();
            let val = |x: &ColoredBraidWord| jones_at_q_squared(&braid_to_diagram(x).unwrap()).unwrap();
            let lhs = &(&q(2) * &val(&p)) - &(&q(-2) * &val(&m));
            prop_assert_eq!(lhs, &(&q(1) - &q(-1)) * &val(&z));
        }

        #[test]
        fn bracket_reidemeister_two_and_three(w in arb_word(3, 5), pos in 0usize..6, s in prop::bool::ANY) {
            let pos = pos.min(w.len());
            let g = if s { 1 } else { -1 };
            let mut r2 = w.clone();
            r2.splice(pos..pos, [g, -g]);
            prop_assert_eq!(bracket(3, &r2), bracket(3, &w));
            let mut r3a = w.clone();
            r3a.splice(pos..pos, [g, 2 * g, g]);
            let mut r3b = w.clone();
            r3b.splice(pos..pos, [2 * g, g, 2 * g]);
            prop_assert_eq!(bracket(3, &r3a), bracket(3, &r3b));
        }

        #[test]
        fn jones_reidemeister_one(w in arb_word(2, 5), s in prop::bool::ANY) {
            let b = braid(2, &w);
            let stab = crate::braid::stabilize(&b, if s { 1 } else { -1 });
            let val = |x: &ColoredBraidWord| jones_at_q_squared(&braid_to_diagram(x).unwrap()).unwrap();
            prop_assert_eq!(val(&stab), val(&b));
        }

        #[test]
        fn mirror_symmetry(w in arb_word(3, 6)) {
            let b = braid(3, &w);
            let d = braid_to_diagram(&b).unwrap();
            prop_assert_eq!(kauffman_bracket(&d.mirror()).unwrap(), kauffman_bracket(&d).unwrap().bar());
            prop_assert_eq!(p2(3, b.mirror().word()), p2(3, &w).bar());
        }
    }
}
