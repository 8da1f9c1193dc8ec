//! Randomized and exhaustive identity checks across all three pipelines.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rtlink::braid::{all_words, braid_to_diagram, closure_components, markov_moves, stabilize};
use rtlink::rt_engine::{evaluate_rt, framed_invariant, two_cabling};
use rtlink::shadow_engine::evaluate_shadow;
use rtlink::skein_oracle::{jones_at_q_squared, skein_triple, SkeinSite};
use rtlink::uqsl2::{qdim, ribbon_scalar};
use rtlink::{ColoredBraidWord, LaurentScalar, Spin, Strategy};

/// Exhaustive enumeration is used while it stays below this many braids.
const EXHAUSTIVE_LIMIT: usize = 20_000;

#[derive(Clone, Debug)]
pub struct CrosscheckConfig {
    pub max_strands: usize,
    pub max_length: usize,
    pub max_spin: Spin,
    pub seed: u64,
}

impl Default for CrosscheckConfig {
    fn default() -> Self {
        Self { max_strands: 3, max_length: 6, max_spin: Spin::ONE, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub total: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub checks: Vec<CheckResult>,
}

impl CrosscheckReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

impl fmt::Display for CrosscheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            writeln!(f, "{tag} {}: {}/{} passed", c.name, c.total - c.failed, c.total)?;
            if let Some(first) = &c.first_failure {
                writeln!(f, "  first counterexample: {first}")?;
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        writeln!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

/// Runs `check` over `items` concurrently and tallies the outcome.
fn tally<T: Sync>(name: &'static str, items: &[T], check: impl Fn(&T) -> Result<(), String> + Sync + Send) -> CheckResult {
    let results = Strategy::default().map_slice(items, check);
    let failed = results.iter().filter(|r| r.is_err()).count();
    let first_failure = results.into_iter().find_map(Result::err);
    CheckResult { name, total: items.len(), failed, first_failure }
}

fn eq_or(lhs: LaurentScalar, rhs: LaurentScalar, b: &ColoredBraidWord) -> Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{b}: {lhs} != {rhs}"))
    }
}

fn fmt_err(b: &ColoredBraidWord) -> impl Fn(rtlink::Error) -> String + '_ {
    move |e| format!("{b}: {e}")
}

/// Spins `0, 1/2, ..., max`.
fn spins_upto(max: Spin) -> Vec<Spin> {
    (0..=max.twice()).map(Spin::from_twice).collect()
}

fn random_word(rng: &mut ChaCha8Rng, strands: usize, max_len: usize) -> Vec<i32> {
    if strands < 2 {
        return Vec::new();
    }
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let i = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect()
}

/// A random braid whose closure components get independent random colors.
fn random_colored(rng: &mut ChaCha8Rng, min_strands: usize, cfg: &CrosscheckConfig, palette: &[Spin]) -> ColoredBraidWord {
    let strands = rng.gen_range(min_strands..=cfg.max_strands.max(min_strands));
    let word = random_word(rng, strands, cfg.max_length);
    let plain = ColoredBraidWord::uniform(strands, Spin::HALF, word.clone()).expect("valid word");
    let comps = closure_components(&plain).expect("uniform colors");
    let mut colors = vec![Spin::HALF; strands];
    for comp in comps {
        let c = *palette.choose(rng).expect("non-empty palette");
        for s in comp.strands {
            colors[s] = c;
        }
    }
    ColoredBraidWord::new(strands, colors, word).expect("valid word")
}

fn random_fundamental(rng: &mut ChaCha8Rng, min_strands: usize, cfg: &CrosscheckConfig) -> ColoredBraidWord {
    random_colored(rng, min_strands, cfg, &[Spin::HALF])
}

/// Every fundamental braid within the bounds, or a seeded sample of
/// [`EXHAUSTIVE_LIMIT`] of them when that is too many.
fn fundamental_corpus(rng: &mut ChaCha8Rng, cfg: &CrosscheckConfig) -> Vec<ColoredBraidWord> {
    let count: usize = (1..=cfg.max_strands)
        .map(|n| {
            let letters = 2 * (n - 1);
            (0..=cfg.max_length).map(|l| letters.saturating_pow(l as u32).max(usize::from(l == 0))).sum::<usize>()
        })
        .sum();
    if count <= EXHAUSTIVE_LIMIT {
        (1..=cfg.max_strands)
            .flat_map(|n| {
                all_words(n, cfg.max_length)
                    .into_iter()
                    .map(move |w| ColoredBraidWord::uniform(n, Spin::HALF, w).expect("valid word"))
            })
            .collect()
    } else {
        (0..EXHAUSTIVE_LIMIT).map(|_| random_fundamental(rng, 1, cfg)).collect()
    }
}

pub fn run_crosscheck(cfg: &CrosscheckConfig) -> CrosscheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let palette = spins_upto(cfg.max_spin);
    let mut checks = Vec::new();
    let has_crossings = cfg.max_strands >= 2 && cfg.max_length >= 1;

    // empty words: both pipelines give the product of quantum dimensions
    let empties: Vec<ColoredBraidWord> = (1..=cfg.max_strands.max(1))
        .flat_map(|n| {
            palette.iter().map(move |&c| ColoredBraidWord::uniform(n, c, Vec::new()).expect("valid"))
        })
        .collect();
    checks.push(tally("empty words give quantum dimension products", &empties, |b| {
        let want = b.colors().iter().fold(LaurentScalar::one(), |acc, &c| &acc * &qdim(c));
        eq_or(evaluate_rt(b).map_err(fmt_err(b))?, want.clone(), b)?;
        eq_or(evaluate_shadow(b).map_err(fmt_err(b))?, want, b)
    }));

    // pipeline equality on the fundamental corpus plus colored samples
    let mut corpus = fundamental_corpus(&mut rng, cfg);
    corpus.extend((0..50).map(|_| random_colored(&mut rng, 1, cfg, &palette)));
    checks.push(tally("quantum trace equals shadow state sum", &corpus, |b| {
        eq_or(evaluate_rt(b).map_err(fmt_err(b))?, evaluate_shadow(b).map_err(fmt_err(b))?, b)
    }));

    // Jones identity against the Kauffman-bracket oracle (total writhe)
    let sample: Vec<ColoredBraidWord> = (0..200).map(|_| random_fundamental(&mut rng, 1, cfg)).collect();
    checks.push(tally("w = q^{3/2 writhe} P(L, q^2)", &sample, |b| {
        let d = braid_to_diagram(b).map_err(fmt_err(b))?;
        let p = jones_at_q_squared(&d).map_err(fmt_err(b))?;
        let want = &p * &LaurentScalar::q_frac(3 * d.writhe(), 2);
        eq_or(evaluate_rt(b).map_err(fmt_err(b))?, want, b)
    }));

    // skein relation through the R-matrix pipeline
    let triples: Vec<(ColoredBraidWord, SkeinSite)> = if has_crossings {
        (0..100)
            .map(|_| {
                let b = random_fundamental(&mut rng, 2, cfg);
                let site = if !b.is_empty() && rng.gen_bool(0.5) {
                    SkeinSite::At(rng.gen_range(0..b.len()))
                } else {
                    SkeinSite::Insert {
                        position: rng.gen_range(0..=b.len()),
                        generator: rng.gen_range(1..b.strands() as u32),
                    }
                };
                (b, site)
            })
            .collect()
    } else {
        Vec::new()
    };
    checks.push(tally("skein relation q^{1/2} w+ - q^{-1/2} w- = (q - q^{-1}) w0", &triples, |(b, site)| {
        let (p, m, z) = skein_triple(b, *site).map_err(fmt_err(b))?;
        let w = |x: &ColoredBraidWord| evaluate_rt(x).map_err(fmt_err(x));
        let lhs = &(&LaurentScalar::q_frac(1, 2) * &w(&p)?) - &(&LaurentScalar::q_frac(-1, 2) * &w(&m)?);
        let rhs = &(&LaurentScalar::q_pow(1) - &LaurentScalar::q_pow(-1)) * &w(&z)?;
        eq_or(lhs, rhs, b)
    }));

    // framing: stabilization factor and Markov invariance of I(L)
    let framed: Vec<ColoredBraidWord> = (0..50).map(|_| random_colored(&mut rng, 1, cfg, &palette)).collect();
    checks.push(tally("stabilization multiplies w by v^{-1} (positive) or v (negative)", &framed, |b| {
        let base = evaluate_rt(b).map_err(fmt_err(b))?;
        let top = b.colors_after(b.len())[b.strands() - 1];
        let v = ribbon_scalar(top);
        let v_inv = v.monomial_pow(-1).expect("unit");
        eq_or(evaluate_rt(&stabilize(b, 1)).map_err(fmt_err(b))?, &base * &v_inv, b)?;
        eq_or(evaluate_rt(&stabilize(b, -1)).map_err(fmt_err(b))?, &base * &v, b)
    }));
    checks.push(tally("I(L) is invariant on depth-2 Markov neighbourhoods", &framed, |b| {
        let base = framed_invariant(b).map_err(fmt_err(b))?;
        for n1 in markov_moves(b) {
            eq_or(framed_invariant(&n1).map_err(fmt_err(&n1))?, base.clone(), &n1)?;
            for n2 in markov_moves(&n1) {
                eq_or(framed_invariant(&n2).map_err(fmt_err(&n2))?, base.clone(), &n2)?;
            }
        }
        Ok(())
    }));

    // split unions factor
    let pairs: Vec<(ColoredBraidWord, ColoredBraidWord)> = (0..20)
        .map(|_| (random_colored(&mut rng, 1, cfg, &palette), random_colored(&mut rng, 1, cfg, &palette)))
        .collect();
    checks.push(tally("w of a split union is the product", &pairs, |(a, b)| {
        let u = a.split_union(b);
        let prod = &evaluate_rt(a).map_err(fmt_err(a))? * &evaluate_rt(b).map_err(fmt_err(b))?;
        eq_or(evaluate_rt(&u).map_err(fmt_err(&u))?, prod, &u)
    }));

    // cabling against fusion, on knots
    let short = CrosscheckConfig { max_length: cfg.max_length.min(4), ..cfg.clone() };
    let knots: Vec<ColoredBraidWord> = (0..200)
        .map(|_| random_fundamental(&mut rng, 1, &short))
        .filter(|b| closure_components(b).map(|c| c.len() == 1).unwrap_or(false))
        .take(10)
        .collect();
    checks.push(tally("2-cable equals the sum over fused colors", &knots, |b| {
        let cable = two_cabling(b, 0, Spin::HALF, Spin::HALF).map_err(fmt_err(b))?;
        let mut fused = LaurentScalar::zero();
        for c in [Spin::ZERO, Spin::ONE] {
            let colored = ColoredBraidWord::uniform(b.strands(), c, b.word().to_vec()).map_err(fmt_err(b))?;
            fused += &evaluate_rt(&colored).map_err(fmt_err(b))?;
        }
        eq_or(evaluate_rt(&cable).map_err(fmt_err(&cable))?, fused, b)
    }));

    CrosscheckReport { checks }
}
