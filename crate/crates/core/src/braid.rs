//! Colored braid words, their trace closures and planar diagrams.
//!
//! Strand positions are 0-based; generator `±i` (1-based, `1 ≤ i < n`)
//! crosses the strands at positions `i-1` and `i`. In `+i` the strand
//! coming from the bottom-left passes over, the standard positive
//! crossing for upward-oriented strands. Words are read bottom to top.

use std::fmt;

use crate::uqsl2::Spin;
use crate::Error;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColoredBraidWord {
    strands: usize,
    colors: Vec<Spin>,
    word: Vec<i32>,
}

impl ColoredBraidWord {
    pub fn new(strands: usize, colors: Vec<Spin>, word: Vec<i32>) -> Result<Self, Error> {
        if strands == 0 {
            return Err(Error::NoStrands);
        }
        if colors.len() != strands {
            return Err(Error::WrongColorCount { expected: strands, got: colors.len() });
        }
        if let Some(&g) = word.iter().find(|&&g| g == 0 || g.unsigned_abs() as usize >= strands) {
            return Err(Error::InvalidGenerator { generator: g, strands });
        }
        Ok(Self { strands, colors, word })
    }

    /// All strands share one color.
    pub fn uniform(strands: usize, color: Spin, word: Vec<i32>) -> Result<Self, Error> {
        Self::new(strands, vec![color; strands], word)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    /// Color of the strand starting at each bottom position.
    pub fn colors(&self) -> &[Spin] {
        &self.colors
    }

    pub fn word(&self) -> &[i32] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn sign_sum(&self) -> i64 {
        self.word.iter().map(|&g| i64::from(g.signum())).sum()
    }

    /// Same strands and colors, different word. The word is validated.
    pub fn with_word(&self, word: Vec<i32>) -> Result<Self, Error> {
        Self::new(self.strands, self.colors.clone(), word)
    }

    /// Every crossing sign reversed.
    pub fn mirror(&self) -> Self {
        Self { word: self.word.iter().map(|g| -g).collect(), ..self.clone() }
    }

    /// `at[p]` = starting position of the strand at position `p` after the
    /// first `steps` letters.
    pub fn occupants_after(&self, steps: usize) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &g in &self.word[..steps] {
            let i = g.unsigned_abs() as usize;
            at.swap(i - 1, i);
        }
        at
    }

    /// Colors by position after the first `steps` letters.
    pub fn colors_after(&self, steps: usize) -> Vec<Spin> {
        self.occupants_after(steps).into_iter().map(|s| self.colors[s]).collect()
    }

    /// `perm[s]` = top position reached by the strand starting at `s`.
    pub fn permutation(&self) -> Vec<usize> {
        let at = self.occupants_after(self.word.len());
        let mut perm = vec![0; self.strands];
        for (p, s) in at.into_iter().enumerate() {
            perm[s] = p;
        }
        perm
    }

    /// Distant union: `other` placed to the right on fresh strands.
    pub fn split_union(&self, other: &Self) -> Self {
        let shift = self.strands as i32;
        let word = self
            .word
            .iter()
            .copied()
            .chain(other.word.iter().map(|&g| g + g.signum() * shift))
            .collect();
        Self {
            strands: self.strands + other.strands,
            colors: [self.colors.clone(), other.colors.clone()].concat(),
            word,
        }
    }
}

impl fmt::Display for ColoredBraidWord {
    /// Renders in the textual spec format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let colors: Vec<String> = self.colors.iter().map(|c| c.to_string()).collect();
        let word: Vec<String> = self.word.iter().map(|g| format!("{g:+}")).collect();
        write!(f, "n={}; colors={}; word={}", self.strands, colors.join(","), word.join(" "))
    }
}

impl fmt::Debug for ColoredBraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColoredBraidWord({self})")
    }
}

/// A closure component: the starting positions of its strands (ascending)
/// and its color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub strands: Vec<usize>,
    pub color: Spin,
}

/// Cycles of the closure permutation, ordered by smallest strand.
pub fn closure_components(b: &ColoredBraidWord) -> Result<Vec<Component>, Error> {
    let perm = b.permutation();
    let mut seen = vec![false; b.strands];
    let mut out = Vec::new();
    for start in 0..b.strands {
        if seen[start] {
            continue;
        }
        let mut strands = Vec::new();
        let mut s = start;
        while !seen[s] {
            seen[s] = true;
            if b.colors[s] != b.colors[start] {
                return Err(Error::ColorMismatch {
                    first: start,
                    second: s,
                    first_color: b.colors[start],
                    second_color: b.colors[s],
                });
            }
            strands.push(s);
            s = perm[s];
        }
        strands.sort_unstable();
        out.push(Component { strands, color: b.colors[start] });
    }
    Ok(out)
}

/// Component index of every starting strand.
pub fn component_index(components: &[Component], strands: usize) -> Vec<usize> {
    let mut idx = vec![0; strands];
    for (ci, c) in components.iter().enumerate() {
        for &s in &c.strands {
            idx[s] = ci;
        }
    }
    idx
}

/// Signed self-crossing count `n_i` of each component, in
/// [`closure_components`] order.
pub fn writhe_per_component(b: &ColoredBraidWord) -> Result<Vec<i64>, Error> {
    let comps = closure_components(b)?;
    let idx = component_index(&comps, b.strands);
    let mut writhe = vec![0i64; comps.len()];
    let mut at: Vec<usize> = (0..b.strands).collect();
    for &g in &b.word {
        let i = g.unsigned_abs() as usize;
        let (l, r) = (idx[at[i - 1]], idx[at[i]]);
        if l == r {
            writhe[l] += i64::from(g.signum());
        }
        at.swap(i - 1, i);
    }
    Ok(writhe)
}

/// A crossing `X[a, b, c, d]`: edge `a` is the incoming under-edge, the
/// others follow counterclockwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub edges: [usize; 4],
    pub sign: i8,
}

/// Oriented planar diagram: crossings plus loops that meet no crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    pub crossings: Vec<Crossing>,
    pub free_loops: usize,
    /// Color of each link component, including free loops.
    pub component_colors: Vec<Spin>,
}

impl LinkDiagram {
    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| i64::from(c.sign)).sum()
    }

    pub fn num_edges(&self) -> usize {
        2 * self.crossings.len()
    }

    pub fn components(&self) -> usize {
        self.component_colors.len()
    }

    /// Over and under strands exchanged at every crossing.
    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                let [a, b, c, d] = x.edges;
                // The old over strand (d -> b for +, b -> d for -) becomes
                // the under strand; restart the cycle at its incoming edge.
                let edges = if x.sign > 0 { [d, a, b, c] } else { [b, c, d, a] };
                Crossing { edges, sign: -x.sign }
            })
            .collect();
        Self { crossings, ..self.clone() }
    }

    /// Every edge label appears in exactly two crossing slots.
    pub fn is_well_formed(&self) -> bool {
        let mut count = vec![0usize; self.num_edges()];
        for x in &self.crossings {
            for &e in &x.edges {
                match count.get_mut(e) {
                    Some(c) => *c += 1,
                    None => return false,
                }
            }
        }
        count.iter().all(|&c| c == 2)
    }
}

/// Planar diagram of the trace closure.
pub fn braid_to_diagram(b: &ColoredBraidWord) -> Result<LinkDiagram, Error> {
    let comps = closure_components(b)?;
    let n = b.strands;
    let mut current: Vec<usize> = (0..n).collect();
    let mut next_edge = n;
    let mut touched = vec![false; n];
    let mut raw = Vec::with_capacity(b.word.len());
    for &g in &b.word {
        let i = g.unsigned_abs() as usize;
        let (in_l, in_r) = (current[i - 1], current[i]);
        let (out_l, out_r) = (next_edge, next_edge + 1);
        next_edge += 2;
        touched[i - 1] = true;
        touched[i] = true;
        let edges = if g > 0 { [in_r, out_r, out_l, in_l] } else { [in_l, in_r, out_r, out_l] };
        raw.push(Crossing { edges, sign: if g > 0 { 1 } else { -1 } });
        current[i - 1] = out_l;
        current[i] = out_r;
    }
    // Closure: the top edge at position p is the bottom edge at p. Follow
    // the identification, then renumber the surviving labels densely.
    let mut alias: Vec<usize> = (0..next_edge).collect();
    for (p, &top) in current.iter().enumerate() {
        if top != p {
            alias[top] = p;
        }
    }
    let mut dense = vec![usize::MAX; next_edge];
    for x in &raw {
        for &e in &x.edges {
            dense[alias[e]] = 0;
        }
    }
    for (fresh, d) in dense.iter_mut().filter(|d| **d == 0).enumerate() {
        *d = fresh;
    }
    let crossings = raw
        .into_iter()
        .map(|x| Crossing { edges: x.edges.map(|e| dense[alias[e]]), sign: x.sign })
        .collect();
    let free_loops = touched.iter().filter(|t| !**t).count();
    Ok(LinkDiagram {
        crossings,
        free_loops,
        component_colors: comps.iter().map(|c| c.color).collect(),
    })
}

/// One-step neighbours under braid relations, far commutation,
/// conjugation and stabilization.
pub fn markov_moves(b: &ColoredBraidWord) -> Vec<ColoredBraidWord> {
    let w = &b.word;
    let mut out = Vec::new();
    let mut push_word = |word: Vec<i32>, colors: Vec<Spin>, strands: usize| {
        let nb = ColoredBraidWord { strands, colors, word };
        if !out.contains(&nb) {
            out.push(nb);
        }
    };

    for k in 0..w.len() {
        // braid relation s_i s_j s_i -> s_j s_i s_j, |i - j| = 1, equal signs
        if k + 2 < w.len() {
            let (x, y, z) = (w[k], w[k + 1], w[k + 2]);
            if x == z && x.signum() == y.signum() && x.abs().abs_diff(y.abs()) == 1 {
                let mut nw = w.clone();
                nw[k..k + 3].copy_from_slice(&[y, x, y]);
                push_word(nw, b.colors.clone(), b.strands);
            }
        }
        // far commutation
        if k + 1 < w.len() && w[k].abs().abs_diff(w[k + 1].abs()) >= 2 {
            let mut nw = w.clone();
            nw.swap(k, k + 1);
            push_word(nw, b.colors.clone(), b.strands);
        }
    }

    // conjugation: cyclic rotations in both directions
    if !w.is_empty() {
        let mut fwd = w[1..].to_vec();
        fwd.push(w[0]);
        push_word(fwd, b.colors_after(1), b.strands);
        let mut back = vec![w[w.len() - 1]];
        back.extend_from_slice(&w[..w.len() - 1]);
        let mut colors = b.colors.clone();
        let last = w[w.len() - 1].unsigned_abs() as usize;
        colors.swap(last - 1, last);
        push_word(back, colors, b.strands);
    } else {
        push_word(Vec::new(), b.colors.clone(), b.strands);
    }
    // conjugation by a generator: s w s^{-1}
    for i in 1..b.strands as i32 {
        for s in [i, -i] {
            let mut nw = vec![s];
            nw.extend_from_slice(w);
            nw.push(-s);
            let mut colors = b.colors.clone();
            colors.swap(i as usize - 1, i as usize);
            push_word(nw, colors, b.strands);
        }
    }
    // stabilization onto a new rightmost strand
    let n = b.strands as i32;
    let top_color = b.colors_after(w.len())[b.strands - 1];
    for s in [n, -n] {
        let mut nw = w.clone();
        nw.push(s);
        let mut colors = b.colors.clone();
        colors.push(top_color);
        push_word(nw, colors, b.strands + 1);
    }
    out
}

/// Appends `σ_n^{sign}` on a new rightmost strand.
pub fn stabilize(b: &ColoredBraidWord, sign: i32) -> ColoredBraidWord {
    let n = b.strands as i32;
    let mut word = b.word.clone();
    word.push(if sign >= 0 { n } else { -n });
    let mut colors = b.colors.clone();
    colors.push(b.colors_after(b.word.len())[b.strands - 1]);
    ColoredBraidWord { strands: b.strands + 1, colors, word }
}

/// Every word on `strands` strands with length at most `max_len`, shortest
/// first, in lexicographic order of generators `-1, 1, -2, 2, ...`.
pub fn all_words(strands: usize, max_len: usize) -> Vec<Vec<i32>> {
    let letters: Vec<i32> = (1..strands as i32).flat_map(|i| [-i, i]).collect();
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        if letters.is_empty() {
            break;
        }
        layer = layer
            .iter()
            .flat_map(|w: &Vec<i32>| {
                letters.iter().map(move |&l| {
                    let mut nw = w.clone();
                    nw.push(l);
                    nw
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const H: Spin = Spin::HALF;

    fn braid(n: usize, word: &[i32]) -> ColoredBraidWord {
        ColoredBraidWord::uniform(n, H, word.to_vec()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(matches!(
            ColoredBraidWord::uniform(2, H, vec![5]),
            Err(Error::InvalidGenerator { generator: 5, .. })
        ));
        assert!(ColoredBraidWord::uniform(2, H, vec![0]).is_err());
        assert!(ColoredBraidWord::new(2, vec![H], vec![]).is_err());
        assert!(ColoredBraidWord::new(0, vec![], vec![]).is_err());
    }

    #[test]
    fn components_examples() {
        let trefoil = braid(2, &[1, 1, 1]);
        assert_eq!(closure_components(&trefoil).unwrap().len(), 1);
        let hopf = ColoredBraidWord::new(2, vec![H, Spin::ONE], vec![1, 1]).unwrap();
        let comps = closure_components(&hopf).unwrap();
        assert_eq!(comps.iter().map(|c| c.color).collect::<Vec<_>>(), vec![H, Spin::ONE]);
        let bad = ColoredBraidWord::new(2, vec![H, Spin::ONE], vec![1]).unwrap();
        assert!(matches!(closure_components(&bad), Err(Error::ColorMismatch { .. })));
    }

    #[test]
    fn writhe_examples() {
        assert_eq!(writhe_per_component(&braid(2, &[1, 1, 1])).unwrap(), vec![3]);
        assert_eq!(writhe_per_component(&braid(2, &[1, 1])).unwrap(), vec![0, 0]);
        assert_eq!(writhe_per_component(&braid(1, &[])).unwrap(), vec![0]);
        assert_eq!(writhe_per_component(&braid(3, &[1, -2, 1, -2])).unwrap(), vec![0]);
    }

    #[test]
    fn diagram_examples() {
        let d = braid_to_diagram(&braid(2, &[1, 1, 1])).unwrap();
        assert_eq!(d.crossings.len(), 3);
        assert!(d.crossings.iter().all(|x| x.sign == 1));
        assert_eq!(d.num_edges(), 6);
        assert!(d.is_well_formed());

        let unknot = braid_to_diagram(&braid(1, &[])).unwrap();
        assert!(unknot.crossings.is_empty());
        assert_eq!(unknot.free_loops, 1);

        let d = braid_to_diagram(&braid(3, &[1, -1])).unwrap();
        assert_eq!(d.free_loops, 1);
        assert_eq!(d.components(), 3);
        assert!(d.is_well_formed());
    }

    #[test]
    fn one_crossing_slots() {
        // positive: under strand enters bottom-right
        let d = braid_to_diagram(&braid(2, &[1])).unwrap();
        assert_eq!(d.crossings[0].edges, [1, 1, 0, 0]);
        let d = braid_to_diagram(&braid(2, &[-1])).unwrap();
        assert_eq!(d.crossings[0].edges, [0, 1, 1, 0]);
    }

    #[test]
    fn markov_examples() {
        let nb = markov_moves(&braid(3, &[1, 2, 1]));
        assert!(nb.iter().any(|x| x.word() == [2, 1, 2]));
        let nb = markov_moves(&braid(2, &[1]));
        assert!(nb.iter().any(|x| x.strands() == 3 && x.word() == [1, 2]));
        let nb = markov_moves(&braid(1, &[]));
        assert!(nb.iter().any(|x| x.strands() == 1 && x.is_empty()));
        assert!(nb.iter().filter(|x| x.strands() == 1).all(|x| x.is_empty()));
    }

    #[test]
    fn word_enumeration_counts() {
        assert_eq!(all_words(1, 6), vec![Vec::<i32>::new()]);
        assert_eq!(all_words(2, 6).len(), 127);
        assert_eq!(all_words(3, 6).len(), 5461);
        assert_eq!(all_words(3, 1), vec![vec![], vec![-1], vec![1], vec![-2], vec![2]]);
    }

    #[test]
    fn split_union_shifts_generators() {
        let u = braid(2, &[1, -1]).split_union(&braid(3, &[-2, 1]));
        assert_eq!(u.word(), [1, -1, -4, 3]);
        assert_eq!(u.strands(), 5);
    }

    fn arb_braid() -> impl Strategy<Value = ColoredBraidWord> {
        (1usize..5).prop_flat_map(|n| {
            let gen = if n == 1 {
                Just(Vec::new()).boxed()
            } else {
                let g = (1..n as i32, any::<bool>()).prop_map(|(i, s)| if s { i } else { -i });
                proptest::collection::vec(g, 0..8).boxed()
            };
            gen.prop_map(move |w| ColoredBraidWord::uniform(n, H, w).unwrap())
        })
    }

    proptest! {
        #[test]
        fn diagram_signs_sum_to_word(b in arb_braid()) {
            let d = braid_to_diagram(&b).unwrap();
            prop_assert!(d.is_well_formed());
            prop_assert_eq!(d.writhe(), b.sign_sum());
            prop_assert_eq!(d.components(), closure_components(&b).unwrap().len());
        }

        #[test]
        fn mirror_diagram_is_diagram_of_mirror(b in arb_braid()) {
            let d = braid_to_diagram(&b).unwrap().mirror();
            prop_assert_eq!(d, braid_to_diagram(&b.mirror()).unwrap());
        }

        #[test]
        fn components_stable_under_regular_moves(b in arb_braid()) {
            let count = closure_components(&b).unwrap().len();
            for nb in markov_moves(&b) {
                if nb.strands() == b.strands() {
                    prop_assert_eq!(closure_components(&nb).unwrap().len(), count);
                }
            }
        }

        #[test]
        fn knot_writhe_is_sign_sum(b in arb_braid()) {
            let wr = writhe_per_component(&b).unwrap();
            if wr.len() == 1 {
                prop_assert_eq!(wr[0], b.sign_sum());
            }
        }
    }
}
