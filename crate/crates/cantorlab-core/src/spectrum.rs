//! Least gaps between same-length cylinder origins.
//!
//! For words `i`, `j` of common length `n` put `v = 3^n (f_i(0) − f_j(0))`.
//! Appending digits `a` to `i` and `b` to `j` sends `v` to `3v + δ` with
//! `δ = value(a) − value(b)`, so the reachable offsets form the closure of
//! `{0}` under `v ↦ 3v + δ`, `δ ∈ Δ = Ω − Ω`, `Ω = {0, λ, 2}`. Once
//! `|v| > 1` every continuation has `|3v + δ| ≥ 3|v| − 2 > |v|`, so such
//! states never return to `[−1, 1]` and can never beat the level-one
//! offset `λ < 1`; the closure inside `[−1, 1]` is finite (denominators
//! divide that of `λ`). The least nonzero `|v|`, written `l(λ)`, is the
//! smallest positive scaled distance between distinct cylinder origins.

use crate::error::{Error, Result};
use crate::numeric::{pow3_rat, rat, validate_lambda, Digit, DigitWord, Rational};
use crate::structure::check_guard;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Digit pairs realizing each offset increment, listed so the increments
/// come out ascending: −2 < −(2−λ) < −λ < 0 < λ < 2−λ < 2 for λ ∈ (0,1).
const DELTA_PAIRS: [(Digit, Digit); 7] = [
    (Digit::Z, Digit::T),
    (Digit::L, Digit::T),
    (Digit::Z, Digit::L),
    (Digit::Z, Digit::Z),
    (Digit::L, Digit::Z),
    (Digit::T, Digit::L),
    (Digit::T, Digit::Z),
];

/// The offset alphabet `Δ = {a − b : a, b ∈ {0, λ, 2}}` in ascending
/// order; seven distinct values for λ ∈ (0, 1).
pub fn delta_set(lambda: &Rational) -> Vec<Rational> {
    DELTA_PAIRS
        .iter()
        .map(|(a, b)| a.value(lambda) - b.value(lambda))
        .collect()
}

/// Breadth-first closure of `{0}` under `v ↦ 3v + δ` inside `[−1, 1]`,
/// with enough bookkeeping to rebuild a word pair for any state.
#[derive(Debug, Clone)]
pub struct OffsetGraph {
    pub lambda: Rational,
    /// `Δ` ascending, aligned with the digit-pair table.
    pub deltas: Vec<Rational>,
    /// States in discovery order; index 0 is the root 0.
    pub states: Vec<Rational>,
    /// `preds[k]` = (state, delta index) of the tree edge into state `k`.
    pub preds: Vec<Option<(usize, usize)>>,
    /// BFS depth of each state = length of the realizing word pair.
    pub depths: Vec<u32>,
}

impl OffsetGraph {
    /// Index of the first-discovered state of minimal nonzero magnitude.
    /// `None` only for an empty graph, which `build` never produces.
    pub fn min_nonzero_index(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (k, v) in self.states.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            match best {
                Some(b) if self.states[b].abs() <= v.abs() => {}
                _ => best = Some(k),
            }
        }
        best
    }

    /// The word pair spelled by the BFS tree path from the root to `k`:
    /// equal-length words `(i, j)` with `3^n (f_i(0) − f_j(0)) =` state `k`.
    pub fn witness_words(&self, k: usize) -> (DigitWord, DigitWord) {
        let mut path = Vec::new();
        let mut cur = k;
        while let Some((p, di)) = self.preds[cur] {
            path.push(di);
            cur = p;
        }
        path.reverse();
        let mut wi = Vec::with_capacity(path.len());
        let mut wj = Vec::with_capacity(path.len());
        for di in path {
            let (a, b) = DELTA_PAIRS[di];
            wi.push(a);
            wj.push(b);
        }
        (DigitWord::from_digits(wi), DigitWord::from_digits(wj))
    }
}

/// Builds the reachable offset graph for λ. State count is at most
/// `2q + 1` where `q` is the denominator of λ.
pub fn offset_graph(lambda: &Rational) -> Result<OffsetGraph> {
    validate_lambda(lambda)?;
    let deltas = delta_set(lambda);
    let one = Rational::one();
    let three = rat(3, 1);
    let mut states = alloc::vec![Rational::zero()];
    let mut preds: Vec<Option<(usize, usize)>> = alloc::vec![None];
    let mut depths = alloc::vec![0u32];
    let mut index: BTreeMap<Rational, usize> = BTreeMap::new();
    index.insert(Rational::zero(), 0);
    let mut head = 0;
    while head < states.len() {
        let v = states[head].clone();
        for (di, delta) in deltas.iter().enumerate() {
            let next = &three * &v + delta;
            if next.abs() > one || index.contains_key(&next) {
                continue;
            }
            index.insert(next.clone(), states.len());
            states.push(next);
            preds.push(Some((head, di)));
            depths.push(depths[head] + 1);
        }
        head += 1;
    }
    Ok(OffsetGraph { lambda: lambda.clone(), deltas, states, preds, depths })
}

/// `l(λ)` together with a shortest witnessing word pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumResult {
    pub value: Rational,
    /// `3^n |f_i(0) − f_j(0)| = value` with `n = witness_n = |i| = |j|`.
    pub witness_i: DigitWord,
    pub witness_j: DigitWord,
    pub witness_n: u32,
    /// Offset states explored, root included.
    pub state_count: usize,
}

pub fn spectrum_exact(lambda: &Rational) -> Result<SpectrumResult> {
    let graph = offset_graph(lambda)?;
    let k = graph
        .min_nonzero_index()
        .expect("±λ is always a reachable nonzero offset");
    let (witness_i, witness_j) = graph.witness_words(k);
    Ok(SpectrumResult {
        value: graph.states[k].abs(),
        witness_i,
        witness_j,
        witness_n: graph.depths[k],
        state_count: graph.states.len(),
    })
}

/// Cross-check for [`spectrum_exact`] by plain enumeration: level `n`
/// holds every offset `3^n (f_i(0) − f_j(0))` over word pairs of length
/// `n`, pruned only at `|v| > 3` (far beyond any candidate minimum, which
/// is at most λ from level one). Returns the least nonzero magnitude seen
/// through `depth` levels.
pub fn spectrum_brute(lambda: &Rational, depth: u32, guard: u32) -> Result<Rational> {
    validate_lambda(lambda)?;
    if depth == 0 {
        return Err(Error::domain("offset enumeration needs depth >= 1"));
    }
    check_guard(depth, guard)?;
    let deltas = delta_set(lambda);
    let cap = rat(3, 1);
    let three = rat(3, 1);
    let mut level: BTreeSet<Rational> = BTreeSet::new();
    level.insert(Rational::zero());
    let mut best: Option<Rational> = None;
    for _ in 0..depth {
        let mut next = BTreeSet::new();
        for v in &level {
            let base = &three * v;
            for delta in &deltas {
                let w = &base + delta;
                if w.abs() <= cap {
                    next.insert(w);
                }
            }
        }
        for w in &next {
            if !w.is_zero() {
                let mag = w.abs();
                if best.as_ref().is_none_or(|b| &mag < b) {
                    best = Some(mag);
                }
            }
        }
        level = next;
    }
    best.ok_or_else(|| Error::domain("no nonzero offsets reachable"))
}

/// Partial closed form for `l(λ)`: write λ = p/q in lowest terms and
/// p = m·3^e with 3 ∤ m. If m ∈ {1, 2} then `l(λ) = m/q`; otherwise this
/// route says nothing and returns `None`.
pub fn spectrum_closed_form(lambda: &Rational) -> Option<Rational> {
    if validate_lambda(lambda).is_err() {
        return None;
    }
    let three = BigInt::from(3);
    let mut m = lambda.numer().clone();
    while (&m % &three).is_zero() {
        m /= &three;
    }
    (m == BigInt::one() || m == BigInt::from(2))
        .then(|| Rational::new(m, lambda.denom().clone()))
}

/// One greedy step: the first digit in {2, 0, −2} whose scaled value is
/// within `3^{−k}` of the remainder, with the new remainder.
fn greedy_step(r: &Rational, k: u32) -> Option<(i8, Rational)> {
    let scale = pow3_rat(-(k as i32));
    for cand in [2i8, 0, -2] {
        let next = r - rat(cand as i64, 1) * &scale;
        if next.abs() <= scale {
            return Some((cand, next));
        }
    }
    None
}

/// Signed triadic expansion λ = Σ_k λ̃_k 3^{−k} with λ̃_k ∈ {2, 0, −2},
/// chosen greedily (2 first, then 0, then −2) so the remainder after `k`
/// terms stays within `3^{−k}`. Returns the first `terms` digits.
pub fn greedy_triadic_expansion(lambda: &Rational, terms: u32) -> Result<Vec<i8>> {
    validate_lambda(lambda)?;
    let mut digits = Vec::with_capacity(terms as usize);
    let mut r = lambda.clone();
    for k in 1..=terms {
        let (d, next) =
            greedy_step(&r, k).ok_or_else(|| Error::numeric("greedy remainder out of range"))?;
        digits.push(d);
        r = next;
    }
    Ok(digits)
}

/// A constructive distance bound: equal-length words whose scaled origin
/// gap is a small explicit value, certifying `l(λ) ≤ value ≤ 1/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperBoundWitness {
    pub value: Rational,
    pub word_i: DigitWord,
    pub word_j: DigitWord,
}

/// Builds the witness from the greedy expansion: with remainders `r_k`,
/// take the least `N ≥ 1` such that `0 < 3^{N−1} |r_{N−1}| ≤ 1/2`, then
/// spell words `i`, `j` of length `N` with `i_1 j_1 = L Z` and, for
/// `k ≥ 2`, `i_k j_k` chosen per λ̃_{k−1} (0 ↦ ZZ, 2 ↦ ZT, −2 ↦ TZ); this
/// telescopes to `3^N (f_i(0) − f_j(0)) = 3^{N−1} r_{N−1}` exactly.
///
/// When every scaled remainder misses `(0, 1/2]` — all remainders still
/// too large, or the expansion terminates exactly, as it does whenever
/// `1 − λ` is a power of `1/3` — the window `max_terms` runs out and the
/// search reports exhaustion.
pub fn upper_bound_witness(lambda: &Rational, max_terms: u32) -> Result<UpperBoundWitness> {
    validate_lambda(lambda)?;
    if max_terms == 0 {
        return Err(Error::domain("witness search needs max_terms >= 1"));
    }
    let half = rat(1, 2);
    let three = rat(3, 1);
    let mut digits: Vec<i8> = Vec::new();
    let mut r = lambda.clone();
    let mut pow = Rational::one();
    for n in 1..=max_terms {
        // Here r = r_{n−1} and pow = 3^{n−1}.
        let scaled = &pow * r.abs();
        if !scaled.is_zero() && scaled <= half {
            let mut wi = alloc::vec![Digit::L];
            let mut wj = alloc::vec![Digit::Z];
            for &d in &digits {
                let (a, b) = match d {
                    0 => (Digit::Z, Digit::Z),
                    2 => (Digit::Z, Digit::T),
                    _ => (Digit::T, Digit::Z),
                };
                wi.push(a);
                wj.push(b);
            }
            return Ok(UpperBoundWitness {
                value: scaled,
                word_i: DigitWord::from_digits(wi),
                word_j: DigitWord::from_digits(wj),
            });
        }
        let (d, next) =
            greedy_step(&r, n).ok_or_else(|| Error::numeric("greedy remainder out of range"))?;
        digits.push(d);
        r = next;
        pow *= &three;
    }
    Err(Error::exhausted(format!(
        "no nonzero tail bound within {max_terms} expansion terms"
    )))
}

/// One step of the numerator walk behind the closed form: for a fixed
/// denominator `q`, maps `x` to the first of `(2q + x)/3`, `(2q − x)/3`,
/// `x/3` that is an integer. No branch divisible by three, or a zero
/// result, means the walk left its domain.
pub fn rw_step(q: i64, x: i64) -> Result<i64> {
    if q <= 0 {
        return Err(Error::domain("walk modulus q must be positive"));
    }
    let (q, x) = (q as i128, x as i128);
    for c in [2 * q + x, 2 * q - x, x] {
        if c % 3 == 0 {
            let y = c / 3;
            if y == 0 {
                return Err(Error::domain("walk step reached zero"));
            }
            return y.try_into().map_err(|_| Error::numeric("walk value exceeded 64 bits"));
        }
    }
    Err(Error::domain("no walk branch is divisible by 3"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::eval_word_origin;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn deltas_ascend_and_are_distinct() {
        let d = delta_set(&rat(1, 2));
        assert_eq!(d.len(), 7);
        for w in d.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert_eq!(d[0], rat(-2, 1));
        assert_eq!(d[3], rat(0, 1));
        assert_eq!(d[6], rat(2, 1));
    }

    #[test]
    fn offset_graph_state_sets() {
        let g = offset_graph(&rat(1, 2)).unwrap();
        let set: BTreeSet<_> = g.states.iter().cloned().collect();
        let want: BTreeSet<_> =
            [rat(0, 1), rat(1, 2), rat(-1, 2), rat(1, 1), rat(-1, 1)].into_iter().collect();
        assert_eq!(set, want);
        assert_eq!(offset_graph(&rat(2, 3)).unwrap().states.len(), 3);
        // Bound: at most 2q + 1 states.
        let g = offset_graph(&rat(4, 7)).unwrap();
        assert!(g.states.len() <= 15);
    }

    #[test]
    fn exact_spectrum_frozen_cases() {
        let cases = [
            (rat(1, 2), rat(1, 2), "Z", "L", 1, 5),
            (rat(2, 3), rat(2, 3), "Z", "L", 1, 3),
            (rat(1, 3), rat(1, 3), "Z", "L", 1, 7),
            (rat(3, 5), rat(1, 5), "ZT", "LZ", 2, 11),
        ];
        for (lambda, value, wi, wj, n, count) in cases {
            let r = spectrum_exact(&lambda).unwrap();
            assert_eq!(r.value, value, "value at λ = {lambda}");
            assert_eq!(r.witness_i.to_string(), wi);
            assert_eq!(r.witness_j.to_string(), wj);
            assert_eq!(r.witness_n, n);
            assert_eq!(r.state_count, count);
        }
    }

    #[test]
    fn witness_words_realize_the_value() {
        for lambda in [rat(1, 2), rat(3, 5), rat(5, 7), rat(7, 9), rat(8, 9)] {
            let r = spectrum_exact(&lambda).unwrap();
            let gap = eval_word_origin(&r.witness_i, &lambda)
                - eval_word_origin(&r.witness_j, &lambda);
            assert_eq!(pow3_rat(r.witness_n as i32) * gap.abs(), r.value);
            assert_eq!(r.witness_i.len(), r.witness_n as usize);
            assert_eq!(r.witness_j.len(), r.witness_n as usize);
        }
    }

    #[test]
    fn brute_agrees_with_exact() {
        assert_eq!(spectrum_brute(&rat(3, 5), 1, 12).unwrap(), rat(3, 5));
        assert_eq!(spectrum_brute(&rat(3, 5), 2, 12).unwrap(), rat(1, 5));
        assert_eq!(spectrum_brute(&rat(2, 3), 1, 12).unwrap(), rat(2, 3));
        for lambda in [rat(1, 2), rat(2, 3), rat(3, 5), rat(6, 7), rat(2, 9)] {
            let exact = spectrum_exact(&lambda).unwrap();
            let depth = exact.witness_n.max(1);
            assert_eq!(spectrum_brute(&lambda, depth, depth).unwrap(), exact.value);
        }
    }

    #[test]
    fn brute_guards_its_depth() {
        assert!(spectrum_brute(&rat(1, 2), 0, 12).is_err());
        assert!(spectrum_brute(&rat(1, 2), 13, 12).is_err());
    }

    #[test]
    fn closed_form_frozen_cases() {
        assert_eq!(spectrum_closed_form(&rat(1, 2)), Some(rat(1, 2)));
        assert_eq!(spectrum_closed_form(&rat(1, 3)), Some(rat(1, 3)));
        assert_eq!(spectrum_closed_form(&rat(2, 5)), Some(rat(2, 5)));
        assert_eq!(spectrum_closed_form(&rat(3, 5)), Some(rat(1, 5)));
        assert_eq!(spectrum_closed_form(&rat(6, 7)), Some(rat(2, 7)));
        assert_eq!(spectrum_closed_form(&rat(2, 9)), Some(rat(2, 9)));
        assert_eq!(spectrum_closed_form(&rat(4, 5)), None);
        assert_eq!(spectrum_closed_form(&rat(8, 9)), None);
    }

    #[test]
    fn closed_form_matches_exact_when_it_speaks() {
        for lambda in [rat(1, 2), rat(3, 5), rat(6, 7), rat(2, 9), rat(5, 7)] {
            if let Some(v) = spectrum_closed_form(&lambda) {
                assert_eq!(v, spectrum_exact(&lambda).unwrap().value);
            }
        }
    }

    #[test]
    fn greedy_expansion_frozen_cases() {
        assert_eq!(greedy_triadic_expansion(&rat(2, 3), 3).unwrap(), vec![2, 0, 0]);
        assert_eq!(greedy_triadic_expansion(&rat(8, 9), 3).unwrap(), vec![2, 2, 0]);
        assert_eq!(greedy_triadic_expansion(&rat(1, 2), 4).unwrap(), vec![2, -2, 2, -2]);
        assert_eq!(greedy_triadic_expansion(&rat(1, 3), 3).unwrap(), vec![2, -2, -2]);
        assert_eq!(greedy_triadic_expansion(&rat(7, 9), 4).unwrap(), vec![2, 2, -2, -2]);
    }

    #[test]
    fn greedy_remainders_shrink() {
        let lambda = rat(5, 7);
        let digits = greedy_triadic_expansion(&lambda, 10).unwrap();
        let mut r = lambda;
        for (k, &d) in digits.iter().enumerate() {
            let scale = pow3_rat(-(k as i32) - 1);
            r -= rat(d as i64, 1) * &scale;
            assert!(r.abs() <= scale, "remainder escaped at term {}", k + 1);
        }
    }

    #[test]
    fn upper_bound_frozen_cases() {
        let w = upper_bound_witness(&rat(1, 2), 10).unwrap();
        assert_eq!((w.value, w.word_i.to_string(), w.word_j.to_string()),
                   (rat(1, 2), "L".to_string(), "Z".to_string()));
        let w = upper_bound_witness(&rat(1, 3), 10).unwrap();
        assert_eq!((w.value, w.word_i.to_string(), w.word_j.to_string()),
                   (rat(1, 3), "L".to_string(), "Z".to_string()));
        let w = upper_bound_witness(&rat(7, 9), 10).unwrap();
        assert_eq!((w.value, w.word_i.to_string(), w.word_j.to_string()),
                   (rat(1, 3), "LZ".to_string(), "ZT".to_string()));
    }

    #[test]
    fn upper_bound_words_realize_the_value() {
        for lambda in [rat(1, 2), rat(7, 9), rat(9, 10), rat(5, 7), rat(1, 5)] {
            let w = upper_bound_witness(&lambda, 32).unwrap();
            let n = w.word_i.len() as i32;
            let gap = eval_word_origin(&w.word_i, &lambda)
                - eval_word_origin(&w.word_j, &lambda);
            assert_eq!(pow3_rat(n) * gap.abs(), w.value);
            assert!(w.value <= rat(1, 2));
            assert!(w.value > rat(0, 1));
            assert!(w.value >= spectrum_exact(&lambda).unwrap().value);
        }
    }

    #[test]
    fn upper_bound_exhausts_on_terminating_expansions() {
        for lambda in [rat(2, 3), rat(8, 9)] {
            let err = upper_bound_witness(&lambda, 24).unwrap_err();
            assert_eq!(err.kind(), crate::error::ErrorKind::Exhausted);
        }
    }

    #[test]
    fn walk_steps() {
        assert_eq!(rw_step(5, 3).unwrap(), 1);
        assert_eq!(rw_step(5, 1).unwrap(), 3);
        assert_eq!(rw_step(2, 1).unwrap(), 1);
        assert_eq!(rw_step(5, -1).unwrap(), 3);
        assert!(rw_step(3, 1).is_err(), "no branch divisible by three");
        assert!(rw_step(5, 0).is_err(), "zero result leaves the domain");
        assert!(rw_step(0, 1).is_err());
    }
}
