//! Level sets, hole structure, total self-similarity, and exact membership.
//!
//! Writing `I = [0,1]`, the level sets are `I_0 = I` and
//! `I_{n+1} = ∪_d f_d(I_n)`; the hole is `H = I ∖ I_1 = ((1+λ)/3, 2/3)`
//! (open, nonempty exactly because `f_0(I)` and `f_λ(I)` overlap while
//! `f_2(I)` stands apart), and `H_n = ∪_{|w|=n} f_w(H)`.
//!
//! The set `E` is *totally self-similar* when `f_i(E) = f_i(I) ∩ E` for all
//! words `i`; this holds iff `λ = 1 − 3^{-m}` for an integer `m ≥ 1`, and is
//! equivalent to `H_n ∩ I_{n+1} = ∅` for every `n` — the bounded-depth
//! check below tests exactly that predicate.

use crate::error::{Error, Result};
use crate::numeric::{
    pow3, pow3_rat, rat, validate_lambda, Digit, DigitWord, Interval, IntervalSet, Rational,
};
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Default bound on set-construction depths. Level-`n` structures hold up
/// to `3^n` distinct cylinder origins, so this caps memory near a few
/// hundred MB in the worst case; callers may pass a larger guard
/// explicitly.
pub const DEFAULT_DEPTH_GUARD: u32 = 12;

pub(crate) fn check_guard(n: u32, guard: u32) -> Result<()> {
    if n > guard {
        Err(Error::resource(format!("depth {n} exceeds guard {guard}")))
    } else {
        Ok(())
    }
}

/// The hole `H = ((1+λ)/3, 2/3)`, open on both sides.
pub fn hole_interval(lambda: &Rational) -> Interval {
    let lo = (Rational::one() + lambda) / rat(3, 1);
    Interval::open(lo, rat(2, 3))
}

/// Distinct cylinder origins `{f_w(0) : |w| = k}` for `k = 0..=n`.
///
/// Built by the prepend recurrence `f_{d·w}(0) = (f_w(0) + d)/3`;
/// deduplication matters because distinct words share origins whenever the
/// maps coincide (e.g. `f_{ZT} = f_{LZ}` at λ = 2/3).
pub fn origin_levels(lambda: &Rational, n: u32, guard: u32) -> Result<Vec<BTreeSet<Rational>>> {
    validate_lambda(lambda)?;
    check_guard(n, guard)?;
    let three = rat(3, 1);
    let mut levels: Vec<BTreeSet<Rational>> = Vec::with_capacity(n as usize + 1);
    let mut cur = BTreeSet::new();
    cur.insert(Rational::zero());
    levels.push(cur);
    for _ in 0..n {
        let prev = levels.last().expect("nonempty");
        let mut next = BTreeSet::new();
        for s in prev {
            for d in Digit::ALL {
                next.insert((s + d.value(lambda)) / &three);
            }
        }
        levels.push(next);
    }
    Ok(levels)
}

pub(crate) fn level_set_from_origins(origins: &BTreeSet<Rational>, n: u32) -> IntervalSet {
    let width = pow3_rat(-(n as i32));
    let parts = origins
        .iter()
        .map(|s| Interval::closed(s.clone(), s + &width))
        .collect();
    IntervalSet::from_intervals(parts)
}

fn hole_set_from_origins(
    origins: &BTreeSet<Rational>,
    n: u32,
    lambda: &Rational,
) -> IntervalSet {
    let scale = pow3_rat(-(n as i32));
    let h = hole_interval(lambda);
    let parts = origins
        .iter()
        .map(|s| Interval::open(s + &scale * h.lo(), s + &scale * h.hi()))
        .collect();
    IntervalSet::from_intervals(parts)
}

/// `I_n = ∪_{|w|=n} f_w(I)` as a canonical union of closed intervals.
pub fn level_set(lambda: &Rational, n: u32, guard: u32) -> Result<IntervalSet> {
    let levels = origin_levels(lambda, n, guard)?;
    Ok(level_set_from_origins(&levels[n as usize], n))
}

/// `H_n = ∪_{|w|=n} f_w(H)` as a canonical union of open intervals.
pub fn hole_set(lambda: &Rational, n: u32, guard: u32) -> Result<IntervalSet> {
    let levels = origin_levels(lambda, n, guard)?;
    Ok(hole_set_from_origins(&levels[n as usize], n, lambda))
}

/// Basic intervals and hole images of one level, computed together.
#[derive(Debug, Clone)]
pub struct LevelGeometry {
    pub lambda: Rational,
    pub n: u32,
    /// `I_n`, closed parts.
    pub basic: IntervalSet,
    /// `H_n`, open parts.
    pub holes: IntervalSet,
}

pub fn level_geometry(lambda: &Rational, n: u32, guard: u32) -> Result<LevelGeometry> {
    let levels = origin_levels(lambda, n, guard)?;
    let origins = &levels[n as usize];
    Ok(LevelGeometry {
        lambda: lambda.clone(),
        n,
        basic: level_set_from_origins(origins, n),
        holes: hole_set_from_origins(origins, n, lambda),
    })
}

/// Exact total-self-similarity decision: `Some(m)` iff `λ = 1 − 3^{-m}`.
pub fn tss_exact(lambda: &Rational) -> Option<u32> {
    if !lambda.is_positive() || lambda >= &Rational::one() {
        return None;
    }
    let gap = Rational::one() - lambda;
    if !gap.numer().is_one() {
        return None;
    }
    let mut den = gap.denom().clone();
    let three = BigInt::from(3);
    let mut m = 0u32;
    while (&den % &three).is_zero() {
        den /= &three;
        m += 1;
    }
    (den.is_one() && m >= 1).then_some(m)
}

/// Witness data for a failure of total self-similarity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TssWitness {
    /// `λ` lies strictly between `1 − 3^{-k}` and `1 − 3^{-(k+1)}`.
    pub k: u32,
    /// `Z T^k`: the hole image `f_i(H)` ...
    pub hole_word: DigitWord,
    /// ... meets the cylinder `f_j(I)` for `j = L Z^k`.
    pub cylinder_word: DigitWord,
}

/// For non-TSS `λ`, the closed-form witness pair: with `k` such that
/// `1 − 3^{-k} < λ < 1 − 3^{-(k+1)}`, the image of the hole under `Z T^k`
/// meets the cylinder of `L Z^k`, so the level-(k+1) structure already
/// violates total self-similarity.
pub fn tss_witness(lambda: &Rational) -> Result<TssWitness> {
    validate_lambda(lambda)?;
    if tss_exact(lambda).is_some() {
        return Err(Error::domain(format!(
            "lambda = {lambda} is totally self-similar; no witness exists"
        )));
    }
    let mut k = 0u32;
    loop {
        // λ < 1 − 3^{-(k+1)} for the least such k; λ > 1 − 3^{-k} follows.
        let rho_next = Rational::one() - pow3_rat(-(k as i32) - 1);
        if lambda < &rho_next {
            break;
        }
        k += 1;
    }
    Ok(TssWitness {
        k,
        hole_word: DigitWord::repeated(Digit::Z, Digit::T, k as usize),
        cylinder_word: DigitWord::repeated(Digit::L, Digit::Z, k as usize),
    })
}

/// One overlap certifying `H_n ∩ I_{n+1} ≠ ∅`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TssOverlap {
    /// `|hole_word| = n`: the offending hole image is `f_i(H)`.
    pub hole_word: DigitWord,
    /// `|level_word| = n + 1`: it meets the cylinder `f_j(I)`.
    pub level_word: DigitWord,
    pub overlap: Interval,
}

/// Outcome of the bounded-depth total-self-similarity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TssReport {
    pub verdict: bool,
    pub fail_depth: Option<u32>,
    pub witness: Option<TssOverlap>,
}

pub(crate) fn nth_word(index: usize, len: u32) -> DigitWord {
    // Base-3 expansion, most significant digit first, so ascending index is
    // ascending lexicographic order.
    let mut digits = alloc::vec![Digit::Z; len as usize];
    let mut rem = index;
    for slot in digits.iter_mut().rev() {
        *slot = Digit::ALL[rem % 3];
        rem /= 3;
    }
    DigitWord::from_digits(digits)
}

fn scaled_hole(origin: &Rational, n: u32, hole: &Interval) -> Interval {
    let scale = pow3_rat(-(n as i32));
    Interval::open(origin + &scale * hole.lo(), origin + &scale * hole.hi())
}

/// Checks `H_n ∩ I_{n+1} = ∅` for every `n ≤ max_depth`. On the least
/// failing `n` the witness holds the lexicographically least word pair
/// exhibiting the overlap.
pub fn tss_check_depth(lambda: &Rational, max_depth: u32, guard: u32) -> Result<TssReport> {
    validate_lambda(lambda)?;
    check_guard(max_depth + 1, guard)?;
    let three = rat(3, 1);
    let hole = hole_interval(lambda);
    // Levels are stepped lazily so a shallow failure exits before the
    // origin sets grow; only a clean run pays for the full depth.
    let mut origins = BTreeSet::new();
    origins.insert(Rational::zero());
    for n in 0..=max_depth {
        let mut next_origins = BTreeSet::new();
        for s in &origins {
            for d in Digit::ALL {
                next_origins.insert((s + d.value(lambda)) / &three);
            }
        }
        let holes = hole_set_from_origins(&origins, n, lambda);
        let next_level = level_set_from_origins(&next_origins, n + 1);
        if holes.intersect(&next_level).is_empty() {
            origins = next_origins;
            continue;
        }
        // Least failing depth found; recover the least witness words.
        let hole_word = (0..pow3(n).to_usize().expect("guarded depth"))
            .map(|idx| nth_word(idx, n))
            .find(|w| {
                let img = scaled_hole(&crate::numeric::eval_word_origin(w, lambda), n, &hole);
                !IntervalSet::from(img).intersect(&next_level).is_empty()
            })
            .expect("nonempty intersection has a hole word");
        let hole_img = scaled_hole(
            &crate::numeric::eval_word_origin(&hole_word, lambda),
            n,
            &hole,
        );
        let (level_word, overlap) = (0..pow3(n + 1).to_usize().expect("guarded depth"))
            .filter_map(|idx| {
                let w = nth_word(idx, n + 1);
                let cyl = crate::numeric::eval_word_interval(&w, lambda);
                hole_img.intersect(&cyl).map(|ov| (w, ov))
            })
            .next()
            .expect("nonempty intersection has a level word");
        return Ok(TssReport {
            verdict: false,
            fail_depth: Some(n),
            witness: Some(TssOverlap { hole_word, level_word, overlap }),
        });
    }
    Ok(TssReport { verdict: true, fail_depth: None, witness: None })
}

/// The point automaton of `x`: states are remainders `r ∈ [0,1]` reachable
/// from `x` under `r ↦ 3r − d`, edges labeled by the digit consumed.
/// Infinite paths from `x` are exactly the codings of `x`.
pub(crate) struct PointAutomaton {
    pub states: Vec<Rational>,
    /// `edges[s][d]` = successor index of state `s` under digit `d`.
    pub edges: Vec<[Option<usize>; 3]>,
}

pub(crate) fn point_automaton(x: &Rational, lambda: &Rational) -> PointAutomaton {
    let mut states: Vec<Rational> = Vec::new();
    let mut index: BTreeMap<Rational, usize> = BTreeMap::new();
    let mut edges: Vec<[Option<usize>; 3]> = Vec::new();
    if x < &Rational::zero() || x > &Rational::one() {
        return PointAutomaton { states, edges };
    }
    states.push(x.clone());
    index.insert(x.clone(), 0);
    edges.push([None; 3]);
    let mut head = 0;
    while head < states.len() {
        let r = states[head].clone();
        for (di, d) in Digit::ALL.into_iter().enumerate() {
            let next = rat(3, 1) * &r - d.value(lambda);
            if next < Rational::zero() || next > Rational::one() {
                continue;
            }
            let id = *index.entry(next.clone()).or_insert_with(|| {
                states.push(next.clone());
                edges.push([None; 3]);
                states.len() - 1
            });
            edges[head][di] = Some(id);
        }
        head += 1;
    }
    PointAutomaton { states, edges }
}

/// States from which an infinite path exists: iteratively strip states with
/// no surviving successor. Returns a keep-mask.
pub(crate) fn alive_states(edges: &[[Option<usize>; 3]]) -> Vec<bool> {
    let n = edges.len();
    let mut alive = alloc::vec![true; n];
    let mut preds: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
    let mut out_deg = alloc::vec![0usize; n];
    for (s, outs) in edges.iter().enumerate() {
        for t in outs.iter().flatten() {
            preds[*t].push(s);
            out_deg[s] += 1;
        }
    }
    let mut dead: Vec<usize> = (0..n).filter(|&s| out_deg[s] == 0).collect();
    while let Some(s) = dead.pop() {
        alive[s] = false;
        for &p in &preds[s] {
            if alive[p] {
                out_deg[p] -= 1;
                if out_deg[p] == 0 {
                    dead.push(p);
                }
            }
        }
    }
    alive
}

/// Exact membership `x ∈ E`: some coding of `x` exists, i.e. the point
/// automaton has an infinite path from `x`. Points outside `[0,1]` are
/// never members.
pub fn membership_exact(x: &Rational, lambda: &Rational) -> bool {
    let auto = point_automaton(x, lambda);
    if auto.states.is_empty() {
        return false;
    }
    alive_states(&auto.edges)[0]
}

/// Number of triadic grid cells `[k 3^{-n}, (k+1) 3^{-n}]` meeting `I_n`.
pub fn cover_count(lambda: &Rational, n: u32, guard: u32) -> Result<u64> {
    let set = level_set(lambda, n, guard)?;
    let scale = Rational::from_integer(pow3(n));
    let max_cell = pow3(n) - BigInt::one();
    let mut count: u64 = 0;
    let mut prev_max: Option<BigInt> = None;
    for part in set.parts() {
        // Cell k meets [lo, hi] iff k ≥ lo·3^n − 1 and k ≤ hi·3^n.
        let lo_cell = ((part.lo() * &scale) - Rational::one()).ceil().to_integer();
        let hi_cell = (part.hi() * &scale).floor().to_integer();
        let mut lo_cell = lo_cell.max(BigInt::zero());
        let hi_cell = hi_cell.min(max_cell.clone());
        if let Some(prev) = &prev_max {
            lo_cell = lo_cell.max(prev + 1);
        }
        if lo_cell <= hi_cell {
            count += (&hi_cell - &lo_cell + BigInt::one())
                .to_u64()
                .expect("cell count fits u64 under depth guard");
            prev_max = Some(hi_cell);
        }
    }
    Ok(count)
}

/// Box-dimension estimate `log(cover_count) / (n log 3)` at one scale.
pub fn box_dim_estimate(lambda: &Rational, n: u32, guard: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("box-dimension estimate needs n >= 1"));
    }
    let count = cover_count(lambda, n, guard)?;
    let ln = |v: f64| num_traits::Float::ln(v);
    Ok(ln(count as f64) / (n as f64 * ln(3.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::eval_word_origin;

    const G: u32 = DEFAULT_DEPTH_GUARD;

    #[test]
    fn hole_is_open_overlap_gap() {
        let h = hole_interval(&rat(2, 3));
        assert_eq!(h, Interval::open(rat(5, 9), rat(2, 3)));
        assert_eq!(hole_interval(&rat(1, 2)), Interval::open(rat(1, 2), rat(2, 3)));
    }

    #[test]
    fn level_zero_is_unit_interval() {
        let i0 = level_set(&rat(2, 3), 0, G).unwrap();
        assert_eq!(i0.parts(), &[Interval::closed(rat(0, 1), rat(1, 1))]);
    }

    #[test]
    fn first_level_merges_overlapping_cylinders() {
        let i1 = level_set(&rat(2, 3), 1, G).unwrap();
        assert_eq!(
            i1.parts(),
            &[
                Interval::closed(rat(0, 1), rat(5, 9)),
                Interval::closed(rat(2, 3), rat(1, 1)),
            ]
        );
        let i1 = level_set(&rat(1, 2), 1, G).unwrap();
        assert_eq!(
            i1.parts(),
            &[
                Interval::closed(rat(0, 1), rat(1, 2)),
                Interval::closed(rat(2, 3), rat(1, 1)),
            ]
        );
    }

    #[test]
    fn hole_set_levels() {
        let h0 = hole_set(&rat(2, 3), 0, G).unwrap();
        assert_eq!(h0.parts(), &[Interval::open(rat(5, 9), rat(2, 3))]);
        let h1 = hole_set(&rat(2, 3), 1, G).unwrap();
        assert_eq!(
            h1.parts(),
            &[
                Interval::open(rat(5, 27), rat(2, 9)),
                Interval::open(rat(11, 27), rat(4, 9)),
                Interval::open(rat(23, 27), rat(8, 9)),
            ]
        );
    }

    #[test]
    fn level_zero_geometry_consistency() {
        let geo = level_geometry(&rat(1, 2), 0, G).unwrap();
        assert_eq!(geo.basic.parts(), &[Interval::closed(rat(0, 1), rat(1, 1))]);
        assert_eq!(geo.holes.parts(), &[Interval::open(rat(1, 2), rat(2, 3))]);
    }

    #[test]
    fn depth_guard_refuses() {
        assert!(level_set(&rat(1, 2), 13, 12).is_err());
        assert!(origin_levels(&rat(1, 2), 5, 4).is_err());
    }

    #[test]
    fn tss_exact_powers_of_three() {
        assert_eq!(tss_exact(&rat(2, 3)), Some(1));
        assert_eq!(tss_exact(&rat(8, 9)), Some(2));
        assert_eq!(tss_exact(&rat(26, 27)), Some(3));
        assert_eq!(tss_exact(&rat(80, 81)), Some(4));
        assert_eq!(tss_exact(&rat(1, 2)), None);
        assert_eq!(tss_exact(&rat(1, 3)), None);
        assert_eq!(tss_exact(&rat(7, 9)), None);
        assert_eq!(tss_exact(&rat(5, 6)), None);
    }

    #[test]
    fn tss_witness_bracket_and_words() {
        let w = tss_witness(&rat(1, 2)).unwrap();
        assert_eq!((w.k, w.hole_word.to_string(), w.cylinder_word.to_string()),
                   (0, "Z".into(), "L".into()));
        let w = tss_witness(&rat(7, 9)).unwrap();
        assert_eq!((w.k, w.hole_word.to_string(), w.cylinder_word.to_string()),
                   (1, "ZT".into(), "LZ".into()));
        let w = tss_witness(&rat(1, 3)).unwrap();
        assert_eq!(w.k, 0);
        assert!(tss_witness(&rat(2, 3)).is_err());
    }

    #[test]
    fn tss_witness_intervals_really_meet() {
        for lambda in [rat(1, 2), rat(7, 9), rat(1, 3), rat(25, 27), rat(9, 10)] {
            let w = tss_witness(&lambda).unwrap();
            let hole = hole_interval(&lambda);
            let img = scaled_hole(
                &eval_word_origin(&w.hole_word, &lambda),
                w.k + 1,
                &hole,
            );
            let cyl = crate::numeric::eval_word_interval(&w.cylinder_word, &lambda);
            assert!(img.intersects(&cyl), "witness intervals disjoint at λ = {lambda}");
        }
    }

    #[test]
    fn depth_check_passes_on_tss_parameters() {
        for lambda in [rat(2, 3), rat(8, 9)] {
            let report = tss_check_depth(&lambda, 5, G).unwrap();
            assert!(report.verdict, "λ = {lambda} must pass");
            assert_eq!(report.fail_depth, None);
        }
    }

    #[test]
    fn depth_check_fails_with_least_witness() {
        let report = tss_check_depth(&rat(1, 2), 2, G).unwrap();
        assert!(!report.verdict);
        assert_eq!(report.fail_depth, Some(1));
        let w = report.witness.unwrap();
        assert_eq!(w.hole_word.to_string(), "Z");
        assert_eq!(w.level_word.to_string(), "LZ");
        assert_eq!(w.overlap, Interval::open(rat(1, 6), rat(2, 9)));
    }

    #[test]
    fn membership_examples() {
        let lambda = rat(2, 3);
        assert!(membership_exact(&rat(1, 1), &lambda));
        assert!(membership_exact(&rat(0, 1), &lambda));
        assert!(membership_exact(&rat(1, 3), &lambda));
        assert!(membership_exact(&rat(2, 9), &lambda));
        // 47/243 sits in the level-2 hole image (45/243, 54/243).
        assert!(!membership_exact(&rat(47, 243), &lambda));
        assert!(!membership_exact(&rat(-1, 2), &lambda));
        assert!(!membership_exact(&rat(3, 2), &lambda));
    }

    #[test]
    fn hole_endpoints_belong_to_tss_sets() {
        for lambda in [rat(2, 3), rat(8, 9)] {
            let h = hole_interval(&lambda);
            assert!(membership_exact(h.lo(), &lambda));
            assert!(membership_exact(h.hi(), &lambda));
        }
    }

    #[test]
    fn cover_counts_and_box_dim() {
        // All three cells meet I_1 for λ = 2/3 (cell [1/3, 2/3] touches both
        // parts), so the n = 1 estimate is exactly 1.
        assert_eq!(cover_count(&rat(2, 3), 1, G).unwrap(), 3);
        assert_eq!(box_dim_estimate(&rat(2, 3), 1, G).unwrap(), 1.0);
        assert_eq!(box_dim_estimate(&rat(1, 2), 1, G).unwrap(), 1.0);
        assert!(box_dim_estimate(&rat(2, 3), 0, G).is_err());
    }
}
