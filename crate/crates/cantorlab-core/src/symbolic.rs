//! Subshifts of finite type, counting and growth, coding multiplicity.
//!
//! At λ = 1 − 3^{-m} the digit words coding points of E are constrained
//! by short forbidden blocks. Two subshifts matter here: the *full* one,
//! forbidding `Z T^m` (such words are exactly the codings that occur),
//! and the *unique* one, additionally forbidding `L Z^m` (words that are
//! the sole coding of their point). Both are presented on the de Bruijn
//! graph of m-grams, where counting and spectral radius are mechanical.

use crate::error::{Error, Result};
use crate::numeric::{rat, validate_lambda, Digit, DigitWord, Rational};
use crate::structure::{alive_states, check_guard, point_automaton, tss_exact};
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigUint;
use num_traits::{Float, One, Signed, Zero};

/// Which forbidden-block family a subshift uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SftVariant {
    /// Forbid `Z T^m` only.
    Full,
    /// Forbid `Z T^m` and `L Z^m`.
    Unique,
}

/// The forbidden blocks of a variant at parameter `m`, each of length
/// `m + 1`.
pub fn forbidden_words(variant: SftVariant, m: u32) -> Vec<DigitWord> {
    let mut out = vec![DigitWord::repeated(Digit::Z, Digit::T, m as usize)];
    if variant == SftVariant::Unique {
        out.push(DigitWord::repeated(Digit::L, Digit::Z, m as usize));
    }
    out
}

/// A subshift of finite type on the de Bruijn graph of `m`-grams. State
/// `g` steps to `(g without its first letter)·a` when appending `a` does
/// not complete a forbidden block; since blocks have length `m + 1`, the
/// only candidate block is `g·a` itself.
#[derive(Debug, Clone)]
pub struct Sft {
    pub variant: SftVariant,
    pub m: u32,
    /// All `3^m` grams in lexicographic order.
    pub states: Vec<DigitWord>,
    /// `edges[g][a]` = successor index, `None` when `g·a` is forbidden.
    pub edges: Vec<[Option<usize>; 3]>,
}

/// Hard cap on the gram length: `3^m` states must stay reasonable.
const MAX_GRAM_LEN: u32 = 12;

fn gram_word(index: usize, m: u32) -> DigitWord {
    let mut digits = vec![Digit::Z; m as usize];
    let mut rem = index;
    for slot in digits.iter_mut().rev() {
        *slot = Digit::ALL[rem % 3];
        rem /= 3;
    }
    DigitWord::from_digits(digits)
}

pub fn build_sft(variant: SftVariant, m: u32) -> Result<Sft> {
    if m == 0 {
        return Err(Error::domain("gram length m must be at least 1"));
    }
    if m > MAX_GRAM_LEN {
        return Err(Error::resource(format!("gram length {m} exceeds cap {MAX_GRAM_LEN}")));
    }
    let count = 3usize.pow(m);
    let shift = 3usize.pow(m - 1);
    // Blocks as (gram index, appended letter): Z T^m = (Z T^{m-1})·T and
    // L Z^m = (L Z^{m-1})·Z. Gram indices read the word in base 3.
    let zt_gram = shift - 1;
    let lz_gram = shift;
    let states = (0..count).map(|i| gram_word(i, m)).collect();
    let edges = (0..count)
        .map(|g| {
            let base = (g % shift) * 3;
            let mut row = [None; 3];
            for (a, slot) in row.iter_mut().enumerate() {
                let forbidden = (g == zt_gram && a == 2)
                    || (variant == SftVariant::Unique && g == lz_gram && a == 0);
                if !forbidden {
                    *slot = Some(base + a);
                }
            }
            row
        })
        .collect();
    Ok(Sft { variant, m, states, edges })
}

/// Number of digit words of length `n` avoiding the variant's forbidden
/// blocks. Words shorter than `m + 1` cannot contain a block, so the
/// count is `3^n` there; beyond that it is the number of length-`(n−m)`
/// paths in the gram graph.
pub fn count_admissible(variant: SftVariant, m: u32, n: u32) -> Result<BigUint> {
    let sft = build_sft(variant, m)?;
    if n <= m {
        return Ok(BigUint::from(3u32).pow(n));
    }
    let mut counts = vec![BigUint::one(); sft.states.len()];
    for _ in 0..(n - m) {
        let mut next = vec![BigUint::zero(); sft.states.len()];
        for (g, row) in sft.edges.iter().enumerate() {
            for t in row.iter().flatten() {
                next[*t] += &counts[g];
            }
        }
        counts = next;
    }
    Ok(counts.into_iter().sum())
}

/// Spectral radius of the gram graph's adjacency matrix by power
/// iteration. Both variants give strongly connected, aperiodic graphs
/// (`T^m` carries a safe self-loop), so the iteration converges to the
/// dominant eigenvalue; per-word growth of admissible counts.
pub fn growth_rate(sft: &Sft, tol: f64, max_iter: u32) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::domain("tolerance must be positive"));
    }
    let n = sft.states.len();
    let mut cur = vec![1.0f64; n];
    for _ in 0..max_iter {
        let mut next = vec![0.0f64; n];
        for (g, row) in sft.edges.iter().enumerate() {
            for t in row.iter().flatten() {
                next[*t] += cur[g];
            }
        }
        // Collatz-Wielandt: for a positive vector, min and max of
        // next/cur bracket the spectral radius; successive max estimates
        // alone can stall at 3 while a blocked edge's deficit is still
        // propagating through the gram graph.
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for (num, den) in next.iter().zip(cur.iter()) {
            if *den > 0.0 {
                let ratio = num / den;
                lo = f64::min(lo, ratio);
                hi = f64::max(hi, ratio);
            }
        }
        if !(hi > 0.0) {
            return Err(Error::numeric("adjacency iteration collapsed to zero"));
        }
        if hi - lo <= tol {
            return Ok(0.5 * (lo + hi));
        }
        for v in next.iter_mut() {
            *v /= hi;
        }
        cur = next;
    }
    Err(Error::numeric(format!("power iteration did not converge in {max_iter} steps")))
}

/// The two growth exponents attached to `m`, as equations in `u = 3^x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimExponent {
    /// `u^{m+1} − 3u^m + 1 = 0`, root in (2, 3): `x` is the box dimension
    /// of E at λ = 1 − 3^{-m}.
    S,
    /// `u^{m+1} − 3u^m + 2 = 0`, root in (1, 3): `x` is the growth
    /// exponent of the recurrence `a_n = 3a_{n−1} − 2a_{n−m−1}`, the rate
    /// tied to points possessing a unique coding.
    T,
}

fn dim_poly(exp: DimExponent, m: u32, u: f64) -> f64 {
    let c = match exp {
        DimExponent::S => 1.0,
        DimExponent::T => 2.0,
    };
    Float::powi(u, m as i32) * (u - 3.0) + c
}

/// Evaluates the defining polynomial at `u = 3^x`; a residual near zero
/// certifies `x` as the exponent.
pub fn dimension_residual(exp: DimExponent, m: u32, x: f64) -> f64 {
    dim_poly(exp, m, Float::powf(3.0f64, x))
}

/// Solves the exponent equation by bisection. The `T` polynomial has a
/// spurious root at `u = 1` exactly, so its bracket starts just above 1
/// where the polynomial is already negative (its derivative there is
/// `1 − 2m < 0`).
pub fn dimension_solve(exp: DimExponent, m: u32, tol: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::domain("exponent equations need m >= 1"));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("tolerance must be positive"));
    }
    let (mut lo, mut hi) = match exp {
        DimExponent::S => (2.0f64, 3.0f64),
        DimExponent::T => (1.0f64 + 1e-9, 3.0f64),
    };
    debug_assert!(dim_poly(exp, m, lo) < 0.0 && dim_poly(exp, m, hi) > 0.0);
    let mut iter = 0;
    while hi - lo > tol && iter < 200 {
        let mid = 0.5 * (lo + hi);
        if dim_poly(exp, m, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iter += 1;
    }
    let u = 0.5 * (lo + hi);
    Ok(Float::ln(u) / Float::ln(3.0f64))
}

/// Both exponents for one `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionPair {
    pub m: u32,
    pub s: f64,
    pub t: f64,
}

pub fn dimension_pair(m: u32, tol: f64) -> Result<DimensionPair> {
    Ok(DimensionPair {
        m,
        s: dimension_solve(DimExponent::S, m, tol)?,
        t: dimension_solve(DimExponent::T, m, tol)?,
    })
}

/// Tarjan's algorithm, iterative. Components are emitted successors
/// first: by the time a component appears, every component it can reach
/// has already been output.
pub(crate) fn strongly_connected_components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut frames: Vec<(usize, usize)> = Vec::new();
    for start in 0..n {
        if index[start] != UNSEEN {
            continue;
        }
        index[start] = next_index;
        low[start] = next_index;
        next_index += 1;
        stack.push(start);
        on_stack[start] = true;
        frames.push((start, 0));
        while let Some(&(v, ei)) = frames.last() {
            if ei < adj[v].len() {
                frames.last_mut().expect("nonempty").1 += 1;
                let w = adj[v][ei];
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(&(p, _)) = frames.last() {
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("scc stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comps.push(comp);
                }
            }
        }
    }
    comps
}

/// The reachable part of the point automaton of `x` after removing every
/// state with no infinite continuation. Infinite paths from state 0 are
/// exactly the codings of `x`; `member` is false when none exist.
#[derive(Debug, Clone)]
pub struct CodingGraph {
    pub x: Rational,
    /// Remainder states; index 0 is `x` itself when `member`.
    pub states: Vec<Rational>,
    /// Outgoing edges as (digit consumed, successor index).
    pub edges: Vec<Vec<(Digit, usize)>>,
    pub member: bool,
}

pub fn coding_graph(x: &Rational, lambda: &Rational) -> Result<CodingGraph> {
    validate_lambda(lambda)?;
    let empty = |member| CodingGraph {
        x: x.clone(),
        states: Vec::new(),
        edges: Vec::new(),
        member,
    };
    let auto = point_automaton(x, lambda);
    if auto.states.is_empty() {
        return Ok(empty(false));
    }
    let alive = alive_states(&auto.edges);
    if !alive[0] {
        return Ok(empty(false));
    }
    let mut map: Vec<Option<usize>> = vec![None; auto.states.len()];
    map[0] = Some(0);
    let mut order = vec![0usize];
    let mut head = 0;
    while head < order.len() {
        let s = order[head];
        head += 1;
        for t in auto.edges[s].iter().flatten() {
            if alive[*t] && map[*t].is_none() {
                map[*t] = Some(order.len());
                order.push(*t);
            }
        }
    }
    let states = order.iter().map(|&s| auto.states[s].clone()).collect();
    let edges = order
        .iter()
        .map(|&s| {
            auto.edges[s]
                .iter()
                .enumerate()
                .filter_map(|(di, t)| {
                    t.filter(|&t| alive[t])
                        .map(|t| (Digit::ALL[di], map[t].expect("alive targets are reached")))
                })
                .collect()
        })
        .collect();
    Ok(CodingGraph { x: x.clone(), states, edges, member: true })
}

/// How many codings a point has.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MultiplicityClass {
    Finite(BigUint),
    CountablyInfinite,
    Continuum,
}

/// Classifies the coding count of `x ∈ E` by the shape of its coding
/// graph: a branching cycle component yields a continuum of codings; a
/// cycle component that can reach another cycle yields countably many
/// (each extra loop before leaving is a new coding); otherwise every
/// infinite path is a finite prefix choice followed by a forced cycle,
/// counted exactly over the acyclic part.
pub fn coding_multiplicity(x: &Rational, lambda: &Rational) -> Result<MultiplicityClass> {
    let g = coding_graph(x, lambda)?;
    if !g.member {
        return Err(Error::domain(format!("{x} is not a point of the set")));
    }
    let adj: Vec<Vec<usize>> =
        g.edges.iter().map(|outs| outs.iter().map(|&(_, t)| t).collect()).collect();
    let comps = strongly_connected_components(&adj);
    let mut comp_of = vec![usize::MAX; adj.len()];
    for (ci, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = ci;
        }
    }
    let is_cycle: Vec<bool> = comps
        .iter()
        .map(|comp| comp.len() >= 2 || adj[comp[0]].contains(&comp[0]))
        .collect();
    for (ci, comp) in comps.iter().enumerate() {
        if !is_cycle[ci] {
            continue;
        }
        for &v in comp {
            if adj[v].iter().filter(|&&t| comp_of[t] == ci).count() >= 2 {
                return Ok(MultiplicityClass::Continuum);
            }
        }
    }
    let mut reaches_cycle = vec![false; comps.len()];
    for (ci, comp) in comps.iter().enumerate() {
        let down = comp.iter().any(|&v| {
            adj[v].iter().any(|&t| {
                let ct = comp_of[t];
                ct != ci && (is_cycle[ct] || reaches_cycle[ct])
            })
        });
        reaches_cycle[ci] = down;
        if down && is_cycle[ci] {
            return Ok(MultiplicityClass::CountablyInfinite);
        }
    }
    let mut paths = vec![BigUint::zero(); adj.len()];
    for comp in &comps {
        if is_cycle[comp_of[comp[0]]] {
            for &v in comp {
                paths[v] = BigUint::one();
            }
        } else {
            let v = comp[0];
            let mut total = BigUint::zero();
            for &t in &adj[v] {
                total += &paths[t];
            }
            paths[v] = total;
        }
    }
    Ok(MultiplicityClass::Finite(paths[0].clone()))
}

fn coincidence_dfs(
    lambda: &Rational,
    v: &Rational,
    depth: u32,
    max_len: u32,
    wi: &mut Vec<Digit>,
    wj: &mut Vec<Digit>,
    out: &mut BTreeSet<(DigitWord, DigitWord)>,
) {
    if depth > 0 && v.is_zero() && wi != wj {
        let i = DigitWord::from_digits(wi.clone());
        let j = DigitWord::from_digits(wj.clone());
        out.insert(if i <= j { (i, j) } else { (j, i) });
    }
    if depth == max_len {
        return;
    }
    let one = Rational::one();
    let base = rat(3, 1) * v;
    for a in Digit::ALL {
        for b in Digit::ALL {
            let next = &base + a.value(lambda) - b.value(lambda);
            if next.abs() > one {
                continue;
            }
            wi.push(a);
            wj.push(b);
            coincidence_dfs(lambda, &next, depth + 1, max_len, wi, wj, out);
            wi.pop();
            wj.pop();
        }
    }
}

/// All unordered pairs of distinct equal-length words (length ≤ max_len)
/// with `f_i(0) = f_j(0)`, for totally self-similar λ, where coincidences
/// propagate cleanly through deeper levels. Pairs come lexicographically
/// smaller word first, sorted by (length, first word, second word).
/// Exhaustive over word pairs, so cost grows exponentially in `max_len`.
pub fn pair_coincidence(
    lambda: &Rational,
    max_len: u32,
    guard: u32,
) -> Result<Vec<(DigitWord, DigitWord)>> {
    validate_lambda(lambda)?;
    if tss_exact(lambda).is_none() {
        return Err(Error::domain(format!(
            "coincidence enumeration requires λ = 1 − 3^(-m); got {lambda}"
        )));
    }
    check_guard(max_len, guard)?;
    let mut out = BTreeSet::new();
    let mut wi = Vec::new();
    let mut wj = Vec::new();
    coincidence_dfs(lambda, &Rational::zero(), 0, max_len, &mut wi, &mut wj, &mut out);
    let mut list: Vec<_> = out.into_iter().collect();
    list.sort_by(|p, q| p.0.len().cmp(&q.0.len()).then_with(|| p.cmp(q)));
    Ok(list)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::ErrorKind;
    use alloc::string::ToString;

    fn contains_block(word: &[Digit], block: &DigitWord) -> bool {
        let b = block.digits();
        word.windows(b.len()).any(|w| w == b)
    }

    fn brute_count(variant: SftVariant, m: u32, n: u32) -> u64 {
        let blocks = forbidden_words(variant, m);
        let total = 3u64.pow(n);
        (0..total)
            .filter(|&code| {
                let mut digits = vec![Digit::Z; n as usize];
                let mut rem = code;
                for slot in digits.iter_mut().rev() {
                    *slot = Digit::ALL[(rem % 3) as usize];
                    rem /= 3;
                }
                !blocks.iter().any(|b| contains_block(&digits, b))
            })
            .count() as u64
    }

    #[test]
    fn forbidden_block_shapes() {
        let f = forbidden_words(SftVariant::Unique, 2);
        assert_eq!(f[0].to_string(), "ZTT");
        assert_eq!(f[1].to_string(), "LZZ");
        assert_eq!(forbidden_words(SftVariant::Full, 1).len(), 1);
    }

    #[test]
    fn gram_graph_m1_edges() {
        let full = build_sft(SftVariant::Full, 1).unwrap();
        assert_eq!(full.states.len(), 3);
        assert_eq!(full.edges[0], [Some(0), Some(1), None]);
        assert_eq!(full.edges[1], [Some(0), Some(1), Some(2)]);
        assert_eq!(full.edges[2], [Some(0), Some(1), Some(2)]);
        let unique = build_sft(SftVariant::Unique, 1).unwrap();
        assert_eq!(unique.edges[0], [Some(0), Some(1), None]);
        assert_eq!(unique.edges[1], [None, Some(1), Some(2)]);
        assert_eq!(unique.edges[2], [Some(0), Some(1), Some(2)]);
    }

    #[test]
    fn build_guards() {
        assert!(build_sft(SftVariant::Full, 0).is_err());
        assert_eq!(build_sft(SftVariant::Full, 13).unwrap_err().kind(), ErrorKind::Resource);
    }

    #[test]
    fn admissible_counts_small() {
        let full: Vec<u32> = (0..5)
            .map(|n| count_admissible(SftVariant::Full, 1, n).unwrap().try_into().unwrap())
            .collect();
        assert_eq!(full, [1, 3, 8, 21, 55]);
        let unique: Vec<u32> = (0..5)
            .map(|n| count_admissible(SftVariant::Unique, 1, n).unwrap().try_into().unwrap())
            .collect();
        assert_eq!(unique, [1, 3, 7, 16, 37]);
    }

    #[test]
    fn transfer_counts_match_direct_scan() {
        for variant in [SftVariant::Full, SftVariant::Unique] {
            for m in [1, 2] {
                for n in 0..=6 {
                    assert_eq!(
                        count_admissible(variant, m, n).unwrap(),
                        BigUint::from(brute_count(variant, m, n)),
                        "variant {variant:?}, m = {m}, n = {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn growth_rates_m1() {
        let full = build_sft(SftVariant::Full, 1).unwrap();
        let g = growth_rate(&full, 1e-12, 10_000).unwrap();
        assert!(Float::abs(g - (3.0 + Float::sqrt(5.0f64)) / 2.0) < 1e-8);

        let unique = build_sft(SftVariant::Unique, 1).unwrap();
        let g = growth_rate(&unique, 1e-12, 10_000).unwrap();
        assert!(g > 2.32 && g < 2.33, "unique growth {g}");
        // g is the real root of u³ − 3u² + 2u − 1.
        let residual = g * g * g - 3.0 * g * g + 2.0 * g - 1.0;
        assert!(Float::abs(residual) < 1e-6, "residual {residual}");
    }

    #[test]
    fn exponent_solutions() {
        let ln3 = Float::ln(3.0f64);
        let s1 = dimension_solve(DimExponent::S, 1, 1e-13).unwrap();
        assert!(Float::abs(s1 - Float::ln((3.0 + Float::sqrt(5.0f64)) / 2.0) / ln3) < 1e-9);
        let t1 = dimension_solve(DimExponent::T, 1, 1e-13).unwrap();
        assert!(Float::abs(t1 - Float::ln(2.0f64) / ln3) < 1e-9);

        let s2 = dimension_solve(DimExponent::S, 2, 1e-13).unwrap();
        assert!(s2 > 0.962 && s2 < 0.963);
        assert!(Float::abs(dimension_residual(DimExponent::S, 2, s2)) < 1e-9);
        let t2 = dimension_solve(DimExponent::T, 2, 1e-13).unwrap();
        assert!(Float::abs(Float::powf(3.0f64, t2) - (1.0 + Float::sqrt(3.0f64))) < 1e-9);

        let pair = dimension_pair(1, 1e-13).unwrap();
        assert!(pair.s > pair.t, "whole set outgrows the unique part");
    }

    #[test]
    fn scc_emits_successors_first() {
        // 0 ↔ 1 → 2 (self-loop), 3 isolated.
        let adj = vec![vec![1], vec![0, 2], vec![2], vec![]];
        let comps = strongly_connected_components(&adj);
        assert_eq!(comps.len(), 3);
        let mut first = comps[0].clone();
        first.sort_unstable();
        assert_eq!(first, vec![2]);
        let mut second = comps[1].clone();
        second.sort_unstable();
        assert_eq!(second, vec![0, 1]);
    }

    #[test]
    fn multiplicity_examples() {
        let lambda = rat(2, 3);
        assert_eq!(
            coding_multiplicity(&rat(2, 9), &lambda).unwrap(),
            MultiplicityClass::Finite(BigUint::from(2u32))
        );
        assert_eq!(
            coding_multiplicity(&rat(1, 1), &lambda).unwrap(),
            MultiplicityClass::Finite(BigUint::one())
        );
        assert_eq!(
            coding_multiplicity(&rat(1, 3), &lambda).unwrap(),
            MultiplicityClass::CountablyInfinite
        );
        assert_eq!(coding_multiplicity(&rat(1, 4), &lambda).unwrap(), MultiplicityClass::Continuum);
        let err = coding_multiplicity(&rat(47, 243), &lambda).unwrap_err();
        assert_eq!(err.kind(), ErrorKind::Domain);
    }

    #[test]
    fn coding_graph_shape() {
        let g = coding_graph(&rat(2, 9), &rat(2, 3)).unwrap();
        assert!(g.member);
        assert_eq!(g.states[0], rat(2, 9));
        assert_eq!(g.states.len(), 3);
        let g = coding_graph(&rat(47, 243), &rat(2, 3)).unwrap();
        assert!(!g.member);
        let g = coding_graph(&rat(3, 2), &rat(2, 3)).unwrap();
        assert!(!g.member);
    }

    #[test]
    fn coincidences_frozen() {
        let pairs = pair_coincidence(&rat(2, 3), 2, 12).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(
            (pairs[0].0.to_string(), pairs[0].1.to_string()),
            ("ZT".to_string(), "LZ".to_string())
        );

        let pairs = pair_coincidence(&rat(2, 3), 3, 12).unwrap();
        let has = |i: &str, j: &str| {
            pairs.iter().any(|(a, b)| a.to_string() == i && b.to_string() == j)
        };
        assert!(has("ZT", "LZ"));
        assert!(has("ZTT", "LLZ"));
        assert!(has("ZZT", "ZLZ"));
        assert_eq!(pairs[0].0.to_string(), "ZT");

        let pairs = pair_coincidence(&rat(8, 9), 3, 12).unwrap();
        assert!(pairs.iter().any(|(a, b)| a.to_string() == "ZTT" && b.to_string() == "LZZ"));
        assert!(pair_coincidence(&rat(8, 9), 2, 12).unwrap().is_empty());
    }

    #[test]
    fn coincidences_gate_on_total_self_similarity() {
        let err = pair_coincidence(&rat(1, 2), 3, 12).unwrap_err();
        assert_eq!(err.kind(), ErrorKind::Domain);
        assert!(pair_coincidence(&rat(2, 3), 13, 12).is_err());
    }

    #[test]
    fn coincidences_really_coincide() {
        for (i, j) in pair_coincidence(&rat(2, 3), 3, 12).unwrap() {
            assert_eq!(
                crate::numeric::eval_word_origin(&i, &rat(2, 3)),
                crate::numeric::eval_word_origin(&j, &rat(2, 3))
            );
            assert_ne!(i, j);
            assert_eq!(i.len(), j.len());
        }
    }
}
