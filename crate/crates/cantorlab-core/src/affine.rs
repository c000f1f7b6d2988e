//! Affine maps sending E into itself.
//!
//! Every digit word `w` yields one: `f_w(x) = 3^{-|w|} x + f_w(0)`. For
//! totally self-similar λ these word maps (with the identity) exhaust the
//! orientation-preserving affine self-embeddings, and membership in the
//! family is decidable by digit descent through the origin levels. For
//! arbitrary λ there is no certificate here, but an inclusion claim can
//! be refuted at finite depth: `g(E) ⊆ E` forces `g(t) ∈ I_n` for every
//! `t ∈ E` and every level `n`, and cylinder endpoints supply a rich,
//! enumerable stock of points `t ∈ E`.

use crate::error::{Error, Result};
use crate::numeric::{
    eval_word_origin, pow3_rat, rat, validate_lambda, Digit, DigitWord, IntervalSet, Rational,
};
use crate::structure::{
    check_guard, level_set_from_origins, nth_word, origin_levels, tss_exact,
};
use alloc::format;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

/// `g(x) = μx + b` with `μ ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    mu: Rational,
    b: Rational,
}

impl AffineMap {
    pub fn new(mu: Rational, b: Rational) -> Result<Self> {
        if mu.is_zero() {
            return Err(Error::domain("affine maps here must have nonzero slope"));
        }
        Ok(AffineMap { mu, b })
    }

    pub fn mu(&self) -> &Rational {
        &self.mu
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn apply(&self, x: &Rational) -> Rational {
        &self.mu * x + &self.b
    }

    /// The word map `f_w`: slope `3^{-|w|}`, offset `f_w(0)`.
    pub fn from_word(w: &DigitWord, lambda: &Rational) -> Self {
        AffineMap {
            mu: pow3_rat(-(w.len() as i32)),
            b: eval_word_origin(w, lambda),
        }
    }
}

/// `Some(n)` when `μ = 3^{-n}`; the only slopes word maps can have.
fn power_of_three_exponent(mu: &Rational) -> Option<u32> {
    if !mu.numer().is_one() {
        return None;
    }
    let three = BigInt::from(3);
    let mut den = mu.denom().clone();
    let mut n = 0u32;
    while (&den % &three).is_zero() {
        den /= &three;
        n += 1;
    }
    den.is_one().then_some(n)
}

/// Decides, for totally self-similar λ, whether `g(x) = μx + b` is a word
/// map, returning the lexicographically least word realizing it. The
/// criterion: `μ = 3^{-n}` and `b` is a level-`n` cylinder origin; the
/// word is recovered by peeling digits, keeping the remainder inside the
/// successive origin levels. Non-TSS λ is a domain error since origin
/// membership no longer certifies inclusion there.
pub fn classify_affine(
    mu: &Rational,
    b: &Rational,
    lambda: &Rational,
    guard: u32,
) -> Result<Option<DigitWord>> {
    validate_lambda(lambda)?;
    if tss_exact(lambda).is_none() {
        return Err(Error::domain(format!(
            "classification requires λ = 1 − 3^(-m); got {lambda}"
        )));
    }
    let Some(n) = power_of_three_exponent(mu) else {
        return Ok(None);
    };
    check_guard(n, guard)?;
    let levels = origin_levels(lambda, n, guard)?;
    if !levels[n as usize].contains(b) {
        return Ok(None);
    }
    let three = rat(3, 1);
    let mut digits = Vec::with_capacity(n as usize);
    let mut r = b.clone();
    for k in 1..=n {
        let (d, next) = Digit::ALL
            .into_iter()
            .find_map(|d| {
                let next = &three * &r - d.value(lambda);
                levels[(n - k) as usize].contains(&next).then_some((d, next))
            })
            .expect("origin-level membership always splits off a digit");
        digits.push(d);
        r = next;
    }
    debug_assert!(r.is_zero());
    Ok(Some(DigitWord::from_digits(digits)))
}

/// Outcome of an inclusion check for `g(E) ⊆ E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyResult {
    /// Proven: `g` is the identity or a word map.
    Accepted { depth_tested: u32 },
    /// Refuted: `witness ∈ E` but `g(witness) ∉ I_depth ⊇ E`.
    Rejected { depth: u32, witness: Rational },
    /// No certificate and no refutation through the sweep depth.
    Inconclusive { depth_tested: u32 },
}

/// Shared data for refutation sweeps at one λ and depth: the level sets
/// `I_0 ⊇ … ⊇ I_depth` and the test points of E — every cylinder
/// endpoint `f_w(0)`, `f_w(1)` for `|w| ≤ depth` — in deterministic
/// order: by word length, then word, origin before right endpoint.
struct SweepContext {
    levels: Vec<IntervalSet>,
    points: Vec<Rational>,
}

fn sweep_context(lambda: &Rational, depth: u32, guard: u32) -> Result<SweepContext> {
    let origins = origin_levels(lambda, depth, guard)?;
    let levels = (0..=depth)
        .map(|n| level_set_from_origins(&origins[n as usize], n))
        .collect();
    let mut points = Vec::new();
    for len in 0..=depth {
        let width = pow3_rat(-(len as i32));
        let count = crate::numeric::pow3(len).to_usize().expect("guarded depth");
        for idx in 0..count {
            let w = nth_word(idx, len);
            let origin = eval_word_origin(&w, lambda);
            let right = &origin + &width;
            points.push(origin);
            points.push(right);
        }
    }
    Ok(SweepContext { levels, points })
}

fn sweep(mu: &Rational, b: &Rational, ctx: &SweepContext) -> VerifyResult {
    for (n, level) in ctx.levels.iter().enumerate() {
        for p in &ctx.points {
            let image = mu * p + b;
            if !level.contains_point(&image) {
                return VerifyResult::Rejected { depth: n as u32, witness: p.clone() };
            }
        }
    }
    VerifyResult::Inconclusive { depth_tested: ctx.levels.len() as u32 - 1 }
}

/// A certificate of inclusion when one exists: the empty word for the
/// identity, otherwise (TSS only) the word realizing `g`.
fn certificate_for(
    mu: &Rational,
    b: &Rational,
    lambda: &Rational,
    tss: bool,
    guard: u32,
) -> Result<Option<DigitWord>> {
    if mu.is_one() && b.is_zero() {
        return Ok(Some(DigitWord::new()));
    }
    if !tss {
        return Ok(None);
    }
    match power_of_three_exponent(mu) {
        Some(n) if n <= guard => classify_affine(mu, b, lambda, guard),
        _ => Ok(None),
    }
}

/// Decides `g(E) ⊆ E` as far as possible: certificate first (identity, or
/// word-map classification when λ is totally self-similar), then the
/// level sweep hunting a refuting point, in the documented deterministic
/// order. The first failing (level, point) pair is reported.
pub fn verify_affine_inclusion(
    mu: &Rational,
    b: &Rational,
    lambda: &Rational,
    depth: u32,
    guard: u32,
) -> Result<VerifyResult> {
    validate_lambda(lambda)?;
    if mu.is_zero() {
        return Err(Error::domain("affine maps here must have nonzero slope"));
    }
    let tss = tss_exact(lambda).is_some();
    if certificate_for(mu, b, lambda, tss, guard)?.is_some() {
        return Ok(VerifyResult::Accepted { depth_tested: 0 });
    }
    let ctx = sweep_context(lambda, depth, guard)?;
    Ok(sweep(mu, b, &ctx))
}

/// One grid entry of [`affine_inclusion_scan`]. `sweep` is the verdict of
/// the level sweep alone, run even when a certificate exists so the two
/// routes stay independent; a certified row whose sweep rejects would
/// expose an internal contradiction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineScanRow {
    pub mu: Rational,
    pub b: Rational,
    pub certificate: Option<DigitWord>,
    pub sweep: VerifyResult,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineScanReport {
    pub rows: Vec<AffineScanRow>,
    /// Rows with a certificate.
    pub certified: usize,
    /// Rows without a certificate whose sweep refuted inclusion.
    pub rejected: usize,
    /// Certified rows whose sweep nevertheless refuted: must stay zero.
    pub disagreements: usize,
    /// Rows with neither certificate nor refutation.
    pub unresolved: usize,
}

/// Sweeps a (μ, b) grid at one λ, sharing the level sets and test points
/// across rows. Rows appear in the given μ-major order.
pub fn affine_inclusion_scan(
    lambda: &Rational,
    mus: &[Rational],
    bs: &[Rational],
    depth: u32,
    guard: u32,
) -> Result<AffineScanReport> {
    validate_lambda(lambda)?;
    for mu in mus {
        if mu.is_zero() {
            return Err(Error::domain("affine scan slopes must be nonzero"));
        }
    }
    let tss = tss_exact(lambda).is_some();
    let ctx = sweep_context(lambda, depth, guard)?;
    let mut rows = Vec::with_capacity(mus.len() * bs.len());
    let (mut certified, mut rejected, mut disagreements, mut unresolved) = (0, 0, 0, 0);
    for mu in mus {
        for b in bs {
            let certificate = certificate_for(mu, b, lambda, tss, guard)?;
            let sweep_verdict = sweep(mu, b, &ctx);
            match (&certificate, &sweep_verdict) {
                (Some(_), VerifyResult::Rejected { .. }) => {
                    certified += 1;
                    disagreements += 1;
                }
                (Some(_), _) => certified += 1,
                (None, VerifyResult::Rejected { .. }) => rejected += 1,
                (None, _) => unresolved += 1,
            }
            rows.push(AffineScanRow {
                mu: mu.clone(),
                b: b.clone(),
                certificate,
                sweep: sweep_verdict,
            });
        }
    }
    Ok(AffineScanReport { rows, certified, rejected, disagreements, unresolved })
}
