//! Exact interval-set algebra over rational endpoints with open/closed
//! bound tracking.
//!
//! Hole images are open, cylinder images are closed, and whether two of
//! them merely touch at an endpoint decides questions like total
//! self-similarity, so the endpoint flags are part of the arithmetic and
//! not cosmetic.

use super::rational::Rational;
use crate::error::{Error, Result};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// A nonempty interval with independently open or closed endpoints.
/// Degenerate points `[x, x]` are allowed (both ends closed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
    lo_open: bool,
    hi_open: bool,
}

impl Interval {
    pub fn new(lo: Rational, lo_open: bool, hi: Rational, hi_open: bool) -> Result<Self> {
        match lo.cmp(&hi) {
            Ordering::Less => Ok(Interval { lo, hi, lo_open, hi_open }),
            Ordering::Equal if !lo_open && !hi_open => Ok(Interval { lo, hi, lo_open, hi_open }),
            _ => Err(Error::domain("empty interval")),
        }
    }

    /// `[lo, hi]`; panics if `lo > hi` (use [`Interval::new`] for untrusted
    /// bounds).
    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Interval::new(lo, false, hi, false).expect("closed interval bounds out of order")
    }

    /// `(lo, hi)`; panics if `lo >= hi`.
    pub fn open(lo: Rational, hi: Rational) -> Self {
        Interval::new(lo, true, hi, true).expect("open interval bounds out of order")
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x, lo_open: false, hi_open: false }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn lo_open(&self) -> bool {
        self.lo_open
    }

    pub fn hi_open(&self) -> bool {
        self.hi_open
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above_lo = match x.cmp(&self.lo) {
            Ordering::Greater => true,
            Ordering::Equal => !self.lo_open,
            Ordering::Less => false,
        };
        let below_hi = match x.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => !self.hi_open,
            Ordering::Greater => false,
        };
        above_lo && below_hi
    }

    /// Exact nonempty-intersection test honoring endpoint flags.
    pub fn intersects(&self, other: &Interval) -> bool {
        self.intersect(other).is_some()
    }

    /// Exact intersection, `None` when empty.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_open) = match cmp_lo(&self.lo, self.lo_open, &other.lo, other.lo_open) {
            Ordering::Less => (&other.lo, other.lo_open),
            _ => (&self.lo, self.lo_open),
        };
        let (hi, hi_open) = match cmp_hi(&self.hi, self.hi_open, &other.hi, other.hi_open) {
            Ordering::Greater => (&other.hi, other.hi_open),
            _ => (&self.hi, self.hi_open),
        };
        Interval::new(lo.clone(), lo_open, hi.clone(), hi_open).ok()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_open { '(' } else { '[' };
        let close = if self.hi_open { ')' } else { ']' };
        write!(f, "{}{}, {}{}", open, self.lo, self.hi, close)
    }
}

/// Lower bounds compare by value; at equal value a closed bound starts
/// earlier than an open one.
fn cmp_lo(a: &Rational, a_open: bool, b: &Rational, b_open: bool) -> Ordering {
    a.cmp(b).then_with(|| match (a_open, b_open) {
        (false, true) => Ordering::Less,
        (true, false) => Ordering::Greater,
        _ => Ordering::Equal,
    })
}

/// Upper bounds compare by value; at equal value an open bound ends earlier
/// than a closed one.
fn cmp_hi(a: &Rational, a_open: bool, b: &Rational, b_open: bool) -> Ordering {
    a.cmp(b).then_with(|| match (a_open, b_open) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => Ordering::Equal,
    })
}

/// Can a part ending at `(hi, hi_open)` absorb one starting at
/// `(lo, lo_open)`? True on overlap, and on touch unless both sides are
/// open (an open-open touch leaves the shared point out of the union).
fn connects(hi: &Rational, hi_open: bool, lo: &Rational, lo_open: bool) -> bool {
    match lo.cmp(hi) {
        Ordering::Less => true,
        Ordering::Equal => !(hi_open && lo_open),
        Ordering::Greater => false,
    }
}

/// A finite union of intervals in canonical form: parts sorted ascending,
/// pairwise disjoint, and no two adjacent parts connectable (so equal sets
/// have equal representations).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { parts: Vec::new() }
    }

    /// Canonicalizes an arbitrary collection of intervals.
    pub fn from_intervals(mut intervals: Vec<Interval>) -> Self {
        intervals.sort_by(|a, b| {
            cmp_lo(&a.lo, a.lo_open, &b.lo, b.lo_open)
                .then_with(|| cmp_hi(&a.hi, a.hi_open, &b.hi, b.hi_open))
        });
        let mut parts: Vec<Interval> = Vec::with_capacity(intervals.len());
        for iv in intervals {
            match parts.last_mut() {
                Some(cur) if connects(&cur.hi, cur.hi_open, &iv.lo, iv.lo_open) => {
                    if cmp_hi(&iv.hi, iv.hi_open, &cur.hi, cur.hi_open) == Ordering::Greater {
                        cur.hi = iv.hi;
                        cur.hi_open = iv.hi_open;
                    }
                }
                _ => parts.push(iv),
            }
        }
        IntervalSet { parts }
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn contains_point(&self, x: &Rational) -> bool {
        // Parts have pairwise distinct lower-bound values in canonical form,
        // so the last part starting at or before x is the only candidate.
        let idx = self.parts.partition_point(|p| p.lo <= *x);
        idx > 0 && self.parts[idx - 1].contains(x)
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut all = self.parts.clone();
        all.extend(other.parts.iter().cloned());
        IntervalSet::from_intervals(all)
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            let a = &self.parts[i];
            let b = &other.parts[j];
            if let Some(iv) = a.intersect(b) {
                out.push(iv);
            }
            // Advance whichever part ends first; the other may still meet
            // later parts of the opposite set.
            if cmp_hi(&a.hi, a.hi_open, &b.hi, b.hi_open) == Ordering::Greater {
                j += 1;
            } else {
                i += 1;
            }
        }
        // Pieces inherit canonical order; canonicalizing keeps the
        // equal-set ⇔ equal-representation guarantee independent of that
        // argument.
        IntervalSet::from_intervals(out)
    }

    /// Set difference `self ∖ other`, exact in the endpoint flags:
    /// removing an open interval leaves closed endpoints behind and vice
    /// versa.
    pub fn difference(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        let mut j = 0;
        for a in &self.parts {
            let mut cur = a.clone();
            // Skip subtrahend parts entirely below the current remainder.
            while j < other.parts.len() && other.parts[j].hi < cur.lo {
                j += 1;
            }
            let mut k = j;
            let mut alive = true;
            while k < other.parts.len() {
                let b = &other.parts[k];
                if cmp_lo(&b.lo, b.lo_open, &cur.hi, !cur.hi_open) == Ordering::Greater {
                    // b starts past the remainder (touching an open end
                    // included): nothing further overlaps.
                    break;
                }
                if b.intersect(&cur).is_none() {
                    k += 1;
                    continue;
                }
                // Left piece of cur below b.
                if let Ok(piece) = Interval::new(cur.lo.clone(), cur.lo_open, b.lo.clone(), !b.lo_open)
                {
                    out.push(piece);
                }
                // Remainder of cur above b.
                match Interval::new(b.hi.clone(), !b.hi_open, cur.hi.clone(), cur.hi_open) {
                    Ok(rest) => cur = rest,
                    Err(_) => {
                        alive = false;
                        break;
                    }
                }
                k += 1;
            }
            if alive {
                out.push(cur);
            }
        }
        // Pieces are sorted and separated by removed material or original
        // gaps, except that subtrahend parts lying strictly inside `other`'s
        // gaps may leave touching pieces: canonicalize to be safe.
        IntervalSet::from_intervals(out)
    }

    pub fn is_subset_of(&self, other: &IntervalSet) -> bool {
        self.difference(other).is_empty()
    }

    /// Total length (endpoint flags do not affect measure).
    pub fn total_width(&self) -> Rational {
        self.parts.iter().map(Interval::width).sum()
    }
}

impl From<Interval> for IntervalSet {
    fn from(iv: Interval) -> Self {
        IntervalSet { parts: alloc::vec![iv] }
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}
