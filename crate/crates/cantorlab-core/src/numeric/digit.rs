//! The abstract digit alphabet and finite digit words.

use super::interval::Interval;
use super::rational::{pow3_rat, Rational};
use crate::error::{Error, Result};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;
use num_traits::Zero;

/// One digit of the coding alphabet. The letters stand for the map
/// translations `0`, `λ`, `2`; keeping `λ` abstract lets words be compared
/// and ordered independently of the parameter.
///
/// The derived order `Z < L < T` agrees with the numeric order of the
/// translations for every `λ ∈ (0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Digit {
    /// translation 0
    Z,
    /// translation λ
    L,
    /// translation 2
    T,
}

impl Digit {
    pub const ALL: [Digit; 3] = [Digit::Z, Digit::L, Digit::T];

    /// The translation this digit contributes under the given parameter.
    pub fn value(self, lambda: &Rational) -> Rational {
        match self {
            Digit::Z => Rational::zero(),
            Digit::L => lambda.clone(),
            Digit::T => Rational::from_integer(2.into()),
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Digit::Z => 'Z',
            Digit::L => 'L',
            Digit::T => 'T',
        }
    }

    pub fn from_char(c: char) -> Result<Digit> {
        match c {
            'Z' => Ok(Digit::Z),
            'L' => Ok(Digit::L),
            'T' => Ok(Digit::T),
            _ => Err(Error::domain(format!("invalid digit {c:?}"))),
        }
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A finite word over the digit alphabet, i.e. a composition `f_w = f_{w_1}
/// ∘ ... ∘ f_{w_n}`. Lexicographic `Ord` is derived from the digit order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DigitWord(Vec<Digit>);

impl DigitWord {
    pub fn new() -> Self {
        DigitWord(Vec::new())
    }

    pub fn from_digits(digits: impl Into<Vec<Digit>>) -> Self {
        DigitWord(digits.into())
    }

    /// `first` followed by `count` copies of `rest`, e.g. the witness shapes
    /// `Z T^k` and `L Z^k`.
    pub fn repeated(first: Digit, rest: Digit, count: usize) -> Self {
        let mut digits = Vec::with_capacity(count + 1);
        digits.push(first);
        digits.resize(count + 1, rest);
        DigitWord(digits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, d: Digit) {
        self.0.push(d);
    }

    pub fn digits(&self) -> &[Digit] {
        &self.0
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Digit> {
        self.0.iter()
    }

    /// Plain-ASCII rendering for machine formats; unlike `Display`, the
    /// empty word comes out as the empty string, not `ε`.
    pub fn letters(&self) -> String {
        self.iter().map(|d| d.to_char()).collect()
    }
}

impl fmt::Display for DigitWord {
    /// Concatenated letters; the empty word prints as `ε`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for DigitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "ε" || s.is_empty() {
            return Ok(DigitWord::new());
        }
        s.chars().map(Digit::from_char).collect::<Result<Vec<_>>>().map(DigitWord)
    }
}

impl From<&str> for DigitWord {
    /// Panics on invalid letters; intended for literals in tests.
    fn from(s: &str) -> Self {
        s.parse().expect("valid digit word literal")
    }
}

/// `f_w(0) = Σ_k value(w_k) 3^{-k}`, the left endpoint of the cylinder of
/// `w`. Evaluated by the right-to-left Horner recurrence
/// `f_{d·w}(0) = (f_w(0) + d)/3`, so
/// `eval_word_origin(u·v) = eval_word_origin(u) + 3^{-|u|} eval_word_origin(v)`.
pub fn eval_word_origin(w: &DigitWord, lambda: &Rational) -> Rational {
    let three = Rational::from_integer(3.into());
    let mut acc = Rational::zero();
    for d in w.iter().rev() {
        acc = (acc + d.value(lambda)) / &three;
    }
    acc
}

/// The cylinder interval `f_w([0,1]) = [f_w(0), f_w(0) + 3^{-|w|}]`, closed.
pub fn eval_word_interval(w: &DigitWord, lambda: &Rational) -> Interval {
    let lo = eval_word_origin(w, lambda);
    let hi = &lo + pow3_rat(-(w.len() as i32));
    Interval::closed(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::rat;

    #[test]
    fn origin_of_empty_word_is_zero() {
        assert_eq!(eval_word_origin(&DigitWord::new(), &rat(2, 3)), rat(0, 1));
    }

    #[test]
    fn coinciding_origins_at_tss_parameter() {
        // f_{02} and f_{λ0} translate 0 to the same point when λ = 2/3.
        let lambda = rat(2, 3);
        assert_eq!(eval_word_origin(&"ZT".into(), &lambda), rat(2, 9));
        assert_eq!(eval_word_origin(&"LZ".into(), &lambda), rat(2, 9));
    }

    #[test]
    fn cylinder_intervals() {
        let i = eval_word_interval(&"L".into(), &rat(2, 3));
        assert_eq!(i, Interval::closed(rat(2, 9), rat(5, 9)));
        let full = eval_word_interval(&DigitWord::new(), &rat(1, 2));
        assert_eq!(full, Interval::closed(rat(0, 1), rat(1, 1)));
        let t = eval_word_interval(&"T".into(), &rat(1, 2));
        assert_eq!(t, Interval::closed(rat(2, 3), rat(1, 1)));
    }

    #[test]
    fn word_order_is_lexicographic() {
        let a: DigitWord = "ZT".into();
        let b: DigitWord = "LZ".into();
        assert!(a < b);
        assert!(DigitWord::from("Z") < DigitWord::from("ZZ"));
    }

    #[test]
    fn word_round_trip_and_shapes() {
        let w = DigitWord::repeated(Digit::Z, Digit::T, 2);
        assert_eq!(w.to_string(), "ZTT");
        assert_eq!("ZTT".parse::<DigitWord>().unwrap(), w);
        assert_eq!(DigitWord::new().to_string(), "ε");
        assert_eq!("ε".parse::<DigitWord>().unwrap(), DigitWord::new());
        assert!("ZXT".parse::<DigitWord>().is_err());
    }
}
