//! Exact scalar arithmetic, digit words, and interval-set algebra.
//!
//! Everything downstream computes over [`Rational`] (arbitrary-precision,
//! always in canonical reduced form with positive denominator) so that set
//! operations, membership decisions, and spectra are exact.

mod digit;
mod interval;
mod rational;

pub use digit::{eval_word_interval, eval_word_origin, Digit, DigitWord};
pub use interval::{Interval, IntervalSet};
pub use rational::{parse_rational, pow3, pow3_rat, rat, rational, validate_lambda, Rational};
