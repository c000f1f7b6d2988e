//! Exact structural invariants of the overlapping self-similar sets
//! `E = f_0(E) ∪ f_λ(E) ∪ f_2(E)` with `f_d(x) = (x + d)/3` and digit set
//! `{0, λ, 2}` for a parameter `λ ∈ (0, 1)`.
//!
//! Because `f_0([0,1])` and `f_λ([0,1])` overlap, most of the classical
//! Cantor-set machinery (hole structure, unique codings, separation of
//! cylinders) degrades in interesting ways that depend arithmetically on
//! `λ`. This crate computes those structures exactly over arbitrary-precision
//! rationals:
//!
//! * [`structure`] — level sets `I_n`, hole sets `H_n`, total self-similarity
//!   decisions and bounded-depth evidence, exact membership, box-counting
//!   estimates.
//! * [`spectrum`] — the separation spectrum
//!   `inf { 3^n |f_i(0) − f_j(0)| : |i| = |j| = n, f_i ≠ f_j }` via a finite
//!   offset graph, a brute-force cross-check, and the witness construction
//!   from the greedy triadic expansion of `λ`.
//! * [`symbolic`] — subshifts of finite type coding the set and its
//!   unique-coding subset, admissible-word counting, growth rates, and the
//!   dimension equations; coding graphs and coding multiplicity of points.
//! * [`affine`] — which affine maps send `E` into itself.
//!
//! The crate is `no_std`-compatible (with `alloc`); the companion CLI crate
//! carries all IO.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod affine;
pub mod error;
pub mod numeric;
pub mod spectrum;
pub mod structure;
pub mod symbolic;

pub use error::{Error, ErrorKind, Result};
pub use numeric::{
    eval_word_origin, eval_word_interval, parse_rational, rational, Digit, DigitWord, Interval,
    IntervalSet, Rational,
};
pub use structure::DEFAULT_DEPTH_GUARD;
