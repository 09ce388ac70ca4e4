//! Exact arithmetic for m-palindromic continued fractions.
//!
//! A finite word `A` of partial quotients is *m-palindromic* when
//! `[A] = m [reverse(A)]`, equivalently `m q_i = p_{i-1}` for its continuants.
//! This crate provides:
//!
//! * [`word`]: words, fractional powers, factor search and memoized streams;
//! * [`cf`]: continuant tables, (extended) evaluation and simplification;
//! * [`mpal`]: the m-palindrome predicate, the construction lemmas, and
//!   m-palindromic prefix scans with density estimates;
//! * [`generators`]: every named infinite family (perturbed symmetries, the
//!   G-sequence, the `B_k`/`T` words, substituted Fibonacci words);
//! * [`quadratic`]: exact quadratic irrationals for eventually periodic words;
//! * [`analysis`]: rigorous rational enclosures, the Schmidt-type inequality
//!   audit and repetition (stammering) scans;
//! * [`cli`]: the `mpalkit` command line.
//!
//! No floating point is used in any predicate.

pub mod analysis;
pub mod cf;
pub mod cli;
pub mod error;
pub mod generators;
pub mod mpal;
pub mod quadratic;
pub mod word;

/// Exact rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub use cf::{convergents, evaluate, evaluate_with_tail, simplify, ConvergentTable, Mat2};
pub use error::{Error, Result};
pub use mpal::{is_m_palindrome, DensityReport, MPalCertificate};
pub use quadratic::{EventuallyPeriodicWord, QuadraticIrrational};
pub use word::{Word, WordStream};
