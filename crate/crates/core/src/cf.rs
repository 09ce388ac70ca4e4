//! Continued fractions through the continuant matrix product.
//!
//! Every word, zeros included, has a matrix
//! `M(a_0) M(a_1) ... M(a_i)` with `M(a) = [[a, 1], [1, 0]]`, whose columns are
//! `(p_i, q_i)` and `(p_{i-1}, q_{i-1})`. The value `[A] = p_i / q_i` exists
//! whenever `q_i != 0`.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::Word;
use crate::Rational;

/// A 2x2 integer matrix `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mat2 {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one())
    }

    /// The single-quotient matrix `[[t, 1], [1, 0]]`.
    pub fn quotient(t: u64) -> Self {
        Mat2::new(BigInt::from(t), BigInt::one(), BigInt::one(), BigInt::zero())
    }

    /// Left-to-right product of the quotient matrices of `terms`, computed as a
    /// balanced product tree so that long words multiply numbers of similar size.
    pub fn of_terms(terms: &[u64]) -> Self {
        match terms.len() {
            0 => Mat2::identity(),
            1 => Mat2::quotient(terms[0]),
            n if n <= 32 => {
                let mut m = Mat2::quotient(terms[0]);
                for &t in &terms[1..] {
                    m.push_quotient(t);
                }
                m
            }
            n => {
                let (left, right) = terms.split_at(n / 2);
                &Mat2::of_terms(left) * &Mat2::of_terms(right)
            }
        }
    }

    pub fn of_word(word: &Word) -> Self {
        Mat2::of_terms(word.terms())
    }

    /// Right-multiplies by `[[t, 1], [1, 0]]` in place.
    pub fn push_quotient(&mut self, t: u64) {
        let new_a = &self.a * t + &self.b;
        let new_c = &self.c * t + &self.d;
        self.b = std::mem::replace(&mut self.a, new_a);
        self.d = std::mem::replace(&mut self.c, new_c);
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.a.clone(), self.c.clone(), self.b.clone(), self.d.clone())
    }

    /// The Möbius action `t -> (a t + b) / (c t + d)` on a rational.
    pub fn apply_rational(&self, t: &Rational) -> Result<Rational> {
        let num = t.numer() * &self.a + t.denom() * &self.b;
        let den = t.numer() * &self.c + t.denom() * &self.d;
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational::new(num, den))
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            &self.a * &rhs.a + &self.b * &rhs.c,
            &self.a * &rhs.b + &self.b * &rhs.d,
            &self.c * &rhs.a + &self.d * &rhs.c,
            &self.c * &rhs.b + &self.d * &rhs.d,
        )
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Continuants `p_k`, `q_k` of every prefix of a word, including the virtual
/// index `-1` with `p_{-1} = 1`, `q_{-1} = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvergentTable {
    word: Word,
    /// `p[k + 1]` holds `p_k`.
    #[serde(serialize_with = "ser_bigints")]
    p: Vec<BigInt>,
    #[serde(serialize_with = "ser_bigints")]
    q: Vec<BigInt>,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl ConvergentTable {
    pub fn word(&self) -> &Word {
        &self.word
    }

    /// Index of the final term, `-1` for the empty word.
    pub fn last_index(&self) -> isize {
        self.word.len() as isize - 1
    }

    /// `p_k` for `-1 <= k <= i`.
    pub fn p(&self, k: isize) -> &BigInt {
        &self.p[(k + 1) as usize]
    }

    /// `q_k` for `-1 <= k <= i`.
    pub fn q(&self, k: isize) -> &BigInt {
        &self.q[(k + 1) as usize]
    }

    /// `p_0, ..., p_i` (without the virtual entry).
    pub fn numerators(&self) -> &[BigInt] {
        &self.p[1..]
    }

    /// `q_0, ..., q_i` (without the virtual entry).
    pub fn denominators(&self) -> &[BigInt] {
        &self.q[1..]
    }

    /// The matrix `[[p_i, p_{i-1}], [q_i, q_{i-1}]]`. The empty word has `p_{-2} = 0`,
    /// `q_{-2} = 1`, i.e. the identity.
    pub fn matrix(&self) -> Mat2 {
        let i = self.last_index();
        if i < 0 {
            return Mat2::identity();
        }
        Mat2::new(
            self.p(i).clone(),
            self.p(i - 1).clone(),
            self.q(i).clone(),
            self.q(i - 1).clone(),
        )
    }

    /// `p_k / q_k`, if `q_k != 0`.
    pub fn convergent(&self, k: isize) -> Option<Rational> {
        let q = self.q(k);
        (!q.is_zero()).then(|| Rational::new(self.p(k).clone(), q.clone()))
    }

    /// `[A] = p_i / q_i`.
    pub fn value(&self) -> Result<Rational> {
        if self.word.is_empty() {
            return Err(Error::Undefined);
        }
        self.convergent(self.last_index()).ok_or(Error::ZeroDenominator)
    }
}

/// Builds the table with the recurrence `r_k = b_k r_{k-1} + r_{k-2}`.
pub fn convergents(word: &Word) -> ConvergentTable {
    let n = word.len();
    let mut p = Vec::with_capacity(n + 1);
    let mut q = Vec::with_capacity(n + 1);
    p.push(BigInt::one());
    q.push(BigInt::zero());
    let (mut p2, mut q2) = (BigInt::zero(), BigInt::one());
    for &t in word.terms() {
        let p1 = p.last().unwrap();
        let q1 = q.last().unwrap();
        let np = p1 * t + &p2;
        let nq = q1 * t + &q2;
        p2 = p1.clone();
        q2 = q1.clone();
        p.push(np);
        q.push(nq);
    }
    ConvergentTable {
        word: word.clone(),
        p,
        q,
    }
}

/// `[A]` in lowest terms.
pub fn evaluate(word: &Word) -> Result<Rational> {
    if word.is_empty() {
        return Err(Error::Undefined);
    }
    let m = Mat2::of_word(word);
    if m.c.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(m.a, m.c))
}

/// Values a word's matrix can act on as a tail: `[A t] = (p_i t + p_{i-1}) / (q_i t + q_{i-1})`.
pub trait MobiusTail: Sized {
    fn mobius(&self, m: &Mat2) -> Result<Self>;
}

impl MobiusTail for Rational {
    fn mobius(&self, m: &Mat2) -> Result<Self> {
        m.apply_rational(self)
    }
}

/// The value of `A` followed by a tail of value `tail`.
pub fn evaluate_with_tail<T: MobiusTail>(word: &Word, tail: &T) -> Result<T> {
    tail.mobius(&Mat2::of_word(word))
}

/// `N0 x N*` membership.
pub fn is_standard(word: &Word) -> bool {
    word.is_standard()
}

/// Rewrites a word with zeros into a standard word of the same value.
///
/// Trailing zeros are stripped together with their predecessor until the last
/// term is positive or the word is `(0)`; then interior patterns `(x, 0, y)` are
/// collapsed to `(x + y)`, always at the leftmost interior zero.
pub fn simplify(word: &Word) -> Result<Word> {
    let value = evaluate(word).map_err(|_| Error::Undefined)?;
    let mut terms = word.terms().to_vec();
    while terms.len() > 1 && *terms.last().unwrap() == 0 {
        if terms.len() == 2 {
            return Err(Error::Undefined);
        }
        terms.truncate(terms.len() - 2);
    }
    let mut k = 1;
    while k + 1 < terms.len() {
        if terms[k] == 0 {
            let merged = terms[k - 1].checked_add(terms[k + 1]).ok_or(Error::Overflow)?;
            terms.splice(k - 1..k + 2, [merged]);
            k = k.saturating_sub(1).max(1);
        } else {
            k += 1;
        }
    }
    let out = Word::new(terms);
    debug_assert!(out.is_standard());
    debug_assert_eq!(evaluate(&out).ok(), Some(value));
    Ok(out)
}
