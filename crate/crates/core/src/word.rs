//! Finite words of partial quotients and memoized infinite word streams.
//!
//! A [`Word`] is any finite sequence of non-negative integers. Zeros are allowed
//! everywhere so that extended continued fractions can be manipulated before
//! they are simplified; [`Word::is_standard`] tests membership in `N0 x N*`.
//!
//! Text format: comma separated decimal integers, e.g. `2,1,1,3,1`. The empty
//! word is the empty string.

use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Rational;

/// A finite sequence of partial quotients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<u64>);

impl Word {
    pub fn new(terms: Vec<u64>) -> Self {
        Word(terms)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn terms(&self) -> &[u64] {
        &self.0
    }

    pub fn into_terms(self) -> Vec<u64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<u64> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<u64> {
        self.0.last().copied()
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut terms = Vec::with_capacity(self.len() + other.len());
        terms.extend_from_slice(&self.0);
        terms.extend_from_slice(&other.0);
        Word(terms)
    }

    /// Concatenates every word of `parts` in order.
    pub fn join<'a, I: IntoIterator<Item = &'a Word>>(parts: I) -> Word {
        let mut terms = Vec::new();
        for part in parts {
            terms.extend_from_slice(&part.0);
        }
        Word(terms)
    }

    /// The first `n` terms (the whole word if it is shorter).
    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n.min(self.len())].to_vec())
    }

    /// Drops the final term; the empty word stays empty.
    pub fn drop_last(&self) -> Word {
        Word(self.0[..self.len().saturating_sub(1)].to_vec())
    }

    /// `A^n` for a non-negative integer `n`.
    pub fn repeat(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    /// The fractional power `A^x = A^floor(x) A'` where `A'` is the prefix of `A`
    /// of length `ceil((x - floor(x)) |A|)`.
    ///
    /// The exponent is an exact rational so the ceiling is never perturbed by
    /// rounding.
    pub fn power(&self, x: &Rational) -> Result<Word> {
        if !x.is_positive() {
            return Err(Error::InvalidExponent(x.to_string()));
        }
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let whole = x.floor().to_integer();
        let frac = x - Rational::from_integer(whole.clone());
        let extra = (frac * Rational::from_integer(BigInt::from(self.len())))
            .ceil()
            .to_integer();
        let whole = whole.to_usize().ok_or(Error::Overflow)?;
        let extra = extra.to_usize().ok_or(Error::Overflow)?;
        let mut out = self.repeat(whole);
        out.0.extend_from_slice(&self.0[..extra]);
        Ok(out)
    }

    /// Start indices of every (possibly overlapping) occurrence of `needle`.
    pub fn occurrences(&self, needle: &Word) -> Result<Vec<usize>> {
        if needle.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(find_all(&self.0, &needle.0))
    }

    /// Symbol-level mirror symmetry: `A == reverse(A)`.
    pub fn is_palindrome(&self) -> bool {
        is_palindrome_slice(&self.0)
    }

    /// Membership in `N0 x N*`: every term after the first is at least 1.
    pub fn is_standard(&self) -> bool {
        self.0.iter().skip(1).all(|&t| t >= 1)
    }

    /// Every term is at least 1 (membership in `N*`).
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&t| t >= 1)
    }
}

pub(crate) fn is_palindrome_slice(s: &[u64]) -> bool {
    s.iter().eq(s.iter().rev())
}

/// Knuth-Morris-Pratt search reporting overlapping matches.
fn find_all(hay: &[u64], needle: &[u64]) -> Vec<usize> {
    let n = needle.len();
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && needle[i] != needle[k] {
            k = fail[k - 1];
        }
        if needle[i] == needle[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let mut out = Vec::new();
    let mut k = 0;
    for (i, &c) in hay.iter().enumerate() {
        while k > 0 && c != needle[k] {
            k = fail[k - 1];
        }
        if c == needle[k] {
            k += 1;
        }
        if k == n {
            out.push(i + 1 - n);
            k = fail[k - 1];
        }
    }
    out
}

/// Z-array: `z[i]` is the length of the longest common prefix of `s` and `s[i..]`.
/// `z[0]` is set to `s.len()`.
pub(crate) fn z_array(s: &[u64]) -> Vec<usize> {
    let n = s.len();
    let mut z = vec![0usize; n];
    if n == 0 {
        return z;
    }
    z[0] = n;
    let (mut l, mut r) = (0usize, 0usize);
    for i in 1..n {
        if i < r {
            z[i] = (r - i).min(z[i - l]);
        }
        while i + z[i] < n && s[z[i]] == s[i + z[i]] {
            z[i] += 1;
        }
        if i + z[i] > r {
            l = i;
            r = i + z[i];
        }
    }
    z
}

impl From<Vec<u64>> for Word {
    fn from(terms: Vec<u64>) -> Self {
        Word(terms)
    }
}

impl From<&[u64]> for Word {
    fn from(terms: &[u64]) -> Self {
        Word(terms.to_vec())
    }
}

impl<const N: usize> From<[u64; N]> for Word {
    fn from(terms: [u64; N]) -> Self {
        Word(terms.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .or_else(|| s.strip_prefix('[').and_then(|s| s.strip_suffix(']')))
            .unwrap_or(s);
        if s.trim().is_empty() {
            return Ok(Word::empty());
        }
        s.split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<u64>()
                    .map_err(|e| Error::Parse(format!("bad partial quotient {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// Produces the terms of an infinite word on demand.
///
/// `extend` must append terms to `memo` until it holds at least `target` terms.
/// Sources may read back the terms already in `memo`, which is how the
/// self-similar families avoid materializing their inner blocks twice.
pub trait TermSource: Send {
    fn extend(&mut self, memo: &mut Vec<u64>, target: usize);
}

impl<F> TermSource for F
where
    F: FnMut(usize) -> u64 + Send,
{
    fn extend(&mut self, memo: &mut Vec<u64>, target: usize) {
        while memo.len() < target {
            let k = memo.len();
            memo.push(self(k));
        }
    }
}

struct StreamState {
    source: Box<dyn TermSource>,
    memo: Vec<u64>,
}

/// A deterministic infinite word with a memo of every term produced so far.
///
/// The memo sits behind a mutex so a stream can be shared between threads;
/// `prefix(n)` is a pure function of `n`.
pub struct WordStream {
    name: String,
    state: Mutex<StreamState>,
}

impl WordStream {
    pub fn new(name: impl Into<String>, source: impl TermSource + 'static) -> Self {
        WordStream {
            name: name.into(),
            state: Mutex::new(StreamState {
                source: Box::new(source),
                memo: Vec::new(),
            }),
        }
    }

    /// A stream defined by a closure `k -> a_k`.
    pub fn from_fn(name: impl Into<String>, f: impl Fn(usize) -> u64 + Send + 'static) -> Self {
        Self::new(name, move |k: usize| f(k))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    fn with_memo<R>(&self, n: usize, f: impl FnOnce(&[u64]) -> R) -> R {
        let mut guard = self.state.lock().unwrap_or_else(|e| e.into_inner());
        let state = &mut *guard;
        if state.memo.len() < n {
            state.source.extend(&mut state.memo, n);
        }
        f(&state.memo[..n])
    }

    pub fn prefix(&self, n: usize) -> Word {
        self.with_memo(n, |s| Word(s.to_vec()))
    }

    pub fn term(&self, k: usize) -> u64 {
        self.with_memo(k + 1, |s| s[k])
    }

    /// Number of terms currently memoized.
    pub fn memoized(&self) -> usize {
        self.state.lock().unwrap_or_else(|e| e.into_inner()).memo.len()
    }
}

impl fmt::Debug for WordStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WordStream")
            .field("name", &self.name)
            .field("memoized", &self.memoized())
            .finish()
    }
}
