//! m-palindromes: the predicate, the construction lemmas and prefix scans.
//!
//! By the transpose identity the matrix of `reverse(A)` is the transpose of the
//! matrix of `A`, so `[A] = m [reverse(A)]` reduces to the single integer test
//! `m q_i = p_{i-1}`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cf::{self, Mat2};
use crate::error::{Error, Result};
use crate::word::{Word, WordStream};
use crate::Rational;

/// Witness that `m q_i = p_{i-1}` for a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPalCertificate {
    pub m: u64,
    pub word: Word,
    pub p_i: BigInt,
    pub q_i: BigInt,
    pub p_prev: BigInt,
}

impl MPalCertificate {
    /// Index of the last term.
    pub fn index(&self) -> usize {
        self.word.len() - 1
    }
}

pub(crate) fn check_m(m: u64) -> Result<()> {
    if m == 0 {
        Err(Error::InvalidM)
    } else {
        Ok(())
    }
}

fn require_positive(word: &Word) -> Result<()> {
    if word.is_empty() || !word.is_positive() {
        return Err(Error::NonStandardWord(word.to_string()));
    }
    Ok(())
}

/// Returns the certificate when `word` is m-palindromic.
///
/// The word must be nonempty with every term at least 1. A single-term word
/// `(a)` is m-palindromic only for `m = 1`, since `m q_0 = p_{-1}` reads `m = 1`.
pub fn certify(word: &Word, m: u64) -> Result<Option<MPalCertificate>> {
    check_m(m)?;
    require_positive(word)?;
    let mat = Mat2::of_word(word);
    if &mat.c * m != mat.b {
        return Ok(None);
    }
    Ok(Some(MPalCertificate {
        m,
        word: word.clone(),
        p_i: mat.a,
        q_i: mat.c,
        p_prev: mat.b,
    }))
}

pub fn is_m_palindrome(word: &Word, m: u64) -> Result<bool> {
    certify(word, m).map(|c| c.is_some())
}

/// Every `m` in `1..=max_m` for which `word` is m-palindromic.
pub fn scan_m(word: &Word, max_m: u64) -> Result<Vec<u64>> {
    require_positive(word)?;
    let mat = Mat2::of_word(word);
    if mat.c.is_zero() {
        return Ok(Vec::new());
    }
    Ok((1..=max_m).filter(|&m| &mat.c * m == mat.b).collect())
}

/// Value-level test for words that may contain zeros: `[A] = m [reverse(A)]`
/// with both sides defined and positive.
pub fn is_m_palindrome_extended(word: &Word, m: u64) -> Result<bool> {
    check_m(m)?;
    let (fwd, bwd) = positive_values(word)?;
    Ok(fwd == bwd * Rational::from_integer(m.into()))
}

fn positive_values(word: &Word) -> Result<(Rational, Rational)> {
    let undefined = || Error::UndefinedExtendedValue(word.to_string());
    let fwd = cf::evaluate(word).map_err(|_| undefined())?;
    let bwd = cf::evaluate(&word.reverse()).map_err(|_| undefined())?;
    if !fwd.is_positive() || !bwd.is_positive() {
        return Err(undefined());
    }
    Ok((fwd, bwd))
}

/// Decides whether `BA` is m-palindromic from the shorter words
/// `(a_i, ..., a_1)` and `(b_0, ..., b_{j-1})`, given `m [reverse(A)] = [B]`.
pub fn check_ba_join(a: &Word, b: &Word, m: u64) -> Result<bool> {
    check_m(m)?;
    require_positive(a)?;
    require_positive(b)?;
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::InvalidParameters(
            "both words need at least two terms".into(),
        ));
    }
    let m_rat = Rational::from_integer(m.into());
    let a_rev = a.reverse();
    let lhs = cf::evaluate(&a_rev)? * &m_rat;
    let rhs = cf::evaluate(b)?;
    if lhs != rhs {
        return Err(Error::HypothesisViolated(format!(
            "{m}[{a_rev}] = {lhs} but [{b}] = {rhs}"
        )));
    }
    let tail_a = cf::evaluate(&a_rev.drop_last())? * &m_rat;
    let tail_b = cf::evaluate(&b.drop_last())?;
    Ok(tail_a == tail_b)
}

/// `AA` for an m-palindrome `A`.
pub fn square(a: &Word, m: u64) -> Result<Word> {
    if !is_m_palindrome(a, m)? {
        return Err(Error::NotMPalindrome {
            word: a.to_string(),
            m,
        });
    }
    let out = a.concat(a);
    debug_assert!(is_m_palindrome(&out, m)?);
    Ok(out)
}

/// `ABA` for m-palindromes `A` and `B`.
///
/// Words containing zeros are accepted when `[A]`, `[reverse(A)]`, `[B]` and
/// `[reverse(B)]` are all defined and positive; m-palindromicity is then
/// checked on values.
pub fn sandwich(a: &Word, b: &Word, m: u64) -> Result<Word> {
    check_m(m)?;
    let extended = !(a.is_positive() && b.is_positive());
    for w in [a, b] {
        let ok = if extended {
            is_m_palindrome_extended(w, m)?
        } else {
            is_m_palindrome(w, m)?
        };
        if !ok {
            return Err(Error::NotMPalindrome {
                word: w.to_string(),
                m,
            });
        }
    }
    let out = Word::join([a, b, a]);
    if extended {
        debug_assert!(is_m_palindrome_extended(&out, m)?);
    } else {
        debug_assert!(is_m_palindrome(&out, m)?);
    }
    Ok(out)
}

/// An m-palindromic prefix `(a_0, ..., a_i)` found by a scan, with its continuants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixHit {
    pub index: usize,
    pub p_i: BigInt,
    pub q_i: BigInt,
    pub p_prev: BigInt,
    pub q_prev: BigInt,
}

impl PrefixHit {
    /// Length of the prefix, `index + 1`.
    pub fn prefix_len(&self) -> usize {
        self.index + 1
    }
}

/// Term-by-term scan keeping only the last two continuant pairs.
pub fn scan_prefixes_exact(terms: &[u64], m: u64) -> Result<Vec<PrefixHit>> {
    check_m(m)?;
    let mut hits = Vec::new();
    let (mut p, mut p_prev) = (BigInt::from(1u8), BigInt::zero());
    let (mut q, mut q_prev) = (BigInt::zero(), BigInt::from(1u8));
    for (i, &t) in terms.iter().enumerate() {
        let np = &p * t + &p_prev;
        let nq = &q * t + &q_prev;
        p_prev = std::mem::replace(&mut p, np);
        q_prev = std::mem::replace(&mut q, nq);
        if &q * m == p_prev {
            hits.push(PrefixHit {
                index: i,
                p_i: p.clone(),
                q_i: q.clone(),
                p_prev: p_prev.clone(),
                q_prev: q_prev.clone(),
            });
        }
    }
    Ok(hits)
}

const SIEVE_PRIMES: [u64; 3] = [
    2_305_843_009_213_693_951, // 2^61 - 1
    4_611_686_018_427_387_847, // 2^62 - 57
    9_223_372_036_854_775_783, // 2^63 - 25
];

#[derive(Clone, Copy)]
struct Residues {
    p: u64,
    p_prev: u64,
    q: u64,
    q_prev: u64,
}

#[inline]
fn mul_add_mod(a: u64, b: u64, c: u64, modulus: u64) -> u64 {
    ((a as u128 * b as u128 + c as u128) % modulus as u128) as u64
}

/// Deep scan: continuants are tracked modulo three large primes and every
/// residue match is confirmed exactly from the product-tree matrix of the
/// prefix. A true hit always matches modulo every prime, so nothing is missed;
/// spurious residue matches are discarded by the exact check.
pub fn scan_prefixes_sieved(terms: &[u64], m: u64) -> Result<Vec<PrefixHit>> {
    check_m(m)?;
    let mut res = [Residues {
        p: 1,
        p_prev: 0,
        q: 0,
        q_prev: 1,
    }; 3];
    let mut hits = Vec::new();
    let mut exact = Mat2::identity();
    let mut exact_len = 0usize;
    for (i, &t) in terms.iter().enumerate() {
        let mut candidate = true;
        for (r, &modulus) in res.iter_mut().zip(SIEVE_PRIMES.iter()) {
            let tm = t % modulus;
            let np = mul_add_mod(tm, r.p, r.p_prev, modulus);
            let nq = mul_add_mod(tm, r.q, r.q_prev, modulus);
            r.p_prev = r.p;
            r.p = np;
            r.q_prev = r.q;
            r.q = nq;
            candidate &= mul_add_mod(m % modulus, r.q, 0, modulus) == r.p_prev;
        }
        if candidate {
            exact = &exact * &Mat2::of_terms(&terms[exact_len..=i]);
            exact_len = i + 1;
            if &exact.c * m == exact.b {
                hits.push(PrefixHit {
                    index: i,
                    p_i: exact.a.clone(),
                    q_i: exact.c.clone(),
                    p_prev: exact.b.clone(),
                    q_prev: exact.d.clone(),
                });
            }
        }
    }
    Ok(hits)
}

/// How `mpal_prefixes` walks the stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanStrategy {
    /// Exact big-integer recurrence at every term.
    Exact,
    /// Residue filter plus exact confirmation of candidates.
    Sieved,
    /// `Exact` up to [`AUTO_EXACT_LIMIT`] terms, `Sieved` beyond.
    Auto,
}

pub const AUTO_EXACT_LIMIT: usize = 50_000;

/// Default window for the tail supremum.
pub const DEFAULT_WINDOW: usize = 5;

/// Gap-free list of m-palindromic prefix lengths of a stream and the ratios
/// of consecutive lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    pub m: u64,
    pub scanned: usize,
    pub prefix_lengths: Vec<usize>,
    pub ratios: Vec<Rational>,
    pub window: usize,
    /// Maximum of the last `window` ratios, when there are that many.
    pub tail_sup: Option<Rational>,
}

impl DensityReport {
    pub fn from_lengths(m: u64, scanned: usize, prefix_lengths: Vec<usize>, window: usize) -> Self {
        let ratios: Vec<Rational> = prefix_lengths
            .windows(2)
            .map(|w| Rational::new(w[0].into(), w[1].into()))
            .collect();
        let tail_sup = tail_max(&ratios, window);
        DensityReport {
            m,
            scanned,
            prefix_lengths,
            ratios,
            window,
            tail_sup,
        }
    }
}

fn tail_max(ratios: &[Rational], window: usize) -> Option<Rational> {
    if window == 0 || ratios.len() < window {
        return None;
    }
    ratios[ratios.len() - window..].iter().max().cloned()
}

/// All m-palindromic prefixes of length at most `max_len`.
pub fn mpal_prefixes(stream: &WordStream, m: u64, max_len: usize) -> Result<DensityReport> {
    mpal_prefixes_with(stream, m, max_len, ScanStrategy::Auto, DEFAULT_WINDOW)
}

pub fn mpal_prefixes_with(
    stream: &WordStream,
    m: u64,
    max_len: usize,
    strategy: ScanStrategy,
    window: usize,
) -> Result<DensityReport> {
    let hits = prefix_hits(stream, m, max_len, strategy)?;
    Ok(DensityReport::from_lengths(
        m,
        max_len,
        hits.iter().map(PrefixHit::prefix_len).collect(),
        window,
    ))
}

/// The m-palindromic prefixes of a stream with their continuants.
pub fn prefix_hits(
    stream: &WordStream,
    m: u64,
    max_len: usize,
    strategy: ScanStrategy,
) -> Result<Vec<PrefixHit>> {
    let prefix = stream.prefix(max_len);
    let exact = match strategy {
        ScanStrategy::Exact => true,
        ScanStrategy::Sieved => false,
        ScanStrategy::Auto => max_len <= AUTO_EXACT_LIMIT,
    };
    if exact {
        scan_prefixes_exact(prefix.terms(), m)
    } else {
        scan_prefixes_sieved(prefix.terms(), m)
    }
}

/// Finite-depth estimate of the m-palindromic density: the largest of the last
/// `window` ratios `|P_k| / |P_{k+1}|`.
pub fn density_estimate(report: &DensityReport, window: usize) -> Result<Rational> {
    if window == 0 {
        return Err(Error::InvalidParameters("window must be positive".into()));
    }
    tail_max(&report.ratios, window).ok_or(Error::InsufficientData {
        needed: window,
        have: report.ratios.len(),
    })
}
