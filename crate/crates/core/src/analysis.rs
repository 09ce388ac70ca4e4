//! Finite-depth audits of infinite continued fractions.
//!
//! Everything here is exact: enclosures are pairs of convergents, inequality
//! checks compare integers, and repetition exponents are rationals with
//! denominator `|V|`. Negative findings hold only at the audited depth.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::cf::convergents;
use crate::error::{Error, Result};
use crate::generators::{self, LSchedule};
use crate::mpal::{self, PrefixHit};
use crate::quadratic::QuadraticIrrational;
use crate::word::{z_array, Word, WordStream};
use crate::Rational;

/// Closed interval `[lo, hi]` of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RationalInterval {
    /// The interval spanned by `a` and `b`, in either order.
    pub fn new(a: Rational, b: Rational) -> Self {
        if a <= b {
            RationalInterval { lo: a, hi: b }
        } else {
            RationalInterval { lo: b, hi: a }
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_quadratic(&self, x: &QuadraticIrrational) -> bool {
        x.cmp_rational(&self.lo) != Ordering::Less && x.cmp_rational(&self.hi) != Ordering::Greater
    }

    pub fn is_subset_of(&self, other: &RationalInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// `{x^2 : x in self}` for `lo >= 0`.
    fn square_nonneg(&self) -> RationalInterval {
        RationalInterval {
            lo: &self.lo * &self.lo,
            hi: &self.hi * &self.hi,
        }
    }

    /// `{|x - r| : x in self}`.
    fn abs_distance(&self, r: &Rational) -> RationalInterval {
        let a = &self.lo - r;
        let b = &self.hi - r;
        if !a.is_negative() {
            RationalInterval { lo: a, hi: b }
        } else if !b.is_positive() {
            RationalInterval { lo: -b, hi: -a }
        } else {
            let hi = if -&a > b { -a } else { b };
            RationalInterval {
                lo: Rational::zero(),
                hi,
            }
        }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

fn check_stream_terms(terms: &[u64]) -> Result<()> {
    if terms.iter().skip(1).any(|&t| t == 0) {
        return Err(Error::NonStandardWord(format!(
            "stream has a zero partial quotient within the first {} terms",
            terms.len()
        )));
    }
    Ok(())
}

/// Encloses the value of a standard word between its convergents of index
/// `depth - 1` and `depth`. The width is `1 / (q_depth q_{depth-1})`.
pub fn enclose_terms(terms: &[u64], depth: usize) -> Result<RationalInterval> {
    if depth < 2 {
        return Err(Error::InvalidParameters("enclosure depth must be at least 2".into()));
    }
    if terms.len() <= depth {
        return Err(Error::InsufficientData {
            needed: depth + 1,
            have: terms.len(),
        });
    }
    let terms = &terms[..=depth];
    check_stream_terms(terms)?;
    let t = convergents(&Word::from(terms));
    let d = depth as isize;
    let a = Rational::new(t.p(d - 1).clone(), t.q(d - 1).clone());
    let b = Rational::new(t.p(d).clone(), t.q(d).clone());
    Ok(RationalInterval::new(a, b))
}

/// Rigorous enclosure of the value of an infinite stream.
pub fn enclose(stream: &WordStream, depth: usize) -> Result<RationalInterval> {
    enclose_terms(stream.prefix(depth + 1).terms(), depth)
}

/// One m-palindromic prefix `(a_0, ..., a_i)` checked against the Schmidt chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchmidtRecord {
    pub index: usize,
    pub p_i: BigInt,
    pub q_i: BigInt,
    pub p_prev: BigInt,
    pub q_prev: BigInt,
    /// Encloses `|α^2 - m p_i / q_{i-1}|`.
    pub lhs: RationalInterval,
    /// `(1 + 3 α̂) / (q_i q_{i-1})`.
    pub bound1: Rational,
    /// `lhs.hi < bound1`.
    pub schmidt: bool,
    /// `lhs.hi < q_{i-1}^{-w}`.
    pub goal: bool,
    /// `|α - p_{i-1}/q_{i-1}| < q_{i-1}^{-w}` on the enclosure.
    pub approximation: bool,
}

impl SchmidtRecord {
    /// `(p_{i-1}, q_{i-1}, m p_i)`.
    pub fn triple(&self, m: u64) -> (BigInt, BigInt, BigInt) {
        (self.p_prev.clone(), self.q_prev.clone(), &self.p_i * m)
    }

    /// `q_{i-1}^{-w}` as a float, for display only.
    pub fn bound2_approx(&self, w: &Rational) -> f64 {
        let q = self.q_prev.to_f64().unwrap_or(f64::INFINITY);
        q.powf(-w.to_f64().unwrap_or(f64::NAN))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchmidtAudit {
    pub m: u64,
    pub w: Rational,
    pub depth: usize,
    /// Depth of the enclosure of α used for every record.
    pub enclosure_depth: usize,
    pub enclosure: RationalInterval,
    pub records: Vec<SchmidtRecord>,
    /// Least audited index from which every later record satisfies the goal.
    pub i0: Option<usize>,
}

impl SchmidtAudit {
    pub fn all_schmidt(&self) -> bool {
        self.records.iter().all(|r| r.schmidt)
    }

    /// Every record at or after `i0` satisfies both the goal and the
    /// approximation inequality.
    pub fn goal_from_i0(&self) -> bool {
        match self.i0 {
            Some(i0) => self
                .records
                .iter()
                .filter(|r| r.index >= i0)
                .all(|r| r.goal && r.approximation),
            None => self.records.is_empty(),
        }
    }
}

/// `x < q^{-w}` for `x >= 0`, `q >= 1`, `w = a/b > 0`: `x^b q^a < 1`.
fn below_negative_power(x: &Rational, q: &BigInt, w: &Rational) -> bool {
    let a = w.numer().to_u32().expect("exponent numerator fits u32");
    let b = w.denom().to_u32().expect("exponent denominator fits u32");
    let lhs = num_traits::pow(x.numer().clone(), b as usize) * num_traits::pow(q.clone(), a as usize);
    let rhs = num_traits::pow(x.denom().clone(), b as usize);
    lhs < rhs
}

/// Parses `a/b` or an integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let d: BigInt = d.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if d.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(n, d))
}

fn check_w(w: &Rational) -> Result<()> {
    let lo = Rational::new(3.into(), 2.into());
    let hi = Rational::from_integer(2.into());
    if !(w > &lo && w < &hi) {
        return Err(Error::InvalidW(format!("{w} is not strictly between 3/2 and 2")));
    }
    if w.numer().to_u32().is_none() || w.denom().to_u32().is_none() {
        return Err(Error::InvalidW(format!("{w} has too large a numerator or denominator")));
    }
    Ok(())
}

/// Enclosure depth used by [`schmidt_audit`] for a given audit depth.
pub fn schmidt_enclosure_depth(depth: usize) -> usize {
    2 * depth + 32
}

/// Audits every m-palindromic prefix index `1 <= i <= depth`. α is enclosed
/// at [`schmidt_enclosure_depth`], far below every audited error term.
pub fn schmidt_audit(stream: &WordStream, m: u64, w: &Rational, depth: usize) -> Result<SchmidtAudit> {
    check_w(w)?;
    if m == 0 {
        return Err(Error::InvalidM);
    }
    let enclosure_depth = schmidt_enclosure_depth(depth);
    let terms = stream.prefix(enclosure_depth + 1).into_terms();
    let alpha = enclose_terms(&terms, enclosure_depth)?;
    let alpha_sq = alpha.square_nonneg();
    if !alpha.lo.is_positive() {
        return Err(Error::InvalidParameters("stream value must be positive".into()));
    }
    let hits = mpal::scan_prefixes_exact(&terms[..=depth], m)?;
    let one = Rational::one();
    let three = Rational::from_integer(3.into());
    let records: Vec<SchmidtRecord> = hits
        .into_iter()
        .filter(|h| h.index >= 1)
        .map(|h: PrefixHit| {
            let target = Rational::new(&h.p_i * m, h.q_prev.clone());
            let lhs = alpha_sq.abs_distance(&target);
            let bound1 = (&one + &three * &alpha.hi) / Rational::from_integer(&h.q_i * &h.q_prev);
            let schmidt = lhs.hi < bound1;
            let goal = below_negative_power(&lhs.hi, &h.q_prev, w);
            let conv = Rational::new(h.p_prev.clone(), h.q_prev.clone());
            let approximation = below_negative_power(&alpha.abs_distance(&conv).hi, &h.q_prev, w);
            SchmidtRecord {
                index: h.index,
                p_i: h.p_i,
                q_i: h.q_i,
                p_prev: h.p_prev,
                q_prev: h.q_prev,
                lhs,
                bound1,
                schmidt,
                goal,
                approximation,
            }
        })
        .collect();
    let i0 = match records.iter().rposition(|r| !r.goal) {
        None => records.first().map(|r| r.index),
        Some(pos) => records.get(pos + 1).map(|r| r.index),
    };
    Ok(SchmidtAudit {
        m,
        w: w.clone(),
        depth,
        enclosure_depth,
        enclosure: alpha,
        records,
        i0,
    })
}

/// `U · V^w` is a prefix of the scanned word, with `w` maximal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepetitionEvidence {
    pub v: Word,
    pub u: Word,
    pub w: Rational,
    /// `|U| / |V|`.
    pub ratio: Rational,
    /// The repetition runs to the end of the scanned prefix, so `w` is only a
    /// lower bound for the infinite word.
    pub truncated: bool,
}

impl RepetitionEvidence {
    /// Re-checks the evidence against `prefix` by direct comparison.
    pub fn verify(&self, prefix: &Word) -> bool {
        let Ok(rep) = self.v.power(&self.w) else {
            return false;
        };
        let whole = self.u.concat(&rep);
        if whole.len() > prefix.len() || prefix.prefix(whole.len()) != whole {
            return false;
        }
        // one more symbol would break the repetition, unless we ran out
        let next = whole.len();
        let p = self.v.len();
        self.truncated || next >= prefix.len() || prefix.terms()[next] != prefix.terms()[next - p]
    }
}

fn order_evidence(a: &RepetitionEvidence, b: &RepetitionEvidence) -> Ordering {
    b.w.cmp(&a.w)
        .then(a.v.len().cmp(&b.v.len()))
        .then(a.u.len().cmp(&b.u.len()))
}

/// For each `p <= max_period`, the prefix `V` of length `p` and the largest
/// `w` with `V^w` a prefix of the first `depth` terms. Sorted by `w`
/// descending, then `|V|` ascending.
pub fn initial_exponent_scan(stream: &WordStream, depth: usize, max_period: usize) -> Result<Vec<RepetitionEvidence>> {
    if depth == 0 || max_period == 0 {
        return Err(Error::InvalidParameters("depth and max_period must be positive".into()));
    }
    let s = stream.prefix(depth).into_terms();
    let n = s.len();
    let z = z_array(&s);
    let mut out: Vec<RepetitionEvidence> = (1..=max_period.min(n))
        .map(|p| {
            let run = if p < n { p + z[p] } else { n };
            RepetitionEvidence {
                v: Word::from(&s[..p]),
                u: Word::empty(),
                w: Rational::new(run.into(), p.into()),
                ratio: Rational::zero(),
                truncated: run == n,
            }
        })
        .collect();
    out.sort_by(order_evidence);
    Ok(out)
}

/// Best offset repetition for period `p`: the `(u, run)` maximizing `run / p`
/// over `u <= max_offset`, with `s[u..u+run]` of period `p`.
fn best_offset_run(s: &[u64], p: usize, max_offset: usize) -> Option<(usize, usize)> {
    let n = s.len();
    if p > n {
        return None;
    }
    let last_u = max_offset.min(n - p);
    // matches[j] = length of the run of s[i] == s[i+p] starting at j
    let mut run_from = 0usize;
    let mut best: Option<(usize, usize)> = None;
    for j in (0..n - p).rev() {
        run_from = if s[j] == s[j + p] { run_from + 1 } else { 0 };
        if j <= last_u {
            let run = p + run_from;
            if best.is_none_or(|(_, r)| run >= r) {
                best = Some((j, run));
            }
        }
    }
    if n - p <= last_u && best.is_none_or(|(_, r)| p > r) {
        best = Some((n - p, p));
    }
    best
}

/// Like [`initial_exponent_scan`] but allows offsets `U` with
/// `|U| <= offset_ratio · |V|`. Keeps the best offset for each period.
pub fn offset_exponent_scan(
    stream: &WordStream,
    depth: usize,
    max_period: usize,
    offset_ratio: &Rational,
) -> Result<Vec<RepetitionEvidence>> {
    if depth == 0 || max_period == 0 {
        return Err(Error::InvalidParameters("depth and max_period must be positive".into()));
    }
    if offset_ratio.is_negative() {
        return Err(Error::InvalidParameters("offset ratio must be nonnegative".into()));
    }
    let s = stream.prefix(depth).into_terms();
    let n = s.len();
    let mut out: Vec<RepetitionEvidence> = (1..=max_period.min(n))
        .into_par_iter()
        .filter_map(|p| {
            let max_offset = (offset_ratio * Rational::from_integer(p.into()))
                .floor()
                .to_integer()
                .to_usize()
                .unwrap_or(usize::MAX);
            let (u, run) = best_offset_run(&s, p, max_offset)?;
            Some(RepetitionEvidence {
                v: Word::from(&s[u..u + p]),
                u: Word::from(&s[..u]),
                w: Rational::new(run.into(), p.into()),
                ratio: Rational::new(u.into(), p.into()),
                truncated: u + run == n,
            })
        })
        .collect();
    out.sort_by(order_evidence);
    Ok(out)
}

/// Repetition measured on the instance `T_k = Y U Y` (`Y = T_{k-1}`,
/// `U = B_k`) inside the limit word `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BkRepetition {
    pub k: usize,
    /// Largest `|V'| / |V|` over factors `V` of `T_k` containing the middle
    /// `B_k`, where `V'` is the longest prefix of `V` repeated right after `V`.
    pub max_ratio: Rational,
    /// Start and end of a maximizing `V` in `T`.
    pub witness: (usize, usize),
    /// `|T_{k-1}| / |B_k|`.
    pub bound: Rational,
    /// `1 / 2^k`.
    pub power_bound: Rational,
}

impl BkRepetition {
    pub fn holds(&self) -> bool {
        self.max_ratio <= self.bound && self.bound <= self.power_bound
    }
}

pub fn bk_instance_repetition(k: usize, schedule: &LSchedule) -> Result<BkRepetition> {
    if k < 3 {
        return Err(Error::InvalidParameters("the T_k instance needs k >= 3".into()));
    }
    let (_, t_len) = schedule.values(k + 1)?;
    let y = t_len[k - 3] as usize;
    let x = t_len[k - 2] as usize;
    let b = x - 2 * y;
    let total = t_len[k - 1] as usize;
    let stream = generators::t_stream(schedule)?;
    let s = stream.prefix(total).into_terms();
    let lcp = |i: usize, j: usize| s[i..].iter().zip(&s[j..]).take_while(|(a, b)| a == b).count();
    let mut best = (Rational::zero(), (0usize, 0usize));
    for start in 0..=y {
        for end in (y + b)..=x {
            let r = Rational::new(lcp(start, end).into(), (end - start).into());
            if r > best.0 {
                best = (r, (start, end));
            }
        }
    }
    Ok(BkRepetition {
        k,
        max_ratio: best.0,
        witness: best.1,
        bound: Rational::new(y.into(), b.into()),
        power_bound: Rational::new(1.into(), BigInt::one() << k),
    })
}
