//! Builders for the infinite families: perturbed symmetries `S_{A,k}(Y) = Y A^{n_k} Y`,
//! the G-sequence, the `B_k` / `T` words, substituted Fibonacci words and
//! eventually periodic words.
//!
//! Every family is exposed both as explicit finite words (`T_{A,k}(X)`, `G_k`,
//! `B_k`, `S_n`) and as a memoized [`WordStream`] whose prefixes agree with them.

use std::fmt;
use std::str::FromStr;

use crate::cf;
use crate::error::{Error, Result};
use crate::quadratic::EventuallyPeriodicWord;
use crate::word::{TermSource, Word, WordStream};

/// The exponents `n_k` of a perturbed-symmetry system (`k >= 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Schedule {
    /// `n_k = k`.
    Linear,
    /// `n_k = c` for every `k`.
    Constant(u64),
    /// `n_1 = 1`, `n_k = 2 n_{k-1} + 1`.
    DoublePlusOne,
    /// Listed values; the last one repeats once the list is exhausted.
    Explicit(Vec<u64>),
}

impl Schedule {
    pub fn validate(&self) -> Result<()> {
        match self {
            Schedule::Constant(0) => Err(Error::InvalidParameters("n_k must be positive".into())),
            Schedule::Explicit(v) if v.is_empty() || v[0] == 0 => {
                Err(Error::InvalidParameters("n_k must be positive".into()))
            }
            Schedule::Explicit(v) if v.windows(2).any(|w| w[1] < w[0]) => Err(
                Error::InvalidParameters("schedule n_k must be non-decreasing".into()),
            ),
            _ => Ok(()),
        }
    }

    /// `n_k` for `k >= 1`.
    pub fn n(&self, k: usize) -> u64 {
        assert!(k >= 1, "schedules are indexed from 1");
        match self {
            Schedule::Linear => k as u64,
            Schedule::Constant(c) => *c,
            Schedule::DoublePlusOne => (1u64 << k.min(63)) - 1,
            Schedule::Explicit(v) => v[(k - 1).min(v.len() - 1)],
        }
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Schedule::Linear => f.write_str("linear"),
            Schedule::Constant(c) => write!(f, "const:{c}"),
            Schedule::DoublePlusOne => f.write_str("double"),
            Schedule::Explicit(v) => {
                f.write_str("list:")?;
                let parts: Vec<String> = v.iter().map(u64::to_string).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

impl FromStr for Schedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let sched = match s {
            "linear" | "k" => Schedule::Linear,
            "double" => Schedule::DoublePlusOne,
            _ => {
                if let Some(c) = s.strip_prefix("const:") {
                    Schedule::Constant(parse_u64(c)?)
                } else if let Some(list) = s.strip_prefix("list:") {
                    Schedule::Explicit(list.parse::<Word>()?.into_terms())
                } else {
                    return Err(Error::Parse(format!("unknown schedule {s:?}")));
                }
            }
        };
        sched.validate()?;
        Ok(sched)
    }
}

fn parse_u64(s: &str) -> Result<u64> {
    s.trim()
        .parse()
        .map_err(|e| Error::Parse(format!("bad integer {s:?}: {e}")))
}

/// Iterated perturbed symmetries `T_{A,k}(X) = S_{A,k}(T_{A,k-1}(X))` with
/// `S_{A,k}(Y) = Y A^{n_k} Y` and `T_{A,0}(X) = X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbedSystem {
    pub insert: Word,
    pub seed: Word,
    pub schedule: Schedule,
}

impl PerturbedSystem {
    pub fn new(insert: Word, seed: Word, schedule: Schedule) -> Result<Self> {
        if insert.is_empty() || seed.is_empty() {
            return Err(Error::EmptyWord);
        }
        schedule.validate()?;
        Ok(PerturbedSystem {
            insert,
            seed,
            schedule,
        })
    }

    /// `T_{A,k}(X)`.
    pub fn level(&self, k: usize) -> Word {
        let mut t = self.seed.clone();
        for j in 1..=k {
            let middle = self.insert.repeat(self.schedule.n(j) as usize);
            t = Word::join([&t, &middle, &t]);
        }
        t
    }

    /// `|T_{A,k}(X)|`, from `|T_k| = 2 |T_{k-1}| + n_k |A|` (saturating).
    pub fn level_len(&self, k: usize) -> u128 {
        let mut len = self.seed.len() as u128;
        for j in 1..=k {
            len = len
                .saturating_mul(2)
                .saturating_add((self.schedule.n(j) as u128).saturating_mul(self.insert.len() as u128));
        }
        len
    }

    pub fn stream(&self) -> WordStream {
        let insert = self.insert.clone();
        let schedule = self.schedule.clone();
        let source = SelfSimilar::new(Vec::new(), self.seed.terms().to_vec(), move |k| {
            let block = insert.terms().to_vec();
            let n = schedule.n(k) as usize;
            Middle {
                len: n * block.len(),
                term: Box::new(move |t| block[t % block.len()]),
            }
        });
        WordStream::new(format!("perturbed:A={};X={};n={}", self.insert, self.seed, self.schedule), source)
    }
}

/// Lazily described middle block of one self-similar step.
pub(crate) struct Middle {
    len: usize,
    term: Box<dyn Fn(usize) -> u64 + Send>,
}

/// Terms of `head · T` where `T_0 = seed` and `T_k = T_{k-1} M_k T_{k-1}`.
///
/// The second copy of `T_{k-1}` is read back from the memo, so only the
/// middle blocks are ever generated.
struct SelfSimilar<F> {
    head: Vec<u64>,
    seed: Vec<u64>,
    level: usize,
    prev_len: usize,
    cur_len: usize,
    middle: Option<Middle>,
    next_middle: F,
}

impl<F: FnMut(usize) -> Middle + Send> SelfSimilar<F> {
    fn new(head: Vec<u64>, seed: Vec<u64>, next_middle: F) -> Self {
        SelfSimilar {
            head,
            seed,
            level: 0,
            prev_len: 0,
            cur_len: 0,
            middle: None,
            next_middle,
        }
    }
}

impl<F: FnMut(usize) -> Middle + Send> TermSource for SelfSimilar<F> {
    fn extend(&mut self, memo: &mut Vec<u64>, target: usize) {
        if memo.is_empty() {
            memo.extend_from_slice(&self.head);
            memo.extend_from_slice(&self.seed);
            self.cur_len = self.seed.len();
        }
        let h = self.head.len();
        while memo.len() < target {
            let j = memo.len() - h;
            if j >= self.cur_len {
                self.level += 1;
                let mid = (self.next_middle)(self.level);
                self.prev_len = self.cur_len;
                self.cur_len = self
                    .cur_len
                    .checked_mul(2)
                    .and_then(|x| x.checked_add(mid.len))
                    .expect("self-similar word length overflows usize");
                self.middle = Some(mid);
                continue;
            }
            let mid = self.middle.as_ref().expect("level >= 1");
            let off = j - self.prev_len;
            let t = if off < mid.len {
                (mid.term)(off)
            } else {
                memo[h + off - mid.len]
            };
            memo.push(t);
        }
    }
}

/// `T_{A,k}(B)` with `A = (2,1)`, `B = (2,1,1,3,1)`, `n_k = k`.
pub fn st_number_system() -> PerturbedSystem {
    PerturbedSystem::new(Word::from([2, 1]), Word::from([2, 1, 1, 3, 1]), Schedule::Linear)
        .expect("fixed parameters")
}

pub fn st_number_stream() -> WordStream {
    st_number_system().stream().with_name("st_number")
}

const G_C: [u64; 3] = [1, 1, 0];
const G_D: [u64; 2] = [2, 1];
const G_E: [u64; 4] = [1, 1, 3, 1];

/// `F_k = (1, 2, ..., 2, 3)` with `k` middle twos.
pub fn g_block(k: usize) -> Word {
    let mut t = vec![1];
    t.extend(std::iter::repeat_n(2, k));
    t.push(3);
    Word::new(t)
}

/// `U_k = T_{C,k}(D)` with `C = (1,1,0)`, `D = (2,1)`, `n_k = k` (contains zeros).
pub fn u_word(k: usize) -> Word {
    PerturbedSystem::new(Word::from(G_C), Word::from(G_D), Schedule::Linear)
        .expect("fixed parameters")
        .level(k)
}

/// `G_k = (2, S_{F_k} ∘ ... ∘ S_{F_1}(E))` with `E = (1,1,3,1)`; `G_0 = (2, E)`.
pub fn g_sequence(k: usize) -> Word {
    let mut inner = Word::from(G_E);
    for j in 1..=k {
        inner = Word::join([&inner, &g_block(j), &inner]);
    }
    Word::from([2]).concat(&inner)
}

/// `G_k` together with the check that it is the simplification of `U_{k+1}`.
pub fn g_sequence_checked(k: usize) -> Result<Word> {
    let g = g_sequence(k);
    let simplified = cf::simplify(&u_word(k + 1))?;
    if simplified != g {
        return Err(Error::InvalidParameters(format!(
            "simplify(U_{}) = {simplified} differs from G_{k}",
            k + 1
        )));
    }
    Ok(g)
}

/// The limit word `G` of the prefixes `G_k`.
pub fn g_stream() -> WordStream {
    let source = SelfSimilar::new(vec![2], G_E.to_vec(), |k| Middle {
        len: k + 2,
        term: Box::new(move |t| {
            if t == 0 {
                1
            } else if t == k + 1 {
                3
            } else {
                2
            }
        }),
    });
    WordStream::new("g", source)
}

/// The sequence `l_1 < l_2 < ...` driving the `B_k` words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LSchedule {
    /// `l_1 = 1`, `l_2 = 2`, then the least `l_k` with `|B_k| >= 2^k |T_{k-1}|`.
    Minimal,
    /// Listed `l_1, l_2, ...`; the minimal rule continues after the list ends.
    Explicit(Vec<u64>),
}

impl LSchedule {
    pub fn validate(&self) -> Result<()> {
        if let LSchedule::Explicit(v) = self {
            if v.len() < 2 || v[0] == 0 || v.windows(2).any(|w| w[1] <= w[0]) {
                return Err(Error::ScheduleNotIncreasing);
            }
        }
        Ok(())
    }

    /// `(l_1, ..., l_k)` and `(|T_2|, ..., |T_k|)` (the latter indexed from 2).
    pub fn values(&self, k: usize) -> Result<(Vec<u64>, Vec<u64>)> {
        self.validate()?;
        let listed: &[u64] = match self {
            LSchedule::Minimal => &[1, 2],
            LSchedule::Explicit(v) => v,
        };
        let mut l: Vec<u64> = listed.iter().copied().take(k.max(2)).collect();
        let mut t_len = vec![4 * (l[1] - l[0])];
        for j in 3..=k {
            let prev_t = *t_len.last().unwrap();
            let lj = if j <= listed.len() {
                listed[j - 1]
            } else {
                // 4 d_j >= 2^j |T_{j-1}|
                let need = (prev_t as u128) << j.min(100);
                let d = need.div_ceil(4);
                let d = u64::try_from(d).map_err(|_| Error::Overflow)?;
                l[j - 2].checked_add(d).ok_or(Error::Overflow)?
            };
            if j > l.len() {
                l.push(lj);
            }
            let b_len = 4u64.checked_mul(lj - l[j - 2]).ok_or(Error::Overflow)?;
            let t = prev_t
                .checked_mul(2)
                .and_then(|x| x.checked_add(b_len))
                .ok_or(Error::Overflow)?;
            t_len.push(t);
        }
        l.truncate(k.max(2));
        Ok((l, t_len))
    }
}

/// Term `t` of `B_k` given `l_{k-1}` and `l_k`.
fn bk_term(l_prev: u64, l_k: u64, t: usize) -> u64 {
    let d = (l_k - l_prev) as usize;
    let (value, first) = if t < 2 * d {
        (l_prev + (t / 2) as u64 + 1, t.is_multiple_of(2))
    } else {
        let u = t - 2 * d;
        (l_k - (u / 2) as u64, u.is_multiple_of(2))
    };
    if first {
        2 * value
    } else {
        value
    }
}

fn bk_from_l(l_prev: u64, l_k: u64) -> Word {
    let len = 4 * (l_k - l_prev) as usize;
    Word::new((0..len).map(|t| bk_term(l_prev, l_k, t)).collect())
}

/// `B_k = prod_{i=1}^{d_k} (2(l_{k-1}+i), l_{k-1}+i) · prod_{i=0}^{d_k-1} (2(l_k-i), l_k-i)`.
pub fn bk_word(k: usize, schedule: &LSchedule) -> Result<Word> {
    if k < 2 {
        return Err(Error::InvalidParameters("B_k needs k >= 2".into()));
    }
    let (l, _) = schedule.values(k)?;
    Ok(bk_from_l(l[k - 2], l[k - 1]))
}

/// `T_k = S_{B_k} ∘ ... ∘ S_{B_3}(B_2)` for `k >= 3`.
pub fn t_word(k: usize, schedule: &LSchedule) -> Result<Word> {
    if k < 3 {
        return Err(Error::InvalidParameters("T_k needs k >= 3".into()));
    }
    let (l, _) = schedule.values(k)?;
    let mut t = bk_from_l(l[0], l[1]);
    for j in 3..=k {
        let b = bk_from_l(l[j - 2], l[j - 1]);
        t = Word::join([&t, &b, &t]);
    }
    Ok(t)
}

/// The limit word `T`.
pub fn t_stream(schedule: &LSchedule) -> Result<WordStream> {
    let (l, _) = schedule.values(2)?;
    let seed = bk_from_l(l[0], l[1]).into_terms();
    let schedule_for_name = schedule.clone();
    let schedule = schedule.clone();
    let source = SelfSimilar::new(Vec::new(), seed, move |level| {
        // level 1 inserts B_3
        let k = level + 2;
        let (l, _) = schedule
            .values(k)
            .expect("schedule validated; stream length exceeds u64 range");
        let (lp, lk) = (l[k - 2], l[k - 1]);
        Middle {
            len: 4 * (lk - lp) as usize,
            term: Box::new(move |t| bk_term(lp, lk, t)),
        }
    });
    Ok(WordStream::new(FamilySpec::Bk(schedule_for_name).to_string(), source))
}

/// `f_n` with `f_1 = f_2 = 1`.
pub fn fibonacci_number(n: usize) -> u128 {
    let (mut a, mut b) = (0u128, 1u128);
    for _ in 0..n {
        let c = a.saturating_add(b);
        a = b;
        b = c;
    }
    a
}

/// Letters of `S_n` (`false` = a, `true` = b) via `S_{n+1} = S_n S_{n-1}`.
fn fib_letters(n: usize) -> Vec<bool> {
    if n == 0 {
        return vec![false];
    }
    let mut s = vec![false, true];
    let mut prev = 1usize;
    for _ in 1..n {
        let cur = s.len();
        s.extend_from_within(..prev);
        prev = cur;
    }
    s
}

/// `S_n` over the alphabet `(a, b)`.
pub fn fibonacci_word(n: usize, a: u64, b: u64) -> Word {
    Word::new(fib_letters(n).into_iter().map(|x| if x { b } else { a }).collect())
}

/// `S_n*`: `S_n` without its last two letters (`n >= 2`).
pub fn fibonacci_truncated(n: usize, a: u64, b: u64) -> Result<Word> {
    if n < 2 {
        return Err(Error::InvalidParameters("S_n* needs n >= 2".into()));
    }
    let s = fibonacci_word(n, a, b);
    Ok(s.prefix(s.len() - 2))
}

fn check_fib_params(m: u64, r: u64, s: u64) -> Result<()> {
    if m == 0 || r == 0 || s == 0 {
        return Err(Error::InvalidParameters("m, r, s must be positive".into()));
    }
    if r == s {
        return Err(Error::InvalidParameters("r and s must differ".into()));
    }
    m.checked_mul(r.max(s)).ok_or(Error::Overflow)?;
    Ok(())
}

/// Replaces each `a` by `(rm, r)` and each `b` by `(sm, s)` in a word over `(1, 2)`
/// letters as produced by [`fibonacci_word`] with `a = 1`, `b = 2`.
fn substitute(letters: &[bool], m: u64, r: u64, s: u64) -> Word {
    let mut out = Vec::with_capacity(2 * letters.len());
    for &x in letters {
        let v = if x { s } else { r };
        out.push(m * v);
        out.push(v);
    }
    Word::new(out)
}

/// `S_n*(m, r, s)`.
pub fn fib_substituted_truncated(n: usize, m: u64, r: u64, s: u64) -> Result<Word> {
    check_fib_params(m, r, s)?;
    if n < 2 {
        return Err(Error::InvalidParameters("S_n* needs n >= 2".into()));
    }
    let letters = fib_letters(n);
    Ok(substitute(&letters[..letters.len() - 2], m, r, s))
}

/// `|S_n*(m, r, s)| = 2 f_{n+2} - 4`.
pub fn fib_truncated_len(n: usize) -> u128 {
    2 * fibonacci_number(n + 2) - 4
}

struct FibSubstituted {
    m: u64,
    r: u64,
    s: u64,
    letters: Vec<bool>,
    prev: usize,
}

impl TermSource for FibSubstituted {
    fn extend(&mut self, memo: &mut Vec<u64>, target: usize) {
        let need = target.div_ceil(2);
        while self.letters.len() < need {
            let cur = self.letters.len();
            self.letters.extend_from_within(..self.prev);
            self.prev = cur;
        }
        while memo.len() < target {
            let k = memo.len();
            let v = if self.letters[k / 2] { self.s } else { self.r };
            memo.push(if k.is_multiple_of(2) { self.m * v } else { v });
        }
    }
}

/// The word `F(m, r, s)`.
pub fn fib_substituted_stream(m: u64, r: u64, s: u64) -> Result<WordStream> {
    check_fib_params(m, r, s)?;
    Ok(WordStream::new(
        format!("fib:m={m},r={r},s={s}"),
        FibSubstituted {
            m,
            r,
            s,
            letters: vec![false, true],
            prev: 1,
        },
    ))
}

/// `U · overline(W)` as a stream.
pub fn periodic_stream(e: &EventuallyPeriodicWord) -> WordStream {
    let u = e.preperiod().terms().to_vec();
    let w = e.period().terms().to_vec();
    WordStream::from_fn(format!("periodic:{e}"), move |k| {
        if k < u.len() {
            u[k]
        } else {
            w[(k - u.len()) % w.len()]
        }
    })
}

/// `(2 | 1,1,2,2,3)`: a 2-palindromic quadratic not equivalent to its conjugate.
pub fn nonequiv_word() -> EventuallyPeriodicWord {
    EventuallyPeriodicWord::new(Word::from([2]), Word::from([1, 1, 2, 2, 3])).expect("fixed parameters")
}

pub fn nonequiv_stream() -> WordStream {
    periodic_stream(&nonequiv_word()).with_name("nonequiv")
}

/// `T_k = S_C^k(B)` with `C = (1,2,2,1,0)` and `B = (2,1)` (contains zeros).
pub fn nonequiv_t(k: usize) -> Word {
    PerturbedSystem::new(Word::from([1, 2, 2, 1, 0]), Word::from([2, 1]), Schedule::Constant(1))
        .expect("fixed parameters")
        .level(k)
}

/// `n_1 = 1`, `n_k = 2 n_{k-1} + 1`.
pub fn nonequiv_n(k: usize) -> u64 {
    Schedule::DoublePlusOne.n(k)
}

/// `(2, D^{n_k}, 1)` with `D = (1,1,2,2,3)`, asserted equal to `simplify(T_k)`.
pub fn nonequiv_simplified(k: usize) -> Result<Word> {
    let d = Word::from([1, 1, 2, 2, 3]);
    let expected = Word::join([&Word::from([2]), &d.repeat(nonequiv_n(k) as usize), &Word::from([1])]);
    let simplified = cf::simplify(&nonequiv_t(k))?;
    if simplified != expected {
        return Err(Error::InvalidParameters(format!(
            "simplify(T_{k}) = {simplified} differs from (2, D^{}, 1)",
            nonequiv_n(k)
        )));
    }
    Ok(expected)
}

/// A named infinite family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    StNumber,
    GSequence,
    Bk(LSchedule),
    Fibonacci { m: u64, r: u64, s: u64 },
    Periodic(EventuallyPeriodicWord),
    Nonequiv,
    Perturbed(PerturbedSystem),
}

impl FamilySpec {
    /// Builds a family from a name and an optional parameter string, e.g.
    /// `("fib", "m=2,r=1,s=2")` or `("periodic", "2|1,1,2,2,3")`.
    pub fn from_parts(name: &str, params: Option<&str>) -> Result<Self> {
        let params = params.map(str::trim).filter(|p| !p.is_empty());
        let no_params = |spec: FamilySpec| match params {
            None => Ok(spec),
            Some(p) => Err(Error::Parse(format!("family {name} takes no parameters, got {p:?}"))),
        };
        match name.trim() {
            "st_number" | "st" => no_params(FamilySpec::StNumber),
            "g" | "g_sequence" => no_params(FamilySpec::GSequence),
            "nonequiv" => no_params(FamilySpec::Nonequiv),
            "t" | "bk" | "bk_word" => match params {
                None => Ok(FamilySpec::Bk(LSchedule::Minimal)),
                Some(p) => {
                    let list = p
                        .strip_prefix("l=")
                        .ok_or_else(|| Error::Parse(format!("expected l=..., got {p:?}")))?;
                    let s = LSchedule::Explicit(list.parse::<Word>()?.into_terms());
                    s.validate()?;
                    Ok(FamilySpec::Bk(s))
                }
            },
            "fib" | "fibonacci" => {
                let (mut m, mut r, mut s) = (2, 1, 2);
                if let Some(p) = params {
                    for kv in p.split(',') {
                        let (k, v) = kv
                            .split_once('=')
                            .ok_or_else(|| Error::Parse(format!("expected key=value, got {kv:?}")))?;
                        let v = parse_u64(v)?;
                        match k.trim() {
                            "m" => m = v,
                            "r" => r = v,
                            "s" => s = v,
                            other => return Err(Error::Parse(format!("unknown fib parameter {other:?}"))),
                        }
                    }
                }
                check_fib_params(m, r, s)?;
                Ok(FamilySpec::Fibonacci { m, r, s })
            }
            "periodic" => {
                let p = params.ok_or_else(|| Error::Parse("periodic needs U|W".into()))?;
                Ok(FamilySpec::Periodic(p.parse()?))
            }
            "perturbed" => {
                let p = params.ok_or_else(|| Error::Parse("perturbed needs A=..;X=..[;n=..]".into()))?;
                let (mut a, mut x, mut n) = (None, None, Schedule::Linear);
                for kv in p.split(';') {
                    let (k, v) = kv
                        .split_once('=')
                        .ok_or_else(|| Error::Parse(format!("expected key=value, got {kv:?}")))?;
                    match k.trim() {
                        "A" => a = Some(v.parse::<Word>()?),
                        "X" => x = Some(v.parse::<Word>()?),
                        "n" => n = v.parse()?,
                        other => return Err(Error::Parse(format!("unknown perturbed parameter {other:?}"))),
                    }
                }
                let a = a.ok_or_else(|| Error::Parse("perturbed needs A".into()))?;
                let x = x.ok_or_else(|| Error::Parse("perturbed needs X".into()))?;
                Ok(FamilySpec::Perturbed(PerturbedSystem::new(a, x, n)?))
            }
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }

    pub fn stream(&self) -> Result<WordStream> {
        Ok(match self {
            FamilySpec::StNumber => st_number_stream(),
            FamilySpec::GSequence => g_stream(),
            FamilySpec::Bk(s) => t_stream(s)?,
            FamilySpec::Fibonacci { m, r, s } => fib_substituted_stream(*m, *r, *s)?,
            FamilySpec::Periodic(e) => periodic_stream(e),
            FamilySpec::Nonequiv => nonequiv_stream(),
            FamilySpec::Perturbed(sys) => sys.stream(),
        })
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// `name` or `name:params`.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            Some((name, params)) => FamilySpec::from_parts(name, Some(params)),
            None => FamilySpec::from_parts(s, None),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::StNumber => f.write_str("st_number"),
            FamilySpec::GSequence => f.write_str("g"),
            FamilySpec::Bk(LSchedule::Minimal) => f.write_str("t"),
            FamilySpec::Bk(LSchedule::Explicit(l)) => write!(f, "t:l={}", Word::new(l.clone())),
            FamilySpec::Fibonacci { m, r, s } => write!(f, "fib:m={m},r={r},s={s}"),
            FamilySpec::Periodic(e) => write!(f, "periodic:{e}"),
            FamilySpec::Nonequiv => f.write_str("nonequiv"),
            FamilySpec::Perturbed(p) => write!(f, "perturbed:A={};X={};n={}", p.insert, p.seed, p.schedule),
        }
    }
}
