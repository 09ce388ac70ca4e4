//! Quadratic irrationals `(P + √D) / Q` of eventually periodic continued fractions.
//!
//! Every value is stored in a canonical form derived from its primitive
//! minimal polynomial `a x^2 + b x + c` (`a > 0`): start from
//! `(-b ± √(b^2 - 4ac)) / (2a)` and divide `P`, `Q` by the largest `g` (and `D`
//! by `g^2`) that keeps `Q | D - P^2`. Two values are equal iff their
//! canonical triples are. All order tests are exact integer comparisons.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cf::{self, Mat2, MobiusTail};
use crate::error::{Error, Result};
use crate::word::{is_palindrome_slice, Word};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticIrrational {
    p: BigInt,
    d: BigInt,
    q: BigInt,
    poly: [BigInt; 3],
}

fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Divisors of `n > 0` in descending order. Factors beyond the trial bound are
/// treated as prime, which keeps the result deterministic.
fn divisors_desc(n: &BigInt) -> Vec<BigInt> {
    let mut rest = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2u8);
    let bound = BigInt::from(1_000_000u32);
    while &p * &p <= rest && p <= bound {
        let mut e = 0;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
        p += 1;
    }
    if rest > BigInt::one() {
        factors.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (f, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut x = d.clone();
            for _ in 0..=e {
                next.push(x.clone());
                x *= &f;
            }
        }
        divs = next;
    }
    divs.sort_by(|a, b| b.cmp(a));
    divs
}

impl QuadraticIrrational {
    /// The value `(u + v √d) / w`.
    pub fn from_parts(u: BigInt, v: BigInt, w: BigInt, d: BigInt) -> Result<Self> {
        if w.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if v.is_zero() || !d.is_positive() || is_square(&d) {
            return Err(Error::DegeneratePeriod);
        }
        // w^2 x^2 - 2uw x + (u^2 - v^2 d) = 0
        let a = &w * &w;
        let b = -BigInt::from(2u8) * &u * &w;
        let c = &u * &u - &v * &v * &d;
        let g = a.gcd(&b).gcd(&c);
        let plus = (v.is_positive()) == (w.is_positive());
        Ok(Self::from_primitive([a / &g, b / &g, c / &g], plus))
    }

    /// `(p + √d) / q`.
    pub fn new(p: BigInt, d: BigInt, q: BigInt) -> Result<Self> {
        Self::from_parts(p, BigInt::one(), q, d)
    }

    /// The larger (`plus_root`) or smaller root of `a x^2 + b x + c`.
    pub fn from_polynomial(a: BigInt, b: BigInt, c: BigInt, plus_root: bool) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::DegeneratePeriod);
        }
        let disc = &b * &b - BigInt::from(4u8) * &a * &c;
        if !disc.is_positive() || is_square(&disc) {
            return Err(Error::DegeneratePeriod);
        }
        let g = a.gcd(&b).gcd(&c);
        let s = if a.is_negative() { -g } else { g };
        Ok(Self::from_primitive([a / &s, b / &s, c / &s], plus_root))
    }

    fn from_primitive(poly: [BigInt; 3], plus: bool) -> Self {
        let [a, b, c] = &poly;
        let d = b * b - BigInt::from(4u8) * a * c;
        let two_a = BigInt::from(2u8) * a;
        let (mut p, mut q) = if plus { (-b, two_a) } else { (b.clone(), -two_a) };
        let mut d = d;
        let gpq = p.gcd(&q);
        for g in divisors_desc(&gpq) {
            if g.is_one() {
                break;
            }
            let g2 = &g * &g;
            if !(&d % &g2).is_zero() {
                continue;
            }
            let (p2, q2, d2) = (&p / &g, &q / &g, &d / &g2);
            if ((&d2 - &p2 * &p2) % &q2).is_zero() {
                p = p2;
                q = q2;
                d = d2;
                break;
            }
        }
        QuadraticIrrational { p, d, q, poly }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// Primitive `(a, b, c)` with `a > 0`.
    pub fn minimal_polynomial(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.poly[0], &self.poly[1], &self.poly[2])
    }

    pub fn discriminant(&self) -> BigInt {
        let [a, b, c] = &self.poly;
        b * b - BigInt::from(4u8) * a * c
    }

    /// `a x^2 + b x + c = 0` rendered as e.g. `6x^2-7x-22=0`.
    pub fn polynomial_string(&self) -> String {
        let [a, b, c] = &self.poly;
        let mut s = String::new();
        let mut term = |coef: &BigInt, var: &str| {
            if coef.is_zero() {
                return;
            }
            let neg = coef.is_negative();
            let mag = coef.abs();
            if neg {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            if !(mag.is_one() && !var.is_empty()) {
                s.push_str(&mag.to_string());
            }
            s.push_str(var);
        };
        term(a, "x^2");
        term(b, "x");
        term(c, "");
        s.push_str("=0");
        s
    }

    /// The algebraic conjugate `(P - √D) / Q`.
    pub fn conjugate(&self) -> Self {
        QuadraticIrrational::from_parts(self.p.clone(), -BigInt::one(), self.q.clone(), self.d.clone())
            .expect("conjugate of an irrational is irrational")
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        // x - r has the sign of (√D - t) · sign(Q) with t = rQ - P
        let t = r * Rational::from_integer(self.q.clone()) - Rational::from_integer(self.p.clone());
        let sqrt_vs_t = if t.is_negative() {
            Ordering::Greater
        } else {
            let lhs = &self.d * t.denom() * t.denom();
            let rhs = t.numer() * t.numer();
            lhs.cmp(&rhs)
        };
        if self.q.is_positive() {
            sqrt_vs_t
        } else {
            sqrt_vs_t.reverse()
        }
    }

    pub fn cmp_integer(&self, n: i64) -> Ordering {
        self.cmp_rational(&Rational::from_integer(n.into()))
    }

    /// `x > 1` and `-1 < conjugate(x) < 0`.
    pub fn is_reduced(&self) -> bool {
        let conj = self.conjugate();
        self.cmp_integer(1) == Ordering::Greater
            && conj.cmp_integer(-1) == Ordering::Greater
            && conj.cmp_integer(0) == Ordering::Less
    }

    /// `m x` or `x / m`.
    pub fn scale(&self, m: u64, direction: ScaleDirection) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidM);
        }
        let m = BigInt::from(m);
        let mat = match direction {
            ScaleDirection::Multiply => Mat2::new(m, BigInt::zero(), BigInt::zero(), BigInt::one()),
            ScaleDirection::Divide => Mat2::new(BigInt::one(), BigInt::zero(), BigInt::zero(), m),
        };
        self.mobius(&mat)
    }

    /// Floating-point approximation, for display only.
    pub fn approx(&self) -> f64 {
        let d = self.d.to_f64().unwrap_or(f64::INFINITY);
        (self.p.to_f64().unwrap_or(f64::NAN) + d.sqrt()) / self.q.to_f64().unwrap_or(f64::NAN)
    }
}

impl MobiusTail for QuadraticIrrational {
    fn mobius(&self, m: &Mat2) -> Result<Self> {
        // (aP + bQ + a√D) / (cP + dQ + c√D), rationalized
        let alpha = &m.a * &self.p + &m.b * &self.q;
        let gamma = &m.c * &self.p + &m.d * &self.q;
        let den = &gamma * &gamma - &m.c * &m.c * &self.d;
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let u = &alpha * &gamma - &m.a * &m.c * &self.d;
        let v = &m.a * &gamma - &alpha * &m.c;
        if v.is_zero() {
            return Err(Error::Undefined);
        }
        QuadraticIrrational::from_parts(u, v, den, self.d.clone())
    }
}

impl fmt::Display for QuadraticIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, sign, q) = if self.q.is_negative() {
            (-&self.p, '-', -&self.q)
        } else {
            (self.p.clone(), '+', self.q.clone())
        };
        let num = if p.is_zero() {
            if sign == '-' {
                format!("-√{}", self.d)
            } else {
                format!("√{}", self.d)
            }
        } else {
            format!("{p}{sign}√{}", self.d)
        };
        if q.is_one() {
            f.write_str(&num)
        } else {
            write!(f, "({num})/{q}")
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScaleDirection {
    Multiply,
    Divide,
}

/// `U · overline(W)` with a primitive period and minimal preperiod.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EventuallyPeriodicWord {
    preperiod: Word,
    period: Word,
}

/// The shortest `R` with `W = R^k`.
fn primitive_root(w: &[u64]) -> &[u64] {
    let n = w.len();
    (1..=n)
        .filter(|p| n.is_multiple_of(*p))
        .find(|&p| (p..n).all(|i| w[i] == w[i - p]))
        .map(|p| &w[..p])
        .unwrap_or(w)
}

impl EventuallyPeriodicWord {
    pub fn new(preperiod: Word, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyWord);
        }
        if !period.is_positive() {
            return Err(Error::NonStandardWord(period.to_string()));
        }
        if !preperiod.is_standard() {
            return Err(Error::NonStandardWord(preperiod.to_string()));
        }
        let mut u = preperiod.into_terms();
        let mut w = primitive_root(period.terms()).to_vec();
        while u.last().is_some() && u.last() == w.last() {
            u.pop();
            w.rotate_right(1);
        }
        Ok(EventuallyPeriodicWord {
            preperiod: Word::new(u),
            period: Word::new(w),
        })
    }

    pub fn purely_periodic(period: Word) -> Result<Self> {
        Self::new(Word::empty(), period)
    }

    pub fn preperiod(&self) -> &Word {
        &self.preperiod
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.preperiod.is_empty()
    }

    pub fn prefix(&self, n: usize) -> Word {
        let u = self.preperiod.terms();
        let w = self.period.terms();
        Word::new(
            (0..n)
                .map(|k| if k < u.len() { u[k] } else { w[(k - u.len()) % w.len()] })
                .collect(),
        )
    }
}

impl fmt::Display for EventuallyPeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.preperiod, self.period)
    }
}

impl FromStr for EventuallyPeriodicWord {
    type Err = Error;

    /// `U|W`; a string without `|` is a pure period.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('|') {
            Some((u, w)) => Self::new(u.parse()?, w.parse()?),
            None => Self::purely_periodic(s.parse()?),
        }
    }
}

/// The value `[U overline(W)]`.
pub fn periodic_value(e: &EventuallyPeriodicWord) -> Result<QuadraticIrrational> {
    let t = cf::convergents(e.period());
    let i = t.last_index();
    let (p, p1, q, q1) = (t.p(i), t.p(i - 1), t.q(i), t.q(i - 1));
    // x = (p x + p1) / (q x + q1)  <=>  q x^2 + (q1 - p) x - p1 = 0, positive root
    let disc = (q1 - p) * (q1 - p) + BigInt::from(4u8) * q * p1;
    let tail = QuadraticIrrational::from_parts(p - q1, BigInt::one(), BigInt::from(2u8) * q, disc)?;
    cf::evaluate_with_tail(e.preperiod(), &tail)
}

pub fn conjugate(x: &QuadraticIrrational) -> QuadraticIrrational {
    x.conjugate()
}

pub fn is_reduced(x: &QuadraticIrrational) -> bool {
    x.is_reduced()
}

pub fn scale(x: &QuadraticIrrational, m: u64, direction: ScaleDirection) -> Result<QuadraticIrrational> {
    x.scale(m, direction)
}

/// Checks Galois' correspondence on one word: the expansion is purely periodic
/// exactly when its value is reduced.
pub fn galois_roundtrip(e: &EventuallyPeriodicWord) -> Result<bool> {
    Ok(e.is_purely_periodic() == periodic_value(e)?.is_reduced())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BurgerVerdict {
    One,
    Two,
    None,
}

/// A rotation of `W^repeat` that is a palindrome (`split == None`) or the
/// concatenation of two palindromes `rotation[..split]`, `rotation[split..]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BurgerWitness {
    pub repeat: usize,
    pub shift: usize,
    pub rotation: Word,
    pub split: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BurgerReport {
    pub verdict: BurgerVerdict,
    pub witness: Option<BurgerWitness>,
    pub max_repeat: usize,
}

/// Searches the rotations of `W^j`, `1 <= j <= max_repeat`, for a palindrome
/// and then for a product of two nonempty palindromes.
pub fn burger_split(period: &Word, max_repeat: usize) -> Result<BurgerReport> {
    if period.is_empty() {
        return Err(Error::EmptyWord);
    }
    if !period.is_positive() {
        return Err(Error::NonStandardWord(period.to_string()));
    }
    if max_repeat == 0 {
        return Err(Error::InvalidParameters("max_repeat must be positive".into()));
    }
    let rotations = || {
        (1..=max_repeat).flat_map(move |j| {
            let base = period.repeat(j).into_terms();
            (0..base.len()).map(move |shift| {
                let mut r = base.clone();
                r.rotate_left(shift);
                (j, shift, r)
            })
        })
    };
    for (repeat, shift, r) in rotations() {
        if is_palindrome_slice(&r) {
            return Ok(BurgerReport {
                verdict: BurgerVerdict::One,
                witness: Some(BurgerWitness {
                    repeat,
                    shift,
                    rotation: Word::new(r),
                    split: None,
                }),
                max_repeat,
            });
        }
    }
    for (repeat, shift, r) in rotations() {
        if let Some(k) = (1..r.len()).find(|&k| is_palindrome_slice(&r[..k]) && is_palindrome_slice(&r[k..])) {
            return Ok(BurgerReport {
                verdict: BurgerVerdict::Two,
                witness: Some(BurgerWitness {
                    repeat,
                    shift,
                    rotation: Word::new(r),
                    split: Some(k),
                }),
                max_repeat,
            });
        }
    }
    Ok(BurgerReport {
        verdict: BurgerVerdict::None,
        witness: None,
        max_repeat,
    })
}

/// Whether the period splits into one or two palindromes within the searched
/// repetitions.
pub fn equivalent_to_conjugate(e: &EventuallyPeriodicWord, max_repeat: usize) -> Result<bool> {
    Ok(burger_split(e.period(), max_repeat)?.verdict != BurgerVerdict::None)
}
