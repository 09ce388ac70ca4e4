//! Property-based checks of the algebraic invariants.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use mpalkit::analysis::{enclose, initial_exponent_scan, offset_exponent_scan};
use mpalkit::cf::{self, Mat2};
use mpalkit::generators::periodic_stream;
use mpalkit::mpal::{self, ScanStrategy};
use mpalkit::quadratic::{self, burger_split, EventuallyPeriodicWord, ScaleDirection};
use mpalkit::{Rational, Word, WordStream};

/// `[a_0; a_1, ..., a_n]` by the backward recursion `x <- a + 1/x`.
fn oracle_value(terms: &[u64]) -> Option<Rational> {
    let (&last, rest) = terms.split_last()?;
    let mut x = Rational::from_integer(last.into());
    for &a in rest.iter().rev() {
        if x.is_zero() {
            return None;
        }
        x = Rational::from_integer(a.into()) + x.recip();
    }
    Some(x)
}

fn positive_word(max_len: usize, max_term: u64) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=max_term, 1..=max_len).prop_map(Word::new)
}

fn zero_bearing_word() -> impl Strategy<Value = Word> {
    prop::collection::vec(prop_oneof![2 => Just(0u64), 5 => 1u64..=6], 1..=14).prop_map(Word::new)
}

fn periodic_word() -> impl Strategy<Value = EventuallyPeriodicWord> {
    (
        prop::collection::vec(1u64..=5, 0..=3),
        prop::collection::vec(1u64..=5, 1..=6),
    )
        .prop_map(|(u, w)| EventuallyPeriodicWord::new(Word::new(u), Word::new(w)).unwrap())
}

/// An m-palindrome built from `(mn, n)` blocks by squaring and sandwiching.
fn m_palindrome() -> impl Strategy<Value = (u64, Word)> {
    (1u64..=4).prop_flat_map(|m| {
        let leaf = (1u64..=6).prop_map(move |n| Word::from([m * n, n]));
        let tree = leaf.prop_recursive(3, 16, 2, move |inner| {
            prop_oneof![
                inner.clone().prop_map(move |a| mpal::square(&a, m).unwrap()),
                (inner.clone(), inner).prop_map(move |(a, b)| mpal::sandwich(&a, &b, m).unwrap()),
            ]
        });
        (Just(m), tree)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn criterion_matches_rational_oracle(a in positive_word(12, 9), m in 1u64..=5) {
        let fwd = oracle_value(a.terms()).unwrap();
        let bwd = oracle_value(a.reverse().terms()).unwrap();
        let expected = fwd == bwd * Rational::from_integer(m.into());
        prop_assert_eq!(mpal::is_m_palindrome(&a, m).unwrap(), expected);
    }

    #[test]
    fn transpose_and_determinant(a in positive_word(30, 100)) {
        let mat = Mat2::of_word(&a);
        prop_assert_eq!(Mat2::of_word(&a.reverse()), mat.transpose());
        let sign = if a.len() % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        prop_assert_eq!(mat.det(), sign);
    }

    #[test]
    fn evaluation_matches_oracle(a in positive_word(20, 50)) {
        prop_assert_eq!(cf::evaluate(&a).unwrap(), oracle_value(a.terms()).unwrap());
    }

    #[test]
    fn split_consistency(a in positive_word(10, 9), b in positive_word(10, 9)) {
        let whole = cf::evaluate(&a.concat(&b)).unwrap();
        let tail = cf::evaluate(&b).unwrap();
        prop_assert_eq!(cf::evaluate_with_tail(&a, &tail).unwrap(), whole);
    }

    #[test]
    fn simplify_preserves_value(b in zero_bearing_word()) {
        if let Ok(v) = cf::evaluate(&b) {
            let s = cf::simplify(&b).unwrap();
            prop_assert!(s.is_standard());
            prop_assert_eq!(cf::evaluate(&s).unwrap(), v);
            prop_assert_eq!(cf::simplify(&s).unwrap(), s);
        }
    }

    #[test]
    fn constructions_stay_m_palindromic((m, a) in m_palindrome()) {
        prop_assert!(mpal::is_m_palindrome(&a, m).unwrap());
        let t = a.terms();
        // m [a_i, ..., a_1] = [a_0, ..., a_{i-1}]
        if t.len() >= 2 {
            let lhs = oracle_value(&t[1..].iter().rev().copied().collect::<Vec<_>>()).unwrap();
            let rhs = oracle_value(&t[..t.len() - 1]).unwrap();
            prop_assert_eq!(lhs * Rational::from_integer(m.into()), rhs);
        }
    }

    #[test]
    fn sieved_scan_matches_exact(a in positive_word(400, 4), m in 1u64..=3) {
        let exact = mpal::scan_prefixes_exact(a.terms(), m).unwrap();
        let sieved = mpal::scan_prefixes_sieved(a.terms(), m).unwrap();
        prop_assert_eq!(exact, sieved);
    }

    #[test]
    fn prefix_scan_is_gap_free(a in positive_word(60, 4), m in 1u64..=3) {
        let terms = a.terms().to_vec();
        let stream = WordStream::from_fn("w", move |k| terms[k]);
        let report = mpal::mpal_prefixes_with(&stream, m, a.len(), ScanStrategy::Exact, 3).unwrap();
        let brute: Vec<usize> = (1..=a.len())
            .filter(|&n| mpal::is_m_palindrome(&a.prefix(n), m).unwrap())
            .collect();
        prop_assert_eq!(report.prefix_lengths, brute);
    }

    #[test]
    fn occurrences_match_naive(h in positive_word(40, 3), n in positive_word(3, 3)) {
        let naive: Vec<usize> = (0..h.len())
            .filter(|&i| h.terms()[i..].starts_with(n.terms()))
            .collect();
        prop_assert_eq!(h.occurrences(&n).unwrap(), naive);
    }

    #[test]
    fn fractional_powers(v in positive_word(8, 5), k in 1usize..40) {
        let x = Rational::new(k.into(), v.len().into());
        let p = v.power(&x).unwrap();
        prop_assert_eq!(p.len(), k);
        prop_assert_eq!(p, v.repeat(k.div_ceil(v.len())).prefix(k));
    }

    #[test]
    fn galois_both_ways(e in periodic_word()) {
        let x = quadratic::periodic_value(&e).unwrap();
        prop_assert_eq!(e.is_purely_periodic(), x.is_reduced());
    }

    #[test]
    fn minimal_polynomial_annihilates(e in periodic_word()) {
        let x = quadratic::periodic_value(&e).unwrap();
        let (a, b, c) = x.minimal_polynomial();
        let (p, d, q) = (x.p(), x.d(), x.q());
        // a (P + √D)^2 + b Q (P + √D) + c Q^2 = 0
        prop_assert!((a * (p * p + d) + b * p * q + c * q * q).is_zero());
        prop_assert!((BigInt::from(2) * a * p + b * q).is_zero());
    }

    #[test]
    fn periodic_value_lies_in_enclosure(e in periodic_word(), depth in 2usize..30) {
        let x = quadratic::periodic_value(&e).unwrap();
        let stream = periodic_stream(&e);
        if e.preperiod().first() != Some(0) {
            prop_assert!(enclose(&stream, depth).unwrap().contains_quadratic(&x));
        }
    }

    #[test]
    fn scaling_round_trips(e in periodic_word(), m in 1u64..=9) {
        let x = quadratic::periodic_value(&e).unwrap();
        let y = x.scale(m, ScaleDirection::Divide).unwrap().scale(m, ScaleDirection::Multiply).unwrap();
        prop_assert_eq!(y, x);
    }

    #[test]
    fn mn_n_quadratics_scale_to_reduced(m in 1u64..=8, n in 1u64..=8) {
        let e = EventuallyPeriodicWord::purely_periodic(Word::from([m * n, n])).unwrap();
        let x = quadratic::periodic_value(&e).unwrap();
        prop_assert!(x.scale(m, ScaleDirection::Divide).unwrap().is_reduced());
    }

    #[test]
    fn burger_witness_is_valid(w in positive_word(6, 3), j in 1usize..=2) {
        let r = burger_split(&w, j).unwrap();
        if let Some(wit) = r.witness {
            prop_assert!(wit.repeat <= j);
            let base = w.repeat(wit.repeat);
            let mut rot = base.terms().to_vec();
            rot.rotate_left(wit.shift);
            prop_assert_eq!(rot.as_slice(), wit.rotation.terms());
            match wit.split {
                None => prop_assert!(wit.rotation.is_palindrome()),
                Some(k) => {
                    prop_assert!(Word::from(&rot[..k]).is_palindrome());
                    prop_assert!(Word::from(&rot[k..]).is_palindrome());
                }
            }
        }
    }

    #[test]
    fn repetition_evidence_verifies(w in positive_word(5, 3), u in positive_word(4, 3)) {
        let e = EventuallyPeriodicWord::new(u, w).unwrap();
        let stream = periodic_stream(&e);
        let prefix = stream.prefix(120);
        for ev in initial_exponent_scan(&stream, 120, 20).unwrap() {
            prop_assert!(ev.verify(&prefix));
        }
        for ev in offset_exponent_scan(&stream, 120, 20, &Rational::one()).unwrap() {
            prop_assert!(ev.verify(&prefix));
        }
    }

    #[test]
    fn enclosures_shrink(e in periodic_word()) {
        if e.preperiod().first() != Some(0) {
            let s = periodic_stream(&e);
            let a = enclose(&s, 5).unwrap();
            let b = enclose(&s, 6).unwrap();
            prop_assert!(b.is_subset_of(&a));
            prop_assert!(b.width() < a.width());
        }
    }
}
