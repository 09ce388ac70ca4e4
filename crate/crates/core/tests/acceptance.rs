//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use mpalkit::analysis::schmidt_audit;
use mpalkit::cf::{self, Mat2};
use mpalkit::generators::{
    fib_substituted_stream, fib_substituted_truncated, fib_truncated_len, fibonacci_number, fibonacci_truncated,
    g_sequence, g_sequence_checked, g_stream, nonequiv_n, nonequiv_simplified, nonequiv_t, periodic_stream,
    st_number_stream, st_number_system,
};
use mpalkit::mpal::{self, ScanStrategy};
use mpalkit::quadratic::{self, burger_split, BurgerVerdict, EventuallyPeriodicWord, QuadraticIrrational, ScaleDirection};
use mpalkit::{Error, Rational, Word};

const SUITE_BUDGET: Duration = Duration::from_secs(300);

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

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

/// Left-to-right product of `[[a, 1], [1, 0]]` on plain integer arrays.
fn oracle_matrix(terms: &[u64]) -> [BigInt; 4] {
    let mut m = [BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one()];
    for &a in terms {
        let a = BigInt::from(a);
        m = [&m[0] * &a + &m[1], m[0].clone(), &m[2] * &a + &m[3], m[2].clone()];
    }
    m
}

fn oracle_m_palindrome(terms: &[u64], m: u64) -> bool {
    let fwd = oracle_value(terms).unwrap();
    let rev: Vec<u64> = terms.iter().rev().copied().collect();
    fwd == oracle_value(&rev).unwrap() * Rational::from_integer(m.into())
}

fn all_words(len: usize, max_term: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (1..=max_term).map(move |t| {
                    let mut v = v.clone();
                    v.push(t);
                    v
                })
            })
            .collect();
    }
    out
}

fn random_word(rng: &mut StdRng, max_len: usize, max_term: u64) -> Word {
    let len = rng.gen_range(1..=max_len);
    Word::new((0..len).map(|_| rng.gen_range(1..=max_term)).collect())
}

fn criterion_1() -> Check {
    let mut checked = 0;
    for len in 1..=6 {
        for terms in all_words(len, 4) {
            let word = Word::new(terms.clone());
            for m in 1..=4 {
                let got = mpal::is_m_palindrome(&word, m).map_err(|e| e.to_string())?;
                ensure!(got == oracle_m_palindrome(&terms, m), "mismatch on {word} m={m}");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (word, m) pairs, 0 mismatches"))
}

fn criterion_2() -> Check {
    let mut rng = StdRng::seed_from_u64(2);
    for _ in 0..10_000 {
        let a = random_word(&mut rng, 30, 100);
        let [p, p1, q, q1] = oracle_matrix(a.terms());
        let mat = Mat2::of_word(&a);
        ensure!(mat == Mat2::new(p.clone(), p1.clone(), q.clone(), q1.clone()), "matrix of {a}");
        let [rp, rp1, rq, rq1] = oracle_matrix(a.reverse().terms());
        ensure!([rp, rp1, rq, rq1] == [p.clone(), q.clone(), p1.clone(), q1.clone()], "transpose of {a}");
        let det = &p * &q1 - &p1 * &q;
        let i = a.len() as i64 - 1;
        let expected = if (i + 1) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        ensure!(det == expected && mat.det() == expected, "determinant of {a}");
    }
    Ok("10000 random words, 0 failures".into())
}

fn criterion_3() -> Check {
    for m in 1..=20u64 {
        for n in 1..=20u64 {
            let base = Word::from([m * n, n]);
            ensure!(mpal::is_m_palindrome(&base, m).unwrap(), "({},{n}) m={m}", m * n);
            let long = base.repeat(20);
            for len in (2..=40).step_by(2) {
                let p = long.prefix(len);
                ensure!(mpal::is_m_palindrome(&p, m).unwrap(), "prefix {len} of ({},{n}) m={m}", m * n);
                ensure!(oracle_m_palindrome(p.terms(), m), "oracle disagrees on prefix {len}");
            }
        }
    }
    Ok("400 (m, n) pairs, even prefixes up to 40".into())
}

/// An m-palindrome from `(mn, n)` blocks, squares and sandwiches, or one of
/// the small sporadic examples.
fn random_m_palindrome(rng: &mut StdRng, m: u64, depth: u32) -> Word {
    if depth == 0 || rng.gen_bool(0.3) {
        if m == 2 && rng.gen_bool(0.2) {
            return w("2,1,1,3,1");
        }
        if m == 1 && rng.gen_bool(0.5) {
            let half = random_word(rng, 4, 5);
            return half.concat(&half.reverse());
        }
        let n = rng.gen_range(1..=6);
        return Word::from([m * n, n]);
    }
    let a = random_m_palindrome(rng, m, depth - 1);
    if rng.gen_bool(0.3) {
        mpal::square(&a, m).unwrap()
    } else {
        let b = random_m_palindrome(rng, m, depth - 1);
        mpal::sandwich(&a, &b, m).unwrap()
    }
}

fn criterion_4() -> Check {
    let mut rng = StdRng::seed_from_u64(4);
    for _ in 0..1000 {
        let m = rng.gen_range(1..=4);
        let a = random_m_palindrome(&mut rng, m, 2);
        let b = random_m_palindrome(&mut rng, m, 2);
        ensure!(mpal::certify(&a, m).unwrap().is_some(), "{a} not certified");
        ensure!(mpal::certify(&b, m).unwrap().is_some(), "{b} not certified");
        let s = mpal::sandwich(&a, &b, m).map_err(|e| e.to_string())?;
        ensure!(oracle_m_palindrome(s.terms(), m), "sandwich({a}; {b}) m={m}");
        let sq = mpal::square(&a, m).map_err(|e| e.to_string())?;
        ensure!(oracle_m_palindrome(sq.terms(), m), "square({a}) m={m}");
    }
    let (mut agreed, mut skipped) = (0, 0);
    let small: Vec<Vec<u64>> = (2..=4).flat_map(|len| all_words(len, 3)).collect();
    for m in 1..=3 {
        for a in &small {
            for b in &small {
                let (aw, bw) = (Word::new(a.clone()), Word::new(b.clone()));
                match mpal::check_ba_join(&aw, &bw, m) {
                    Ok(v) => {
                        let mut ba = b.clone();
                        ba.extend_from_slice(a);
                        ensure!(v == oracle_m_palindrome(&ba, m), "check_ba_join({aw}, {bw}, {m})");
                        agreed += 1;
                    }
                    Err(Error::HypothesisViolated(_)) => skipped += 1,
                    Err(e) => return Err(e.to_string()),
                }
            }
        }
    }
    ensure!(agreed > 0, "no pair satisfied the join hypothesis");
    Ok(format!("1000 random pairs; join agrees on {agreed} pairs ({skipped} outside the hypothesis)"))
}

fn criterion_5() -> Check {
    let mut rng = StdRng::seed_from_u64(5);
    let mut done = 0;
    while done < 10_000 {
        let len = rng.gen_range(1..=12);
        let terms: Vec<u64> = (0..len)
            .map(|_| if rng.gen_bool(0.3) { 0 } else { rng.gen_range(1..=5) })
            .collect();
        if !terms.contains(&0) {
            continue;
        }
        let b = Word::new(terms.clone());
        let Ok(v) = cf::evaluate(&b) else { continue };
        let s = cf::simplify(&b).map_err(|e| format!("simplify({b}): {e}"))?;
        ensure!(s.is_standard(), "simplify({b}) = {s} not standard");
        ensure!(cf::evaluate(&s).unwrap() == v, "value changed: {b} -> {s}");
        if let Some(o) = oracle_value(&terms) {
            ensure!(o == v, "oracle disagrees on {b}");
        }
        ensure!(cf::simplify(&s).unwrap() == s, "not idempotent on {b}");
        done += 1;
    }
    ensure!(cf::evaluate(&w("1,1,1")).unwrap() == rat(3, 2), "[1,1,1]");
    ensure!(cf::evaluate(&w("1,2")).unwrap() == rat(3, 2), "[1,2]");
    ensure!(cf::simplify(&w("2,1,1,1,0,2,1")).unwrap() == w("2,1,1,3,1"), "golden simplify");
    let sc = nonequiv_t(1);
    ensure!(sc == w("2,1,1,2,2,1,0,2,1"), "S_C((2,1)) = {sc}");
    ensure!(cf::simplify(&sc).unwrap() == w("2,1,1,2,2,3,1"), "simplify(S_C((2,1)))");
    Ok("10000 random zero-bearing words plus goldens".into())
}

fn criterion_6() -> Check {
    let expected = w("2,1,1,3,1,2,1,2,1,1,3,1,2,1,2,1,2,1,1,3,1,2,1");
    let stream = st_number_stream();
    let sys = st_number_system();
    ensure!(stream.prefix(expected.len()) == expected, "st_number prefix");
    // the prefix of length >= 100 is the level word T_{A,5}(B)
    let t5 = sys.level(5);
    ensure!(t5.len() >= 100 && stream.prefix(t5.len()) == t5, "stream vs T_(A,5)(B)");
    for k in 0..=10 {
        let t = sys.level(k);
        ensure!(mpal::is_m_palindrome(&t, 2).unwrap(), "T_(A,{k})(B) not 2-palindromic");
    }
    for k in 2..=20usize {
        let prev = sys.level_len(k - 1);
        // k / |T_{k-1}| < k / (2^{k-1} - 1)
        let lhs = Rational::new(BigInt::from(k), BigInt::from(prev));
        let rhs = Rational::new(BigInt::from(k), (BigInt::one() << (k - 1)) - 1);
        ensure!(lhs < rhs, "n_{k} bound");
    }
    Ok(format!("prefix of {} terms; levels 0..=10; n_k bound for k in 2..=20", t5.len()))
}

fn criterion_7() -> Check {
    for k in 0..=6 {
        let g = g_sequence_checked(k).map_err(|e| e.to_string())?;
        ensure!(mpal::is_m_palindrome(&g, 2).unwrap(), "G_{k} not 2-palindromic");
    }
    for k in 0..=8 {
        ensure!(g_sequence(k).occurrences(&w("2,1")).unwrap() == vec![0], "occurrences in G_{k}");
    }
    let g13 = g_sequence(13).len();
    let report = mpal::mpal_prefixes_with(&g_stream(), 2, g13, ScanStrategy::Auto, 1).map_err(|e| e.to_string())?;
    let g_lengths: Vec<usize> = (0..=13).map(|k| g_sequence(k).len()).collect();
    ensure!(report.prefix_lengths.ends_with(&g_lengths), "prefix lengths {:?}", report.prefix_lengths);
    let ratio = report.ratios.last().unwrap().clone();
    ensure!(ratio == Rational::new(g_lengths[12].into(), g_lengths[13].into()), "ratio");
    let err = (&ratio - rat(1, 2)).abs();
    ensure!(err < rat(1, 100), "|G_12|/|G_13| = {ratio}");
    Ok(format!("|G_12|/|G_13| = {ratio}"))
}

fn criterion_8() -> Check {
    for n in 2..=25usize {
        let f = fibonacci_number(n + 2);
        ensure!(fib_truncated_len(n) == 2 * f - 4, "length formula n={n}");
        ensure!(fibonacci_truncated(n, 1, 2).unwrap().is_palindrome(), "S_{n}* not a palindrome");
        for (m, r, s) in [(2, 1, 2), (3, 1, 2), (2, 2, 3)] {
            let word = fib_substituted_truncated(n, m, r, s).unwrap();
            ensure!(word.len() as u128 == 2 * f - 4, "|S_{n}*({m},{r},{s})|");
            ensure!(mpal::is_m_palindrome(&word, m).unwrap(), "S_{n}*({m},{r},{s}) not {m}-palindromic");
        }
    }
    let depth = fib_truncated_len(30) as usize;
    let stream = fib_substituted_stream(2, 1, 2).unwrap();
    let report = mpal::mpal_prefixes_with(&stream, 2, depth, ScanStrategy::Auto, mpal::DEFAULT_WINDOW)
        .map_err(|e| e.to_string())?;
    ensure!(report.prefix_lengths.last() == Some(&depth), "last prefix {:?}", report.prefix_lengths.last());
    let d = mpal::density_estimate(&report, mpal::DEFAULT_WINDOW).map_err(|e| e.to_string())?;
    let inv_phi = QuadraticIrrational::new((-1).into(), 5.into(), 2.into()).unwrap();
    let tol = rat(1, 1_000_000);
    use std::cmp::Ordering::{Greater, Less};
    ensure!(
        inv_phi.cmp_rational(&(&d - &tol)) == Greater && inv_phi.cmp_rational(&(&d + &tol)) == Less,
        "density {d} not within 1e-6 of 1/phi"
    );
    Ok(format!("n in 2..=25; density at n=30 ({depth} terms) = {d}"))
}

fn criterion_9() -> Check {
    let e1: EventuallyPeriodicWord = "|1,1,2,2,3".parse().unwrap();
    let x1 = quadratic::periodic_value(&e1).unwrap();
    ensure!(x1 == QuadraticIrrational::new(17.into(), 577.into(), 24.into()).unwrap(), "{x1}");
    ensure!(x1.polynomial_string() == "12x^2-17x-6=0", "{}", x1.polynomial_string());
    let e2: EventuallyPeriodicWord = "2|1,1,2,2,3".parse().unwrap();
    let alpha = quadratic::periodic_value(&e2).unwrap();
    ensure!(alpha == QuadraticIrrational::new(7.into(), 577.into(), 12.into()).unwrap(), "{alpha}");
    ensure!(alpha.polynomial_string() == "6x^2-7x-22=0", "{}", alpha.polynomial_string());
    ensure!(!alpha.is_reduced(), "alpha reduced");
    let half = alpha.scale(2, ScaleDirection::Divide).unwrap();
    ensure!(half.is_reduced(), "alpha/2 not reduced");
    for period in ["1,1,2,2,3", "1,3,2,2,1"] {
        let r = burger_split(&w(period), 2).unwrap();
        ensure!(r.verdict == BurgerVerdict::None, "burger {period}: {:?}", r.verdict);
    }
    for k in 1..=5 {
        let g = nonequiv_simplified(k).map_err(|e| e.to_string())?;
        ensure!(mpal::is_m_palindrome(&g, 2).unwrap(), "(2,D^{},1) not 2-palindromic", nonequiv_n(k));
    }
    let ns: Vec<u64> = (1..=5).map(nonequiv_n).collect();
    ensure!(ns == [1, 3, 7, 15, 31], "n_k = {ns:?}");
    Ok("values, polynomials, reducedness, Burger splits, n_k = 1,3,7,15,31".into())
}

fn criterion_10() -> Check {
    let w85 = rat(8, 5);
    let mut summary = Vec::new();
    for (name, stream) in [
        ("st_number", st_number_stream()),
        ("|6,3", periodic_stream(&"|6,3".parse().unwrap())),
    ] {
        let audit = schmidt_audit(&stream, 2, &w85, 200).map_err(|e| e.to_string())?;
        let hits = mpal::scan_prefixes_exact(stream.prefix(201).terms(), 2).unwrap();
        let expected: Vec<usize> = hits.iter().map(|h| h.index).filter(|&i| i >= 1).collect();
        let got: Vec<usize> = audit.records.iter().map(|r| r.index).collect();
        ensure!(got == expected, "{name}: audited indices differ from the prefix scan");
        ensure!(!got.is_empty(), "{name}: no records");
        ensure!(audit.all_schmidt(), "{name}: a record fails the Schmidt bound");
        ensure!(audit.goal_from_i0(), "{name}: goal fails after i0");
        summary.push(format!("{name}: {} records, i0 = {:?}", got.len(), audit.i0));
    }
    let five = schmidt_audit(&periodic_stream(&"|5".parse().unwrap()), 2, &w85, 200).map_err(|e| e.to_string())?;
    ensure!(five.records.is_empty(), "overline(5) has records");
    summary.push("|5: 0 records".into());
    Ok(summary.join("; "))
}

fn criterion_11() -> Check {
    let mut rng = StdRng::seed_from_u64(11);
    let mut pure = 0;
    for _ in 0..500 {
        let u = if rng.gen_bool(0.5) {
            Word::empty()
        } else {
            random_word(&mut rng, 3, 5)
        };
        let period = random_word(&mut rng, 6, 5);
        let e = EventuallyPeriodicWord::new(u, period).unwrap();
        let x = quadratic::periodic_value(&e).map_err(|err| format!("{e}: {err}"))?;
        ensure!(e.is_purely_periodic() == x.is_reduced(), "{e}: reduced = {}", x.is_reduced());
        pure += e.is_purely_periodic() as usize;
    }
    Ok(format!("500 periods ({pure} purely periodic), 0 failures"))
}

fn criterion_12(start: Instant) -> Check {
    let cases: [&[&str]; 5] = [
        &["mpal", "check", "2,1,1,3,1", "--m", "2"],
        &["quad", "solve", "2|1,1,2,2,3", "--json"],
        &["audit", "schmidt", "--stream", "st_number", "--m", "2", "--depth", "200", "--json"],
        &["audit", "stammer", "--stream", "g", "--depth", "2000", "--max-period", "400", "--offset-ratio", "1"],
        &["mpal", "density", "--stream", "fib:m=2,r=1,s=2", "--m", "2", "--depth", "100000", "--json"],
    ];
    for args in cases {
        let run = |threads: Option<&str>| {
            let mut c = Command::new(env!("CARGO_BIN_EXE_mpalkit"));
            c.args(args);
            match threads {
                Some(t) => c.env("MPALKIT_THREADS", t),
                None => c.env_remove("MPALKIT_THREADS"),
            };
            c.output().map_err(|e| e.to_string())
        };
        let a = run(None)?;
        let b = run(None)?;
        let c = run(Some("1"))?;
        ensure!(a.status.code() == b.status.code(), "exit codes differ: {args:?}");
        ensure!(a.stdout == b.stdout && a.stdout == c.stdout, "output differs: {args:?}");
    }
    let total = start.elapsed();
    ensure!(total <= SUITE_BUDGET, "acceptance run took {total:?}");
    Ok(format!("5 commands byte-identical across 3 runs; suite time {:.1}s <= 300s", total.as_secs_f64()))
}

fn run_one(n: u32, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    });
    let secs = start.elapsed().as_secs_f64();
    match &result {
        Ok(detail) => println!("criterion {n:>2}: PASS  {detail} [{secs:.2}s]"),
        Err(detail) => println!("criterion {n:>2}: FAIL  {detail} [{secs:.2}s]"),
    }
    result.is_ok()
}

fn main() -> ExitCode {
    panic::set_hook(Box::new(|_| {}));
    let start = Instant::now();
    let criteria: [fn() -> Check; 11] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
        criterion_11,
    ];
    let mut passed = 0;
    for (i, f) in criteria.into_iter().enumerate() {
        passed += run_one(i as u32 + 1, f) as u32;
    }
    passed += run_one(12, || criterion_12(start)) as u32;
    println!("acceptance: {passed}/12 criteria passed in {:.1}s", start.elapsed().as_secs_f64());
    if passed == 12 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
