//! The `mpalkit` command line.
//!
//! [`run`] parses arguments and returns the exit code with the captured
//! output, so the binary is a thin wrapper and tests can call it directly.
//! Exit codes: 0 success or true verdict, 1 false verdict, 2 usage error,
//! 3 domain error.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::analysis::{self, parse_rational, RationalInterval, RepetitionEvidence};
use crate::cf::{self, convergents};
use crate::error::Error;
use crate::generators::FamilySpec;
use crate::mpal::{self, ScanStrategy};
use crate::quadratic::{self, BurgerVerdict, EventuallyPeriodicWord};
use crate::word::{Word, WordStream};
use crate::Rational;

pub const DEFAULT_DEPTH: usize = 200;
pub const DEFAULT_DIGITS: usize = 20;
pub const DEFAULT_WINDOW: usize = mpal::DEFAULT_WINDOW;
pub const DEFAULT_MAX_REPEAT: usize = 2;
pub const THREADS_ENV: &str = "MPALKIT_THREADS";

#[derive(Debug, Parser)]
#[command(name = "mpalkit", version, about = "Exact tools for m-palindromic continued fractions")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Continued fraction evaluation and simplification.
    #[command(subcommand)]
    Cf(CfCommand),
    /// m-palindrome checks and prefix density.
    #[command(subcommand)]
    Mpal(MpalCommand),
    /// Print a prefix of a named family.
    Gen(GenArgs),
    /// Quadratic irrationals of eventually periodic words.
    #[command(subcommand)]
    Quad(QuadCommand),
    /// Finite-depth audits.
    #[command(subcommand)]
    Audit(AuditCommand),
}

#[derive(Debug, Subcommand)]
enum CfCommand {
    /// Evaluate a (possibly extended) continued fraction.
    Eval {
        word: String,
        #[arg(long, default_value_t = DEFAULT_DIGITS)]
        digits: usize,
    },
    /// Rewrite an extended continued fraction as a standard one.
    Simplify { word: String },
}

#[derive(Debug, Subcommand)]
enum MpalCommand {
    /// Decide whether a word is m-palindromic.
    Check {
        word: String,
        #[arg(long)]
        m: Option<u64>,
        /// List every m <= this bound for which the word is m-palindromic.
        #[arg(long)]
        scan_m: Option<u64>,
    },
    /// m-palindromic prefixes of a stream and their density.
    Density {
        #[arg(long)]
        stream: String,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: usize,
        #[arg(long, default_value = "auto", value_parser = parse_strategy)]
        strategy: ScanStrategy,
    },
}

#[derive(Debug, Args)]
struct GenArgs {
    /// Family name, optionally with `:params`.
    family: String,
    #[arg(long)]
    params: Option<String>,
    #[arg(long)]
    len: usize,
}

#[derive(Debug, Subcommand)]
enum QuadCommand {
    /// Exact value of `U|W`.
    Solve { word: String },
    /// Search rotations of `W^j` for a split into one or two palindromes.
    Burger {
        word: String,
        #[arg(long, default_value_t = DEFAULT_MAX_REPEAT)]
        max_repeat: usize,
    },
}

#[derive(Debug, Subcommand)]
enum AuditCommand {
    /// Check the Schmidt inequality chain at every m-palindromic prefix.
    Schmidt {
        #[arg(long)]
        stream: String,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value = "8/5")]
        w: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Repetition exponents of prefixes, optionally after an offset.
    Stammer {
        #[arg(long)]
        stream: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long)]
        max_period: usize,
        #[arg(long)]
        offset_ratio: Option<String>,
        /// Number of evidence lines shown in text mode.
        #[arg(long, default_value_t = 10)]
        top: usize,
    },
}

fn parse_strategy(s: &str) -> Result<ScanStrategy, String> {
    match s {
        "exact" => Ok(ScanStrategy::Exact),
        "sieved" => Ok(ScanStrategy::Sieved),
        "auto" => Ok(ScanStrategy::Auto),
        other => Err(format!("unknown strategy {other:?} (expected exact, sieved or auto)")),
    }
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(msg) => Failure::Usage(msg),
            other => Failure::Domain(other),
        }
    }
}

type CmdResult = std::result::Result<(bool, String), Failure>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind::*;
            return match e.kind() {
                DisplayHelp | DisplayVersion | DisplayHelpOnMissingArgumentOrSubcommand => Outcome {
                    code: if e.kind() == DisplayHelpOnMissingArgumentOrSubcommand { 2 } else { 0 },
                    stdout: e.render().to_string(),
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: format!("{}\n", first_line(&e.render().to_string())),
                },
            };
        }
    };
    let result = match thread_pool() {
        Ok(Some(pool)) => pool.install(|| dispatch(&cli)),
        Ok(None) => dispatch(&cli),
        Err(msg) => Err(Failure::Usage(msg)),
    };
    match result {
        Ok((verdict, stdout)) => Outcome {
            code: if verdict { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {}\n", first_line(&msg)),
        },
        Err(Failure::Domain(e)) => Outcome {
            code: 3,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn first_line(s: &str) -> &str {
    s.lines().find(|l| !l.trim().is_empty()).unwrap_or("").trim_end()
}

fn thread_pool() -> std::result::Result<Option<rayon::ThreadPool>, String> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(None);
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map(Some)
        .map_err(|e| e.to_string())
}

fn dispatch(cli: &Cli) -> CmdResult {
    let json = cli.json;
    match &cli.command {
        Command::Cf(CfCommand::Eval { word, digits }) => cf_eval(word, *digits, json),
        Command::Cf(CfCommand::Simplify { word }) => cf_simplify(word, json),
        Command::Mpal(MpalCommand::Check { word, m, scan_m }) => mpal_check(word, *m, *scan_m, json),
        Command::Mpal(MpalCommand::Density {
            stream,
            m,
            depth,
            window,
            strategy,
        }) => mpal_density(stream, *m, *depth, *window, *strategy, json),
        Command::Gen(args) => gen(args, json),
        Command::Quad(QuadCommand::Solve { word }) => quad_solve(word, json),
        Command::Quad(QuadCommand::Burger { word, max_repeat }) => quad_burger(word, *max_repeat, json),
        Command::Audit(AuditCommand::Schmidt { stream, m, w, depth }) => audit_schmidt(stream, *m, w, *depth, json),
        Command::Audit(AuditCommand::Stammer {
            stream,
            depth,
            max_period,
            offset_ratio,
            top,
        }) => audit_stammer(stream, *depth, *max_period, offset_ratio.as_deref(), *top, json),
    }
}

fn json_out(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn rat_str(r: &Rational) -> String {
    r.to_string()
}

fn interval_json(iv: &RationalInterval) -> Value {
    json!({ "lo": rat_str(&iv.lo), "hi": rat_str(&iv.hi) })
}

/// `r` truncated toward zero to `digits` decimals.
pub fn decimal(r: &Rational, digits: usize) -> String {
    let neg = r.is_negative();
    let n = r.numer().abs();
    let d = r.denom();
    let (int, mut rem) = n.div_rem(d);
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(&int.to_string());
    if digits > 0 {
        s.push('.');
        for _ in 0..digits {
            rem *= 10u8;
            let (digit, r2) = rem.div_rem(d);
            s.push(char::from(b'0' + digit.to_u8().expect("single digit")));
            rem = r2;
        }
    }
    s
}

fn parse_word(s: &str) -> std::result::Result<Word, Failure> {
    s.parse::<Word>()
        .map_err(|e| Failure::Usage(format!("invalid word {s:?}: {e}")))
}

fn parse_stream(spec: &str) -> std::result::Result<WordStream, Failure> {
    let family: FamilySpec = spec
        .parse()
        .map_err(|e| Failure::Usage(format!("invalid stream {spec:?}: {e}")))?;
    Ok(family.stream()?)
}

fn cf_eval(word: &str, digits: usize, json: bool) -> CmdResult {
    let w = parse_word(word)?;
    let v = cf::evaluate(&w)?;
    let dec = decimal(&v, digits);
    let out = if json {
        json_out(json!({
            "word": w.to_string(),
            "p": v.numer().to_string(),
            "q": v.denom().to_string(),
            "decimal": dec,
        }))
    } else {
        format!("{v}\n{dec}\n")
    };
    Ok((true, out))
}

fn cf_simplify(word: &str, json: bool) -> CmdResult {
    let w = parse_word(word)?;
    let s = cf::simplify(&w)?;
    let v = cf::evaluate(&s)?;
    let out = if json {
        json_out(json!({
            "word": w.to_string(),
            "simplified": s.to_string(),
            "p": v.numer().to_string(),
            "q": v.denom().to_string(),
        }))
    } else {
        format!("{s}\n")
    };
    Ok((true, out))
}

fn mpal_check(word: &str, m: Option<u64>, scan_m: Option<u64>, json: bool) -> CmdResult {
    let w = parse_word(word)?;
    if let Some(max_m) = scan_m {
        let ms = mpal::scan_m(&w, max_m)?;
        let out = if json {
            json_out(json!({ "word": w.to_string(), "max_m": max_m, "m": ms }))
        } else {
            let list: Vec<String> = ms.iter().map(u64::to_string).collect();
            format!("m <= {max_m}: {}\n", if list.is_empty() { "none".into() } else { list.join(",") })
        };
        return Ok((!ms.is_empty(), out));
    }
    let m = m.ok_or_else(|| Failure::Usage("mpal check needs --m or --scan-m".into()))?;
    if m == 0 {
        return Err(Failure::Domain(Error::InvalidM));
    }
    if !w.is_positive() {
        let ok = mpal::is_m_palindrome_extended(&w, m)?;
        let (a, r) = (cf::evaluate(&w)?, cf::evaluate(&w.reverse())?);
        let out = if json {
            json_out(json!({
                "word": w.to_string(),
                "m": m,
                "extended": true,
                "m_palindrome": ok,
                "value": rat_str(&a),
                "reverse_value": rat_str(&r),
            }))
        } else {
            format!("{m}-palindrome (extended): {ok}\n[A] = {a}, [reverse A] = {r}\n")
        };
        return Ok((ok, out));
    }
    let t = convergents(&w);
    let i = t.last_index();
    let (q_i, p_prev) = (t.q(i), t.p(i - 1));
    let lhs = q_i * m;
    let ok = &lhs == p_prev;
    let out = if json {
        json_out(json!({
            "word": w.to_string(),
            "m": m,
            "extended": false,
            "m_palindrome": ok,
            "index": i,
            "p_i": t.p(i).to_string(),
            "q_i": q_i.to_string(),
            "p_prev": p_prev.to_string(),
        }))
    } else {
        let mut s = format!("{m}-palindrome: {ok}\n");
        if ok {
            let _ = writeln!(s, "certificate m·q_{i} = p_{}: {m}·{q_i} = {lhs}", i - 1);
        } else {
            let _ = writeln!(s, "m·q_{i} ≠ p_{}: {m}·{q_i} = {lhs} ≠ {p_prev}", i - 1);
        }
        let _ = writeln!(s, "[A] = {}", Rational::new(t.p(i).clone(), q_i.clone()));
        s
    };
    Ok((ok, out))
}

fn mpal_density(stream: &str, m: u64, depth: usize, window: usize, strategy: ScanStrategy, json: bool) -> CmdResult {
    if window == 0 {
        return Err(Failure::Usage("--window must be positive".into()));
    }
    let s = parse_stream(stream)?;
    let report = mpal::mpal_prefixes_with(&s, m, depth, strategy, window)?;
    let out = if json {
        json_out(json!({
            "stream": s.name(),
            "m": m,
            "scanned": report.scanned,
            "prefix_lengths": report.prefix_lengths,
            "ratios": report.ratios.iter().map(rat_str).collect::<Vec<_>>(),
            "window": window,
            "tail_sup": report.tail_sup.as_ref().map(rat_str),
        }))
    } else {
        let mut o = String::new();
        let _ = writeln!(o, "stream: {}", s.name());
        let _ = writeln!(o, "m: {m}");
        let _ = writeln!(o, "scanned terms: {}", report.scanned);
        let _ = writeln!(o, "m-palindromic prefixes: {}", report.prefix_lengths.len());
        let lengths: Vec<String> = report.prefix_lengths.iter().map(usize::to_string).collect();
        let _ = writeln!(o, "lengths: {}", lengths.join(","));
        match &report.tail_sup {
            Some(t) => {
                let _ = writeln!(o, "tail sup over last {window} ratios: {t} ≈ {}", decimal(t, 12));
            }
            None => {
                let _ = writeln!(o, "tail sup over last {window} ratios: none ({} ratios)", report.ratios.len());
            }
        }
        o
    };
    Ok((true, out))
}

fn gen(args: &GenArgs, json: bool) -> CmdResult {
    let family = match &args.params {
        Some(p) => FamilySpec::from_parts(&args.family, Some(p)),
        None => args.family.parse(),
    }
    .map_err(|e| Failure::Usage(format!("invalid family {:?}: {e}", args.family)))?;
    let s = family.stream()?;
    let w = s.prefix(args.len);
    let out = if json {
        json_out(json!({ "family": s.name(), "len": args.len, "word": w.to_string() }))
    } else {
        format!("{w}\n")
    };
    Ok((true, out))
}

fn parse_periodic(s: &str) -> std::result::Result<EventuallyPeriodicWord, Failure> {
    s.parse::<EventuallyPeriodicWord>().map_err(|e| match e {
        Error::Parse(msg) => Failure::Usage(format!("invalid periodic word {s:?}: {msg}")),
        other => Failure::Domain(other),
    })
}

fn quad_solve(word: &str, json: bool) -> CmdResult {
    let e = parse_periodic(word)?;
    let x = quadratic::periodic_value(&e)?;
    let c = x.conjugate();
    let (a, b, cc) = x.minimal_polynomial();
    let reduced = x.is_reduced();
    let out = if json {
        json_out(json!({
            "word": e.to_string(),
            "P": x.p().to_string(),
            "D": x.d().to_string(),
            "Q": x.q().to_string(),
            "polynomial": [a.to_string(), b.to_string(), cc.to_string()],
            "reduced": reduced,
            "value": x.to_string(),
            "conjugate": c.to_string(),
        }))
    } else {
        let mut o = String::new();
        let _ = writeln!(o, "word: {e}");
        let _ = writeln!(o, "P: {}", x.p());
        let _ = writeln!(o, "D: {}", x.d());
        let _ = writeln!(o, "Q: {}", x.q());
        let _ = writeln!(o, "value: {x} ≈ {:.12}", x.approx());
        let _ = writeln!(o, "{}, reduced={reduced}", x.polynomial_string());
        let _ = writeln!(o, "conjugate: {c} ≈ {:.12}", c.approx());
        o
    };
    Ok((true, out))
}

fn quad_burger(word: &str, max_repeat: usize, json: bool) -> CmdResult {
    let period = if word.contains('|') {
        parse_periodic(word)?.period().clone()
    } else {
        parse_word(word)?
    };
    let r = quadratic::burger_split(&period, max_repeat)?;
    let found = r.verdict != BurgerVerdict::None;
    let out = if json {
        let witness = r.witness.as_ref().map(|w| {
            json!({
                "repeat": w.repeat,
                "shift": w.shift,
                "rotation": w.rotation.to_string(),
                "split": w.split,
            })
        });
        json_out(json!({
            "period": period.to_string(),
            "max_repeat": max_repeat,
            "verdict": format!("{:?}", r.verdict),
            "witness": witness,
        }))
    } else {
        let mut o = format!("verdict: {:?} (rotations of W^j, j <= {max_repeat})\n", r.verdict);
        if let Some(w) = &r.witness {
            let t = w.rotation.terms();
            let parts = match w.split {
                None => format!("({})", w.rotation),
                Some(k) => format!("({})·({})", Word::from(&t[..k]), Word::from(&t[k..])),
            };
            let _ = writeln!(o, "witness: W^{} rotated by {} = {parts}", w.repeat, w.shift);
        }
        o
    };
    Ok((found, out))
}

fn audit_schmidt(stream: &str, m: u64, w: &str, depth: usize, json: bool) -> CmdResult {
    let w = parse_rational(w).map_err(|e| Failure::Usage(format!("invalid --w: {e}")))?;
    let s = parse_stream(stream)?;
    let audit = analysis::schmidt_audit(&s, m, &w, depth)?;
    let verdict = audit.all_schmidt() && audit.goal_from_i0();
    let out = if json {
        let records: Vec<Value> = audit
            .records
            .iter()
            .map(|r| {
                json!({
                    "index": r.index,
                    "p_i": r.p_i.to_string(),
                    "q_i": r.q_i.to_string(),
                    "p_prev": r.p_prev.to_string(),
                    "q_prev": r.q_prev.to_string(),
                    "triple": [r.p_prev.to_string(), r.q_prev.to_string(), (&r.p_i * m).to_string()],
                    "lhs": interval_json(&r.lhs),
                    "bound1": rat_str(&r.bound1),
                    "schmidt": r.schmidt,
                    "goal": r.goal,
                    "approximation": r.approximation,
                })
            })
            .collect();
        json_out(json!({
            "stream": s.name(),
            "m": m,
            "w": rat_str(&w),
            "depth": depth,
            "enclosure_depth": audit.enclosure_depth,
            "enclosure": interval_json(&audit.enclosure),
            "records": records,
            "i0": audit.i0,
            "all_schmidt": audit.all_schmidt(),
            "goal_from_i0": audit.goal_from_i0(),
        }))
    } else {
        let mut o = String::new();
        let _ = writeln!(o, "stream: {}", s.name());
        let _ = writeln!(o, "m: {m}, w: {w}, depth: {depth}, enclosure depth: {}", audit.enclosure_depth);
        let _ = writeln!(o, "alpha ≈ {}", decimal(&audit.enclosure.lo, 20));
        let _ = writeln!(o, "records: {}", audit.records.len());
        for r in &audit.records {
            let _ = writeln!(
                o,
                "i={} q_i={} q_(i-1)={} schmidt={} goal={} approximation={}",
                r.index,
                digits_summary(&r.q_i),
                digits_summary(&r.q_prev),
                r.schmidt,
                r.goal,
                r.approximation
            );
        }
        match audit.i0 {
            Some(i0) => {
                let _ = writeln!(o, "i0: {i0}");
            }
            None if audit.records.is_empty() => {
                let _ = writeln!(o, "i0: none (no {m}-palindromic prefixes at audited depth)");
            }
            None => {
                let _ = writeln!(o, "i0: none (goal fails at the last audited record)");
            }
        }
        let _ = writeln!(o, "schmidt certified at every record: {}", audit.all_schmidt());
        let _ = writeln!(o, "goal holds for every audited i >= i0: {}", audit.goal_from_i0());
        o
    };
    Ok((verdict, out))
}

/// The integer itself when short, otherwise its leading digits and length.
fn digits_summary(n: &BigInt) -> String {
    let s = n.to_string();
    if s.len() <= 24 {
        s
    } else {
        format!("{}…({} digits)", &s[..12], s.len())
    }
}

fn evidence_json(e: &RepetitionEvidence) -> Value {
    json!({
        "v_len": e.v.len(),
        "u_len": e.u.len(),
        "v": e.v.to_string(),
        "w": rat_str(&e.w),
        "ratio": rat_str(&e.ratio),
        "truncated": e.truncated,
    })
}

fn audit_stammer(
    stream: &str,
    depth: usize,
    max_period: usize,
    offset_ratio: Option<&str>,
    top: usize,
    json: bool,
) -> CmdResult {
    let ratio = offset_ratio
        .map(parse_rational)
        .transpose()
        .map_err(|e| Failure::Usage(format!("invalid --offset-ratio: {e}")))?;
    let s = parse_stream(stream)?;
    let evidence = match &ratio {
        None => analysis::initial_exponent_scan(&s, depth, max_period)?,
        Some(r) => analysis::offset_exponent_scan(&s, depth, max_period, r)?,
    };
    let sup = evidence.first().map(|e| e.w.clone()).unwrap_or_else(Rational::zero);
    let out = if json {
        json_out(json!({
            "stream": s.name(),
            "depth": depth,
            "max_period": max_period,
            "offset_ratio": ratio.as_ref().map(rat_str),
            "sup_w": rat_str(&sup),
            "evidence": evidence.iter().map(evidence_json).collect::<Vec<_>>(),
        }))
    } else {
        let mut o = String::new();
        let _ = writeln!(o, "stream: {}", s.name());
        let mode = match &ratio {
            None => "initial (U empty)".to_string(),
            Some(r) => format!("offset |U| <= {r}·|V|"),
        };
        let _ = writeln!(o, "scan: {mode}, depth {depth}, periods 1..={max_period}");
        let _ = writeln!(o, "largest exponent at audited depth: {sup} ≈ {}", decimal(&sup, 6));
        for e in evidence.iter().take(top) {
            let _ = writeln!(
                o,
                "|V|={} |U|={} w={} ≈ {}{}",
                e.v.len(),
                e.u.len(),
                e.w,
                decimal(&e.w, 6),
                if e.truncated { " (reaches end of prefix)" } else { "" }
            );
        }
        o
    };
    Ok((true, out))
}
