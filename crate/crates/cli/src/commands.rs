use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use itertools::Itertools;
use serde::Serialize;

use gradid_core::algebras::{ThinAlgebra, ThinKind};
use gradid_core::degree::{Degree, RawDegree};
use gradid_core::exec::Execution;
use gradid_core::field::FieldSpec;
use gradid_core::freelie::{normalize, Generator};
use gradid_core::independence::{
    check_pair_independence, check_triple_independence, check_triple_separation, minimal_filter,
    no_finite_basis_evidence, FilterKind,
};
use gradid_core::selftest;
use gradid_core::tideal::{sweep, FamilySet, SweepConfig, DEFAULT_MAX_N, HARD_MAX_N};
use gradid_core::tuples::{classify, int_degrees, oracle_classify, u1_for, Certificate, DEFAULT_ORACLE_BOUND};

use crate::grammar::parse_poly;
use crate::report::Report;

#[derive(Debug, Parser)]
#[command(name = "gradid", version, about = "Exact checks of graded polynomial identities of U1, W1 and sl_q")]
pub struct Cli {
    /// Also write the report as JSON to PATH ("-" for stdout, replacing the text output).
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<String>,
    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a degree tuple is good or bad in U1.
    Classify {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        tuple: Vec<i64>,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        /// Cross-check against brute-force evaluation of every order.
        #[arg(long)]
        oracle: bool,
    },
    /// Decide whether a polynomial is a graded identity.
    Check {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        algebra: String,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Derive the scalar of the swap (three degrees) or degree-four (four degrees) generator.
    Lambda {
        #[arg(long)]
        algebra: String,
        /// e.g. "(1,0),(0,1),(1,1)" or "1,2,3".
        #[arg(long, allow_hyphen_values = true)]
        degrees: String,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Compare the consequence span of the basis with the identities on a grid of tuples.
    VerifyBasis(VerifyBasisArgs),
    /// Check independence of the pair and triple generators on their counterexample algebras.
    VerifyIndependence(IndependenceArgs),
    /// Run the randomized property suites.
    Selftest {
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct VerifyBasisArgs {
    #[arg(long)]
    pub algebra: String,
    #[arg(long = "char", default_value_t = 0)]
    pub characteristic: u64,
    #[arg(long, default_value_t = 1)]
    pub n_min: usize,
    #[arg(long, default_value_t = 4)]
    pub n_max: usize,
    /// Defaults to -entry-max.
    #[arg(long, allow_negative_numbers = true)]
    pub entry_min: Option<i64>,
    #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
    pub entry_max: i64,
    /// Permit n = 6.
    #[arg(long)]
    pub allow_n6: bool,
    #[arg(long)]
    pub sequential: bool,
    /// Generate every consequence instead of stopping at the kernel dimension.
    #[arg(long)]
    pub exhaustive: bool,
    /// Per-tuple lines, and echelon rows of each span in the JSON.
    #[arg(long)]
    pub verbose: bool,
}

#[derive(Debug, Args)]
pub struct IndependenceArgs {
    #[arg(long = "char")]
    pub characteristic: u64,
    #[arg(long, default_value_t = 6)]
    pub pairs_max: i64,
    #[arg(long, default_value_t = 4)]
    pub triples_max: i64,
    /// Defaults to -triples-max.
    #[arg(long, allow_negative_numbers = true)]
    pub triples_min: Option<i64>,
    /// Levels of the no-finite-basis chain (char p only).
    #[arg(long, default_value_t = 5)]
    pub levels: usize,
    /// Use the triples with b != c and c != a+b added to the stated conditions.
    #[arg(long)]
    pub separating: bool,
    #[arg(long)]
    pub sequential: bool,
}

/// Bad input: exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn field_for(p: u64) -> Result<FieldSpec, UsageError> {
    Ok(FieldSpec::from_characteristic(p)?)
}

pub fn algebra_for(name: &str, p: u64) -> Result<ThinAlgebra, UsageError> {
    let kind: ThinKind = name.parse()?;
    let field = field_for(p)?;
    Ok(match kind {
        ThinKind::U1 => ThinAlgebra::u1(field),
        ThinKind::W1 => ThinAlgebra::w1(field),
        ThinKind::Pauli(q) if p == 0 => ThinAlgebra::pauli_rational(q)?,
        ThinKind::Pauli(q) => ThinAlgebra::pauli(q, field)?,
    })
}

fn pauli_q(a: &ThinAlgebra) -> Option<u64> {
    match a.kind() {
        ThinKind::Pauli(q) => Some(q),
        _ => None,
    }
}

/// Splits `"(1,0),(0,1)"` or `"1,-2"` into degrees.
pub fn parse_degree_list(text: &str, pauli_q: Option<u64>) -> Result<Vec<Degree>, UsageError> {
    let mut items = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                items.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    items.push(&text[start..]);
    items
        .into_iter()
        .map(|s| Ok(s.parse::<RawDegree>()?.into_degree(pauli_q)?))
        .collect()
}

fn describe(c: &Certificate) -> String {
    match c {
        Certificate::Witness { order } => format!("non-vanishing order {order:?}"),
        Certificate::Pattern(p) => p.to_string(),
        Certificate::Exhausted { orders } => format!("all {orders} orders vanish"),
    }
}

fn exec(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

pub fn run(cli: &Cli) -> Result<Report, UsageError> {
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Classify { tuple, characteristic, oracle } => run_classify(tuple, *characteristic, *oracle)?,
        Command::Check { poly, algebra, characteristic } => run_check(poly, algebra, *characteristic)?,
        Command::Lambda { algebra, degrees, characteristic } => run_lambda(algebra, degrees, *characteristic)?,
        Command::VerifyBasis(args) => run_verify_basis(args)?,
        Command::VerifyIndependence(args) => run_independence(args)?,
        Command::Selftest { cases, seed } => run_selftest(*cases, *seed),
    };
    if cli.timing {
        let ms = start.elapsed().as_millis();
        report.timing = Some([("elapsed_ms".to_string(), ms.to_string())].into());
        report.line(format!("elapsed: {ms} ms"));
    }
    Ok(report)
}

fn run_classify(tuple: &[i64], p: u64, oracle: bool) -> Result<Report, UsageError> {
    field_for(p)?;
    let mut r = Report::new("classify");
    r.param("tuple", tuple.iter().join(",")).param("char", p);
    let class = classify(tuple, p)?;
    r.line(format!("tuple ({}) char {p}: {:?}", tuple.iter().join(","), class.verdict).to_lowercase());
    r.line(format!("certificate: {}", describe(&class.certificate)));
    r.verdict(&class);
    if oracle {
        let slow = oracle_classify(&int_degrees(tuple), &u1_for(p), DEFAULT_ORACLE_BOUND)?;
        let agrees = slow.verdict == class.verdict;
        r.line(format!("oracle agrees: {agrees}"));
        if !agrees {
            r.counterexample(&slow);
        }
    }
    Ok(r)
}

#[derive(Serialize)]
struct CheckVerdict {
    poly: String,
    normal_form: String,
    identity: bool,
    value: String,
}

fn run_check(poly: &str, algebra: &str, p: u64) -> Result<Report, UsageError> {
    let a = algebra_for(algebra, p)?;
    let src = parse_poly(poly)?;
    let terms = src.resolve(a.field(), pauli_q(&a)).map_err(UsageError)?;
    let f = normalize(&terms)?;
    let value = a.eval_poly(&f);
    let identity = value.is_zero();
    let mut r = Report::new("check");
    r.param("poly", &src).param("algebra", a.kind()).param("char", p);
    r.field = Some(a.field().to_string());
    r.line(format!("{src}"));
    r.line(format!("normal form: {f}"));
    r.line(format!("identity: {identity}"));
    let v = CheckVerdict { poly: src.to_string(), normal_form: f.to_string(), identity, value: value.to_string() };
    if identity {
        r.verdict(&v);
    } else {
        r.line(format!("value on the canonical basis: {value}"));
        r.counterexample(&v);
    }
    Ok(r)
}

fn run_lambda(algebra: &str, degrees: &str, p: u64) -> Result<Report, UsageError> {
    let a = algebra_for(algebra, p)?;
    let d = parse_degree_list(degrees, pauli_q(&a))?;
    let (lambda, gen) = match *d.as_slice() {
        [g, h, k] => {
            let l = a.derive_swap_lambda(g, h, k);
            (l.clone(), l.map(|lambda| Generator::SwapLambda { g, h, k, lambda }))
        }
        [g1, g2, g3, g4] => {
            let l = a.derive_pauli_lambda([g1, g2, g3, g4]);
            (l.clone(), l.map(|lambda| Generator::PauliDeg4 { g: [g1, g2, g3, g4], lambda }))
        }
        _ => return Err(UsageError(format!("expected 3 or 4 degrees, got {}", d.len()))),
    };
    let mut r = Report::new("lambda");
    r.param("algebra", a.kind()).param("degrees", d.iter().join(",")).param("char", p);
    r.field = Some(a.field().to_string());
    match (lambda, gen) {
        (Some(l), Some(g)) => {
            let holds = g.build(a.field()).map(|f| a.is_identity(&f)).unwrap_or(true);
            r.line(format!("lambda = {l}"));
            r.line(format!("{g} holds: {holds}"));
            let v = serde_json::json!({ "generator": g.to_string(), "lambda": l.to_string(), "holds": holds });
            if holds {
                r.verdict(&v);
            } else {
                r.counterexample(&v);
            }
        }
        _ => {
            r.line("lambda undefined: the reference monomial vanishes");
            r.counterexample(&serde_json::json!({ "degrees": d, "lambda": null }));
        }
    }
    Ok(r)
}

fn run_verify_basis(args: &VerifyBasisArgs) -> Result<Report, UsageError> {
    let a = algebra_for(&args.algebra, args.characteristic)?;
    let bound = if args.allow_n6 { HARD_MAX_N } else { DEFAULT_MAX_N };
    if args.n_max > bound || args.n_min == 0 || args.n_min > args.n_max {
        return Err(UsageError(format!(
            "need 1 <= n-min <= n-max <= {bound}{}",
            if args.allow_n6 { "" } else { " (--allow-n6 raises the bound to 6)" }
        )));
    }
    let families = FamilySet::for_algebra(&a);
    let mut cfg = match a.kind() {
        ThinKind::Pauli(_) => SweepConfig::finite_group(a.clone(), families, args.n_max),
        _ => {
            let lo = args.entry_min.unwrap_or(-args.entry_max);
            if lo > args.entry_max {
                return Err(UsageError(format!("empty entry range [{lo},{}]", args.entry_max)));
            }
            SweepConfig::integer(a.clone(), families, args.n_max, lo, args.entry_max)
        }
    };
    cfg.n_min = args.n_min;
    cfg.options.bound = bound;
    cfg.options.exhaustive = args.exhaustive;
    cfg.options.keep_rows = args.verbose;
    cfg.execution = exec(args.sequential);
    let rep = sweep(&cfg)?;

    let mut r = Report::new("verify-basis");
    r.param("algebra", a.kind())
        .param("char", args.characteristic)
        .param("n-min", args.n_min)
        .param("n-max", args.n_max)
        .param("alphabet", rep.alphabet.iter().join(","))
        .param("families", rep.families.iter().join(","))
        .param("exhaustive", args.exhaustive);
    r.field = Some(rep.field.to_string());
    if args.verbose {
        for v in &rep.verdicts {
            r.line(format!(
                "({}) {:?}: dim {} kernel {} span {} verified {}",
                v.tuple.iter().join(","),
                v.class,
                v.dim_ambient,
                v.dim_kernel,
                v.dim_span,
                v.verified
            ));
        }
    }
    for flag in &rep.flags {
        r.line(format!("flag: {flag}"));
    }
    r.line(format!(
        "{} over {}: {} tuples ({} good, {} bad), {} counterexamples: {}",
        rep.algebra,
        rep.field,
        rep.tuples_checked,
        rep.good,
        rep.bad,
        rep.counterexamples.len(),
        if rep.passed { "PASS" } else { "FAIL" }
    ));
    for v in &rep.verdicts {
        r.verdict(v);
    }
    for c in &rep.counterexamples {
        r.counterexample(c);
    }
    Ok(r)
}

fn run_independence(args: &IndependenceArgs) -> Result<Report, UsageError> {
    let p = args.characteristic;
    field_for(p)?;
    let mut r = Report::new("verify-independence");
    r.param("char", p)
        .param("pairs-max", args.pairs_max)
        .param("triples-max", args.triples_max)
        .param("separating", args.separating);
    let m = args.pairs_max;
    let pairs: Vec<(i64, i64)> = if p == 0 {
        (-m..=m).map(|k| (k, k)).collect()
    } else {
        (-m..=m)
            .cartesian_product(-m..=m)
            .filter(|&(a, b)| minimal_filter(FilterKind::Pair, &[a, b], p))
            .collect()
    };
    let (mut ok, mut bad) = (0, 0);
    for (a, b) in pairs {
        let e = check_pair_independence(a, b, p)?;
        if e.independent {
            ok += 1;
            r.verdict(&e);
        } else {
            bad += 1;
            r.counterexample(&e);
        }
    }
    r.line(format!("pairs: {ok} independent, {bad} not"));

    if p != 0 {
        let lo = args.triples_min.unwrap_or(-args.triples_max);
        r.param("triples-min", lo);
        let (mut ok, mut bad) = (0, 0);
        for (c, b, a) in (lo..=args.triples_max).tuple_combinations() {
            let e = if args.separating {
                match check_triple_separation(a, b, c, p) {
                    Ok(e) => e,
                    Err(_) => continue,
                }
            } else {
                if !minimal_filter(FilterKind::Triple, &[a, b, c], p) {
                    continue;
                }
                check_triple_independence(a, b, c, p)?
            };
            if e.independent {
                ok += 1;
                r.verdict(&e);
            } else {
                bad += 1;
                let why = e.others_failing.iter().map(|f| f.generator.as_str()).join(", ");
                r.line(format!("triple ({a},{b},{c}): not separated by {} ({why} fails)", e.algebra));
                r.counterexample(&e);
            }
        }
        r.line(format!("triples: {ok} independent, {bad} not"));

        r.param("levels", args.levels);
        let chain = no_finite_basis_evidence(p, args.levels, exec(args.sequential))?;
        let broken = chain.iter().filter(|e| !(e.outside_span && e.separated)).count();
        for e in &chain {
            if e.outside_span && e.separated {
                r.verdict(e);
            } else {
                r.counterexample(e);
            }
        }
        r.line(format!("no-finite-basis chain: {} levels, {broken} broken", chain.len()));
    }
    r.line(if r.passed { "PASS" } else { "FAIL" });
    Ok(r)
}

fn run_selftest(cases: usize, seed: u64) -> Report {
    let mut r = Report::new("selftest");
    r.param("cases", cases).param("seed", seed);
    for s in selftest::run_all(seed, cases) {
        r.line(format!(
            "{:<18} {} ({} cases, {} failures)",
            s.name,
            if s.passed() { "PASS" } else { "FAIL" },
            s.cases,
            s.failures
        ));
        if s.passed() {
            r.verdict(&s);
        } else {
            r.counterexample(&s);
        }
    }
    r
}
