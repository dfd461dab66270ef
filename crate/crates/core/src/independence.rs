//! Independence of the `U_1` basis identities, decided on small graded
//! nilpotent algebras of strictly upper triangular matrices.
//!
//! A generator is independent of the others when some algebra satisfies all
//! the others but not it. The algebras here have finite support, so "all the
//! others" reduces to the finitely many instances whose variable degrees lie
//! in the support; every other instance holds vacuously.

use std::collections::HashMap;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::algebras::{AlgebraError, StructureAlgebra, ThinAlgebra};
use crate::degree::Degree;
use crate::exec::{map_collect, Execution};
use crate::field::{is_prime, FieldError, FieldSpec};
use crate::freelie::{normalize, Ambient, Generator, Monomial, MultilinearPoly};
use crate::tideal::{consequence_span, is_member, Family};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndependenceError {
    #[error("characteristic {0} is neither 0 nor an odd prime")]
    BadCharacteristic(u64),
    #[error("({r},{s}) is not a pair generator in characteristic {p}")]
    NotAPair { r: i64, s: i64, p: u64 },
    #[error("({a},{b},{c}) does not satisfy a > b > c")]
    NotDecreasing { a: i64, b: i64, c: i64 },
    #[error("({a},{b},{c}) violates {condition} mod {p}")]
    Congruence { a: i64, b: i64, c: i64, p: u64, condition: &'static str },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

fn field_for(p: u64) -> Result<FieldSpec, IndependenceError> {
    if p != 0 && (p == 2 || !is_prime(p)) {
        return Err(IndependenceError::BadCharacteristic(p));
    }
    Ok(FieldSpec::from_characteristic(p)?)
}

fn unit(i: usize, j: usize) -> String {
    format!("E{i}{j}")
}

/// `UT(3)` graded so that `E12`, `E23`, `E13` have degrees `r`, `s`, `r+s`;
/// the arguments are put in increasing order first.
pub fn build_h(r: i64, s: i64, field: FieldSpec) -> Result<StructureAlgebra, IndependenceError> {
    let (r, s) = (r.min(s), r.max(s));
    let basis = vec![
        (unit(1, 2), Degree::Int(r)),
        (unit(2, 3), Degree::Int(s)),
        (unit(1, 3), Degree::Int(r + s)),
    ];
    Ok(StructureAlgebra::new(
        format!("H({r},{s})"),
        field,
        basis,
        &[(0, 1, vec![(2, field.one())])],
    )?)
}

/// `UT(4)` with `E12, E23, E34` in degrees `a, b, c` and the rest graded by sums.
pub fn build_l4(a: i64, b: i64, c: i64, field: FieldSpec) -> Result<StructureAlgebra, IndependenceError> {
    let basis = vec![
        (unit(1, 2), Degree::Int(a)),
        (unit(2, 3), Degree::Int(b)),
        (unit(3, 4), Degree::Int(c)),
        (unit(1, 3), Degree::Int(a + b)),
        (unit(2, 4), Degree::Int(b + c)),
        (unit(1, 4), Degree::Int(a + b + c)),
    ];
    let one = field.one();
    Ok(StructureAlgebra::new(
        format!("L({a},{b},{c})"),
        field,
        basis,
        &[
            (0, 1, vec![(3, one.clone())]),
            (1, 2, vec![(4, one.clone())]),
            (0, 4, vec![(5, one.clone())]),
            (3, 2, vec![(5, one)]),
        ],
    )?)
}

/// A substitution on which an identity fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailingSubstitution {
    pub generator: String,
    /// `x_i ↦ basis label`, by variable index.
    pub substitution: Vec<(u32, String)>,
    /// Nonzero value, as `coefficient*label` terms.
    pub value: Vec<(String, String)>,
}

fn failing_substitution(alg: &StructureAlgebra, name: &str, p: &MultilinearPoly) -> Option<FailingSubstitution> {
    let w = alg.witness(p)?;
    let value = alg.eval_poly(p, &w);
    Some(FailingSubstitution {
        generator: name.to_string(),
        substitution: w
            .iter()
            .sorted()
            .map(|(&i, &b)| (i, alg.labels()[b].clone()))
            .collect(),
        value: value
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (c.to_string(), alg.labels()[k].clone()))
            .collect(),
    })
}

/// Distinct degrees with a nonzero component, sorted.
fn support_ints(alg: &StructureAlgebra) -> Vec<i64> {
    alg.support().iter().filter_map(Degree::as_int).sorted().dedup().collect()
}

fn related(r: i64, s: i64, p: u64) -> bool {
    if p == 0 {
        r == s
    } else {
        (r - s).rem_euclid(p as i64) == 0
    }
}

/// Result of one independence check.
#[derive(Debug, Clone, Serialize)]
pub struct IndependenceEvidence {
    pub generator: String,
    pub algebra: String,
    pub characteristic: u64,
    pub support: Vec<i64>,
    pub nilpotency_class: Option<usize>,
    /// How the target generator fails on the algebra.
    pub target_fails: Option<FailingSubstitution>,
    /// Other instances checked, and any that failed (must be none).
    pub others_checked: usize,
    pub others_failing: Vec<FailingSubstitution>,
    pub independent: bool,
}

/// The pair generator `[x1^r, x2^s]` fails on `H(r,s)`, which satisfies all
/// triple generators and every other pair generator.
pub fn check_pair_independence(r: i64, s: i64, p: u64) -> Result<IndependenceEvidence, IndependenceError> {
    let field = field_for(p)?;
    if !related(r, s, p) {
        return Err(IndependenceError::NotAPair { r, s, p });
    }
    let h = build_h(r, s, field)?;
    let target = Generator::CommPair { r, s };
    let target_poly = target.build(field).expect("a bracket of two variables is never zero");
    let target_fails = failing_substitution(&h, &target.to_string(), &target_poly);

    let supp = support_ints(&h);
    let mut others = Vec::new();
    for (&u, &v, &w) in itertools::iproduct!(&supp, &supp, &supp) {
        others.push(Generator::Triple { a: u, b: v, c: w });
    }
    for (&u, &v) in itertools::iproduct!(&supp, &supp) {
        if related(u, v, p) && (u, v) != (r, s) && (v, u) != (r, s) {
            others.push(Generator::CommPair { r: u, s: v });
        }
    }
    finish(h, target.to_string(), p, supp, target_fails, others)
}

fn finish(
    alg: StructureAlgebra,
    generator: String,
    p: u64,
    support: Vec<i64>,
    target_fails: Option<FailingSubstitution>,
    others: Vec<Generator>,
) -> Result<IndependenceEvidence, IndependenceError> {
    let field = alg.field();
    let mut checked = 0;
    let mut failing = Vec::new();
    for gen in others {
        let Ok(poly) = gen.build(field) else {
            continue;
        };
        checked += 1;
        if let Some(f) = failing_substitution(&alg, &gen.to_string(), &poly) {
            failing.push(f);
        }
    }
    Ok(IndependenceEvidence {
        generator,
        algebra: alg.name().to_string(),
        characteristic: p,
        support,
        nilpotency_class: alg.nilpotency_class(),
        independent: target_fails.is_some() && failing.is_empty(),
        target_fails,
        others_checked: checked,
        others_failing: failing,
    })
}

/// The congruence conditions on a triple generator, as a named failure.
fn triple_condition(a: i64, b: i64, c: i64, p: u64) -> Option<&'static str> {
    let eq = |x: i64, y: i64| (x - y).rem_euclid(p as i64) == 0;
    if eq(a, b) {
        Some("a != b")
    } else if eq(a, c) {
        Some("a != c")
    } else if eq(a, b + c) {
        Some("a != b+c")
    } else if eq(b, a + c) {
        Some("b != a+c")
    } else {
        None
    }
}

/// The triple generator `f_abc` fails on `L(a,b,c)`, which satisfies every
/// pair generator and both monomials `[x^a', x^b', x^c']`, `[x^a', x^c', x^b']`
/// for every other `a' > b' > c'`.
///
/// The stated incongruences do not rule out `b ≡ c` or `c ≡ a+b`; then
/// `[E23, E34]` or `[E13, E34]` breaks a pair generator and the result is
/// `false`, with the failing pair in the evidence.
pub fn check_triple_independence(a: i64, b: i64, c: i64, p: u64) -> Result<IndependenceEvidence, IndependenceError> {
    precheck_triple(a, b, c, p)?;
    if let Some(condition) = triple_condition(a, b, c, p) {
        return Err(IndependenceError::Congruence { a, b, c, p, condition });
    }
    triple_evidence(a, b, c, p)
}

/// As [`check_triple_independence`], with `b ≢ c` and `c ≢ a+b` added, so
/// that no two noncommuting basis elements of `L(a,b,c)` have congruent
/// degrees.
pub fn check_triple_separation(a: i64, b: i64, c: i64, p: u64) -> Result<IndependenceEvidence, IndependenceError> {
    precheck_triple(a, b, c, p)?;
    if let Some(condition) = separating_condition(a, b, c, p) {
        return Err(IndependenceError::Congruence { a, b, c, p, condition });
    }
    triple_evidence(a, b, c, p)
}

fn precheck_triple(a: i64, b: i64, c: i64, p: u64) -> Result<(), IndependenceError> {
    if p == 0 {
        return Err(IndependenceError::BadCharacteristic(0));
    }
    field_for(p)?;
    if !(a > b && b > c) {
        return Err(IndependenceError::NotDecreasing { a, b, c });
    }
    Ok(())
}

/// The first violated condition among the stated four plus `b ≢ c`, `c ≢ a+b`.
pub fn separating_condition(a: i64, b: i64, c: i64, p: u64) -> Option<&'static str> {
    let eq = |x: i64, y: i64| (x - y).rem_euclid(p as i64) == 0;
    if let Some(stated) = triple_condition(a, b, c, p) {
        Some(stated)
    } else if eq(b, c) {
        Some("b != c")
    } else if eq(c, a + b) {
        Some("c != a+b")
    } else {
        None
    }
}

fn triple_evidence(a: i64, b: i64, c: i64, p: u64) -> Result<IndependenceEvidence, IndependenceError> {
    let field = field_for(p)?;
    let l = build_l4(a, b, c, field)?;
    let target = Generator::Triple { a, b, c };
    let target_fails = target
        .build(field)
        .ok()
        .and_then(|poly| failing_substitution(&l, &target.to_string(), &poly));

    let supp = support_ints(&l);
    let mut failing = Vec::new();
    let mut checked = 0;
    for (&u, &v) in itertools::iproduct!(&supp, &supp) {
        if related(u, v, p) {
            let gen = Generator::CommPair { r: u, s: v };
            checked += 1;
            if let Some(f) = failing_substitution(&l, &gen.to_string(), &gen.build(field).unwrap()) {
                failing.push(f);
            }
        }
    }
    for (x, y, z) in supp.iter().copied().tuple_combinations::<(_, _, _)>() {
        // supp is sorted ascending, so (z, y, x) is decreasing.
        let (a2, b2, c2) = (z, y, x);
        if (a2, b2, c2) == (a, b, c) {
            continue;
        }
        for order in [[a2, b2, c2], [a2, c2, b2]] {
            let idx = [1u32, 2, 3];
            let vars = if order == [a2, b2, c2] { idx } else { [1, 3, 2] };
            let m = Monomial::new(
                vars.iter()
                    .zip(order)
                    .map(|(&i, d)| crate::freelie::Variable::new(i, Degree::Int(d)))
                    .collect(),
            )
            .unwrap();
            let poly = normalize(&[(field.one(), m.to_expr())]).unwrap();
            checked += 1;
            if let Some(f) = failing_substitution(&l, &m.to_string(), &poly) {
                failing.push(f);
            }
        }
    }
    Ok(IndependenceEvidence {
        generator: target.to_string(),
        algebra: l.name().to_string(),
        characteristic: p,
        support: supp,
        nilpotency_class: l.nilpotency_class(),
        independent: target_fails.is_some() && failing.is_empty(),
        target_fails,
        others_checked: checked,
        others_failing: failing,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FilterKind {
    Pair,
    Triple,
}

/// Membership in the minimal generating family. Pairs `(a, b)` need
/// `b − a ≥ 0` divisible by `p` (`a = b` in characteristic 0); triples need
/// `a > b > c` and the four incongruences.
pub fn minimal_filter(kind: FilterKind, params: &[i64], p: u64) -> bool {
    match (kind, params) {
        (FilterKind::Pair, &[a, b]) => b - a >= 0 && related(a, b, p),
        (FilterKind::Triple, &[a, b, c]) => a > b && b > c && (p == 0 || triple_condition(a, b, c, p).is_none()),
        _ => false,
    }
}

/// `f_abc` with the last two degrees swapped is `−f_abc` after renaming
/// variables; returns the sign and the representative with `b ≥ c`.
pub fn triple_representative(a: i64, b: i64, c: i64) -> (i64, (i64, i64, i64)) {
    if b >= c {
        (1, (a, b, c))
    } else {
        (-1, (a, c, b))
    }
}

/// Evidence that the pair family has no finite generating subfamily.
#[derive(Debug, Clone, Serialize)]
pub struct LevelEvidence {
    pub level: usize,
    pub generator: String,
    pub lower: Vec<String>,
    /// The generator is not in the consequence span of the lower levels in its own `P_2`.
    pub outside_span: bool,
    /// `H` fails the generator while satisfying every lower level.
    pub separated: bool,
}

/// Level `N` of the pair family is `[x^N, x^(N+p)]`.
pub fn pair_level(n: usize, p: u64) -> (i64, i64) {
    (n as i64, n as i64 + p as i64)
}

pub fn no_finite_basis_evidence(p: u64, levels: usize, exec: Execution) -> Result<Vec<LevelEvidence>, IndependenceError> {
    let field = field_for(p)?;
    if p == 0 {
        return Err(IndependenceError::BadCharacteristic(0));
    }
    let u1 = ThinAlgebra::u1(field);
    let ns: Vec<usize> = (1..=levels).collect();
    map_collect(&ns, exec, |&n| {
        let lower: Vec<(i64, i64)> = (1..=n).map(|k| pair_level(k, p)).collect();
        let (r, s) = pair_level(n + 1, p);
        let target = Generator::CommPair { r, s };
        let poly = target.build(field).expect("nonzero");
        let g = [Degree::Int(r), Degree::Int(s)];
        let span = consequence_span(&g, &u1, &[Family::CommPairAt(lower.clone())], None);
        let outside_span = !is_member(&poly, &Ambient::for_degrees(&g), &span.span).expect("same ambient");

        let h = build_h(r, s, field)?;
        let fails = h.witness(&poly).is_some();
        let lower_hold = lower.iter().all(|&(u, v)| {
            let q = Generator::CommPair { r: u, s: v }.build(field).expect("nonzero");
            h.is_identity(&q)
        });
        Ok(LevelEvidence {
            level: n,
            generator: target.to_string(),
            lower: lower.iter().map(|(u, v)| format!("comm_pair({u},{v})")).collect(),
            outside_span,
            separated: fails && lower_hold,
        })
    })
    .into_iter()
    .collect()
}

/// Basis-label substitution map, for callers that want to re-evaluate.
pub fn substitution_map(f: &FailingSubstitution, alg: &StructureAlgebra) -> HashMap<u32, usize> {
    f.substitution
        .iter()
        .map(|(i, label)| (*i, alg.labels().iter().position(|l| l == label).expect("label exists")))
        .collect()
}
