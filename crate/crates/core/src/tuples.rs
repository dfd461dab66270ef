//! Good and bad degree tuples.
//!
//! A tuple `g` is good for an algebra when `P_n^g` is not contained in its
//! graded identities, i.e. some left-normed order of `x_1^{g_1}, …, x_n^{g_n}`
//! does not vanish. For `U_1` this has a closed-form characterization,
//! implemented in [`classify`] and checked against the exhaustive
//! [`oracle_classify`].

use std::fmt;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::algebras::ThinAlgebra;
use crate::degree::Degree;
use crate::field::FieldSpec;
use crate::freelie::Monomial;

pub const DEFAULT_ORACLE_BOUND: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TupleError {
    #[error("tuple of length {n} exceeds the exhaustive bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("empty tuple")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Good,
    Bad,
}

/// Which arithmetic pattern made a tuple bad.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "pattern", rename_all = "snake_case")]
pub enum BadPattern {
    /// Every entry vanishes (mod p), with at least two entries.
    AllZeroResidues,
    /// The nonzero entries all equal `g`.
    AllEqual { g: i64 },
    /// Entries `g` (`count` times) and `−λ_i g`, with `count ≥ Σλ_i + 2`.
    MatchedNegatives { g: i64, lambdas: Vec<i64>, count: usize },
}

impl fmt::Display for BadPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BadPattern::AllZeroResidues => write!(f, "all entries vanish"),
            BadPattern::AllEqual { g } => write!(f, "sequence formed only by g={g}"),
            BadPattern::MatchedNegatives { g, lambdas, count } => write!(
                f,
                "g={g} occurs {count} times with negatives -λg for λ in [{}]",
                lambdas.iter().join(",")
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Positions (0-based) of a left-normed order that does not vanish.
    Witness { order: Vec<usize> },
    Pattern(BadPattern),
    /// Every one of `orders` left-normed orders vanishes.
    Exhausted { orders: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TupleClass {
    pub verdict: Verdict,
    pub certificate: Certificate,
}

impl TupleClass {
    pub fn is_good(&self) -> bool {
        self.verdict == Verdict::Good
    }
}

/// Nonzero entries (char 0) or nonzero residues in `[1, p-1]` (char p).
pub fn compact(g: &[i64], p: u64) -> Vec<i64> {
    if p == 0 {
        g.iter().copied().filter(|&x| x != 0).collect()
    } else {
        g.iter()
            .map(|&x| x.rem_euclid(p as i64))
            .filter(|&x| x != 0)
            .collect()
    }
}

fn inverse_mod(a: i64, p: i64) -> i64 {
    // p is prime, so a^(p-2) is the inverse.
    let (mut acc, mut base, mut e) = (1i64, a.rem_euclid(p), p - 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// The bad pattern of `g` over `U_1` in characteristic `p`, if any.
pub fn bad_pattern(g: &[i64], p: u64) -> Option<BadPattern> {
    let comp = compact(g, p);
    if comp.is_empty() {
        return (g.len() >= 2).then_some(BadPattern::AllZeroResidues);
    }
    if comp.len() == 1 {
        return None;
    }
    let bases = comp.iter().copied().unique().sorted_by_key(|x| (x.abs(), *x));
    'base: for base in bases {
        let mut lambdas = Vec::new();
        let mut count = 0;
        for &e in &comp {
            if e == base {
                count += 1;
            } else if p == 0 {
                if e % base != 0 || e / base >= 0 {
                    continue 'base;
                }
                lambdas.push(-(e / base));
            } else {
                let p = p as i64;
                lambdas.push((-e * inverse_mod(base, p)).rem_euclid(p));
            }
        }
        if lambdas.is_empty() {
            return Some(BadPattern::AllEqual { g: base });
        }
        if count as i64 >= lambdas.iter().sum::<i64>() + 2 {
            lambdas.sort_unstable();
            return Some(BadPattern::MatchedNegatives { g: base, lambdas, count });
        }
    }
    None
}

/// Closed-form classification over `U_1`; good tuples carry a witness order.
pub fn classify(g: &[i64], p: u64) -> Result<TupleClass, TupleError> {
    if g.is_empty() {
        return Err(TupleError::Empty);
    }
    if let Some(pattern) = bad_pattern(g, p) {
        return Ok(TupleClass {
            verdict: Verdict::Bad,
            certificate: Certificate::Pattern(pattern),
        });
    }
    let order = u1_witness(g, p).expect("characterization says good, so a nonvanishing order exists");
    Ok(TupleClass {
        verdict: Verdict::Good,
        certificate: Certificate::Witness { order },
    })
}

/// Depth-first search for a nonvanishing order over `U_1`, using
/// `[…, x^h]` nonzero iff `h ≢ (current degree)`.
fn u1_witness(g: &[i64], p: u64) -> Option<Vec<usize>> {
    let zero = |x: i64| if p == 0 { x == 0 } else { x.rem_euclid(p as i64) == 0 };
    fn go(g: &[i64], used: &mut Vec<bool>, order: &mut Vec<usize>, sum: i64, zero: &dyn Fn(i64) -> bool) -> bool {
        if order.len() == g.len() {
            return true;
        }
        let mut tried = Vec::new();
        for i in 0..g.len() {
            if used[i] || tried.contains(&g[i]) {
                continue;
            }
            tried.push(g[i]);
            if !order.is_empty() && zero(g[i] - sum) {
                continue;
            }
            used[i] = true;
            order.push(i);
            if go(g, used, order, sum + g[i], zero) {
                return true;
            }
            order.pop();
            used[i] = false;
        }
        false
    }
    let mut order = Vec::with_capacity(g.len());
    go(g, &mut vec![false; g.len()], &mut order, 0, &zero).then_some(order)
}

fn monomial_in_order(g: &[Degree], order: &[usize]) -> Monomial {
    Monomial::from_degrees(&order.iter().map(|&i| g[i]).collect::<Vec<_>>())
}

/// Exhaustive classification: good iff one of the `n!` left-normed orders
/// evaluates to nonzero in `a`.
pub fn oracle_classify(g: &[Degree], a: &ThinAlgebra, bound: usize) -> Result<TupleClass, TupleError> {
    if g.is_empty() {
        return Err(TupleError::Empty);
    }
    if g.len() > bound {
        return Err(TupleError::BoundExceeded { n: g.len(), bound });
    }
    let mut orders = 0;
    for order in (0..g.len()).permutations(g.len()) {
        orders += 1;
        if !a.eval_monomial(&monomial_in_order(g, &order)).0.is_zero() {
            return Ok(TupleClass {
                verdict: Verdict::Good,
                certificate: Certificate::Witness { order },
            });
        }
    }
    Ok(TupleClass {
        verdict: Verdict::Bad,
        certificate: Certificate::Exhausted { orders },
    })
}

/// A left-normed order of the tuple that does not vanish in `a`.
pub fn standard_order(g: &[Degree], a: &ThinAlgebra, bound: usize) -> Result<Option<Vec<usize>>, TupleError> {
    match oracle_classify(g, a, bound)? {
        TupleClass {
            certificate: Certificate::Witness { order },
            ..
        } => Ok(Some(order)),
        _ => Ok(None),
    }
}

/// Whether a good certificate really evaluates to nonzero.
pub fn witness_is_valid(g: &[Degree], a: &ThinAlgebra, order: &[usize]) -> bool {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    sorted == (0..g.len()).collect::<Vec<_>>() && !a.eval_monomial(&monomial_in_order(g, order)).0.is_zero()
}

/// `U_1` over the field of characteristic `p`.
pub fn u1_for(p: u64) -> ThinAlgebra {
    ThinAlgebra::u1(FieldSpec::from_characteristic(p).expect("0 or an odd prime"))
}

pub fn int_degrees(g: &[i64]) -> Vec<Degree> {
    g.iter().map(|&x| Degree::Int(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn class(g: &[i64], p: u64) -> TupleClass {
        classify(g, p).unwrap()
    }

    #[test]
    fn compact_examples() {
        assert_eq!(compact(&[0, 3, 0, -1], 0), vec![3, -1]);
        assert_eq!(compact(&[5, 1, 10], 5), vec![1]);
        assert!(compact(&[0, 0], 0).is_empty());
    }

    #[test]
    fn classify_examples() {
        assert!(class(&[1, 2], 0).is_good());
        assert_eq!(
            class(&[2, 2, 2], 0).certificate,
            Certificate::Pattern(BadPattern::AllEqual { g: 2 })
        );
        assert!(class(&[-1, 1, 1], 0).is_good());
        assert_eq!(
            class(&[-1, 1, 1, 1], 0).certificate,
            Certificate::Pattern(BadPattern::MatchedNegatives {
                g: 1,
                lambdas: vec![1],
                count: 3
            })
        );
        assert_eq!(
            class(&[1, 4], 3).certificate,
            Certificate::Pattern(BadPattern::AllEqual { g: 1 })
        );
        assert_eq!(class(&[0, 0], 0).certificate, Certificate::Pattern(BadPattern::AllZeroResidues));
        assert!(class(&[0], 0).is_good());
        assert!(class(&[0, 0, 7], 0).is_good());
    }

    #[test]
    fn oracle_examples() {
        let u1 = u1_for(0);
        let c = oracle_classify(&int_degrees(&[1, 2]), &u1, 7).unwrap();
        assert_eq!(c.certificate, Certificate::Witness { order: vec![0, 1] });
        assert_eq!(oracle_classify(&int_degrees(&[5, 5]), &u1, 7).unwrap().verdict, Verdict::Bad);
        assert_eq!(
            oracle_classify(&int_degrees(&[-1, 1, 1, 1]), &u1, 7).unwrap().certificate,
            Certificate::Exhausted { orders: 24 }
        );
        assert!(matches!(
            oracle_classify(&int_degrees(&[1; 8]), &u1, 7),
            Err(TupleError::BoundExceeded { n: 8, bound: 7 })
        ));
    }

    #[test]
    fn standard_order_examples() {
        let u1 = u1_for(0);
        assert_eq!(standard_order(&int_degrees(&[1, 2]), &u1, 7).unwrap(), Some(vec![0, 1]));
        let o = standard_order(&int_degrees(&[1, 1, 2]), &u1, 7).unwrap().unwrap();
        assert!(witness_is_valid(&int_degrees(&[1, 1, 2]), &u1, &o));
        assert_eq!(standard_order(&int_degrees(&[2, 2, 2]), &u1, 7).unwrap(), None);
    }

    #[test]
    fn closed_form_matches_oracle_exhaustively() {
        for (p, r) in [(0u64, 3i64), (3, 3), (5, 5)] {
            let u1 = u1_for(p);
            for n in 1..=5 {
                for t in (-r..=r).combinations_with_replacement(n) {
                    let fast = class(&t, p);
                    let slow = oracle_classify(&int_degrees(&t), &u1, 7).unwrap();
                    assert_eq!(fast.verdict, slow.verdict, "{t:?} p={p}");
                    if let Certificate::Witness { order } = &fast.certificate {
                        assert!(witness_is_valid(&int_degrees(&t), &u1, order), "{t:?}");
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn invariant_under_permutation(t in prop::collection::vec(-6i64..=6, 1..7), p in prop_oneof![Just(0u64), Just(3), Just(5)]) {
            let mut r = t.clone();
            r.reverse();
            r.rotate_left(t.len() / 2);
            prop_assert_eq!(class(&t, p).verdict, class(&r, p).verdict);
        }

        #[test]
        fn zero_entries_do_not_matter(t in prop::collection::vec(-6i64..=6, 2..7), p in prop_oneof![Just(0u64), Just(3), Just(5)]) {
            let comp = compact(&t, p);
            prop_assume!(comp.len() >= 2);
            prop_assert_eq!(class(&t, p).verdict, class(&comp, p).verdict);
        }

        #[test]
        fn witnesses_give_standard_tuples(t in prop::collection::vec(-6i64..=6, 1..7), p in prop_oneof![Just(0u64), Just(3)]) {
            let u1 = u1_for(p);
            let c = class(&t, p);
            if let Certificate::Witness { order } = c.certificate {
                let reordered: Vec<i64> = order.iter().map(|&i| t[i]).collect();
                let ident: Vec<usize> = (0..t.len()).collect();
                prop_assert!(witness_is_valid(&int_degrees(&reordered), &u1, &ident));
                prop_assert!(standard_order(&int_degrees(&t), &u1, 7).unwrap().is_some());
            }
        }
    }
}
